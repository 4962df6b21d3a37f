use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::gf::{EmpiricalType, Modulus, TypeSpace};
use crate::scalar::Scalar;

/// The set of types realized inside one coset, kept sorted so that equal
/// sets compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSet {
    members: Vec<EmpiricalType>,
}

impl TypeSet {
    pub fn new(mut members: Vec<EmpiricalType>) -> Self {
        assert!(!members.is_empty(), "type sets are never empty");
        members.sort();
        members.dedup();
        TypeSet { members }
    }

    pub fn members(&self) -> &[EmpiricalType] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &EmpiricalType) -> bool {
        self.members.binary_search(p).is_ok()
    }

    /// Smallest member in canonical order, i.e. the type of the coset leader for `q = 2`.
    pub fn min_type(&self) -> &EmpiricalType {
        &self.members[0]
    }

    pub fn weights(&self) -> Vec<u32> {
        self.members.iter().map(|p| p.weight()).collect()
    }

    /// `{a + b : a in self, b in other}`.
    pub fn minkowski_sum(&self, other: &TypeSet) -> TypeSet {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.members {
            for b in &other.members {
                out.push(a.concat(b));
            }
        }
        TypeSet::new(out)
    }
}

impl fmt::Debug for TypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

/// Distribution of the type set of a uniformly random syndrome, stored as
/// exact syndrome counts over `total = q^(n-k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSetDistribution {
    n: u32,
    q: Modulus,
    entries: Vec<(TypeSet, BigUint)>,
    total: BigUint,
}

impl TypeSetDistribution {
    /// Entries are merged and sorted canonically.
    pub fn from_counts(n: u32, q: Modulus, counts: impl IntoIterator<Item = (TypeSet, BigUint)>) -> Self {
        let mut merged: BTreeMap<TypeSet, BigUint> = BTreeMap::new();
        for (t, c) in counts {
            if c.is_zero() {
                continue;
            }
            *merged.entry(t).or_default() += c;
        }
        let total = merged.values().sum();
        TypeSetDistribution { n, q, entries: merged.into_iter().collect(), total }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.q
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(TypeSet, BigUint)] {
        &self.entries
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn type_set(&self, id: usize) -> &TypeSet {
        &self.entries[id].0
    }

    pub fn count(&self, id: usize) -> &BigUint {
        &self.entries[id].1
    }

    pub fn position(&self, t: &TypeSet) -> Option<usize> {
        self.entries.binary_search_by(|(e, _)| e.cmp(t)).ok()
    }

    pub fn probability<T: Scalar>(&self, id: usize) -> T {
        T::from_ratio(&self.entries[id].1, &self.total)
    }

    pub fn probabilities<T: Scalar>(&self) -> Vec<T> {
        (0..self.len()).map(|i| self.probability(i)).collect()
    }

    /// Member type indices of every type set within `space`.
    pub fn member_indices(&self, space: &TypeSpace) -> Vec<Vec<usize>> {
        self.entries
            .iter()
            .map(|(t, _)| t.members().iter().map(|p| space.index_of(p).expect("type in space")).collect())
            .collect()
    }

    /// Distribution of the Minkowski sum of two independent draws.
    pub fn convolve(&self, other: &TypeSetDistribution) -> TypeSetDistribution {
        assert_eq!(self.q, other.q);
        let mut pairs = Vec::with_capacity(self.len() * other.len());
        for (a, ca) in &self.entries {
            for (b, cb) in &other.entries {
                pairs.push((a.minkowski_sum(b), ca * cb));
            }
        }
        TypeSetDistribution::from_counts(self.n + other.n, self.q, pairs)
    }
}

/// Type-set distribution of the `r`-fold juxtaposition `I_r (x) H`: the
/// `r`-fold Minkowski-sum convolution of the base distribution.
pub fn juxtapose_type_set_distribution(base: &TypeSetDistribution, r: usize) -> TypeSetDistribution {
    assert!(r >= 1, "juxtaposition needs r >= 1");
    let mut acc = base.clone();
    for _ in 1..r {
        acc = acc.convolve(base);
    }
    acc
}

/// Type-set distribution from a single all-types set (the complete code).
pub(crate) fn complete_distribution(space: &TypeSpace) -> TypeSetDistribution {
    TypeSetDistribution::from_counts(
        space.n(),
        space.q(),
        [(TypeSet::new(space.types().to_vec()), BigUint::one())],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn w(n: u32, ws: &[u32]) -> TypeSet {
        TypeSet::new(ws.iter().map(|&x| EmpiricalType::binary(n, x)).collect())
    }

    #[test]
    fn canonical_sets() {
        assert_eq!(w(4, &[3, 0, 3]), w(4, &[0, 3]));
        assert!(w(4, &[0, 3]).contains(&EmpiricalType::binary(4, 3)));
        assert_eq!(w(3, &[0, 3]).minkowski_sum(&w(3, &[1, 2])).weights(), vec![1, 2, 4, 5]);
    }

    #[test]
    fn juxtapose_singletons() {
        let base = TypeSetDistribution::from_counts(
            1,
            Modulus::BINARY,
            [(w(1, &[0]), BigUint::one()), (w(1, &[1]), BigUint::one())],
        );
        assert_eq!(juxtapose_type_set_distribution(&base, 1), base);
        let two = juxtapose_type_set_distribution(&base, 2);
        let probs: Vec<BigRational> = two.probabilities();
        assert_eq!(two.len(), 3);
        assert_eq!(two.type_set(0), &w(2, &[0]));
        assert_eq!(probs[0], BigRational::new(1.into(), 4.into()));
        assert_eq!(probs[1], BigRational::new(1.into(), 2.into()));
        assert_eq!(probs[2], BigRational::new(1.into(), 4.into()));
    }
}
