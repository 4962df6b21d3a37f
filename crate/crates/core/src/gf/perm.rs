use super::FieldVector;
use crate::error::{Error, Result};

/// A coordinate permutation. Applying it to `x` yields `y[j] = x[perm[j]]`,
/// i.e. the row-vector product `x * Pi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    perm: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { perm: (0..n).collect() }
    }

    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidParameter(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Permutation { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (j, &p) in self.perm.iter().enumerate() {
            inv[p] = j;
        }
        Permutation { perm: inv }
    }

    /// `x * Pi`.
    pub fn apply(&self, x: &FieldVector) -> FieldVector {
        assert_eq!(x.len(), self.perm.len());
        let entries = self.perm.iter().map(|&p| x.get(p)).collect();
        FieldVector::from_raw(x.modulus(), entries)
    }

    /// `v * Pi^{-1}`.
    pub fn apply_inverse(&self, v: &FieldVector) -> FieldVector {
        assert_eq!(v.len(), self.perm.len());
        let mut entries = vec![0u8; v.len()];
        for (j, &p) in self.perm.iter().enumerate() {
            entries[p] = v.get(j);
        }
        FieldVector::from_raw(v.modulus(), entries)
    }

    /// Composition: applying the result equals applying `self` then `then`.
    pub fn then(&self, then: &Permutation) -> Permutation {
        Permutation { perm: then.perm.iter().map(|&j| self.perm[j]).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Modulus;

    #[test]
    fn inverse_undoes_apply() {
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        let x = FieldVector::new(Modulus::new(5).unwrap(), vec![1, 2, 3, 4]).unwrap();
        let y = p.apply(&x);
        assert_eq!(y.entries(), &[3, 1, 4, 2]);
        assert_eq!(p.apply_inverse(&y), x);
        assert_eq!(p.inverse().apply(&y), x);
        let pp = p.then(&p);
        assert_eq!(pp.apply(&x), p.apply(&p.apply(&x)));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }
}
