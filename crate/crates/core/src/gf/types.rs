use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::Modulus;
use crate::error::{Error, Result};

/// Symbol counts of a word in `GF(q)^n`. `counts[0]` is the number of zeros,
/// so the Hamming weight is `n - counts[0]`.
///
/// Types are ordered by weight first and then lexicographically on the
/// nonzero-symbol counts; for `q = 2` this is plain weight order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EmpiricalType {
    counts: Vec<u32>,
}

impl EmpiricalType {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::InvalidParameter("a type needs q >= 2 counts".into()));
        }
        Modulus::new(counts.len() as u32)?;
        Ok(EmpiricalType { counts })
    }

    /// Binary type of the given weight.
    pub fn binary(n: u32, weight: u32) -> Self {
        assert!(weight <= n);
        EmpiricalType { counts: vec![n - weight, weight] }
    }

    pub fn zero(n: u32, q: Modulus) -> Self {
        let mut counts = vec![0; q.get() as usize];
        counts[0] = n;
        EmpiricalType { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn n(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn q(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn weight(&self) -> u32 {
        self.n() - self.counts[0]
    }

    /// Componentwise sum; the type of a concatenation of two words.
    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.counts.len(), other.counts.len());
        EmpiricalType {
            counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect(),
        }
    }

    /// Componentwise difference, if nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(EmpiricalType { counts })
    }
}

impl Ord for EmpiricalType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.counts[1..].cmp(&other.counts[1..]))
            .then_with(|| self.counts[0].cmp(&other.counts[0]))
    }
}

impl PartialOrd for EmpiricalType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EmpiricalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.len() == 2 {
            write!(f, "w{}", self.counts[1])
        } else {
            write!(f, "{:?}", self.counts)
        }
    }
}

/// Multinomial coefficient `n! / prod(counts!)`: the size of the type class.
pub fn type_class_size(p: &EmpiricalType) -> BigUint {
    let mut result = BigUint::one();
    let mut placed = 0u32;
    for &c in p.counts() {
        // multiply by binomial(placed + c, c) incrementally
        for j in 1..=c {
            result *= placed + j;
            result /= j;
        }
        placed += c;
    }
    result
}

/// All types of length `n` over `GF(q)`, in canonical order.
pub fn all_types(n: u32, q: Modulus) -> Vec<EmpiricalType> {
    let q = q.get() as usize;
    let mut out = Vec::new();
    let mut counts = vec![0u32; q];
    fn rec(pos: usize, left: u32, counts: &mut Vec<u32>, out: &mut Vec<EmpiricalType>) {
        if pos + 1 == counts.len() {
            counts[pos] = left;
            out.push(EmpiricalType { counts: counts.clone() });
            return;
        }
        for c in 0..=left {
            counts[pos] = c;
            rec(pos + 1, left - c, counts, out);
        }
    }
    rec(0, n, &mut counts, &mut out);
    out.sort();
    out
}

/// The canonical list of types for `(n, q)` with an index lookup.
#[derive(Debug, Clone)]
pub struct TypeSpace {
    n: u32,
    q: Modulus,
    types: Vec<EmpiricalType>,
    index: HashMap<EmpiricalType, usize>,
}

impl TypeSpace {
    pub fn new(n: u32, q: Modulus) -> Self {
        let types = all_types(n, q);
        let index = types.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        TypeSpace { n, q, types, index }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> Modulus {
        self.q
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn types(&self) -> &[EmpiricalType] {
        &self.types
    }

    pub fn get(&self, i: usize) -> &EmpiricalType {
        &self.types[i]
    }

    pub fn index_of(&self, p: &EmpiricalType) -> Option<usize> {
        if self.q == Modulus::BINARY && p.q() == 2 && p.n() == self.n {
            return Some(p.weight() as usize);
        }
        self.index.get(p).copied()
    }

    /// Index of the type with the given symbol counts, without allocation for `q = 2`.
    pub fn index_of_counts(&self, counts: &[u32]) -> usize {
        if counts.len() == 2 {
            return counts[1] as usize;
        }
        self.index[&EmpiricalType { counts: counts.to_vec() }]
    }
}
