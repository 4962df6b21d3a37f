use std::fmt;

use super::{EmpiricalType, Modulus};
use crate::error::{Error, Result};

/// A row vector in `GF(q)^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldVector {
    q: Modulus,
    entries: Vec<u8>,
}

impl FieldVector {
    pub fn new(q: Modulus, entries: Vec<u8>) -> Result<Self> {
        for &e in &entries {
            q.check(e as u32)?;
        }
        Ok(FieldVector { q, entries })
    }

    /// Caller guarantees every entry is below `q`.
    pub(crate) fn from_raw(q: Modulus, entries: Vec<u8>) -> Self {
        debug_assert!(entries.iter().all(|&e| e < q.get()));
        FieldVector { q, entries }
    }

    pub fn zeros(q: Modulus, n: usize) -> Self {
        FieldVector { q, entries: vec![0; n] }
    }

    pub fn unit(q: Modulus, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(q, n);
        v.entries[i] = 1;
        v
    }

    /// Binary vector from the low `n` bits of `bits` (bit `i` is coordinate `i`).
    pub fn from_bits(bits: u64, n: usize) -> Self {
        assert!(n <= 64);
        let entries = (0..n).map(|i| ((bits >> i) & 1) as u8).collect();
        FieldVector { q: Modulus::BINARY, entries }
    }

    /// Packs a binary vector of length at most 64.
    pub fn to_bits(&self) -> Option<u64> {
        if self.q != Modulus::BINARY || self.entries.len() > 64 {
            return None;
        }
        Some(self.entries.iter().enumerate().fold(0u64, |acc, (i, &e)| acc | ((e as u64) << i)))
    }

    /// Vector whose base-`q` digits (least significant first) spell `rank`.
    pub fn from_rank(q: Modulus, n: usize, mut rank: u64) -> Self {
        let base = q.get() as u64;
        let entries = (0..n)
            .map(|_| {
                let d = (rank % base) as u8;
                rank /= base;
                d
            })
            .collect();
        FieldVector { q, entries }
    }

    /// Inverse of [`FieldVector::from_rank`].
    pub fn rank(&self) -> u64 {
        let base = self.q.get() as u64;
        self.entries.iter().rev().fold(0u64, |acc, &e| acc * base + e as u64)
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

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }

    pub fn get(&self, i: usize) -> u8 {
        self.entries[i]
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch { left: self.q.get(), right: other.q.get() });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: other.len() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let q = self.q;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| q.add(a, b)).collect();
        Ok(FieldVector { q, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let q = self.q;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| q.sub(a, b)).collect();
        Ok(FieldVector { q, entries })
    }

    pub fn neg(&self) -> Self {
        let q = self.q;
        FieldVector { q, entries: self.entries.iter().map(|&a| q.neg(a)).collect() }
    }

    pub fn weight(&self) -> u32 {
        self.entries.iter().filter(|&&e| e != 0).count() as u32
    }

    /// Symbol counts of this vector.
    pub fn type_of(&self) -> EmpiricalType {
        let mut counts = vec![0u32; self.q.get() as usize];
        for &e in &self.entries {
            counts[e as usize] += 1;
        }
        EmpiricalType::new(counts).expect("modulus already validated")
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        FieldVector { q: self.q, entries }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        FieldVector { q: self.q, entries: self.entries[range].to_vec() }
    }
}

impl fmt::Debug for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == Modulus::BINARY {
            let s: String = self.entries.iter().map(|&e| if e == 1 { '1' } else { '0' }).collect();
            write!(f, "[{s}]")
        } else {
            write!(f, "{:?}/GF({})", self.entries, self.q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types_of_vectors() {
        let q2 = Modulus::BINARY;
        assert_eq!(FieldVector::zeros(q2, 5).type_of().counts(), &[5, 0]);
        let v = FieldVector::new(q2, vec![1, 1, 0, 0]).unwrap();
        assert_eq!(v.type_of().weight(), 2);
        let q3 = Modulus::new(3).unwrap();
        let v = FieldVector::new(q3, vec![1, 2, 0]).unwrap();
        assert_eq!(v.type_of().counts(), &[1, 1, 1]);
    }

    #[test]
    fn rank_round_trip() {
        let q3 = Modulus::new(3).unwrap();
        for r in 0..81 {
            assert_eq!(FieldVector::from_rank(q3, 4, r).rank(), r);
        }
        let v = FieldVector::from_bits(0b1011, 6);
        assert_eq!(v.to_bits(), Some(0b1011));
        assert_eq!(v.rank(), 0b1011);
    }

    #[test]
    fn arithmetic_checks_shapes() {
        let a = FieldVector::zeros(Modulus::BINARY, 3);
        let b = FieldVector::zeros(Modulus::BINARY, 4);
        assert!(a.add(&b).is_err());
        let c = FieldVector::zeros(Modulus::new(3).unwrap(), 3);
        assert!(a.sub(&c).is_err());
        assert!(FieldVector::new(Modulus::BINARY, vec![2]).is_err());
    }
}
