use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field order `q`, `2 <= q <= 251`, so symbols fit in a byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u8);

impl Modulus {
    pub const BINARY: Modulus = Modulus(2);

    pub fn new(q: u32) -> Result<Self> {
        if !(2..=251).contains(&q) || !is_prime(q) {
            return Err(Error::InvalidModulus(q));
        }
        Ok(Modulus(q as u8))
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn order(self) -> u32 {
        self.0 as u32
    }

    /// Bits needed to store one symbol on the wire.
    pub fn symbol_bits(self) -> u32 {
        32 - (self.0 as u32 - 1).leading_zeros()
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.0 as u16 - b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(self, a: u8) -> Option<u8> {
        if a.is_multiple_of(self.0) {
            return None;
        }
        let mut result = 1u8;
        let mut base = a;
        let mut e = self.0 as u32 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Some(result)
    }

    pub fn check(self, value: u32) -> Result<u8> {
        if value >= self.0 as u32 {
            return Err(Error::SymbolOutOfRange { value, q: self.0 });
        }
        Ok(value as u8)
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;
    fn try_from(q: u32) -> Result<Self> {
        Modulus::new(q)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.0 as u32
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// A single element of `GF(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u8,
    q: Modulus,
}

impl FieldElement {
    pub fn new(value: u32, q: Modulus) -> Result<Self> {
        Ok(FieldElement { value: q.check(value)?, q })
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.q
    }

    pub fn inv(self) -> Option<Self> {
        self.q.inv(self.value).map(|value| FieldElement { value, q: self.q })
    }

    fn same(self, other: Self) -> Modulus {
        assert_eq!(self.q, other.q, "field elements from different fields");
        self.q
    }
}

impl std::ops::Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let q = self.same(rhs);
        FieldElement { value: q.add(self.value, rhs.value), q }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let q = self.same(rhs);
        FieldElement { value: q.sub(self.value, rhs.value), q }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let q = self.same(rhs);
        FieldElement { value: q.mul(self.value, rhs.value), q }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement { value: self.q.neg(self.value), q: self.q }
    }
}
