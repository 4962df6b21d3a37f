//! Arithmetic over prime fields `GF(q)`: scalars, vectors, parity-check
//! matrices, permutations and empirical types.

mod field;
mod matrix;
mod perm;
mod types;
mod vector;

pub use field::{FieldElement, Modulus};
pub use matrix::{ParityCheckMatrix, StandardForm};
pub use perm::Permutation;
pub use types::{all_types, type_class_size, EmpiricalType, TypeSpace};
pub use vector::FieldVector;
