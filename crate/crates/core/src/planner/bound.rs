use num_bigint::BigUint;

use crate::channel::TypeDistribution;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Acceptance achievable by the proposal that picks the coset leader with
/// probability `beta` and a uniform coset member otherwise:
/// `sum_p min { r(p), beta * leader_mass(p) + (1 - beta) N_p q^-n }`.
pub fn beta_mixture_bound<T: Scalar>(residual: &TypeDistribution<T>, code: &LinearCode, beta: &T) -> Result<T> {
    if residual.space().n() as usize != code.n() || residual.space().q() != code.q() {
        return Err(Error::PlanMismatch("residual and code disagree on n or q".into()));
    }
    let (leaders, cosets) = code.leader_mass_fraction()?;
    let all = BigUint::from(code.q().order()).pow(code.n() as u32);
    let other = T::one() - beta.clone();
    let mut total = T::zero();
    for (i, r) in residual.masses().iter().enumerate() {
        let q = beta.clone() * T::from_ratio(&leaders[i], &cosets)
            + other.clone() * T::from_ratio(&residual.class_sizes()[i], &all);
        total = total + T::min_of(r, &q);
    }
    Ok(total)
}
