//! Exact channel simulation and lossy source coding over finite-field vectors
//! by greedy rejection-sampled syndrome coding.

pub mod bounds;
pub mod channel;
pub mod codec;
pub mod codes;
pub mod error;
pub mod gf;
pub mod planner;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};

/// Exact arithmetic scalar.
pub type Rational = num_rational::BigRational;
/// Plan computed in exact rational arithmetic.
pub type ExactPlan = planner::KappaPlan<Rational>;
/// Plan computed in binary64.
pub type FloatPlan = planner::KappaPlan<f64>;
