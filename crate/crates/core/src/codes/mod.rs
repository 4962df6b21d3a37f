//! Inner codes: construction, coset structure and type-set distributions.

mod code;
mod distance;
mod enumerate;
mod registry;
mod typeset;

pub use code::{CodeKind, CodeTables, LinearCode, ENUMERATION_LIMIT};
pub(crate) use code::random_arrangement;
pub use distance::Distance;
pub use registry::{golay_code, parity_code, CodeRegistry, BUILTIN};
pub use typeset::{juxtapose_type_set_distribution, TypeSet, TypeSetDistribution};
