//! Consecutive quotients `I^n / I^{n+1}` of the augmentation ideal of
//! augmented rings, computed exactly over ℤ.

pub mod abgroup;
pub mod augring;
mod bigjson;
pub mod constructors;
pub mod lattice;
pub mod stabilize;

pub use abgroup::{FinAbGroup, LambdaProfile};
pub use augring::{AugmentedRing, QuotientResult, RingError};
pub use constructors::{build_ring, parse_group_spec, Family, GroupSpec};
pub use stabilize::{analyze, detect_stabilization, Stabilization, StabilizationReport};
