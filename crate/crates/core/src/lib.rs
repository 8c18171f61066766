//! Exact braid group representations from a 4x4 R-matrix, the
//! extraspecial 2-groups they generate, and the link invariants they carry.

pub mod braid;
pub mod chars;
pub mod cyclo;
pub mod esgroup;
pub mod invariants;
pub mod linalg;
pub mod rep;

pub use braid::{BraidError, BraidWord, Letter, Permutation};
pub use cyclo::CycloNum;
pub use esgroup::{EsElement, EsGroup, Nu};
pub use linalg::{ExactMatrix, LinalgError, MonomialMatrix};
pub use rep::{RepKind, Representation};
