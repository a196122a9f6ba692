//! Invariant tensors, representations and Casimir eigenvalues of su(n).
//!
//! [`SuN`] owns the Gell-Mann basis of one algebra together with the lazily
//! built d, Omega and t tensors. Representations are plain lists of matrices
//! ([`reps::Representation`]); [`casimir`] turns both into eigenvalues and
//! generalized Dynkin indices by a symmetric-trace route and an independent
//! antisymmetrized single-component route.

pub mod basis;
pub mod casimir;
pub mod check;
pub mod context;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod reps;
pub mod tensor;
pub mod traces;

pub use check::{Check, Status};
pub use context::{ArtifactKey, ArtifactKind, ArtifactStore, BuildCounts, Caps, Config, SuN};
pub use error::{Error, Result};
