//! Dirac Hamiltonians in matrix form and the unitary transformations that carry
//! them to a block-diagonal (Foldy-Wouthuysen-type) representation.
//!
//! The crate has two backends for every Hamiltonian: a single plane-wave mode
//! (4x4 matrices with a numeric momentum 3-vector) and a 1-D periodic lattice
//! (4N x 4N matrices, spinor index outermost, spectral momentum operator).
//! Every transform returns a [`TransformResult`]; the [`verify`] module decides
//! whether a transform is a genuine FW transformation by checking the
//! wave-function reduction condition against the exact Eriksen operator.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is off.
#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod algebra;
mod error;
pub mod hamiltonian;
pub mod lattice;
mod tolerance;
pub mod transform;
pub mod verify;

pub use algebra::{dirac_matrices, CMat, CVec, DiracMatrixSet, OperatorMatrix, Role};
pub use error::{Error, Result};
pub use hamiltonian::{
    Backend, FieldName, ScenarioKind, ScenarioSpec, SplitHamiltonian, SusyTriple,
};
pub use lattice::{FieldProfile, Lattice1D, ProfileShape};
pub use tolerance::Tolerances;
pub use transform::{Method, Su2Sign, TransformMetadata, TransformResult};
