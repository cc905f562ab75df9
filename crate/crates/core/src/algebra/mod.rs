//! Dirac matrices, role-tagged operator matrices and the Hermitian matrix
//! function kernel (exponential, principal square root, sign).

mod dirac;
pub mod matfun;
mod operator;

pub(crate) use operator::symmetrize;

use nalgebra::{Complex, DMatrix, DVector};

pub use dirac::{dirac_matrices, pauli_matrices, DiracMatrixSet};
pub use matfun::{mat_exp, mat_sqrt_psd, sign_operator, HermitianEigen};
pub use operator::{
    anticommutator, beta_lift, block_parts, commutator, even_part, frobenius_norm,
    hermiticity_residual, lift, max_entry, odd_part, spectral_norm, OperatorMatrix, Role,
};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

#[inline]
pub(crate) fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[inline]
pub(crate) fn im(x: f64) -> C64 {
    C64::new(0.0, x)
}

pub(crate) fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}
