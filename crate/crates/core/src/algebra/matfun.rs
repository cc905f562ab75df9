//! Functions of Hermitian matrices through a full eigendecomposition.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use nalgebra::SymmetricEigen;

use super::operator::{hermiticity_residual, symmetrize};
use super::{re, CMat, OperatorMatrix, Role, C64};
use crate::{Error, Result, Tolerances};

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors as
/// columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermitianEigen {
    /// Diagonalizes the Hermitian part `(H + H^dag)/2` of `h`.
    pub fn new(h: &CMat) -> Result<Self> {
        let dim = h.nrows();
        if !h.is_square() {
            return Err(Error::DimensionMismatch { expected: dim, found: h.ncols() });
        }
        let mut sym = h.clone();
        symmetrize(&mut sym);
        let cap = 200 * dim.max(50);
        let eig =
            SymmetricEigen::try_new(sym, f64::EPSILON, cap).ok_or(Error::EigenSolver { dim })?;
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut vectors = CMat::zeros(dim, dim);
        for (col, &k) in order.iter().enumerate() {
            vectors.set_column(col, &eig.eigenvectors.column(k));
        }
        Ok(Self { values, vectors })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V f(D) V^dag` for a real function `f`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMat {
        self.map_complex(|x| re(f(x)))
    }

    /// `V f(D) V^dag` for a complex-valued function `f`.
    pub fn map_complex(&self, f: impl Fn(f64) -> C64) -> CMat {
        let mut scaled = self.vectors.clone();
        for (j, &v) in self.values.iter().enumerate() {
            let fv = f(v);
            for x in scaled.column_mut(j).iter_mut() {
                *x *= fv;
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// Eigenvalue of smallest magnitude.
    pub fn min_abs(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, |a, v| if v.abs() < a.abs() { v } else { a })
    }
}

/// `exp(iG)` for Hermitian `G`.
pub fn mat_exp(g: &CMat, tol: &Tolerances) -> Result<OperatorMatrix> {
    let residual = hermiticity_residual(g);
    if residual > tol.hermitian {
        return Err(Error::NotHermitian { residual, tol: tol.hermitian });
    }
    let eig = HermitianEigen::new(g)?;
    let u = eig.map_complex(|x| C64::new(x.cos(), x.sin()));
    Ok(OperatorMatrix::new(u, Role::Unitary))
}

/// Principal square root of a Hermitian positive-definite matrix.
pub fn mat_sqrt_psd(h: &CMat, tol: &Tolerances) -> Result<OperatorMatrix> {
    let residual = hermiticity_residual(h);
    if residual > tol.hermitian {
        return Err(Error::NotHermitian { residual, tol: tol.hermitian });
    }
    let eig = HermitianEigen::new(h)?;
    let lowest = eig.values.first().copied().unwrap_or(f64::INFINITY);
    if lowest < tol.gap_min {
        return Err(Error::SpectralGap { eigenvalue: lowest, gap_min: tol.gap_min });
    }
    Ok(OperatorMatrix::new(eig.map(f64::sqrt), Role::Normalization))
}

/// `lambda = H (H^2)^(-1/2)`, built as the sum of eigenprojectors weighted by the
/// sign of their eigenvalues.
pub fn sign_operator(h: &CMat, tol: &Tolerances) -> Result<OperatorMatrix> {
    let eig = HermitianEigen::new(h)?;
    sign_from_eigen(&eig, tol)
}

pub(crate) fn sign_from_eigen(eig: &HermitianEigen, tol: &Tolerances) -> Result<OperatorMatrix> {
    check_gap(eig, tol)?;
    Ok(OperatorMatrix::new(eig.map(f64::signum), Role::Sign))
}

pub(crate) fn check_gap(eig: &HermitianEigen, tol: &Tolerances) -> Result<()> {
    let closest = eig.min_abs();
    if closest.abs() < tol.gap_min {
        return Err(Error::SpectralGap { eigenvalue: closest, gap_min: tol.gap_min });
    }
    Ok(())
}
