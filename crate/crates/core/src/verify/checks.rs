use crate::algebra::{
    beta_lift, commutator, frobenius_norm, identity, mat_exp, odd_part, spectral_norm, CMat,
    HermitianEigen,
};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UnitarityResidual {
    /// `|U^dag U - I|_2`, used for pass/fail.
    pub spectral: f64,
    pub frobenius: f64,
}

/// `U^dag U - I` in both norms.
pub fn check_unitary(u: &CMat) -> UnitarityResidual {
    let r = u.adjoint() * u - identity(u.nrows());
    UnitarityResidual { spectral: spectral_norm(&r), frobenius: frobenius_norm(&r) }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlockDiagonalResidual {
    /// `|[beta, H]|_2 / |H|_2`.
    pub relative_commutator: f64,
    /// Spectral norm of the off-block part.
    pub off_block: f64,
}

pub fn check_block_diagonal(h: &CMat) -> BlockDiagonalResidual {
    let beta = beta_lift(h.nrows());
    let scale = spectral_norm(h);
    let c = spectral_norm(&commutator(&beta, h));
    BlockDiagonalResidual {
        relative_commutator: if scale > 0.0 { c / scale } else { c },
        off_block: spectral_norm(&odd_part(h)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectrumResidual {
    /// Largest difference of the sorted eigenvalue lists.
    pub absolute: f64,
    /// `absolute` over the spectral radius of the input (at least 1).
    pub relative: f64,
}

pub fn check_spectrum_preserved(h_in: &CMat, h_out: &CMat) -> Result<SpectrumResidual> {
    if h_in.nrows() != h_out.nrows() {
        return Err(Error::DimensionMismatch { expected: h_in.nrows(), found: h_out.nrows() });
    }
    let a = HermitianEigen::new(h_in)?;
    let b = HermitianEigen::new(h_out)?;
    let absolute = a.values.iter().zip(&b.values).fold(0.0, |m: f64, (x, y)| m.max((x - y).abs()));
    let radius = a.values.iter().fold(1.0, |m: f64, x| m.max(x.abs()));
    Ok(SpectrumResidual { absolute, relative: absolute / radius })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BchResidual {
    /// `|e^{iS1} e^{iS2} - e^{i(S1+S2)}|_2`.
    pub raw: f64,
    /// `|[S1, S2]|_2 / 2`, the leading-order prediction for `raw`.
    pub commutator_norm: f64,
}

impl BchResidual {
    pub fn ratio(&self) -> f64 {
        self.raw / self.commutator_norm
    }
}

pub fn bch_residual(s1: &CMat, s2: &CMat, tol: &Tolerances) -> Result<BchResidual> {
    let product = mat_exp(s1, tol)?.into_matrix() * mat_exp(s2, tol)?.into_matrix();
    let joint = mat_exp(&(s1 + s2), tol)?;
    Ok(BchResidual {
        raw: spectral_norm(&(product - joint.matrix())),
        commutator_norm: 0.5 * spectral_norm(&commutator(s1, s2)),
    })
}
