//! SU(2) rotation for Hamiltonians `Lambda + Q + Q^dag` with nilpotent supercharges.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{Method, Su2Sign, TransformResult};
use crate::algebra::{identity, re, spectral_norm, HermitianEigen};
use crate::hamiltonian::SusyTriple;
use crate::{Error, Result, Tolerances};

/// `U = cos(theta/2) + 2iJ_2 sin(theta/2)` with `tan(theta) = {Q, Q^dag}^(1/2) / |Lambda|`.
/// With `Lambda^2 = m^2` this is
/// `sqrt((E+m)/2E) +- (Lambda/m)(Q + Q^dag) / sqrt(2E(E+m))`, `E^2 = m^2 + {Q, Q^dag}`.
/// The plus sign is the FW transformation; the minus sign rotates the wrong way and
/// brings `Lambda - Q - Q^dag` to block-diagonal form instead.
pub fn su2_susy(triple: &SusyTriple, sign: Su2Sign, tol: &Tolerances) -> Result<TransformResult> {
    let dim = triple.q.nrows();
    let lambda = &triple.lambda_even;
    let l2 = lambda * lambda;
    let m2 = l2[(0, 0)].re;
    let residual = spectral_norm(&(&l2 - identity(dim) * re(m2)));
    if residual > tol.hermitian * (1.0 + m2) {
        return Err(Error::SusyViolation { residual });
    }
    let m = m2.max(0.0).sqrt();
    if m < tol.gap_min {
        return Err(Error::SpectralGap { eigenvalue: m, gap_min: tol.gap_min });
    }
    let e2 = HermitianEigen::new(&(triple.anticommutator() + identity(dim) * re(m2)))?;
    let cos_half = e2.map(|x| {
        let e = x.sqrt();
        ((e + m) / (2.0 * e)).sqrt()
    });
    let sin_weight = e2.map(|x| {
        let e = x.sqrt();
        1.0 / (2.0 * e * (e + m)).sqrt()
    });
    let s = match sign {
        Su2Sign::Plus => 1.0,
        Su2Sign::Minus => -1.0,
    };
    let odd = &triple.q + &triple.q_dag;
    let u = cos_half + lambda * odd * sin_weight * re(s / m);
    let h = lambda + &triple.q + &triple.q_dag;
    let mut result = TransformResult::exact(Method::Su2Susy(sign), u, &h)
        .with_recipe("SU(2) rotation from the supercharge anticommutator");
    result.metadata.sign = Some(sign);
    Ok(result)
}
