//! Closed-form and exact one-step FW transformations.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{Method, TransformResult};
use crate::algebra::matfun::{check_gap, sign_from_eigen};
use crate::algebra::{
    beta_lift, commutator, dirac_matrices, identity, re, spectral_norm, CMat, HermitianEigen,
    OperatorMatrix, Role,
};
use crate::hamiltonian::{Backend, ScenarioKind, ScenarioSpec, SplitHamiltonian};
use crate::lattice::kron_spinor;
use crate::{Error, Result, Tolerances};

/// Free-particle FW operator `sqrt((E+m)/2E) (1 + beta alpha.p / (E+m))`.
pub fn u0_free(spec: &ScenarioSpec) -> Result<TransformResult> {
    spec.validate()?;
    if spec.kind != ScenarioKind::Free {
        return Err(Error::Unsupported("u0-free needs the free scenario".into()));
    }
    let m = spec.mass;
    let d = dirac_matrices();
    let even_coeff = move |p: f64| {
        let e = (m * m + p * p).sqrt();
        ((e + m) / (2.0 * e)).sqrt()
    };
    let odd_coeff = move |p: f64| {
        let e = (m * m + p * p).sqrt();
        1.0 / (2.0 * e * (e + m)).sqrt()
    };
    let (u, h) = match spec.backend {
        Backend::MomentumMode => {
            let p = spec.momentum;
            let pn = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            let u = identity(4) * re(even_coeff(pn)) + &d.beta * d.alpha_dot(p) * re(odd_coeff(pn));
            (u, &d.beta * re(m) + d.alpha_dot(p))
        }
        Backend::Lattice => {
            let lat = spec.require_lattice()?;
            let c = lat.function_of_momentum(even_coeff);
            let s = lat.function_of_momentum(move |p| p * odd_coeff(p));
            let u = kron_spinor(&identity(4), &c) + kron_spinor(&(&d.beta * &d.alpha[0]), &s);
            let h = kron_spinor(&d.beta, &(identity(lat.n_points()) * re(m)))
                + kron_spinor(&d.alpha[0], &lat.momentum_operator());
            (u, h)
        }
    };
    Ok(TransformResult::exact(Method::U0Free, u, &h).with_recipe("closed-form free-particle operator"))
}

/// Exact FW operator for `[even, odd] = 0`:
/// `sqrt((E+m)/2E) (1 + beta O / (E+m))`, `E = sqrt(m^2 + O^2)`.
pub fn fw_commuting(split: &SplitHamiltonian, tol: &Tolerances) -> Result<TransformResult> {
    let (even, odd, m) = (&split.even_part, &split.odd_part, split.mass);
    let commutator_norm = spectral_norm(&commutator(even, odd));
    let limit = tol.commute_rel * spectral_norm(even) * spectral_norm(odd);
    if commutator_norm > limit {
        return Err(Error::CommutingPrecondition { commutator_norm, tol: limit });
    }
    let dim = split.dim();
    let k = HermitianEigen::new(&(odd * odd + identity(dim) * re(m * m)))?;
    let lowest = k.values.first().copied().unwrap_or(f64::INFINITY);
    if lowest < tol.gap_min {
        return Err(Error::SpectralGap { eigenvalue: lowest, gap_min: tol.gap_min });
    }
    // Functions of E^2; beta O commutes with O^2, so the factor order is immaterial.
    let c = k.map(|e2| {
        let e = e2.sqrt();
        ((e + m) / (2.0 * e)).sqrt()
    });
    let g = k.map(|e2| {
        let e = e2.sqrt();
        1.0 / (2.0 * e * (e + m)).sqrt()
    });
    let u = c + split.beta() * odd * g;
    Ok(TransformResult::exact(Method::FwCommuting, u, split.h_full.matrix())
        .with_recipe("closed form for commuting even and odd parts"))
}

/// Ingredients of the exact Eriksen transformation.
#[derive(Debug, Clone)]
pub struct EriksenParts {
    /// Eigensystem of the input Hamiltonian.
    pub eigen: HermitianEigen,
    /// Sign operator `lambda = H (H^2)^(-1/2)`.
    pub lambda: OperatorMatrix,
    /// Eigensystem of the even operator `beta lambda + lambda beta`.
    pub anticommutator: HermitianEigen,
    pub u: CMat,
}

/// `U_E = (2 + beta lambda + lambda beta)^(-1/2) (1 + beta lambda)`.
pub fn eriksen_parts(h: &CMat, tol: &Tolerances) -> Result<EriksenParts> {
    let eigen = HermitianEigen::new(h)?;
    check_gap(&eigen, tol)?;
    let lambda = sign_from_eigen(&eigen, tol)?;
    let dim = h.nrows();
    let beta = beta_lift(dim);
    let bl = &beta * lambda.matrix();
    let x = &bl + lambda.matrix() * &beta;
    let anticommutator = HermitianEigen::new(&x)?;
    let lowest = anticommutator.values.first().map_or(f64::INFINITY, |v| v + 2.0);
    if lowest < tol.gap_min {
        return Err(Error::EriksenDegeneracy { eigenvalue: lowest });
    }
    let inv_sqrt = anticommutator.map(|v| 1.0 / (2.0 + v).sqrt());
    let u = inv_sqrt * (identity(dim) + bl);
    Ok(EriksenParts { eigen, lambda, anticommutator, u })
}

/// Exact one-step FW transformation built from the sign operator.
pub fn eriksen(h: &CMat, tol: &Tolerances) -> Result<TransformResult> {
    let parts = eriksen_parts(h, tol)?;
    Ok(TransformResult::exact(Method::Eriksen, parts.u, h)
        .with_recipe("sign operator from a full eigendecomposition"))
}

/// `A+ = [1/2 + (beta lambda + lambda beta)/4]^(1/2)`; equal to `A-`.
pub fn normalization_operator(h: &CMat, tol: &Tolerances) -> Result<OperatorMatrix> {
    let parts = eriksen_parts(h, tol)?;
    let a = parts.anticommutator.map(|v| (0.5 + 0.25 * v).max(0.0).sqrt());
    Ok(OperatorMatrix::new(a, Role::Normalization))
}
