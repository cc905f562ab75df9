//! Eriksen-Kolsrud type transformations built on `J = i gamma5 beta`.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use core::f64::consts::FRAC_1_SQRT_2;

use super::{Method, TransformResult};
use crate::algebra::{
    beta_lift, dirac_matrices, identity, im, lift, re, sign_operator, CMat, HermitianEigen,
    OperatorMatrix, Role,
};
use crate::hamiltonian::{Backend, FieldName, ScenarioKind, ScenarioSpec, SplitHamiltonian};
use crate::lattice::kron_spinor;
use crate::{Error, Result, Tolerances};

/// `U_EK = (1 - beta J)/sqrt2 * (1 - J lambda)/sqrt2`.
///
/// The `J lambda` stage acts first and carries the minus sign; with the other
/// ordering the product does not remove the odd part. Needs `{J, H} = 0`, which
/// holds for the free, SUSY and metric Hamiltonians but not for a scalar potential.
pub fn ek(h: &CMat, tol: &Tolerances) -> Result<TransformResult> {
    let dim = h.nrows();
    let lambda = sign_operator(h, tol)?;
    let j = lift(&dirac_matrices().j, dim);
    let id = identity(dim);
    let u1 = (&id - &j * lambda.matrix()) * re(FRAC_1_SQRT_2);
    let u2 = (&id - beta_lift(dim) * &j) * re(FRAC_1_SQRT_2);
    let u = OperatorMatrix::validated(u2 * u1, Role::Unitary, tol)?;
    Ok(TransformResult::exact(Method::Ek, u.into_matrix(), h)
        .with_recipe("two involution stages: J lambda, then beta J"))
}

/// Free-particle correction `sqrt((E+m)/2E) (1 - i beta Sigma.p / (E+m))` taking
/// the EK representation to the FW one.
pub fn ek_to_fw(spec: &ScenarioSpec) -> Result<OperatorMatrix> {
    spec.validate()?;
    if spec.kind != ScenarioKind::Free {
        return Err(Error::Unsupported("ek-to-fw needs the free scenario".into()));
    }
    let m = spec.mass;
    let d = dirac_matrices();
    let c = move |p: f64| {
        let e = (m * m + p * p).sqrt();
        ((e + m) / (2.0 * e)).sqrt()
    };
    let g = move |p: f64| {
        let e = (m * m + p * p).sqrt();
        1.0 / (2.0 * e * (e + m)).sqrt()
    };
    let u = match spec.backend {
        Backend::MomentumMode => {
            let p = spec.momentum;
            let pn = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            identity(4) * re(c(pn)) - &d.beta * d.sigma_dot(p) * im(g(pn))
        }
        Backend::Lattice => {
            let lat = spec.require_lattice()?;
            kron_spinor(&identity(4), &lat.function_of_momentum(c))
                - kron_spinor(&(&d.beta * &d.sigma[0]), &lat.function_of_momentum(move |p| p * g(p)))
                    * im(1.0)
        }
    };
    Ok(OperatorMatrix::new(u, Role::Unitary))
}

/// EK followed by its FW correction.
pub fn ek_then_fw(spec: &ScenarioSpec, h: &CMat, tol: &Tolerances) -> Result<TransformResult> {
    let first = ek(h, tol)?;
    let correction = ek_to_fw(spec)?;
    let u = correction.matrix() * first.u.matrix();
    Ok(TransformResult::exact(Method::EkToFw, u, h).with_recipe("free-particle spin correction after EK"))
}

/// `U = (1 + beta Q/|Q|)/sqrt2 * (1 + i gamma5)/sqrt2` with
/// `Q = {alpha.p, F}/2 + i gamma5 beta m V` on the static-metric Hamiltonian.
pub fn heidenreich(spec: &ScenarioSpec, split: &SplitHamiltonian, tol: &Tolerances) -> Result<TransformResult> {
    if spec.kind != ScenarioKind::Gravity {
        return Err(Error::Unsupported("heidenreich needs the gravity scenario".into()));
    }
    let lat = spec.require_lattice()?;
    let v = lat.position_multiplier(spec.profile(FieldName::V).ok_or(Error::MissingProfile(FieldName::V))?);
    let d = dirac_matrices();
    let dim = split.dim();
    let q = &split.odd_part + kron_spinor(&d.j, &(v * re(spec.mass)));
    let q2 = HermitianEigen::new(&(&q * &q))?;
    let lowest = q2.values.first().copied().unwrap_or(f64::INFINITY);
    if lowest < tol.gap_min {
        return Err(Error::SpectralGap { eigenvalue: lowest, gap_min: tol.gap_min });
    }
    let sign = &q * q2.map(|x| 1.0 / x.sqrt());
    let id = identity(dim);
    let first = (&id + lift(&d.gamma5, dim) * im(1.0)) * re(FRAC_1_SQRT_2);
    let second = (&id + beta_lift(dim) * sign) * re(FRAC_1_SQRT_2);
    let u = OperatorMatrix::validated(second * first, Role::Unitary, tol)?;
    Ok(TransformResult::exact(Method::Heidenreich, u.into_matrix(), split.h_full.matrix())
        .with_recipe("supercharge sign rotation after a chiral phase"))
}
