//! Generalized Melosh chain: a transverse boost-like rotation, then a
//! longitudinal one. Single momentum mode only.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{Method, TransformResult};
use crate::algebra::{beta_lift, dirac_matrices, identity, im, odd_part, re, spectral_norm, OperatorMatrix, Role};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeloshDirection {
    MeloshToFw,
    FwToMelosh,
}

/// `U_M = U_2 U_1` with `gamma = beta alpha`,
/// `U_1 = (eps + m + gamma.p_perp) / sqrt(2 eps (eps + m))`, `eps = sqrt(m^2 + p_perp^2)`,
/// `U_2 = (E + eps + gamma_z p_z) / sqrt(2E (E + eps))`.
/// The intermediate `H_1 = beta (eps + gamma_z p_z)` is stored in the metadata.
pub fn melosh(m: f64, p: [f64; 3]) -> Result<TransformResult> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidParameter { name: "mass", value: m });
    }
    let d = dirac_matrices();
    let id = identity(4);
    let eps = (m * m + p[0] * p[0] + p[1] * p[1]).sqrt();
    let e = (eps * eps + p[2] * p[2]).sqrt();
    let gamma_perp = d.gamma(0) * re(p[0]) + d.gamma(1) * re(p[1]);
    let u1 = (&id * re(eps + m) + gamma_perp) / re((2.0 * eps * (eps + m)).sqrt());
    let u2 = (&id * re(e + eps) + d.gamma(2) * re(p[2])) / re((2.0 * e * (e + eps)).sqrt());
    let h = &d.beta * re(m) + d.alpha_dot(p);
    let h1 = super::conjugate(&u1, &h);
    let mut result =
        TransformResult::exact(Method::Melosh, u2 * u1, &h).with_recipe("transverse then longitudinal stage");
    result.metadata.step_count = Some(2);
    result.metadata.transverse_energy = Some(eps);
    result.metadata.intermediate_off_block = Some(spectral_norm(&odd_part(&h1)));
    result.metadata.intermediate_hamiltonian = Some(h1);
    Ok(result)
}

/// `U_{M->FW} = (sqrt((E+eps)(eps+m)) + i sqrt((E-eps)(eps-m)) R) / sqrt(2 eps (E+m))`
/// with the spin rotation `R = (p_x Sigma_y - p_y Sigma_x)/|p_perp|`; the reverse
/// direction flips the sign of the `R` term. The square root
/// `sqrt((E-eps)(eps-m)) = |p_z| sqrt((eps-m)/(E+eps))` carries the sign of `p_z`:
/// the unsigned form is only right for `p_z >= 0`.
pub fn melosh_to_fw(m: f64, p: [f64; 3], direction: MeloshDirection, tol: &Tolerances) -> Result<OperatorMatrix> {
    let p_perp = (p[0] * p[0] + p[1] * p[1]).sqrt();
    if p_perp < tol.gap_min {
        return Err(Error::TransverseMomentumDegenerate { p_perp });
    }
    let d = dirac_matrices();
    let eps = (m * m + p_perp * p_perp).sqrt();
    let e = (eps * eps + p[2] * p[2]).sqrt();
    let r = (&d.sigma[1] * re(p[0]) - &d.sigma[0] * re(p[1])) / re(p_perp);
    let s = match direction {
        MeloshDirection::MeloshToFw => 1.0,
        MeloshDirection::FwToMelosh => -1.0,
    };
    let u = (identity(4) * re(((e + eps) * (eps + m)).sqrt())
        + r * im(s * p[2] * ((eps - m) / (e + eps)).sqrt()))
        / re((2.0 * eps * (e + m)).sqrt());
    Ok(OperatorMatrix::new(u, Role::Unitary))
}

/// Melosh followed by its FW correction. Along the z axis the correction tends to
/// the identity, which is used there in place of the undefined `R`.
pub fn melosh_then_fw(m: f64, p: [f64; 3], tol: &Tolerances) -> Result<TransformResult> {
    let first = melosh(m, p)?;
    let u = match melosh_to_fw(m, p, MeloshDirection::MeloshToFw, tol) {
        Ok(correction) => correction.matrix() * first.u.matrix(),
        Err(Error::TransverseMomentumDegenerate { .. }) => first.u.into_matrix(),
        Err(other) => return Err(other),
    };
    let h = beta_lift(4) * re(m) + dirac_matrices().alpha_dot(p);
    Ok(TransformResult::exact(Method::MeloshToFw, u, &h).with_recipe("spin rotation after the Melosh chain"))
}
