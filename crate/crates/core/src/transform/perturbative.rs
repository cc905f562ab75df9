//! Truncated FW series: linear in the external field, through `p^2/m^2`.
//!
//! In one dimension `alpha.p -> alpha_x p`, gradients become `i[p, f]` (the
//! lattice-consistent derivative) and the spin-orbit terms `Sigma.(phi x p)` vanish.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{Method, TransformMetadata, TransformResult};
use crate::algebra::{dirac_matrices, identity, im, re, CMat, OperatorMatrix, Role};
use crate::hamiltonian::{FieldName, ScenarioKind, ScenarioSpec};
use crate::lattice::{kron_spinor, Lattice1D};
use crate::{Error, Result};

fn require(spec: &ScenarioSpec, kind: ScenarioKind) -> Result<&Lattice1D> {
    spec.validate()?;
    if spec.kind != kind {
        return Err(Error::Unsupported(alloc::format!(
            "perturbative-{} needs the matching scenario",
            kind.as_str()
        )));
    }
    spec.require_lattice()
}

fn max_momentum(lat: &Lattice1D) -> f64 {
    lat.momenta().iter().fold(0.0, |a: f64, p| a.max(p.abs()))
}

fn max_deviation(samples: &[f64], from: f64) -> f64 {
    samples.iter().fold(0.0, |a: f64, v| a.max((v - from).abs()))
}

/// `i [p, X]`.
fn derivative(p: &CMat, x: &CMat) -> CMat {
    (p * x - x * p) * im(1.0)
}

fn result(method: Method, u: CMat, h: CMat, truncation: &'static str, tau: f64) -> TransformResult {
    TransformResult {
        method,
        u: OperatorMatrix::new(u, Role::Unitary),
        h_transformed: OperatorMatrix::new(h, Role::Hamiltonian),
        exact: false,
        metadata: TransformMetadata {
            recipe: Some("truncated series, assembled term by term"),
            truncation: Some(truncation),
            truncation_tolerance: Some(tau),
            ..Default::default()
        },
    }
}

/// Electrostatic potential:
/// `U = 1 + beta alpha.p/2m - p^2/8m^2 - (ie/4m^2) alpha.A0'
///      - (ie beta/16m^3)[(alpha.p)(alpha.A0') - (alpha.A0')(alpha.p)]`,
/// `H = beta m + beta p^2/2m + e A0 + (ie/8m^2)[(alpha.p)(alpha.A0') - (alpha.A0')(alpha.p)]`.
pub fn perturbative_electrostatic(spec: &ScenarioSpec) -> Result<TransformResult> {
    let lat = require(spec, ScenarioKind::Electrostatic)?;
    let a0_profile = spec.profile(FieldName::A0).ok_or(Error::MissingProfile(FieldName::A0))?;
    let (m, e) = (spec.mass, spec.coupling);
    let d = dirac_matrices();
    let i4 = identity(4);
    let p = lat.momentum_operator();
    let p2 = &p * &p;
    let a0 = lat.position_multiplier(a0_profile);
    let g = derivative(&p, &a0);
    let pg = &p * &g - &g * &p;

    let u = identity(lat.spinor_dim())
        + kron_spinor(&(&d.beta * &d.alpha[0]), &p) / re(2.0 * m)
        - kron_spinor(&i4, &p2) / re(8.0 * m * m)
        - kron_spinor(&d.alpha[0], &g) * im(e / (4.0 * m * m))
        - kron_spinor(&d.beta, &pg) * im(e / (16.0 * m * m * m));
    let h = kron_spinor(&d.beta, &(identity(lat.n_points()) * re(m) + &p2 / re(2.0 * m)))
        + kron_spinor(&i4, &(a0 * re(e) + pg * im(e / (8.0 * m * m))));

    let amp = max_deviation(&lat.sample(a0_profile), 0.0);
    let tau = (max_momentum(lat) / m).powi(3) + (e * amp / m).powi(2);
    Ok(result(Method::PerturbativeElectrostatic, u, h, "linear in e, through p^2/m^2", tau))
}

/// Static metric `H = beta m V + {alpha.p, F}/2`, first order in `V - 1`, `F - 1`:
/// `U = 1 + beta alpha.p/2m - p^2/8m^2 + (beta/4m){F - V, alpha.p}
///      - [(F - V)p^2 + 2 alpha.p (F - V) alpha.p + p^2 (F - V)]/16m^2`,
/// `H = beta m + beta p^2/2m + beta m(V - 1) - (beta/4m){p^2, V - 1}
///      + (beta/2m){p^2, F - 1} - (beta/8m) V'' + (beta/4m) F''`.
pub fn perturbative_gravity(spec: &ScenarioSpec) -> Result<TransformResult> {
    let lat = require(spec, ScenarioKind::Gravity)?;
    let v_profile = spec.profile(FieldName::V).ok_or(Error::MissingProfile(FieldName::V))?;
    let f_profile = spec.profile(FieldName::F).ok_or(Error::MissingProfile(FieldName::F))?;
    let m = spec.mass;
    let n = lat.n_points();
    let d = dirac_matrices();
    let i4 = identity(4);
    let i_n = identity(n);
    let p = lat.momentum_operator();
    let p2 = &p * &p;
    let v = lat.position_multiplier(v_profile);
    let f = lat.position_multiplier(f_profile);
    let w = kron_spinor(&i4, &(&f - &v));
    let ap = kron_spinor(&d.alpha[0], &p);
    let p2l = kron_spinor(&i4, &p2);
    let beta = kron_spinor(&d.beta, &i_n);

    let u = identity(lat.spinor_dim()) + &beta * &ap / re(2.0 * m) - &p2l / re(8.0 * m * m)
        + &beta * (&w * &ap + &ap * &w) / re(4.0 * m)
        - (&w * &p2l + &ap * &w * &ap * re(2.0) + &p2l * &w) / re(16.0 * m * m);

    let vm1 = &v - &i_n;
    let fm1 = &f - &i_n;
    let anti = |x: &CMat| &p2 * x + x * &p2;
    let even = &i_n * re(m) + &p2 / re(2.0 * m) + &vm1 * re(m) - anti(&vm1) / re(4.0 * m)
        + anti(&fm1) / re(2.0 * m)
        - derivative(&p, &derivative(&p, &v)) / re(8.0 * m)
        + derivative(&p, &derivative(&p, &f)) / re(4.0 * m);
    let h = kron_spinor(&d.beta, &even);

    let a = max_deviation(&lat.sample(v_profile), 1.0).max(max_deviation(&lat.sample(f_profile), 1.0));
    let tau = (max_momentum(lat) / m).powi(3) + a * a;
    Ok(result(
        Method::PerturbativeGravity,
        u,
        h,
        "first order in V - 1 and F - 1, through p^2/m^2",
        tau,
    ))
}
