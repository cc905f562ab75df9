//! Representation-changing unitaries and the Hamiltonians they produce.
//!
//! Each transform returns a [`TransformResult`] holding the operator `U` and the
//! transformed Hamiltonian. Exact transforms report `U H U^dag`; the truncated
//! series transforms report their own truncated Hamiltonian and carry
//! `exact = false`.

mod ek;
mod exact;
mod melosh;
mod method;
mod perturbative;
mod stepwise;
mod susy;

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{CMat, OperatorMatrix, Role};
use crate::hamiltonian::{build, ScenarioSpec, SplitHamiltonian, SusyTriple};
use crate::{Error, Result, Tolerances};

pub use ek::{ek, ek_then_fw, ek_to_fw, heidenreich};
pub use exact::{eriksen, eriksen_parts, fw_commuting, normalization_operator, u0_free, EriksenParts};
pub use melosh::{melosh, melosh_then_fw, melosh_to_fw, MeloshDirection};
pub use method::{Expectation, Method, ParseMethodError, Su2Sign};
pub use perturbative::{perturbative_electrostatic, perturbative_gravity};
pub use stepwise::{stepwise_fw, StepwiseSchedule};
pub use susy::su2_susy;

/// Method-specific values recorded alongside a transform.
#[derive(Debug, Clone, Default)]
pub struct TransformMetadata {
    /// How the operator was assembled, in words.
    pub recipe: Option<&'static str>,
    pub step_count: Option<usize>,
    /// Orders retained by a truncated series.
    pub truncation: Option<&'static str>,
    /// Size of the neglected orders for a truncated series; the reduction check of
    /// such a transform is judged against this instead of the roundoff threshold.
    pub truncation_tolerance: Option<f64>,
    pub sign: Option<Su2Sign>,
    /// Transverse energy `sqrt(m^2 + p_perp^2)` of the Melosh chain.
    pub transverse_energy: Option<f64>,
    /// Off-block norm of an intermediate Hamiltonian, when the transform has one.
    pub intermediate_off_block: Option<f64>,
    pub intermediate_hamiltonian: Option<CMat>,
    /// Block-diagonal truncation of the transformed Hamiltonian (odd remainder
    /// dropped), as the step-by-step recipe prescribes.
    pub block_truncated: Option<CMat>,
    pub notes: Vec<String>,
}

/// A unitary, the Hamiltonian it produces and what produced it.
#[derive(Debug, Clone)]
pub struct TransformResult {
    pub method: Method,
    pub u: OperatorMatrix,
    pub h_transformed: OperatorMatrix,
    /// `false` for truncated series: their `U` is unitary, and their Hamiltonian
    /// equals `U H U^dag`, only through the retained order.
    pub exact: bool,
    pub metadata: TransformMetadata,
}

impl TransformResult {
    fn exact(method: Method, u: CMat, h: &CMat) -> Self {
        let h_transformed = conjugate(&u, h);
        Self {
            method,
            u: OperatorMatrix::new(u, Role::Unitary),
            h_transformed: OperatorMatrix::new(h_transformed, Role::Hamiltonian),
            exact: true,
            metadata: TransformMetadata::default(),
        }
    }

    fn with_recipe(mut self, recipe: &'static str) -> Self {
        self.metadata.recipe = Some(recipe);
        self
    }
}

/// `U H U^dag`, made exactly Hermitian.
pub fn conjugate(u: &CMat, h: &CMat) -> CMat {
    let mut out = u * h * u.adjoint();
    crate::algebra::symmetrize(&mut out);
    out
}

/// A built scenario: everything a transform may need.
#[derive(Debug, Clone)]
pub struct Context {
    pub spec: ScenarioSpec,
    pub split: SplitHamiltonian,
    pub susy: Option<SusyTriple>,
    pub tol: Tolerances,
}

impl Context {
    pub fn new(spec: ScenarioSpec, tol: Tolerances) -> Result<Self> {
        let (split, susy) = build(&spec)?;
        Ok(Self { spec, split, susy, tol })
    }

    pub fn hamiltonian(&self) -> &CMat {
        self.split.h_full.matrix()
    }

    /// Runs one transform on this scenario.
    pub fn apply(&self, method: Method) -> Result<TransformResult> {
        method.check_applicable(&self.spec)?;
        let tol = &self.tol;
        let h = self.hamiltonian();
        match method {
            Method::U0Free => u0_free(&self.spec),
            Method::FwCommuting => fw_commuting(&self.split, tol),
            Method::Eriksen => eriksen(h, tol),
            Method::Stepwise { steps } => stepwise_fw(&self.split, steps, tol).map(|(r, _)| r),
            Method::PerturbativeElectrostatic => perturbative_electrostatic(&self.spec),
            Method::PerturbativeGravity => perturbative_gravity(&self.spec),
            Method::Su2Susy(sign) => {
                let triple = self.susy.as_ref().ok_or_else(|| {
                    Error::Unsupported("su2-susy needs a susy-fields scenario".into())
                })?;
                su2_susy(triple, sign, tol)
            }
            Method::Ek => ek(h, tol),
            Method::EkToFw => ek_then_fw(&self.spec, h, tol),
            Method::Melosh => melosh(self.spec.mass, self.spec.momentum),
            Method::MeloshToFw => melosh_then_fw(self.spec.mass, self.spec.momentum, tol),
            Method::Heidenreich => heidenreich(&self.spec, &self.split, tol),
        }
    }
}
