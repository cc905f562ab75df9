//! Scenario descriptions and the Dirac Hamiltonians built from them, split as
//! `H = beta m + even + odd`.

use alloc::collections::BTreeMap;
use alloc::format;

use crate::algebra::{
    anticommutator, beta_lift, dirac_matrices, identity, im, max_entry, re, spectral_norm, CMat,
    OperatorMatrix, Role,
};
use crate::lattice::{kron_spinor, FieldProfile, Lattice1D};
use crate::{Error, Result, Tolerances};

/// Named external fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FieldName {
    A0,
    Ax,
    #[cfg_attr(feature = "serde", serde(rename = "eps_x"))]
    EpsX,
    A5,
    #[cfg_attr(feature = "serde", serde(rename = "eps5"))]
    Eps5,
    V,
    F,
}

impl FieldName {
    pub const ALL: [FieldName; 7] = [
        FieldName::A0,
        FieldName::Ax,
        FieldName::EpsX,
        FieldName::A5,
        FieldName::Eps5,
        FieldName::V,
        FieldName::F,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FieldName::A0 => "A0",
            FieldName::Ax => "Ax",
            FieldName::EpsX => "eps_x",
            FieldName::A5 => "A5",
            FieldName::Eps5 => "eps5",
            FieldName::V => "V",
            FieldName::F => "F",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ScenarioKind {
    Free,
    Electrostatic,
    SusyFields,
    Gravity,
}

impl ScenarioKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Free => "free",
            ScenarioKind::Electrostatic => "electrostatic",
            ScenarioKind::SusyFields => "susy-fields",
            ScenarioKind::Gravity => "gravity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Backend {
    /// One plane-wave mode with a numeric momentum: 4x4 matrices.
    MomentumMode,
    /// Periodic 1-D lattice: 4N x 4N matrices.
    Lattice,
}

/// Declarative description of one physical setup.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScenarioSpec {
    #[cfg_attr(feature = "serde", serde(rename = "scenario"))]
    pub kind: ScenarioKind,
    pub mass: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub coupling: f64,
    /// Only read by the momentum-mode backend.
    #[cfg_attr(feature = "serde", serde(default))]
    pub momentum: [f64; 3],
    #[cfg_attr(feature = "serde", serde(default))]
    pub profiles: BTreeMap<FieldName, FieldProfile>,
    pub backend: Backend,
    #[cfg_attr(feature = "serde", serde(default))]
    pub lattice: Option<Lattice1D>,
}

impl ScenarioSpec {
    pub fn free_mode(mass: f64, momentum: [f64; 3]) -> Self {
        Self {
            kind: ScenarioKind::Free,
            mass,
            coupling: 0.0,
            momentum,
            profiles: BTreeMap::new(),
            backend: Backend::MomentumMode,
            lattice: None,
        }
    }

    fn on_lattice(kind: ScenarioKind, mass: f64, lattice: Lattice1D) -> Self {
        Self {
            kind,
            mass,
            coupling: 0.0,
            momentum: [0.0; 3],
            profiles: BTreeMap::new(),
            backend: Backend::Lattice,
            lattice: Some(lattice),
        }
    }

    pub fn free_lattice(mass: f64, lattice: Lattice1D) -> Self {
        Self::on_lattice(ScenarioKind::Free, mass, lattice)
    }

    pub fn electrostatic(mass: f64, coupling: f64, a0: FieldProfile, lattice: Lattice1D) -> Self {
        let mut s = Self::on_lattice(ScenarioKind::Electrostatic, mass, lattice);
        s.coupling = coupling;
        s.profiles.insert(FieldName::A0, a0);
        s
    }

    /// SUSY scenario with only `eps_x = m omega (L / 2 pi) sin(2 pi x / L)`: an odd,
    /// smooth, periodic stand-in for the oscillator's `m omega x`.
    pub fn dirac_oscillator(mass: f64, omega: f64, lattice: Lattice1D) -> Self {
        let amplitude = mass * omega * lattice.length() / (2.0 * core::f64::consts::PI);
        let mut s = Self::on_lattice(ScenarioKind::SusyFields, mass, lattice);
        s.profiles.insert(FieldName::EpsX, FieldProfile::sine(amplitude, 1));
        s
    }

    pub fn gravity(mass: f64, v: FieldProfile, f: FieldProfile, lattice: Lattice1D) -> Self {
        let mut s = Self::on_lattice(ScenarioKind::Gravity, mass, lattice);
        s.profiles.insert(FieldName::V, v);
        s.profiles.insert(FieldName::F, f);
        s
    }

    /// `4` or `4N`.
    pub fn dim(&self) -> usize {
        match (self.backend, self.lattice) {
            (Backend::Lattice, Some(l)) => l.spinor_dim(),
            _ => 4,
        }
    }

    pub fn default_tolerances(&self) -> Tolerances {
        Tolerances::for_dim(self.dim())
    }

    pub fn profile(&self, name: FieldName) -> Option<&FieldProfile> {
        self.profiles.get(&name)
    }

    fn require_profile(&self, name: FieldName) -> Result<&FieldProfile> {
        self.profile(name).ok_or(Error::MissingProfile(name))
    }

    /// The lattice of a lattice-backend scenario.
    pub fn require_lattice(&self) -> Result<&Lattice1D> {
        match (self.backend, &self.lattice) {
            (Backend::Lattice, Some(l)) => Ok(l),
            (Backend::Lattice, None) => Err(Error::Unsupported("lattice backend without a lattice".into())),
            (Backend::MomentumMode, _) => Err(Error::Unsupported(format!(
                "the {} scenario needs the lattice backend",
                self.kind.as_str()
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::InvalidParameter { name: "mass", value: self.mass });
        }
        if !self.coupling.is_finite() {
            return Err(Error::InvalidParameter { name: "coupling", value: self.coupling });
        }
        if self.kind != ScenarioKind::Free && self.backend != Backend::Lattice {
            return Err(Error::Unsupported(format!("the {} scenario needs the lattice backend", self.kind.as_str())));
        }
        if self.backend == Backend::Lattice {
            self.require_lattice()?;
        }
        let required: &[FieldName] = match self.kind {
            ScenarioKind::Electrostatic => &[FieldName::A0],
            ScenarioKind::Gravity => &[FieldName::V, FieldName::F],
            ScenarioKind::Free | ScenarioKind::SusyFields => &[],
        };
        for &name in required {
            let profile = self.require_profile(name)?;
            if self.kind == ScenarioKind::Gravity {
                let samples = self.require_lattice()?.sample(profile);
                let min_value = samples.iter().copied().fold(f64::INFINITY, f64::min);
                if min_value <= 0.0 {
                    return Err(Error::NonPositiveProfile { field: name, min_value });
                }
            }
        }
        Ok(())
    }
}

/// `H = beta m + even + odd` with every piece stored explicitly.
#[derive(Debug, Clone)]
pub struct SplitHamiltonian {
    pub h_full: OperatorMatrix,
    /// Commutes with `beta`.
    pub even_part: CMat,
    /// Anticommutes with `beta`.
    pub odd_part: CMat,
    pub mass_term: CMat,
    pub mass: f64,
}

impl SplitHamiltonian {
    fn assemble(mass: f64, even_part: CMat, odd_part: CMat) -> Self {
        let dim = odd_part.nrows();
        let mass_term = beta_lift(dim) * re(mass);
        let h = &mass_term + &even_part + &odd_part;
        Self { h_full: OperatorMatrix::new(h, Role::Hamiltonian), even_part, odd_part, mass_term, mass }
    }

    pub fn dim(&self) -> usize {
        self.h_full.dim()
    }

    pub fn beta(&self) -> CMat {
        beta_lift(self.dim())
    }

    /// Largest violation of `[beta, even] = 0`, `{beta, odd} = 0` and
    /// `H = beta m + even + odd`.
    pub fn split_residual(&self) -> f64 {
        let b = self.beta();
        let c = &b * &self.even_part - &self.even_part * &b;
        let a = anticommutator(&b, &self.odd_part);
        let sum = &self.mass_term + &self.even_part + &self.odd_part - self.h_full.matrix();
        max_entry(&c).max(max_entry(&a)).max(max_entry(&sum))
    }
}

/// Supercharges `Q = [[0, 0], [M, 0]]`, `Q^dag` and the even part `Lambda`.
#[derive(Debug, Clone)]
pub struct SusyTriple {
    pub q: CMat,
    pub q_dag: CMat,
    pub lambda_even: CMat,
    pub m_block: CMat,
}

impl SusyTriple {
    pub fn from_m_block(m_block: CMat, lambda_even: CMat) -> Self {
        let h = m_block.nrows();
        let mut q = CMat::zeros(2 * h, 2 * h);
        q.view_mut((h, 0), (h, h)).copy_from(&m_block);
        let q_dag = q.adjoint();
        Self { q, q_dag, lambda_even, m_block }
    }

    /// `{Q, Q^dag} = diag(M^dag M, M M^dag)`.
    pub fn anticommutator(&self) -> CMat {
        anticommutator(&self.q, &self.q_dag)
    }

    /// `max(|{Q, Lambda}|, |{Q^dag, Lambda}|)`.
    pub fn algebra_residual(&self) -> f64 {
        spectral_norm(&anticommutator(&self.q, &self.lambda_even))
            .max(spectral_norm(&anticommutator(&self.q_dag, &self.lambda_even)))
    }
}

/// Dispatches on the scenario kind. The SUSY triple is returned for the
/// susy-fields scenario only.
pub fn build(spec: &ScenarioSpec) -> Result<(SplitHamiltonian, Option<SusyTriple>)> {
    match spec.kind {
        ScenarioKind::Free => build_free(spec).map(|h| (h, None)),
        ScenarioKind::Electrostatic => build_electrostatic(spec).map(|h| (h, None)),
        ScenarioKind::SusyFields => build_susy(spec).map(|(h, t)| (h, Some(t))),
        ScenarioKind::Gravity => build_gravity(spec).map(|h| (h, None)),
    }
}

fn expect_kind(spec: &ScenarioSpec, kind: ScenarioKind) -> Result<()> {
    spec.validate()?;
    if spec.kind != kind {
        return Err(Error::Unsupported(format!(
            "expected a {} scenario, got {}",
            kind.as_str(),
            spec.kind.as_str()
        )));
    }
    Ok(())
}

/// `beta m + alpha . p`, with `alpha_x p` on the lattice.
pub fn build_free(spec: &ScenarioSpec) -> Result<SplitHamiltonian> {
    expect_kind(spec, ScenarioKind::Free)?;
    let d = dirac_matrices();
    let odd = match spec.backend {
        Backend::MomentumMode => d.alpha_dot(spec.momentum),
        Backend::Lattice => kron_spinor(&d.alpha[0], &spec.require_lattice()?.momentum_operator()),
    };
    let dim = odd.nrows();
    Ok(SplitHamiltonian::assemble(spec.mass, CMat::zeros(dim, dim), odd))
}

/// `beta m + alpha_x p + e A0(x)`.
pub fn build_electrostatic(spec: &ScenarioSpec) -> Result<SplitHamiltonian> {
    expect_kind(spec, ScenarioKind::Electrostatic)?;
    let lat = spec.require_lattice()?;
    let a0 = lat.position_multiplier(spec.require_profile(FieldName::A0)?);
    let d = dirac_matrices();
    let even = kron_spinor(&identity(4), &a0) * re(spec.coupling);
    let odd = kron_spinor(&d.alpha[0], &lat.momentum_operator());
    Ok(SplitHamiltonian::assemble(spec.mass, even, odd))
}

/// `H = beta m + Q + Q^dag` with
/// `M = sigma_x (p + A_x - i eps_x) - i (A_5 - i eps_5)` on the 2N-spinor space.
/// Absent profiles count as zero.
pub fn build_susy(spec: &ScenarioSpec) -> Result<(SplitHamiltonian, SusyTriple)> {
    expect_kind(spec, ScenarioKind::SusyFields)?;
    let lat = spec.require_lattice()?;
    let n = lat.n_points();
    let field = |name| match spec.profile(name) {
        Some(f) => lat.position_multiplier(f),
        None => CMat::zeros(n, n),
    };
    let sx = &crate::algebra::pauli_matrices()[0];
    let i2 = identity(2);
    let vector = lat.momentum_operator() + field(FieldName::Ax) - field(FieldName::EpsX) * im(1.0);
    let axial = field(FieldName::A5) - field(FieldName::Eps5) * im(1.0);
    let m_block = sx.kronecker(&vector) - i2.kronecker(&axial) * im(1.0);

    let dim = 4 * n;
    let lambda = beta_lift(dim) * re(spec.mass);
    let triple = SusyTriple::from_m_block(m_block, lambda);
    let tol = spec.default_tolerances();
    let residual = triple.algebra_residual();
    if residual > tol.hermitian * (1.0 + spec.mass) {
        return Err(Error::SusyViolation { residual });
    }
    let odd = &triple.q + &triple.q_dag;
    let split = SplitHamiltonian::assemble(spec.mass, CMat::zeros(dim, dim), odd);
    Ok((split, triple))
}

/// `H = beta m V + (1/2){alpha_x p, F}`. The reported split keeps `beta m` as the
/// mass term, so the even part is `beta m (V - 1)`.
pub fn build_gravity(spec: &ScenarioSpec) -> Result<SplitHamiltonian> {
    expect_kind(spec, ScenarioKind::Gravity)?;
    let lat = spec.require_lattice()?;
    let n = lat.n_points();
    let v = lat.position_multiplier(spec.require_profile(FieldName::V)?);
    let f = lat.position_multiplier(spec.require_profile(FieldName::F)?);
    let p = lat.momentum_operator();
    let d = dirac_matrices();
    let even = kron_spinor(&d.beta, &((v - identity(n)) * re(spec.mass)));
    let odd = kron_spinor(&d.alpha[0], &((&p * &f + &f * &p) * re(0.5)));
    Ok(SplitHamiltonian::assemble(spec.mass, even, odd))
}
