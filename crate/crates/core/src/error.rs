use alloc::string::String;
use core::fmt;

use crate::hamiltonian::FieldName;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong while building or transforming a Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A matrix that must be Hermitian is not.
    NotHermitian { residual: f64, tol: f64 },
    /// A matrix that must be unitary is not.
    NotUnitary { residual: f64, tol: f64 },
    /// An eigenvalue sits closer to zero than the configured gap.
    SpectralGap { eigenvalue: f64, gap_min: f64 },
    /// `2 + beta*lambda + lambda*beta` is not positive-definite.
    EriksenDegeneracy { eigenvalue: f64 },
    /// `[even, odd]` is too large for the commuting-case transform.
    CommutingPrecondition { commutator_norm: f64, tol: f64 },
    /// The transverse momentum is too small to define the Melosh rotation axis.
    TransverseMomentumDegenerate { p_perp: f64 },
    /// Lattice parameters are unusable.
    InvalidLattice { n_points: usize, length: f64 },
    /// A field profile required by the scenario is missing.
    MissingProfile(FieldName),
    /// A metric profile is not strictly positive on the grid.
    NonPositiveProfile { field: FieldName, min_value: f64 },
    /// The supercharge algebra does not hold.
    SusyViolation { residual: f64 },
    /// Operands have incompatible shapes.
    DimensionMismatch { expected: usize, found: usize },
    /// A scalar parameter is out of its domain.
    InvalidParameter { name: &'static str, value: f64 },
    /// The operation cannot be applied to this scenario or backend.
    Unsupported(String),
    /// Scaling fits need strictly positive samples.
    NonPositiveSample { index: usize, value: f64 },
    /// Not enough samples for a fit.
    TooFewSamples { found: usize, needed: usize },
    /// The dense Hermitian eigensolver did not converge.
    EigenSolver { dim: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { residual, tol } => {
                write!(f, "matrix is not Hermitian: residual {residual:.3e} exceeds {tol:.1e}")
            }
            Error::NotUnitary { residual, tol } => {
                write!(f, "matrix is not unitary: residual {residual:.3e} exceeds {tol:.1e}")
            }
            Error::SpectralGap { eigenvalue, gap_min } => write!(
                f,
                "spectral gap violation: eigenvalue {eigenvalue:.3e} within {gap_min:.1e} of zero"
            ),
            Error::EriksenDegeneracy { eigenvalue } => write!(
                f,
                "Eriksen degeneracy: 2 + beta*lambda + lambda*beta has eigenvalue {eigenvalue:.3e}"
            ),
            Error::CommutingPrecondition { commutator_norm, tol } => write!(
                f,
                "commuting-case precondition violated: |[E, O]| = {commutator_norm:.3e} > {tol:.1e}"
            ),
            Error::TransverseMomentumDegenerate { p_perp } => {
                write!(f, "transverse momentum degenerate: |p_perp| = {p_perp:.3e}")
            }
            Error::InvalidLattice { n_points, length } => write!(
                f,
                "invalid lattice: need an even n_points >= 8 and length > 0, got ({n_points}, {length})"
            ),
            Error::MissingProfile(name) => write!(f, "missing field profile `{}`", name.as_str()),
            Error::NonPositiveProfile { field, min_value } => write!(
                f,
                "metric profile `{}` must be strictly positive, minimum is {min_value:.3e}",
                field.as_str()
            ),
            Error::SusyViolation { residual } => {
                write!(f, "supersymmetry structure violated: residual {residual:.3e}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidParameter { name, value } => {
                write!(f, "parameter `{name}` out of range: {value}")
            }
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::NonPositiveSample { index, value } => {
                write!(f, "sample {index} is not strictly positive ({value:.3e})")
            }
            Error::TooFewSamples { found, needed } => {
                write!(f, "need at least {needed} samples, got {found}")
            }
            Error::EigenSolver { dim } => {
                write!(f, "Hermitian eigensolver did not converge (dim {dim})")
            }
        }
    }
}

impl core::error::Error for Error {}
