//! Verification battery: unitarity, block-diagonality, spectrum preservation,
//! the reduction condition against the Eriksen oracle, BCH residuals and
//! power-law scaling fits.

mod basis;
mod checks;
mod conformance;
mod eigensystem;
mod reduction;
mod scaling;

pub use basis::{fw_plane_wave_spinors, PlaneWaveBasis};
pub use checks::{
    bch_residual, check_block_diagonal, check_spectrum_preserved, check_unitary, BchResidual,
    BlockDiagonalResidual, SpectrumResidual, UnitarityResidual,
};
pub use conformance::{judge, Conformance, VIOLATION_FACTOR};
pub use eigensystem::{split_eigensystem, EnergySplitEigensystem, SpinorField};
pub use reduction::{check_reduction, ReductionOracle, ReductionVerdict, StateResidual};
pub use scaling::{order_scaling_fit, ScalingFit};
