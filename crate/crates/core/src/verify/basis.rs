#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::vec::Vec;

use super::eigensystem::split_eigensystem;
use crate::algebra::{identity, max_entry, re, CMat, CVec};
use crate::hamiltonian::{build_free, ScenarioSpec};
use crate::transform::u0_free;
use crate::{Result, Tolerances};

/// Free plane-wave spinors of one momentum mode carried to the FW representation.
#[derive(Debug, Clone)]
pub struct PlaneWaveBasis {
    pub positive: Vec<CVec>,
    pub negative: Vec<CVec>,
}

/// `U_0` applied to the positive- and negative-energy eigenvectors of
/// `beta m + alpha.p`.
pub fn fw_plane_wave_spinors(m: f64, p: [f64; 3], tol: &Tolerances) -> Result<PlaneWaveBasis> {
    let spec = ScenarioSpec::free_mode(m, p);
    let h = build_free(&spec)?;
    let es = split_eigensystem(h.h_full.matrix(), tol)?;
    let u0 = u0_free(&spec)?.u;
    let map = |states: &[(f64, super::SpinorField)]| -> Vec<CVec> {
        states.iter().map(|(_, s)| u0.matrix() * s.as_vector()).collect()
    };
    Ok(PlaneWaveBasis { positive: map(&es.positive), negative: map(&es.negative) })
}

impl PlaneWaveBasis {
    /// Largest entry of `<w_i, w_j> - delta_ij` over all four spinors.
    pub fn orthonormality_residual(&self) -> f64 {
        let all: Vec<&CVec> = self.positive.iter().chain(&self.negative).collect();
        let mut worst = 0.0f64;
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.dotc(b) - re(target)).norm_sqr().sqrt());
            }
        }
        worst
    }

    /// Largest entries of `sum_s U_s U_s^dag - (1 + beta)/2` and
    /// `sum_s V_s V_s^dag - (1 - beta)/2`.
    pub fn completeness_residuals(&self) -> (f64, f64) {
        let beta = crate::algebra::beta_lift(4);
        let sum = |vs: &[CVec]| vs.iter().fold(CMat::zeros(4, 4), |acc, v| acc + v * v.adjoint());
        let plus = (identity(4) + &beta) * re(0.5);
        let minus = (identity(4) - &beta) * re(0.5);
        (max_entry(&(sum(&self.positive) - plus)), max_entry(&(sum(&self.negative) - minus)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_waves_are_orthonormal_and_complete() {
        for p in [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.3, -0.7, 1.9]] {
            let b = fw_plane_wave_spinors(1.0, p, &Tolerances::MODE).unwrap();
            assert!(b.orthonormality_residual() < 1e-14);
            let (plus, minus) = b.completeness_residuals();
            assert!(plus < 1e-14 && minus < 1e-14, "{p:?}");
            for v in &b.positive {
                assert!(v.rows(2, 2).norm() < 1e-14);
            }
        }
    }
}
