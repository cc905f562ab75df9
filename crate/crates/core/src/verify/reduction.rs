use alloc::vec::Vec;

use super::eigensystem::EnergySplitEigensystem;
use crate::algebra::{spectral_norm, CMat};
use crate::transform::eriksen_parts;
use crate::{Result, Tolerances};

/// Residuals of one Dirac eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StateResidual {
    pub energy: f64,
    /// Index into the degeneracy groups of the eigensystem.
    pub group: usize,
    /// Norm of the spinor half that must vanish: lower for positive energy, upper
    /// for negative energy.
    pub spinor_residual: f64,
    /// `|(U - U_E) V_g|_2` over the state's degeneracy group.
    pub oracle_mismatch: f64,
    /// Sine of the largest principal angle between `span(U V_g)` and `span(U_E V_g)`.
    pub subspace_distance: f64,
}

/// Outcome of the reduction check for one candidate operator.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReductionVerdict {
    pub passed: bool,
    pub threshold: f64,
    pub max_lower_residual: f64,
    pub max_upper_residual: f64,
    pub max_oracle_mismatch: f64,
    /// Recorded but not part of the verdict: two operators that differ by a
    /// rotation inside a degenerate level span the same subspaces.
    pub max_subspace_distance: f64,
    pub per_state: Vec<StateResidual>,
}

/// The Eriksen operator and the eigensystem of one Hamiltonian, shared by every
/// candidate checked against it.
#[derive(Debug, Clone)]
pub struct ReductionOracle {
    pub eigensystem: EnergySplitEigensystem,
    pub u_eriksen: CMat,
}

impl ReductionOracle {
    pub fn new(h: &CMat, tol: &Tolerances) -> Result<Self> {
        let parts = eriksen_parts(h, tol)?;
        let eigensystem = EnergySplitEigensystem::from_eigen(&parts.eigen, tol)?;
        Ok(Self { eigensystem, u_eriksen: parts.u })
    }

    /// Every positive-energy eigenstate must lose its lower spinor under `u`, every
    /// negative-energy one its upper spinor, and `u` must act on each degenerate
    /// level exactly as the Eriksen operator does. Passes when all three maxima
    /// are below `threshold`.
    pub fn check(&self, u: &CMat, threshold: f64) -> ReductionVerdict {
        let es = &self.eigensystem;
        let dim = es.dim();
        let half = dim / 2;
        let mapped = u * &es.vectors;
        let mapped_oracle = &self.u_eriksen * &es.vectors;

        let mut per_state = Vec::with_capacity(dim);
        let (mut lower, mut upper, mut mismatch, mut distance) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for (g, range) in es.degeneracy_groups.iter().enumerate() {
            let width = range.len();
            let a = mapped.columns(range.start, width);
            let b = mapped_oracle.columns(range.start, width);
            let group_mismatch = spectral_norm(&(a - b));
            let group_distance = subspace_distance(&a.into_owned(), &b.into_owned());
            mismatch = mismatch.max(group_mismatch);
            distance = distance.max(group_distance);
            for k in range.clone() {
                let column = mapped.column(k);
                let energy = es.values[k];
                let spinor_residual = if energy > 0.0 {
                    let r = column.rows(half, half).norm();
                    lower = lower.max(r);
                    r
                } else {
                    let r = column.rows(0, half).norm();
                    upper = upper.max(r);
                    r
                };
                per_state.push(StateResidual {
                    energy,
                    group: g,
                    spinor_residual,
                    oracle_mismatch: group_mismatch,
                    subspace_distance: group_distance,
                });
            }
        }
        ReductionVerdict {
            passed: lower < threshold && upper < threshold && mismatch < threshold,
            threshold,
            max_lower_residual: lower,
            max_upper_residual: upper,
            max_oracle_mismatch: mismatch,
            max_subspace_distance: distance,
            per_state,
        }
    }
}

/// `|A - B B^dag A|_2` after orthonormalizing the columns of `A`; `B` has
/// orthonormal columns.
fn subspace_distance(a: &CMat, b: &CMat) -> f64 {
    let q = a.clone().qr().q();
    spectral_norm(&(&q - b * (b.adjoint() * &q)))
}

/// Reduction check of `u` on `h`, with the Eriksen operator computed on the spot.
pub fn check_reduction(u: &CMat, h: &CMat, tol: &Tolerances) -> Result<ReductionVerdict> {
    let unitarity = super::check_unitary(u).spectral;
    if unitarity > tol.unitary {
        return Err(crate::Error::NotUnitary { residual: unitarity, tol: tol.unitary });
    }
    Ok(ReductionOracle::new(h, tol)?.check(u, tol.reduction))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dirac_matrices, identity, re};
    use crate::transform::{ek, eriksen};

    const T: Tolerances = Tolerances::MODE;

    fn free(p: [f64; 3]) -> CMat {
        let d = dirac_matrices();
        &d.beta + d.alpha_dot(p)
    }

    #[test]
    fn eriksen_passes_itself() {
        let h = free([1.0, 0.0, 0.0]);
        let u = eriksen(&h, &T).unwrap().u.into_matrix();
        let v = check_reduction(&u, &h, &T).unwrap();
        assert!(v.passed);
        assert_eq!(v.per_state.len(), 4);
        assert!(v.max_subspace_distance < 1e-12);
    }

    #[test]
    fn identity_leaves_lower_spinors() {
        let h = free([1.0, 0.0, 0.0]);
        let v = check_reduction(&identity(4), &h, &T).unwrap();
        assert!(!v.passed);
        // Lower spinor of a positive-energy plane wave: |p| / sqrt(2E(E+m)).
        let e = 2.0f64.sqrt();
        let expected = 1.0 / (2.0 * e * (e + 1.0)).sqrt();
        assert!((v.max_lower_residual - expected).abs() < 1e-13);
        assert!((v.max_upper_residual - expected).abs() < 1e-13);
    }

    #[test]
    fn spin_rotation_is_caught_by_the_oracle_only() {
        let h = free([1.0, 0.0, 0.0]);
        let u = ek(&h, &T).unwrap().u.into_matrix();
        let v = check_reduction(&u, &h, &T).unwrap();
        assert!(!v.passed);
        assert!(v.max_lower_residual < 1e-14);
        assert!(v.max_subspace_distance < 1e-12);
        assert!(v.max_oracle_mismatch > 1e-2);
    }

    #[test]
    fn non_unitary_candidate_rejected() {
        let h = free([0.2, 0.0, 0.0]);
        let err = check_reduction(&(identity(4) * re(1.1)), &h, &T).unwrap_err();
        assert!(matches!(err, crate::Error::NotUnitary { .. }));
    }
}
