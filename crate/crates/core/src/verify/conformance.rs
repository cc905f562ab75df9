use super::ReductionVerdict;
use crate::transform::Expectation;

/// A transform expected to violate the reduction condition only counts as doing so
/// when its worst residual is at least this multiple of the pass threshold.
pub const VIOLATION_FACTOR: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Conformance {
    /// Behaved as its classification says.
    Conformant,
    Mismatch,
    /// Approximate transforms carry no pass/fail expectation.
    NotJudged,
}

impl ReductionVerdict {
    /// Largest of the lower, upper and oracle residuals.
    pub fn worst_residual(&self) -> f64 {
        self.max_lower_residual.max(self.max_upper_residual).max(self.max_oracle_mismatch)
    }
}

/// Compares a reduction verdict with what the transform's classification predicts.
pub fn judge(expectation: Expectation, verdict: &ReductionVerdict) -> Conformance {
    match expectation {
        Expectation::Fw | Expectation::FwWithinTruncation => {
            if verdict.passed {
                Conformance::Conformant
            } else {
                Conformance::Mismatch
            }
        }
        Expectation::NotFw => {
            if !verdict.passed && verdict.worst_residual() >= VIOLATION_FACTOR * verdict.threshold {
                Conformance::Conformant
            } else {
                Conformance::Mismatch
            }
        }
        Expectation::Approximate => Conformance::NotJudged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn verdict(worst: f64, threshold: f64) -> ReductionVerdict {
        ReductionVerdict {
            passed: worst < threshold,
            threshold,
            max_lower_residual: worst,
            max_upper_residual: 0.0,
            max_oracle_mismatch: 0.0,
            max_subspace_distance: 0.0,
            per_state: Vec::new(),
        }
    }

    #[test]
    fn weak_violation_is_not_enough() {
        assert_eq!(judge(Expectation::NotFw, &verdict(1e-9, 1e-10)), Conformance::Mismatch);
        assert_eq!(judge(Expectation::NotFw, &verdict(1e-8, 1e-10)), Conformance::Conformant);
        assert_eq!(judge(Expectation::Fw, &verdict(1e-12, 1e-10)), Conformance::Conformant);
        assert_eq!(judge(Expectation::Fw, &verdict(1e-8, 1e-10)), Conformance::Mismatch);
        assert_eq!(judge(Expectation::Approximate, &verdict(1.0, 1e-10)), Conformance::NotJudged);
    }
}
