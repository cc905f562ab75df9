#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::{Error, Result};

/// `residual ~ exp(intercept) * parameter^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScalingFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least-squares slope of `ln(residual)` against `ln(parameter)`.
pub fn order_scaling_fit(samples: &[(f64, f64)]) -> Result<ScalingFit> {
    if samples.len() < 3 {
        return Err(Error::TooFewSamples { found: samples.len(), needed: 3 });
    }
    for (index, &(x, y)) in samples.iter().enumerate() {
        for value in [x, y] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveSample { index, value });
            }
        }
    }
    let n = samples.len() as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for &(x, y) in samples {
        sx += x.ln();
        sy += y.ln();
    }
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in samples {
        let (dx, dy) = (x.ln() - mx, y.ln() - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::TooFewSamples { found: 1, needed: 2 });
    }
    let exponent = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(ScalingFit { exponent, intercept: my - exponent * mx, r_squared })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn exact_cubic() {
        let samples: Vec<_> = [0.1, 0.2, 0.4, 0.8].iter().map(|&p: &f64| (p, p.powi(3))).collect();
        let fit = order_scaling_fit(&samples).unwrap();
        assert!((fit.exponent - 3.0).abs() < 1e-12);
        assert!(fit.intercept.abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            order_scaling_fit(&[(1.0, 1.0), (2.0, 2.0)]),
            Err(Error::TooFewSamples { found: 2, needed: 3 })
        );
        assert!(matches!(
            order_scaling_fit(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]),
            Err(Error::NonPositiveSample { index: 1, .. })
        ));
    }
}
