use alloc::vec::Vec;
use core::ops::Range;

use nalgebra::DVectorView;

use crate::algebra::{CMat, CVec, HermitianEigen};
use crate::{Result, Tolerances};

/// A 4N-component state; the first 2N entries are the upper spinor.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    data: CVec,
}

impl SpinorField {
    /// Panics unless the length is a positive multiple of four.
    pub fn new(data: CVec) -> Self {
        assert!(!data.is_empty() && data.len() % 4 == 0, "spinor length must be 4N");
        Self { data }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_vector(&self) -> &CVec {
        &self.data
    }

    pub fn upper(&self) -> DVectorView<'_, crate::algebra::C64> {
        self.data.rows(0, self.dim() / 2)
    }

    pub fn lower(&self) -> DVectorView<'_, crate::algebra::C64> {
        let h = self.dim() / 2;
        self.data.rows(h, h)
    }

    pub fn norm(&self) -> f64 {
        self.data.norm()
    }
}

/// Complete orthonormal eigensystem split by the sign of the energy.
#[derive(Debug, Clone)]
pub struct EnergySplitEigensystem {
    pub negative: Vec<(f64, SpinorField)>,
    pub positive: Vec<(f64, SpinorField)>,
    /// All eigenvalues, ascending; negative states first.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: CMat,
    /// Index ranges into `values` of (nearly) degenerate levels; never straddle zero.
    pub degeneracy_groups: Vec<Range<usize>>,
}

impl EnergySplitEigensystem {
    pub(crate) fn from_eigen(eigen: &HermitianEigen, tol: &Tolerances) -> Result<Self> {
        crate::algebra::matfun::check_gap(eigen, tol)?;
        let values = eigen.values.clone();
        let vectors = eigen.vectors.clone();
        let mut negative = Vec::new();
        let mut positive = Vec::new();
        for (k, &v) in values.iter().enumerate() {
            let state = (v, SpinorField::new(vectors.column(k).into_owned()));
            if v < 0.0 {
                negative.push(state);
            } else {
                positive.push(state);
            }
        }
        let mut degeneracy_groups = Vec::new();
        let mut start = 0;
        for k in 1..=values.len() {
            let split = k == values.len() || {
                let (a, b) = (values[k - 1], values[k]);
                (b - a) > tol.degeneracy * a.abs().max(b.abs()).max(1.0) || (a < 0.0) != (b < 0.0)
            };
            if split {
                degeneracy_groups.push(start..k);
                start = k;
            }
        }
        Ok(Self { negative, positive, values, vectors, degeneracy_groups })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn is_positive(&self, index: usize) -> bool {
        self.values[index] > 0.0
    }
}

/// Eigenvalues and eigenvectors of `h`, split by sign; fails on a spectral gap
/// violation.
pub fn split_eigensystem(h: &CMat, tol: &Tolerances) -> Result<EnergySplitEigensystem> {
    EnergySplitEigensystem::from_eigen(&HermitianEigen::new(h)?, tol)
}
