//! One-dimensional periodic grid, spectral momentum operator and field profiles.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::algebra::{im, re, CMat, C64};
use crate::{Error, Result};

/// `N` points `x_j = jL/N` on a circle of length `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "LatticeParams", into = "LatticeParams"))]
pub struct Lattice1D {
    n_points: usize,
    length: f64,
}

#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize)]
struct LatticeParams {
    n_points: usize,
    length: f64,
}

#[cfg(feature = "serde")]
impl TryFrom<LatticeParams> for Lattice1D {
    type Error = Error;

    fn try_from(p: LatticeParams) -> Result<Self> {
        Lattice1D::new(p.n_points, p.length)
    }
}

#[cfg(feature = "serde")]
impl From<Lattice1D> for LatticeParams {
    fn from(l: Lattice1D) -> Self {
        LatticeParams { n_points: l.n_points, length: l.length }
    }
}

impl Lattice1D {
    /// Needs an even `n_points >= 8` and a positive finite `length`.
    pub fn new(n_points: usize, length: f64) -> Result<Self> {
        if n_points < 8 || n_points % 2 != 0 || !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidLattice { n_points, length });
        }
        Ok(Self { n_points, length })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n_points as f64
    }

    /// Spinor-space dimension `4N`.
    pub fn spinor_dim(&self) -> usize {
        4 * self.n_points
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| j as f64 * self.spacing()).collect()
    }

    /// `2 pi k / L` for `k = -N/2, ..., N/2 - 1`, in that order.
    pub fn momenta(&self) -> Vec<f64> {
        let half = (self.n_points / 2) as f64;
        (0..self.n_points).map(|i| 2.0 * PI * (i as f64 - half) / self.length).collect()
    }

    /// Unitary DFT matrix with rows indexed by momentum: `F[k, j] = exp(-i p_k x_j) / sqrt(N)`.
    pub fn dft(&self) -> CMat {
        let n = self.n_points;
        let norm = 1.0 / (n as f64).sqrt();
        let (p, x) = (self.momenta(), self.positions());
        CMat::from_fn(n, n, |k, j| {
            let phase = -p[k] * x[j];
            C64::new(phase.cos() * norm, phase.sin() * norm)
        })
    }

    /// `F^dag diag(f(p_k)) F`.
    pub fn function_of_momentum(&self, f: impl Fn(f64) -> f64) -> CMat {
        let fmat = self.dft();
        let mut scaled = fmat.adjoint();
        for (k, &p) in self.momenta().iter().enumerate() {
            let v = re(f(p));
            for z in scaled.column_mut(k).iter_mut() {
                *z *= v;
            }
        }
        let mut out = scaled * fmat;
        // Exact Hermiticity; the product is Hermitian only up to roundoff.
        crate::algebra::symmetrize(&mut out);
        out
    }

    /// Spectral momentum operator `p = -i d/dx`.
    pub fn momentum_operator(&self) -> CMat {
        self.function_of_momentum(|p| p)
    }

    /// Diagonal multiplication by `f(x_j)`.
    pub fn position_multiplier(&self, f: &FieldProfile) -> CMat {
        let values: Vec<C64> = self.sample(f).into_iter().map(re).collect();
        CMat::from_diagonal(&nalgebra::DVector::from_vec(values))
    }

    pub fn sample(&self, f: &FieldProfile) -> Vec<f64> {
        self.positions().iter().map(|&x| f.value(x, self.length)).collect()
    }

    /// `i [p, f]`: the lattice image of `f'(x)`, consistent with the spectral `p`.
    pub fn gradient(&self, f: &FieldProfile) -> CMat {
        let p = self.momentum_operator();
        let fm = self.position_multiplier(f);
        (&p * &fm - &fm * &p) * im(1.0)
    }
}

/// `d (x) m` with the spinor index outermost.
pub fn kron_spinor(d: &CMat, m: &CMat) -> CMat {
    d.kronecker(m)
}

/// Spatial shape of a field profile, evaluated on a circle of length `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum ProfileShape {
    /// `1`.
    Constant,
    /// `cos(2 pi mode x / L + phase)`.
    Cosine {
        mode: u32,
        #[cfg_attr(feature = "serde", serde(default))]
        phase: f64,
    },
    /// `sin(2 pi mode x / L)`: odd about the origin.
    Sine { mode: u32 },
    /// Periodized Gaussian `sum_n exp(-(x - center - nL)^2 / (2 width^2))`.
    GaussianPeriodic { width: f64, center: f64 },
}

/// `offset + amplitude * shape(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FieldProfile {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub shape: ProfileShape,
    #[cfg_attr(feature = "serde", serde(default))]
    pub amplitude: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub offset: f64,
}

impl FieldProfile {
    pub fn constant(c: f64) -> Self {
        Self { shape: ProfileShape::Constant, amplitude: c, offset: 0.0 }
    }

    pub fn cosine(amplitude: f64, mode: u32, phase: f64, offset: f64) -> Self {
        Self { shape: ProfileShape::Cosine { mode, phase }, amplitude, offset }
    }

    pub fn sine(amplitude: f64, mode: u32) -> Self {
        Self { shape: ProfileShape::Sine { mode }, amplitude, offset: 0.0 }
    }

    pub fn gaussian(amplitude: f64, width: f64, center: f64, offset: f64) -> Self {
        Self { shape: ProfileShape::GaussianPeriodic { width, center }, amplitude, offset }
    }

    pub fn value(&self, x: f64, length: f64) -> f64 {
        let k = 2.0 * PI / length;
        let s = match self.shape {
            ProfileShape::Constant => 1.0,
            ProfileShape::Cosine { mode, phase } => (k * mode as f64 * x + phase).cos(),
            ProfileShape::Sine { mode } => (k * mode as f64 * x).sin(),
            ProfileShape::GaussianPeriodic { width, center } => (-4..=4)
                .map(|n| {
                    let d = x - center - n as f64 * length;
                    (-d * d / (2.0 * width * width)).exp()
                })
                .sum(),
        };
        self.offset + self.amplitude * s
    }
}
