use core::ops::Deref;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{identity, CMat};
use crate::{Error, Result, Tolerances};

/// What an operator matrix stands for; determines which invariant it must obey.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Role {
    Hamiltonian,
    Unitary,
    Sign,
    Normalization,
    ExponentGenerator,
    General,
}

/// A dense complex square matrix tagged with its [`Role`].
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    matrix: CMat,
    role: Role,
}

impl OperatorMatrix {
    /// Wraps a matrix without checking the role invariant.
    pub fn new(matrix: CMat, role: Role) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix, role }
    }

    /// Wraps a matrix after checking the invariant implied by `role`.
    pub fn validated(matrix: CMat, role: Role, tol: &Tolerances) -> Result<Self> {
        let op = Self::new(matrix, role);
        let residual = op.invariant_residual();
        match role {
            Role::Hamiltonian | Role::ExponentGenerator | Role::Normalization
                if residual > tol.hermitian =>
            {
                Err(Error::NotHermitian { residual, tol: tol.hermitian })
            }
            Role::Unitary if residual > tol.unitary => {
                Err(Error::NotUnitary { residual, tol: tol.unitary })
            }
            Role::Sign if residual > tol.unitary => {
                Err(Error::NotUnitary { residual, tol: tol.unitary })
            }
            _ => Ok(op),
        }
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    /// Residual of the role invariant: Hermiticity for Hamiltonians, generators and
    /// normalization operators, `|U^dag U - I|` for unitaries, `|S^2 - I|` for sign
    /// operators. Zero for [`Role::General`].
    pub fn invariant_residual(&self) -> f64 {
        let n = self.dim();
        match self.role {
            Role::Hamiltonian | Role::ExponentGenerator | Role::Normalization => {
                hermiticity_residual(&self.matrix)
            }
            Role::Unitary => spectral_norm(&(self.matrix.adjoint() * &self.matrix - identity(n))),
            Role::Sign => spectral_norm(&(&self.matrix * &self.matrix - identity(n))),
            Role::General => 0.0,
        }
    }
}

impl Deref for OperatorMatrix {
    type Target = CMat;

    fn deref(&self) -> &CMat {
        &self.matrix
    }
}

impl AsRef<CMat> for OperatorMatrix {
    fn as_ref(&self) -> &CMat {
        &self.matrix
    }
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

pub fn frobenius_norm(x: &CMat) -> f64 {
    x.norm()
}

/// Largest singular value, from the top eigenvalue of `X^dag X`.
pub fn spectral_norm(x: &CMat) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    let mut gram = x.adjoint() * x;
    symmetrize(&mut gram);
    let top = gram.symmetric_eigenvalues().iter().copied().fold(0.0, f64::max);
    top.max(0.0).sqrt()
}

/// Largest entry modulus.
pub fn max_entry(x: &CMat) -> f64 {
    x.iter().fold(0.0, |m: f64, z| m.max(z.norm_sqr().sqrt()))
}

/// `|X - X^dag|_F / max(1, |X|_F)`.
pub fn hermiticity_residual(x: &CMat) -> f64 {
    (x - x.adjoint()).norm() / x.norm().max(1.0)
}

pub(crate) fn symmetrize(x: &mut CMat) {
    let n = x.nrows();
    for i in 0..n {
        x[(i, i)].im = 0.0;
        for j in 0..i {
            let v = (x[(i, j)] + x[(j, i)].conj()) * 0.5;
            x[(i, j)] = v;
            x[(j, i)] = v.conj();
        }
    }
}

/// Lifts a 4x4 spinor matrix to dimension `dim = 4N` as `d (x) I_N`.
pub fn lift(d: &CMat, dim: usize) -> CMat {
    assert!(dim % 4 == 0 && d.nrows() == 4, "spinor lift needs a 4x4 matrix and dim = 4N");
    d.kronecker(&identity(dim / 4))
}

/// `beta (x) I_N`, i.e. `diag(+1 x 2N, -1 x 2N)`.
pub fn beta_lift(dim: usize) -> CMat {
    let half = dim / 2;
    let mut b = CMat::identity(dim, dim);
    for i in half..dim {
        b[(i, i)] = -b[(i, i)];
    }
    b
}

/// Splits `X` into its four 2N x 2N spinor blocks `(upper-left, upper-right,
/// lower-left, lower-right)`.
pub fn block_parts(x: &CMat) -> (CMat, CMat, CMat, CMat) {
    let h = x.nrows() / 2;
    (
        x.view((0, 0), (h, h)).into_owned(),
        x.view((0, h), (h, h)).into_owned(),
        x.view((h, 0), (h, h)).into_owned(),
        x.view((h, h), (h, h)).into_owned(),
    )
}

/// `(X + beta X beta) / 2`: the block-diagonal part.
pub fn even_part(x: &CMat) -> CMat {
    let mut out = x.clone();
    let h = x.nrows() / 2;
    out.view_mut((0, h), (h, h)).fill(super::re(0.0));
    out.view_mut((h, 0), (h, h)).fill(super::re(0.0));
    out
}

/// `(X - beta X beta) / 2`: the off-block-diagonal part.
pub fn odd_part(x: &CMat) -> CMat {
    x - even_part(x)
}
