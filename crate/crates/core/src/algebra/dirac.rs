use super::{im, re, CMat};

/// Constant 4x4 matrices of the Dirac-Pauli representation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracMatrixSet {
    pub beta: CMat,
    pub alpha: [CMat; 3],
    /// Spin matrices `diag(sigma, sigma)`.
    pub sigma: [CMat; 3],
    /// Polarization matrices `beta * Sigma = diag(sigma, -sigma)`.
    pub pi: [CMat; 3],
    pub gamma5: CMat,
    /// `J = i gamma5 beta`: Hermitian, unitary, anticommutes with `beta` and `alpha`.
    pub j: CMat,
}

impl DiracMatrixSet {
    /// `gamma^i = beta alpha_i`.
    pub fn gamma(&self, i: usize) -> CMat {
        &self.beta * &self.alpha[i]
    }

    /// `alpha . p` for a numeric momentum.
    pub fn alpha_dot(&self, p: [f64; 3]) -> CMat {
        weighted(&self.alpha, p)
    }

    /// `Sigma . p` for a numeric momentum.
    pub fn sigma_dot(&self, p: [f64; 3]) -> CMat {
        weighted(&self.sigma, p)
    }
}

fn weighted(m: &[CMat; 3], p: [f64; 3]) -> CMat {
    &m[0] * re(p[0]) + &m[1] * re(p[1]) + &m[2] * re(p[2])
}

/// The three 2x2 Pauli matrices.
pub fn pauli_matrices() -> [CMat; 3] {
    let z = re(0.0);
    let one = re(1.0);
    [
        CMat::from_row_slice(2, 2, &[z, one, one, z]),
        CMat::from_row_slice(2, 2, &[z, im(-1.0), im(1.0), z]),
        CMat::from_row_slice(2, 2, &[one, z, z, -one]),
    ]
}

fn blocks(a: &CMat, b: &CMat, c: &CMat, d: &CMat) -> CMat {
    let mut out = CMat::zeros(4, 4);
    out.view_mut((0, 0), (2, 2)).copy_from(a);
    out.view_mut((0, 2), (2, 2)).copy_from(b);
    out.view_mut((2, 0), (2, 2)).copy_from(c);
    out.view_mut((2, 2), (2, 2)).copy_from(d);
    out
}

pub fn dirac_matrices() -> DiracMatrixSet {
    let s = pauli_matrices();
    let i2 = CMat::identity(2, 2);
    let z2 = CMat::zeros(2, 2);

    let beta = blocks(&i2, &z2, &z2, &(-&i2));
    let alpha = s.clone().map(|si| blocks(&z2, &si, &si, &z2));
    let sigma = s.clone().map(|si| blocks(&si, &z2, &z2, &si));
    let pi = s.map(|si| blocks(&si, &z2, &z2, &(-&si)));
    let gamma5 = blocks(&z2, &i2, &i2, &z2);
    let j = &gamma5 * &beta * im(1.0);

    DiracMatrixSet { beta, alpha, sigma, pi, gamma5, j }
}
