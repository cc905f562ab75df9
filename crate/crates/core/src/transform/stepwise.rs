//! Step-by-step removal of odd terms, `U = e^{iS_n} ... e^{iS_2} e^{iS_1}`.

use alloc::vec::Vec;

use super::{conjugate, Method, TransformResult};
use crate::algebra::{beta_lift, even_part, im, mat_exp, odd_part, re, CMat, OperatorMatrix, Role};
use crate::hamiltonian::SplitHamiltonian;
use crate::{Error, Result, Tolerances};

/// Generators `S_1, S_2, ...` in the order they were applied.
#[derive(Debug, Clone)]
pub struct StepwiseSchedule {
    pub max_steps: usize,
    pub generators: Vec<OperatorMatrix>,
}

/// Applies `S_k = -i beta O_{k-1} / (2m)` for `k = 1..=depth`, where `O_{k-1}` is
/// the odd part of the Hamiltonian after `k - 1` steps. The transformed Hamiltonian
/// is the exact conjugate; its block-diagonal truncation goes into the metadata.
pub fn stepwise_fw(
    split: &SplitHamiltonian,
    depth: usize,
    tol: &Tolerances,
) -> Result<(TransformResult, StepwiseSchedule)> {
    if !(1..=3).contains(&depth) {
        return Err(Error::Unsupported(alloc::format!("stepwise depth must be 1, 2 or 3, got {depth}")));
    }
    let m = split.mass;
    let dim = split.dim();
    let beta = beta_lift(dim);
    let mut h = split.h_full.matrix().clone();
    let mut u = CMat::identity(dim, dim);
    let mut generators = Vec::with_capacity(depth);
    for _ in 0..depth {
        let s = &beta * odd_part(&h) * (im(-1.0) / re(2.0 * m));
        let step = mat_exp(&s, tol)?;
        h = conjugate(step.matrix(), &h);
        u = step.matrix() * u;
        generators.push(OperatorMatrix::new(s, Role::ExponentGenerator));
    }
    let mut result = TransformResult {
        method: Method::Stepwise { steps: depth },
        u: OperatorMatrix::new(u, Role::Unitary),
        h_transformed: OperatorMatrix::new(h, Role::Hamiltonian),
        exact: true,
        metadata: Default::default(),
    }
    .with_recipe("S_k = -i beta O_(k-1) / 2m, odd part of the current Hamiltonian");
    result.metadata.step_count = Some(depth);
    result.metadata.block_truncated = Some(even_part(result.h_transformed.matrix()));
    Ok((result, StepwiseSchedule { max_steps: depth, generators }))
}
