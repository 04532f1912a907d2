//! Braess-Sarazin smoothing with `A_hat = 2 diag(A)` and an approximate
//! Schur complement `S_hat = C + B A_hat^{-1} B^T`.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use super::saddle::SaddleBlocks;
use super::SmootherConfig;
use crate::coarsening::{Hierarchy, HierarchyConfig, Layout};
use crate::error::{Error, Result};
use crate::multigrid::{AmgSolver, CycleConfig, CycleType};
use crate::sparse::{CsrMatrix, LuFactorization};
use crate::vector::axpy;

/// Solver for `S_hat q = rhs`.
#[derive(Debug, Clone)]
pub enum SchurSolve {
    Dense(LuFactorization),
    /// One scalar V-cycle (GS-1-1).
    Amg(Box<AmgSolver>),
}

impl SchurSolve {
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        match self {
            SchurSolve::Dense(lu) => Ok(lu.solve(rhs)),
            SchurSolve::Amg(amg) => amg.apply(rhs),
        }
    }
}

/// Applies the inverse of `[[A_hat, B^T], [B, B A_hat^{-1} B^T - S_hat]]` to
/// the residual `(r_u, r_p)` by block elimination:
/// `u* = A_hat^{-1} r_u`, `S_hat q = B u* - r_p`, `du = u* - A_hat^{-1} B^T q`, `dp = q`.
pub fn braess_sarazin_update(
    a_hat_inv: &dyn Fn(&[f64]) -> Result<Vec<f64>>,
    schur_inv: &dyn Fn(&[f64]) -> Result<Vec<f64>>,
    b: &CsrMatrix,
    bt: &CsrMatrix,
    r_u: &[f64],
    r_p: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let u_star = a_hat_inv(r_u)?;
    let mut rhs = b.mul_vec(&u_star)?;
    axpy(-1.0, r_p, &mut rhs);
    let q = schur_inv(&rhs)?;
    let correction = a_hat_inv(&bt.mul_vec(&q)?)?;
    let mut du = u_star;
    axpy(-1.0, &correction, &mut du);
    Ok((du, q))
}

#[derive(Debug, Clone)]
pub struct BraessSarazin {
    blocks: SaddleBlocks,
    a_hat_inv: Vec<f64>,
    schur: CsrMatrix,
    solver: SchurSolve,
}

impl BraessSarazin {
    /// `schur_cap`: approximate Schur complements up to this size are factorized densely.
    pub fn new(k: &CsrMatrix, layout: &Layout, schur_cap: usize) -> Result<Self> {
        let blocks = SaddleBlocks::split(k, layout)?;
        let mut a_hat_inv = blocks.a.diagonal_values();
        for (i, d) in a_hat_inv.iter_mut().enumerate() {
            if !(*d > 0.0) {
                return Err(Error::SingularBlock { node: i });
            }
            *d = 1.0 / (2.0 * *d);
        }
        let schur = blocks.c.add(1.0, &blocks.b.matmul(&CsrMatrix::diagonal(&a_hat_inv).matmul(&blocks.bt)?)?, 1.0)?;
        let schur = schur.symmetrized()?;
        let np = schur.nrows();
        let solver = if np <= schur_cap {
            SchurSolve::Dense(LuFactorization::new(&schur.to_dense())?)
        } else {
            let config = HierarchyConfig { coarse_size_cap: schur_cap, ..HierarchyConfig::default() };
            let h = Hierarchy::build(schur.clone(), Layout::scalar(np), None, &config)?;
            let cycle = CycleConfig { cycle: CycleType::V, smoother: SmootherConfig::gauss_seidel(1), cycles_per_application: 1 };
            SchurSolve::Amg(Box::new(AmgSolver::new(h, cycle)?))
        };
        Ok(Self { blocks, a_hat_inv, schur, solver })
    }

    pub fn schur_matrix(&self) -> &CsrMatrix {
        &self.schur
    }

    pub fn sweep(&self, k: &CsrMatrix, x: &mut [f64], rhs: &[f64]) -> Result<()> {
        let mut r = vec![0.0; rhs.len()];
        k.residual(x, rhs, &mut r)?;
        let nv = self.blocks.velocity_dofs();
        let a_hat_inv = |v: &[f64]| Ok(v.iter().zip(&self.a_hat_inv).map(|(a, d)| a * d).collect());
        let schur_inv = |v: &[f64]| self.solver.solve(v);
        let (du, dp) = braess_sarazin_update(&a_hat_inv, &schur_inv, &self.blocks.b, &self.blocks.bt, &r[..nv], &r[nv..])?;
        axpy(1.0, &du, &mut x[..nv]);
        axpy(1.0, &dp, &mut x[nv..]);
        Ok(())
    }
}
