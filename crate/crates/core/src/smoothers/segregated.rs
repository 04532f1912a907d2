//! Segregated (Uzawa-type) Gauss-Seidel: a damped block-Jacobi velocity step
//! followed by a scaled pressure step.

use alloc::vec;
use alloc::vec::Vec;

use super::relax::BlockDiagonal;
use super::saddle::SaddleBlocks;
use crate::coarsening::Layout;
use crate::error::Result;
use crate::sparse::CsrMatrix;

/// Damping of the velocity block-Jacobi step.
pub const VELOCITY_DAMPING: f64 = 0.5;

/// Diagonal scaling `W` in the pressure step `dp = omega W (B du - r_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PressureScaling {
    /// `W = I`.
    Identity,
    /// `W = diag(C + B D^{-1} B^T)^{-1}` with `D = diag(A)`.
    SchurDiagonal,
}

#[derive(Debug, Clone)]
pub struct SegregatedGs {
    blocks: SaddleBlocks,
    velocity_diag: BlockDiagonal,
    scaling: Vec<f64>,
    omega: f64,
}

impl SegregatedGs {
    pub fn new(k: &CsrMatrix, layout: &Layout, omega: f64, scaling: PressureScaling) -> Result<Self> {
        let blocks = SaddleBlocks::split(k, layout)?;
        let velocity_diag = BlockDiagonal::new(&blocks.a, &blocks.velocity_layout)?;
        let np = blocks.pressure_dofs();
        let scaling = match scaling {
            PressureScaling::Identity => vec![1.0; np],
            PressureScaling::SchurDiagonal => {
                let d = blocks.a.diagonal_values();
                let c = blocks.c.diagonal_values();
                (0..np)
                    .map(|i| {
                        let s: f64 = blocks.b.row(i).map(|(j, v)| v * v / d[j]).sum::<f64>() + c[i];
                        if s > 0.0 {
                            1.0 / s
                        } else {
                            1.0
                        }
                    })
                    .collect()
            }
        };
        Ok(Self { blocks, velocity_diag, scaling, omega })
    }

    pub fn sweep(&self, k: &CsrMatrix, x: &mut [f64], rhs: &[f64]) -> Result<()> {
        let mut r = vec![0.0; rhs.len()];
        k.residual(x, rhs, &mut r)?;
        let nv = self.blocks.velocity_dofs();
        let mut du = vec![0.0; nv];
        self.velocity_diag.apply_add(VELOCITY_DAMPING, &r[..nv], &mut du);
        let bdu = self.blocks.b.mul_vec(&du)?;
        for (i, xi) in x[..nv].iter_mut().enumerate() {
            *xi += du[i];
        }
        for (i, xi) in x[nv..].iter_mut().enumerate() {
            *xi += self.omega * self.scaling[i] * (bdu[i] - r[nv + i]);
        }
        Ok(())
    }
}
