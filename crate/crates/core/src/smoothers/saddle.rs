use alloc::vec::Vec;

use crate::coarsening::{Layout, Partition, PartitionKind};
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// The blocks of `K = [[A, B^T], [B, -C]]` read from a monolithic operator.
#[derive(Debug, Clone)]
pub struct SaddleBlocks {
    pub a: CsrMatrix,
    pub b: CsrMatrix,
    pub bt: CsrMatrix,
    pub c: CsrMatrix,
    pub velocity_layout: Layout,
}

impl SaddleBlocks {
    pub fn split(k: &CsrMatrix, layout: &Layout) -> Result<Self> {
        if !layout.is_saddle() {
            return Err(Error::MalformedSystem("saddle smoother needs a pressure partition"));
        }
        let (vel, pre) = (layout.velocity_dofs(), layout.pressure_dofs());
        if pre.start != vel.end || pre.end != k.nrows() {
            return Err(Error::MalformedSystem("pressure partition must come last"));
        }
        let parts: Vec<Partition> =
            layout.parts().iter().copied().filter(|p| p.kind != PartitionKind::Pressure).collect();
        let b = k.submatrix(pre.clone(), vel.clone());
        Ok(Self {
            a: k.submatrix(vel.clone(), vel.clone()),
            bt: k.submatrix(vel, pre.clone()),
            c: k.submatrix(pre.clone(), pre).scaled(-1.0),
            b,
            velocity_layout: Layout::new(parts),
        })
    }

    pub fn velocity_dofs(&self) -> usize {
        self.a.nrows()
    }

    pub fn pressure_dofs(&self) -> usize {
        self.c.nrows()
    }
}
