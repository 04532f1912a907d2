//! Multiplicative Vanka smoothing: one local saddle solve per pressure unknown.

use alloc::vec;
use alloc::vec::Vec;

use crate::coarsening::Layout;
use crate::error::{Error, Result};
use crate::sparse::{CsrMatrix, DenseMatrix, LuFactorization};

/// Local factorizations are cached while their total size stays below this many entries.
const CACHE_LIMIT: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VankaPatch {
    /// Scalar index of the pressure unknown.
    pub pressure: usize,
    /// Velocity nodes coupled to the pressure through `B`.
    pub velocity_nodes: Vec<usize>,
    /// All scalar unknowns of the patch, velocity first, pressure last.
    pub dofs: Vec<usize>,
}

/// One patch per pressure unknown, in ascending pressure order. Membership is
/// the structural support of the pressure row in the velocity columns.
pub fn build_vanka_patches(k: &CsrMatrix, layout: &Layout) -> Result<Vec<VankaPatch>> {
    let (vel, pre) = (layout.velocity_dofs(), layout.pressure_dofs());
    if pre.is_empty() {
        return Err(Error::MalformedSystem("Vanka needs a pressure partition"));
    }
    let offsets = layout.node_offsets();
    let mut node_of = vec![0usize; vel.end];
    for node in 0..offsets.len() - 1 {
        for d in offsets[node]..offsets[node + 1].min(vel.end) {
            node_of[d] = node;
        }
    }
    let mut patches = Vec::with_capacity(pre.len());
    for p in pre {
        let mut nodes: Vec<usize> = k.row(p).filter(|&(c, _)| vel.contains(&c)).map(|(c, _)| node_of[c]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.is_empty() {
            return Err(Error::MalformedSystem("pressure unknown without velocity coupling"));
        }
        let mut dofs: Vec<usize> = nodes.iter().flat_map(|&n| offsets[n]..offsets[n + 1]).collect();
        dofs.push(p);
        patches.push(VankaPatch { pressure: p, velocity_nodes: nodes, dofs });
    }
    Ok(patches)
}

fn local_matrix(k: &CsrMatrix, dofs: &[usize], pos: &mut [usize]) -> DenseMatrix {
    for (i, &d) in dofs.iter().enumerate() {
        pos[d] = i;
    }
    let mut m = DenseMatrix::zeros(dofs.len(), dofs.len());
    for (i, &d) in dofs.iter().enumerate() {
        for (c, v) in k.row(d) {
            if pos[c] != usize::MAX {
                m[(i, pos[c])] = v;
            }
        }
    }
    for &d in dofs {
        pos[d] = usize::MAX;
    }
    m
}

fn factor(k: &CsrMatrix, patch: usize, dofs: &[usize], pos: &mut [usize]) -> Result<LuFactorization> {
    LuFactorization::new(&local_matrix(k, dofs, pos)).map_err(|_| Error::SingularPatch { patch })
}

#[derive(Debug, Clone)]
pub struct Vanka {
    patches: Vec<VankaPatch>,
    factors: Option<Vec<LuFactorization>>,
    omega: f64,
}

impl Vanka {
    pub fn new(k: &CsrMatrix, layout: &Layout, omega: f64) -> Result<Self> {
        let patches = build_vanka_patches(k, layout)?;
        let size: usize = patches.iter().map(|p| p.dofs.len() * p.dofs.len()).sum();
        let mut pos = vec![usize::MAX; k.nrows()];
        let factors = if size <= CACHE_LIMIT {
            Some(
                patches
                    .iter()
                    .enumerate()
                    .map(|(i, p)| factor(k, i, &p.dofs, &mut pos))
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            None
        };
        Ok(Self { patches, factors, omega })
    }

    pub fn patches(&self) -> &[VankaPatch] {
        &self.patches
    }

    /// Visits the patches in order; each one solves its local system against
    /// the current residual and adds `omega` times the correction.
    pub fn sweep(&self, k: &CsrMatrix, x: &mut [f64], b: &[f64]) -> Result<()> {
        let mut pos = vec![usize::MAX; k.nrows()];
        let mut r = Vec::new();
        for (i, patch) in self.patches.iter().enumerate() {
            r.clear();
            for &d in &patch.dofs {
                let mut acc = b[d];
                for (c, v) in k.row(d) {
                    acc -= v * x[c];
                }
                r.push(acc);
            }
            match &self.factors {
                Some(f) => f[i].solve_in_place(&mut r),
                None => factor(k, i, &patch.dofs, &mut pos)?.solve_in_place(&mut r),
            }
            for (&d, dr) in patch.dofs.iter().zip(&r) {
                x[d] += self.omega * dr;
            }
        }
        Ok(())
    }
}
