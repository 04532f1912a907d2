//! Damped block Jacobi and block Gauss-Seidel over node blocks.

use alloc::vec;
use alloc::vec::Vec;

use crate::coarsening::Layout;
use crate::error::{Error, Result};
use crate::sparse::{CsrMatrix, DenseMatrix, LuFactorization};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepDirection {
    Forward,
    Backward,
}

/// Inverses of the diagonal node blocks of a matrix.
#[derive(Debug, Clone)]
pub struct BlockDiagonal {
    /// Scalar offset of every node, plus the total.
    offsets: Vec<usize>,
    /// Start of every node's inverse block in `inv`.
    starts: Vec<usize>,
    inv: Vec<f64>,
}

impl BlockDiagonal {
    /// Inverts the node blocks of the leading `layout` nodes of `a`
    /// (a leading sub-layout is allowed, e.g. the velocity part of a saddle system).
    pub fn new(a: &CsrMatrix, layout: &Layout) -> Result<Self> {
        let offsets = layout.node_offsets();
        let mut starts = Vec::with_capacity(offsets.len());
        let mut inv = Vec::new();
        for node in 0..offsets.len() - 1 {
            let (s, e) = (offsets[node], offsets[node + 1]);
            let k = e - s;
            starts.push(inv.len());
            let mut blk = DenseMatrix::zeros(k, k);
            for r in 0..k {
                for (c, v) in a.row(s + r) {
                    if (s..e).contains(&c) {
                        blk[(r, c - s)] = v;
                    }
                }
            }
            if k == 1 {
                let d = blk[(0, 0)];
                if d == 0.0 || !d.is_finite() {
                    return Err(Error::SingularBlock { node });
                }
                inv.push(1.0 / d);
                continue;
            }
            let lu = LuFactorization::new(&blk).map_err(|_| Error::SingularBlock { node })?;
            let mut cols = vec![0.0; k * k];
            for j in 0..k {
                let mut unit = vec![0.0; k];
                unit[j] = 1.0;
                lu.solve_in_place(&mut unit);
                for i in 0..k {
                    cols[i * k + j] = unit[i];
                }
            }
            inv.extend(cols);
        }
        starts.push(inv.len());
        Ok(Self { offsets, starts, inv })
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn dofs(&self) -> usize {
        *self.offsets.last().expect("offsets end with the total")
    }

    /// `out[node] += alpha * D_node^{-1} r[node]` for every node.
    pub fn apply_add(&self, alpha: f64, r: &[f64], out: &mut [f64]) {
        for node in 0..self.num_nodes() {
            self.apply_node_add(node, alpha, r, out);
        }
    }

    fn apply_node_add(&self, node: usize, alpha: f64, r: &[f64], out: &mut [f64]) {
        let (s, e) = (self.offsets[node], self.offsets[node + 1]);
        let k = e - s;
        let blk = &self.inv[self.starts[node]..self.starts[node + 1]];
        for i in 0..k {
            let mut acc = 0.0;
            for j in 0..k {
                acc += blk[i * k + j] * r[s + j];
            }
            out[s + i] += alpha * acc;
        }
    }
}

/// `x <- x + omega * D^{-1} (b - A x)`
pub fn jacobi_sweep(a: &CsrMatrix, d: &BlockDiagonal, x: &mut [f64], b: &[f64], omega: f64) -> Result<()> {
    let mut r = vec![0.0; b.len()];
    a.residual(x, b, &mut r)?;
    d.apply_add(omega, &r, x);
    Ok(())
}

/// One block Gauss-Seidel sweep in node order (`Forward`) or reverse node order.
pub fn gs_sweep(a: &CsrMatrix, d: &BlockDiagonal, x: &mut [f64], b: &[f64], direction: SweepDirection) -> Result<()> {
    if a.nrows() != b.len() || a.ncols() != x.len() || d.dofs() > b.len() {
        return Err(Error::ShapeError { expected: a.shape(), found: (b.len(), x.len()) });
    }
    let mut r = Vec::new();
    let n = d.num_nodes();
    for step in 0..n {
        let node = match direction {
            SweepDirection::Forward => step,
            SweepDirection::Backward => n - 1 - step,
        };
        let (s, e) = (d.offsets[node], d.offsets[node + 1]);
        r.clear();
        for row in s..e {
            let mut acc = b[row];
            for (c, v) in a.row(row) {
                acc -= v * x[c];
            }
            r.push(acc);
        }
        d.apply_node_local(node, &r, x);
    }
    Ok(())
}

impl BlockDiagonal {
    /// `x[node] += D_node^{-1} r` with `r` indexed locally.
    fn apply_node_local(&self, node: usize, r: &[f64], x: &mut [f64]) {
        let s = self.offsets[node];
        let k = r.len();
        let blk = &self.inv[self.starts[node]..self.starts[node + 1]];
        for i in 0..k {
            let mut acc = 0.0;
            for j in 0..k {
                acc += blk[i * k + j] * r[j];
            }
            x[s + i] += acc;
        }
    }
}
