use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// Block compressed sparse row matrix with dense `rb x cb` row-major blocks.
///
/// Finite element partitions use 3x3 (velocity-velocity), 1x3 (pressure-velocity)
/// and 1x1 (pressure-pressure) blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSparseMatrix {
    block_rows: usize,
    block_cols: usize,
    rb: usize,
    cb: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl BlockSparseMatrix {
    /// Zero-valued matrix over a given block pattern. Each row's columns are
    /// sorted and deduplicated. The pattern is kept as is: entries that stay
    /// zero after accumulation remain structurally present.
    pub fn from_pattern(
        block_cols: usize,
        rb: usize,
        cb: usize,
        mut rows: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let block_rows = rows.len();
        let mut indptr = Vec::with_capacity(block_rows + 1);
        indptr.push(0);
        let mut indices = Vec::new();
        for row in rows.iter_mut() {
            row.sort_unstable();
            row.dedup();
            if let Some(&c) = row.last() {
                if c >= block_cols {
                    return Err(Error::ShapeError { expected: (block_rows, block_cols), found: (block_rows, c + 1) });
                }
            }
            indices.extend_from_slice(row);
            indptr.push(indices.len());
        }
        let values = vec![0.0; indices.len() * rb * cb];
        Ok(Self { block_rows, block_cols, rb, cb, indptr, indices, values })
    }

    /// Sums duplicate blocks and drops blocks that end up all-zero.
    pub fn from_block_triplets(
        block_rows: usize,
        block_cols: usize,
        rb: usize,
        cb: usize,
        triplets: Vec<(usize, usize, Vec<f64>)>,
    ) -> Result<Self> {
        let mut rows = vec![Vec::new(); block_rows];
        for (r, c, v) in &triplets {
            if *r >= block_rows || *c >= block_cols {
                return Err(Error::ShapeError { expected: (block_rows, block_cols), found: (r + 1, c + 1) });
            }
            if v.len() != rb * cb {
                return Err(Error::ShapeError { expected: (rb, cb), found: (v.len(), 1) });
            }
            rows[*r].push(*c);
        }
        let mut m = Self::from_pattern(block_cols, rb, cb, rows)?;
        for (r, c, v) in triplets {
            m.add_block(r, c, &v)?;
        }
        m.prune_zero_blocks();
        Ok(m)
    }

    pub fn block_shape(&self) -> (usize, usize) {
        (self.rb, self.cb)
    }

    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    pub fn block_cols(&self) -> usize {
        self.block_cols
    }

    /// Scalar shape.
    pub fn shape(&self) -> (usize, usize) {
        (self.block_rows * self.rb, self.block_cols * self.cb)
    }

    pub fn nnz_blocks(&self) -> usize {
        self.indices.len()
    }

    pub fn row_cols(&self, r: usize) -> &[usize] {
        &self.indices[self.indptr[r]..self.indptr[r + 1]]
    }

    fn slot(&self, r: usize, c: usize) -> Option<usize> {
        let start = self.indptr[r];
        self.indices[start..self.indptr[r + 1]].binary_search(&c).ok().map(|k| start + k)
    }

    pub fn block(&self, r: usize, c: usize) -> Option<&[f64]> {
        let bs = self.rb * self.cb;
        self.slot(r, c).map(|k| &self.values[k * bs..(k + 1) * bs])
    }

    /// Adds `block` into the stored block `(r, c)`, which must be in the pattern.
    pub fn add_block(&mut self, r: usize, c: usize, block: &[f64]) -> Result<()> {
        let bs = self.rb * self.cb;
        debug_assert_eq!(block.len(), bs);
        let k = self.slot(r, c).ok_or(Error::MalformedSystem("block outside sparsity pattern"))?;
        for (dst, src) in self.values[k * bs..(k + 1) * bs].iter_mut().zip(block) {
            *dst += src;
        }
        Ok(())
    }

    /// Adds `scale * v` to entry `(i, j)` of block `(r, c)`.
    pub fn add_entry(&mut self, r: usize, c: usize, i: usize, j: usize, v: f64) -> Result<()> {
        let bs = self.rb * self.cb;
        let k = self.slot(r, c).ok_or(Error::MalformedSystem("block outside sparsity pattern"))?;
        self.values[k * bs + i * self.cb + j] += v;
        Ok(())
    }

    pub fn prune_zero_blocks(&mut self) {
        let bs = self.rb * self.cb;
        let mut indptr = Vec::with_capacity(self.block_rows + 1);
        indptr.push(0);
        let mut w = 0;
        for r in 0..self.block_rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                if self.values[k * bs..(k + 1) * bs].iter().any(|&v| v != 0.0) {
                    self.indices[w] = self.indices[k];
                    self.values.copy_within(k * bs..(k + 1) * bs, w * bs);
                    w += 1;
                }
            }
            indptr.push(w);
        }
        self.indices.truncate(w);
        self.values.truncate(w * bs);
        self.indptr = indptr;
    }

    pub fn spmv(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        let (m, n) = self.shape();
        if x.len() != n || y.len() != m {
            return Err(Error::ShapeError { expected: (m, n), found: (y.len(), x.len()) });
        }
        let (rb, cb) = (self.rb, self.cb);
        let bs = rb * cb;
        y.iter_mut().for_each(|v| *v = 0.0);
        for r in 0..self.block_rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let c = self.indices[k];
                let blk = &self.values[k * bs..(k + 1) * bs];
                for i in 0..rb {
                    let mut s = 0.0;
                    for j in 0..cb {
                        s += blk[i * cb + j] * x[c * cb + j];
                    }
                    y[r * rb + i] += s;
                }
            }
        }
        Ok(())
    }

    pub fn spmv_transpose(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        let (m, n) = self.shape();
        if x.len() != m || y.len() != n {
            return Err(Error::ShapeError { expected: (n, m), found: (y.len(), x.len()) });
        }
        let (rb, cb) = (self.rb, self.cb);
        let bs = rb * cb;
        y.iter_mut().for_each(|v| *v = 0.0);
        for r in 0..self.block_rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let c = self.indices[k];
                let blk = &self.values[k * bs..(k + 1) * bs];
                for i in 0..rb {
                    let xi = x[r * rb + i];
                    for j in 0..cb {
                        y[c * cb + j] += blk[i * cb + j] * xi;
                    }
                }
            }
        }
        Ok(())
    }

    /// Block transpose (blocks are transposed as well).
    pub fn transpose(&self) -> BlockSparseMatrix {
        let (rb, cb) = (self.rb, self.cb);
        let bs = rb * cb;
        let mut counts = vec![0usize; self.block_cols + 1];
        for &c in &self.indices {
            counts[c + 1] += 1;
        }
        for c in 0..self.block_cols {
            counts[c + 1] += counts[c];
        }
        let indptr = counts.clone();
        let mut next = counts;
        let mut indices = vec![0; self.indices.len()];
        let mut values = vec![0.0; self.values.len()];
        for r in 0..self.block_rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let c = self.indices[k];
                let dst = next[c];
                next[c] += 1;
                indices[dst] = r;
                for i in 0..rb {
                    for j in 0..cb {
                        values[dst * bs + j * rb + i] = self.values[k * bs + i * cb + j];
                    }
                }
            }
        }
        BlockSparseMatrix {
            block_rows: self.block_cols,
            block_cols: self.block_rows,
            rb: cb,
            cb: rb,
            indptr,
            indices,
            values,
        }
    }

    /// Scalar CSR expansion. Every stored block contributes all of its entries,
    /// zeros included, so the scalar pattern mirrors the block pattern.
    pub fn to_csr(&self) -> CsrMatrix {
        let (rb, cb) = (self.rb, self.cb);
        let bs = rb * cb;
        let (m, n) = self.shape();
        let mut indptr = Vec::with_capacity(m + 1);
        indptr.push(0);
        let mut indices = Vec::with_capacity(self.values.len());
        let mut values = Vec::with_capacity(self.values.len());
        for r in 0..self.block_rows {
            for i in 0..rb {
                for k in self.indptr[r]..self.indptr[r + 1] {
                    let c = self.indices[k];
                    for j in 0..cb {
                        indices.push(c * cb + j);
                        values.push(self.values[k * bs + i * cb + j]);
                    }
                }
                indptr.push(indices.len());
            }
        }
        CsrMatrix::from_raw(m, n, indptr, indices, values).expect("block expansion is well formed")
    }

    pub fn scaled(&self, alpha: f64) -> BlockSparseMatrix {
        let mut m = self.clone();
        m.values.iter_mut().for_each(|v| *v *= alpha);
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| f64::max(m, libm::fabs(*v)))
    }
}
