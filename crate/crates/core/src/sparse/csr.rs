use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::sparse::DenseMatrix;

/// Compressed sparse row matrix with strictly increasing column indices per row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Build from raw arrays. Column indices must be strictly increasing within each row.
    pub fn from_raw(
        nrows: usize,
        ncols: usize,
        indptr: Vec<usize>,
        indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if indptr.len() != nrows + 1 || indices.len() != values.len() || indptr[nrows] != indices.len() {
            return Err(Error::MalformedSystem("inconsistent CSR arrays"));
        }
        for r in 0..nrows {
            let row = &indices[indptr[r]..indptr[r + 1]];
            if row.windows(2).any(|w| w[0] >= w[1]) || row.iter().any(|&c| c >= ncols) {
                return Err(Error::MalformedSystem("CSR column indices not strictly increasing"));
            }
        }
        Ok(Self { nrows, ncols, indptr, indices, values })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, indptr: vec![0; nrows + 1], indices: Vec::new(), values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            ncols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self {
            nrows: n,
            ncols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: diag.to_vec(),
        }
    }

    /// Sums duplicate entries. Explicit zeros are kept when `keep_zeros` is set,
    /// which preserves a structural pattern.
    pub fn from_triplets_with(
        nrows: usize,
        ncols: usize,
        mut triplets: Vec<(usize, usize, f64)>,
        keep_zeros: bool,
    ) -> Result<Self> {
        if let Some(&(r, c, _)) = triplets.iter().find(|&&(r, c, _)| r >= nrows || c >= ncols) {
            return Err(Error::ShapeError { expected: (nrows, ncols), found: (r + 1, c + 1) });
        }
        triplets.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut indptr = vec![0usize; nrows + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut rows = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            if let (Some(&lr), Some(&lc)) = (rows.last(), indices.last()) {
                if lr == r && lc == c {
                    *values.last_mut().unwrap() += v;
                    continue;
                }
            }
            rows.push(r);
            indices.push(c);
            values.push(v);
        }
        if !keep_zeros {
            let mut k = 0;
            for i in 0..values.len() {
                if values[i] != 0.0 {
                    rows[k] = rows[i];
                    indices[k] = indices[i];
                    values[k] = values[i];
                    k += 1;
                }
            }
            rows.truncate(k);
            indices.truncate(k);
            values.truncate(k);
        }
        for &r in &rows {
            indptr[r + 1] += 1;
        }
        for r in 0..nrows {
            indptr[r + 1] += indptr[r];
        }
        Ok(Self { nrows, ncols, indptr, indices, values })
    }

    pub fn from_triplets(nrows: usize, ncols: usize, triplets: Vec<(usize, usize, f64)>) -> Result<Self> {
        Self::from_triplets_with(nrows, ncols, triplets, false)
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let mut t = Vec::new();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if m[(i, j)] != 0.0 {
                    t.push((i, j, m[(i, j)]));
                }
            }
        }
        Self::from_triplets(m.nrows(), m.ncols(), t).expect("dense indices are in range")
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.nrows, self.ncols);
        for r in 0..self.nrows {
            for (c, v) in self.row(r) {
                d[(r, c)] += v;
            }
        }
        d
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn indptr(&self) -> &[usize] {
        &self.indptr
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn row_range(&self, r: usize) -> Range<usize> {
        self.indptr[r]..self.indptr[r + 1]
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let rg = self.row_range(r);
        self.indices[rg.clone()].iter().copied().zip(self.values[rg].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let rg = self.row_range(r);
        match self.indices[rg.clone()].binary_search(&c) {
            Ok(k) => self.values[rg.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| f64::max(m, libm::fabs(*v)))
    }

    fn check_vec(&self, x: usize, y: usize, transpose: bool) -> Result<()> {
        let (nx, ny) = if transpose { (self.nrows, self.ncols) } else { (self.ncols, self.nrows) };
        if x != nx || y != ny {
            return Err(Error::ShapeError { expected: (ny, nx), found: (y, x) });
        }
        Ok(())
    }

    /// `y = M x`
    pub fn spmv(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        self.check_vec(x.len(), y.len(), false)?;
        self.spmv_unchecked(x, y);
        Ok(())
    }

    pub(crate) fn spmv_unchecked(&self, x: &[f64], y: &mut [f64]) {
        for (r, yr) in y.iter_mut().enumerate() {
            let mut s = 0.0;
            for k in self.indptr[r]..self.indptr[r + 1] {
                s += self.values[k] * x[self.indices[k]];
            }
            *yr = s;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.nrows];
        self.spmv(x, &mut y)?;
        Ok(y)
    }

    /// `y = M^T x`
    pub fn spmv_transpose(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        self.check_vec(x.len(), y.len(), true)?;
        self.spmv_transpose_unchecked(x, y);
        Ok(())
    }

    pub(crate) fn spmv_transpose_unchecked(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (r, &xr) in x.iter().enumerate() {
            for k in self.indptr[r]..self.indptr[r + 1] {
                y[self.indices[k]] += self.values[k] * xr;
            }
        }
    }

    /// `r = b - M x`
    pub fn residual(&self, x: &[f64], b: &[f64], r: &mut [f64]) -> Result<()> {
        self.check_vec(x.len(), b.len(), false)?;
        self.check_vec(x.len(), r.len(), false)?;
        self.residual_unchecked(x, b, r);
        Ok(())
    }

    pub(crate) fn residual_unchecked(&self, x: &[f64], b: &[f64], r: &mut [f64]) {
        for row in 0..self.nrows {
            let mut s = b[row];
            for k in self.indptr[row]..self.indptr[row + 1] {
                s -= self.values[k] * x[self.indices[k]];
            }
            r[row] = s;
        }
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.ncols + 1];
        for &c in &self.indices {
            counts[c + 1] += 1;
        }
        for c in 0..self.ncols {
            counts[c + 1] += counts[c];
        }
        let indptr = counts.clone();
        let mut next = counts;
        let mut indices = vec![0usize; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        for r in 0..self.nrows {
            for k in self.row_range(r) {
                let c = self.indices[k];
                let dst = next[c];
                next[c] += 1;
                indices[dst] = r;
                values[dst] = self.values[k];
            }
        }
        Self { nrows: self.ncols, ncols: self.nrows, indptr, indices, values }
    }

    /// Sparse product `self * rhs` (Gustavson). The result pattern is the exact
    /// structural product pattern; numerically cancelled entries are kept.
    pub fn matmul(&self, rhs: &CsrMatrix) -> Result<CsrMatrix> {
        if self.ncols != rhs.nrows {
            return Err(Error::ShapeError { expected: (self.ncols, rhs.ncols), found: rhs.shape() });
        }
        let n = rhs.ncols;
        let mut marker = vec![usize::MAX; n];
        let mut acc = vec![0.0; n];
        let mut indptr = Vec::with_capacity(self.nrows + 1);
        indptr.push(0);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        let mut cols: Vec<usize> = Vec::new();
        for r in 0..self.nrows {
            cols.clear();
            for k in self.row_range(r) {
                let a = self.values[k];
                let mid = self.indices[k];
                for kk in rhs.row_range(mid) {
                    let c = rhs.indices[kk];
                    if marker[c] != r {
                        marker[c] = r;
                        acc[c] = 0.0;
                        cols.push(c);
                    }
                    acc[c] += a * rhs.values[kk];
                }
            }
            cols.sort_unstable();
            for &c in &cols {
                indices.push(c);
                values.push(acc[c]);
            }
            indptr.push(indices.len());
        }
        Ok(CsrMatrix { nrows: self.nrows, ncols: n, indptr, indices, values })
    }

    /// Entrywise `alpha * self + beta * other` over the union pattern.
    pub fn add(&self, alpha: f64, other: &CsrMatrix, beta: f64) -> Result<CsrMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeError { expected: self.shape(), found: other.shape() });
        }
        let mut indptr = Vec::with_capacity(self.nrows + 1);
        indptr.push(0);
        let mut indices = Vec::with_capacity(self.nnz().max(other.nnz()));
        let mut values = Vec::with_capacity(self.nnz().max(other.nnz()));
        for r in 0..self.nrows {
            let (mut i, ie) = (self.indptr[r], self.indptr[r + 1]);
            let (mut j, je) = (other.indptr[r], other.indptr[r + 1]);
            while i < ie || j < je {
                let ci = if i < ie { self.indices[i] } else { usize::MAX };
                let cj = if j < je { other.indices[j] } else { usize::MAX };
                if ci == cj {
                    indices.push(ci);
                    values.push(alpha * self.values[i] + beta * other.values[j]);
                    i += 1;
                    j += 1;
                } else if ci < cj {
                    indices.push(ci);
                    values.push(alpha * self.values[i]);
                    i += 1;
                } else {
                    indices.push(cj);
                    values.push(beta * other.values[j]);
                    j += 1;
                }
            }
            indptr.push(indices.len());
        }
        Ok(CsrMatrix { nrows: self.nrows, ncols: self.ncols, indptr, indices, values })
    }

    /// `(A + A^T) / 2`
    pub fn symmetrized(&self) -> Result<CsrMatrix> {
        self.add(0.5, &self.transpose(), 0.5)
    }

    /// Galerkin triple product `P^T A P`. With `symmetric` set the result is
    /// averaged with its transpose to remove roundoff asymmetry.
    pub fn triple_product(p: &CsrMatrix, a: &CsrMatrix, symmetric: bool) -> Result<CsrMatrix> {
        if a.nrows != a.ncols || p.nrows != a.ncols {
            return Err(Error::ShapeError { expected: (a.ncols, p.ncols), found: p.shape() });
        }
        let ap = a.matmul(p)?;
        let coarse = p.transpose().matmul(&ap)?;
        if symmetric {
            coarse.symmetrized()
        } else {
            Ok(coarse)
        }
    }

    /// Rows `rows` and columns `cols` as a standalone matrix.
    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> CsrMatrix {
        let mut indptr = Vec::with_capacity(rows.len() + 1);
        indptr.push(0);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for r in rows.clone() {
            let rg = self.row_range(r);
            let row_idx = &self.indices[rg.clone()];
            let lo = row_idx.partition_point(|&c| c < cols.start);
            let hi = row_idx.partition_point(|&c| c < cols.end);
            for k in rg.start + lo..rg.start + hi {
                indices.push(self.indices[k] - cols.start);
                values.push(self.values[k]);
            }
            indptr.push(indices.len());
        }
        CsrMatrix { nrows: rows.len(), ncols: cols.len(), indptr, indices, values }
    }

    pub fn diagonal_values(&self) -> Vec<f64> {
        (0..self.nrows.min(self.ncols)).map(|i| self.get(i, i)).collect()
    }

    pub fn scaled(&self, alpha: f64) -> CsrMatrix {
        let mut m = self.clone();
        m.values.iter_mut().for_each(|v| *v *= alpha);
        m
    }

    /// Largest `|A - A^T|` entry relative to `max|A|`.
    pub fn asymmetry(&self) -> f64 {
        let t = self.transpose();
        let d = self.add(1.0, &t, -1.0).expect("square transpose shape");
        let m = self.max_abs();
        if m == 0.0 {
            0.0
        } else {
            d.max_abs() / m
        }
    }

    /// Stack matrices into a block layout; `blocks[i][j]` is placed at block row `i`, column `j`.
    pub fn block_compose(blocks: &[&[Option<&CsrMatrix>]]) -> Result<CsrMatrix> {
        let nbr = blocks.len();
        let nbc = blocks.first().map_or(0, |r| r.len());
        let mut row_sizes = vec![None; nbr];
        let mut col_sizes = vec![None; nbc];
        for (i, brow) in blocks.iter().enumerate() {
            if brow.len() != nbc {
                return Err(Error::MalformedSystem("ragged block layout"));
            }
            for (j, b) in brow.iter().enumerate() {
                if let Some(m) = b {
                    for (slot, val) in [(&mut row_sizes[i], m.nrows), (&mut col_sizes[j], m.ncols)] {
                        match *slot {
                            None => *slot = Some(val),
                            Some(s) if s != val => {
                                return Err(Error::ShapeError { expected: (s, s), found: (val, val) })
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        let row_sizes: Vec<usize> = row_sizes.into_iter().map(|s| s.unwrap_or(0)).collect();
        let col_sizes: Vec<usize> = col_sizes.into_iter().map(|s| s.unwrap_or(0)).collect();
        let mut col_off = vec![0usize; nbc + 1];
        for j in 0..nbc {
            col_off[j + 1] = col_off[j] + col_sizes[j];
        }
        let nrows: usize = row_sizes.iter().sum();
        let mut indptr = Vec::with_capacity(nrows + 1);
        indptr.push(0);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for (i, brow) in blocks.iter().enumerate() {
            for r in 0..row_sizes[i] {
                for (j, b) in brow.iter().enumerate() {
                    if let Some(m) = b {
                        for (c, v) in m.row(r) {
                            indices.push(c + col_off[j]);
                            values.push(v);
                        }
                    }
                }
                indptr.push(indices.len());
            }
        }
        Ok(CsrMatrix { nrows, ncols: col_off[nbc], indptr, indices, values })
    }
}
