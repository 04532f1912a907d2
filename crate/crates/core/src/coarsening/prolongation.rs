use alloc::vec::Vec;

use super::graph::NodeGraph;
use super::split::{CfSplit, NodeLabel};
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// Node-level interpolation: coarse nodes inject, fine nodes average their
/// coarse neighbours with equal weights. The last weight of each fine row is
/// `1 - (sum of the others)`, so the row sum is exactly one.
pub fn build_prolongation(split: &CfSplit, graph: &NodeGraph) -> Result<CsrMatrix> {
    let n = split.labels.len();
    let mut indptr = Vec::with_capacity(n + 1);
    let mut indices = Vec::new();
    let mut values = Vec::new();
    indptr.push(0);
    for i in 0..n {
        match split.labels[i] {
            NodeLabel::Coarse => {
                indices.push(split.coarse_index[i].expect("coarse node is indexed"));
                values.push(1.0);
            }
            NodeLabel::Fine => {
                let mut cols: Vec<usize> = graph.neighbors(i).iter().filter_map(|&j| split.coarse_index[j]).collect();
                if cols.is_empty() {
                    return Err(Error::CoarseningFailure { node: i });
                }
                cols.sort_unstable();
                let w = 1.0 / cols.len() as f64;
                let mut sum = 0.0;
                for _ in 1..cols.len() {
                    values.push(w);
                    sum += w;
                }
                values.push(1.0 - sum);
                indices.extend(cols);
            }
        }
        indptr.push(indices.len());
    }
    CsrMatrix::from_raw(n, split.num_coarse, indptr, indices, values)
}

/// Applies a node-level interpolation identically to `components` unknowns per node.
pub fn expand_components(p: &CsrMatrix, components: usize) -> CsrMatrix {
    if components == 1 {
        return p.clone();
    }
    let mut indptr = Vec::with_capacity(p.nrows() * components + 1);
    let mut indices = Vec::with_capacity(p.nnz() * components);
    let mut values = Vec::with_capacity(p.nnz() * components);
    indptr.push(0);
    for i in 0..p.nrows() {
        for d in 0..components {
            for (j, v) in p.row(i) {
                indices.push(j * components + d);
                values.push(v);
            }
            indptr.push(indices.len());
        }
    }
    CsrMatrix::from_raw(p.nrows() * components, p.ncols() * components, indptr, indices, values)
        .expect("expanded pattern is valid")
}
