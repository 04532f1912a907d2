use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::sparse::CsrMatrix;

/// Symmetric node adjacency without self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeGraph {
    adjacency: Vec<Vec<usize>>,
}

impl NodeGraph {
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        let n = adjacency.len();
        let mut reverse = vec![Vec::new(); n];
        for (i, row) in adjacency.iter().enumerate() {
            for &j in row {
                if j != i && j < n {
                    reverse[j].push(i);
                }
            }
        }
        for (i, (row, extra)) in adjacency.iter_mut().zip(reverse).enumerate() {
            row.retain(|&j| j != i && j < n);
            row.extend(extra);
            row.sort_unstable();
            row.dedup();
        }
        Self { adjacency }
    }

    /// Node graph of the diagonal block of `a` spanning `nodes` nodes with
    /// `components` unknowns each, starting at scalar index `dof_start`.
    /// Nodes `i != j` are adjacent when any entry of the `(i, j)` node block is
    /// structurally present.
    pub fn from_matrix_block(a: &CsrMatrix, dof_start: usize, nodes: usize, components: usize) -> Self {
        let dofs: Range<usize> = dof_start..dof_start + nodes * components;
        let mut adjacency = vec![Vec::new(); nodes];
        for (i, row) in adjacency.iter_mut().enumerate() {
            for r in 0..components {
                for (c, _) in a.row(dof_start + i * components + r) {
                    if dofs.contains(&c) {
                        row.push((c - dof_start) / components);
                    }
                }
            }
        }
        Self::from_adjacency(adjacency)
    }

    pub fn from_matrix(a: &CsrMatrix) -> Self {
        Self::from_matrix_block(a, 0, a.nrows(), 1)
    }

    pub fn num_nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }
}
