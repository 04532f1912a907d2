use alloc::vec;
use alloc::vec::Vec;

use super::graph::NodeGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeLabel {
    Coarse,
    Fine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfSplit {
    pub labels: Vec<NodeLabel>,
    /// Coarse index of every coarse node.
    pub coarse_index: Vec<Option<usize>>,
    pub num_coarse: usize,
}

impl CfSplit {
    pub fn coarse_nodes(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|&i| self.labels[i] == NodeLabel::Coarse).collect()
    }
}

/// Greedy independent-set splitting in ascending node order.
pub fn select_coarse(graph: &NodeGraph) -> CfSplit {
    let n = graph.num_nodes();
    let mut labels: Vec<Option<NodeLabel>> = vec![None; n];
    for i in 0..n {
        if labels[i].is_some() {
            continue;
        }
        labels[i] = Some(NodeLabel::Coarse);
        for &j in graph.neighbors(i) {
            if labels[j].is_none() {
                labels[j] = Some(NodeLabel::Fine);
            }
        }
    }
    let labels: Vec<NodeLabel> = labels.into_iter().map(|l| l.unwrap_or(NodeLabel::Coarse)).collect();
    let mut num_coarse = 0;
    let coarse_index = labels
        .iter()
        .map(|l| {
            (*l == NodeLabel::Coarse).then(|| {
                num_coarse += 1;
                num_coarse - 1
            })
        })
        .collect();
    CfSplit { labels, coarse_index, num_coarse }
}
