use alloc::vec::Vec;
use core::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionKind {
    /// Vertex (P1) velocity nodes.
    Linear,
    /// Edge (quadratic bubble) velocity nodes.
    Quadratic,
    /// Mixed linear and quadratic nodes, produced by non-separating coarsening.
    Velocity,
    Pressure,
    /// Generic scalar unknowns (for instance an approximate Schur complement).
    Scalar,
}

impl PartitionKind {
    pub fn name(self) -> &'static str {
        match self {
            PartitionKind::Linear => "linear",
            PartitionKind::Quadratic => "quadratic",
            PartitionKind::Velocity => "velocity",
            PartitionKind::Pressure => "pressure",
            PartitionKind::Scalar => "scalar",
        }
    }
}

/// A contiguous range of nodes with the same number of components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Partition {
    pub kind: PartitionKind,
    pub nodes: usize,
    pub components: usize,
}

impl Partition {
    pub fn dofs(&self) -> usize {
        self.nodes * self.components
    }
}

/// Ordered node partitions of a monolithic system. Scalar unknowns are
/// numbered partition by partition, node-major within each partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    parts: Vec<Partition>,
}

impl Layout {
    pub fn new(parts: Vec<Partition>) -> Self {
        Self { parts }
    }

    pub fn scalar(n: usize) -> Self {
        Self::new(alloc::vec![Partition { kind: PartitionKind::Scalar, nodes: n, components: 1 }])
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn dofs(&self) -> usize {
        self.parts.iter().map(Partition::dofs).sum()
    }

    pub fn nodes(&self) -> usize {
        self.parts.iter().map(|p| p.nodes).sum()
    }

    pub fn dof_range(&self, part: usize) -> Range<usize> {
        let start: usize = self.parts[..part].iter().map(Partition::dofs).sum();
        start..start + self.parts[part].dofs()
    }

    pub fn node_range(&self, part: usize) -> Range<usize> {
        let start: usize = self.parts[..part].iter().map(|p| p.nodes).sum();
        start..start + self.parts[part].nodes
    }

    pub fn find(&self, kind: PartitionKind) -> Option<usize> {
        self.parts.iter().position(|p| p.kind == kind)
    }

    pub fn is_saddle(&self) -> bool {
        self.find(PartitionKind::Pressure).is_some()
    }

    /// Scalar range of all non-pressure partitions, which precede the pressure.
    pub fn velocity_dofs(&self) -> Range<usize> {
        let n: usize = self.parts.iter().filter(|p| p.kind != PartitionKind::Pressure).map(Partition::dofs).sum();
        0..n
    }

    pub fn pressure_dofs(&self) -> Range<usize> {
        match self.find(PartitionKind::Pressure) {
            Some(i) => self.dof_range(i),
            None => self.dofs()..self.dofs(),
        }
    }

    /// First scalar index of every node, followed by the total DOF count.
    pub fn node_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.nodes() + 1);
        let mut s = 0;
        for p in &self.parts {
            for _ in 0..p.nodes {
                off.push(s);
                s += p.components;
            }
        }
        off.push(s);
        off
    }
}
