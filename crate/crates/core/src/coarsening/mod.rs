//! Graph-based coarsening and the Galerkin level hierarchy.
//!
//! Each node partition (linear, quadratic, pressure) is coarsened on its own
//! graph, so the prolongation is block diagonal over partitions.

pub mod graph;
pub mod hierarchy;
pub mod layout;
pub mod prolongation;
pub mod split;

pub use graph::NodeGraph;
pub use hierarchy::{CoarseningMode, Hierarchy, HierarchyConfig, Level, LevelSummary};
pub use layout::{Layout, Partition, PartitionKind};
pub use prolongation::{build_prolongation, expand_components};
pub use split::{select_coarse, CfSplit, NodeLabel};
