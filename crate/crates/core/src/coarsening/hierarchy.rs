use alloc::vec;
use alloc::vec::Vec;

use super::graph::NodeGraph;
use super::layout::{Layout, Partition, PartitionKind};
use super::prolongation::{build_prolongation, expand_components};
use super::split::select_coarse;
use crate::error::{Error, Result};
use crate::fem::AssembledSystem;
use crate::sparse::{CsrMatrix, LuFactorization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoarseningMode {
    /// One graph per partition; linear/quadratic couplings are ignored.
    Separated,
    /// One graph over all velocity nodes, built from the full velocity block.
    Monolithic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HierarchyConfig {
    pub mode: CoarseningMode,
    /// Stop once the level has at most this many scalar unknowns.
    pub coarse_size_cap: usize,
    pub max_levels: usize,
    /// Stop when coarse nodes exceed this fraction of fine nodes.
    pub stall_ratio: f64,
}

impl Default for HierarchyConfig {
    fn default() -> Self {
        Self { mode: CoarseningMode::Separated, coarse_size_cap: 500, max_levels: 10, stall_ratio: 0.9 }
    }
}

#[derive(Debug, Clone)]
pub struct Level {
    pub operator: CsrMatrix,
    pub layout: Layout,
    /// Pressure-sized matrix whose pattern defines the pressure graph.
    pub aux: Option<CsrMatrix>,
    /// Interpolation from the next coarser level; `None` on the coarsest.
    pub prolongation: Option<CsrMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelSummary {
    pub level: usize,
    pub partitions: Vec<(PartitionKind, usize)>,
    pub dofs: usize,
    pub nnz: usize,
}

/// Galerkin hierarchy with a dense factorization of the coarsest operator.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    levels: Vec<Level>,
    coarse: LuFactorization,
}

struct Group {
    kind: PartitionKind,
    parts: core::ops::Range<usize>,
    components: usize,
}

fn groups(layout: &Layout, mode: CoarseningMode) -> Vec<Group> {
    let parts = layout.parts();
    let mut out: Vec<Group> = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let merge = mode == CoarseningMode::Monolithic && p.kind != PartitionKind::Pressure;
        if merge {
            if let Some(g) = out.last_mut() {
                if g.kind == PartitionKind::Velocity && g.components == p.components {
                    g.parts.end = i + 1;
                    continue;
                }
            }
            out.push(Group { kind: PartitionKind::Velocity, parts: i..i + 1, components: p.components });
        } else {
            out.push(Group { kind: p.kind, parts: i..i + 1, components: p.components });
        }
    }
    out
}

struct CoarseStep {
    p: CsrMatrix,
    aux_p: Option<CsrMatrix>,
    layout: Layout,
}

fn coarsen(a: &CsrMatrix, layout: &Layout, aux: Option<&CsrMatrix>, config: &HierarchyConfig) -> Result<Option<CoarseStep>> {
    let mut blocks = Vec::new();
    let mut coarse_parts = Vec::new();
    let mut aux_p = None;
    let mut coarse_nodes = 0;
    for g in groups(layout, config.mode) {
        let start = layout.dof_range(g.parts.start).start;
        let nodes: usize = layout.parts()[g.parts.clone()].iter().map(|p| p.nodes).sum();
        let graph = match (g.kind, aux) {
            (PartitionKind::Pressure, Some(m)) => NodeGraph::from_matrix(m),
            _ => NodeGraph::from_matrix_block(a, start, nodes, g.components),
        };
        if graph.num_nodes() != nodes {
            return Err(Error::ShapeError { expected: (nodes, nodes), found: (graph.num_nodes(), graph.num_nodes()) });
        }
        let split = select_coarse(&graph);
        let pn = build_prolongation(&split, &graph)?;
        coarse_nodes += split.num_coarse;
        coarse_parts.push(Partition { kind: g.kind, nodes: split.num_coarse, components: g.components });
        if g.kind == PartitionKind::Pressure {
            aux_p = Some(pn.clone());
        }
        blocks.push(expand_components(&pn, g.components));
    }
    if coarse_nodes as f64 > config.stall_ratio * layout.nodes() as f64 {
        return Ok(None);
    }
    let rows: Vec<Vec<Option<&CsrMatrix>>> = (0..blocks.len())
        .map(|i| (0..blocks.len()).map(|j| (i == j).then_some(&blocks[i])).collect())
        .collect();
    let row_refs: Vec<&[Option<&CsrMatrix>]> = rows.iter().map(Vec::as_slice).collect();
    let p = CsrMatrix::block_compose(&row_refs)?;
    Ok(Some(CoarseStep { p, aux_p, layout: Layout::new(coarse_parts) }))
}

impl Hierarchy {
    pub fn build(operator: CsrMatrix, layout: Layout, aux: Option<CsrMatrix>, config: &HierarchyConfig) -> Result<Self> {
        if operator.nrows() != operator.ncols() || operator.nrows() != layout.dofs() {
            return Err(Error::ShapeError { expected: (layout.dofs(), layout.dofs()), found: operator.shape() });
        }
        if config.max_levels == 0 || !(config.stall_ratio > 0.0) {
            return Err(Error::InvalidParameter("max_levels and stall_ratio must be positive"));
        }
        let mut levels = vec![Level { operator, layout, aux, prolongation: None }];
        while levels.len() < config.max_levels {
            let fine = levels.last().expect("at least one level");
            if fine.layout.dofs() <= config.coarse_size_cap {
                break;
            }
            let Some(step) = coarsen(&fine.operator, &fine.layout, fine.aux.as_ref(), config)? else {
                break;
            };
            let operator = CsrMatrix::triple_product(&step.p, &fine.operator, true)?;
            let aux = match (&fine.aux, &step.aux_p) {
                (Some(m), Some(h)) => Some(CsrMatrix::triple_product(h, m, true)?),
                _ => None,
            };
            levels.last_mut().expect("at least one level").prolongation = Some(step.p);
            levels.push(Level { operator, layout: step.layout, aux, prolongation: None });
        }
        let coarse = LuFactorization::new(&levels.last().expect("at least one level").operator.to_dense())?;
        Ok(Self { levels, coarse })
    }

    /// Hierarchy for an assembled FE system, using the pressure mass pattern
    /// for the pressure graph.
    pub fn from_system(system: &AssembledSystem, config: &HierarchyConfig) -> Result<Self> {
        Self::build(system.monolithic(), system.layout(), system.pressure_graph_matrix(), config)
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, l: usize) -> &Level {
        &self.levels[l]
    }

    pub fn coarse_solver(&self) -> &LuFactorization {
        &self.coarse
    }

    /// Total nonzeros over all levels divided by the finest level's nonzeros.
    pub fn operator_complexity(&self) -> f64 {
        let total: usize = self.levels.iter().map(|l| l.operator.nnz()).sum();
        total as f64 / self.levels[0].operator.nnz().max(1) as f64
    }

    pub fn summary(&self) -> Vec<LevelSummary> {
        self.levels
            .iter()
            .enumerate()
            .map(|(i, l)| LevelSummary {
                level: i,
                partitions: l.layout.parts().iter().map(|p| (p.kind, p.dofs())).collect(),
                dofs: l.layout.dofs(),
                nnz: l.operator.nnz(),
            })
            .collect()
    }
}
