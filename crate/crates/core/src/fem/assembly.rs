//! Global assembly of the partitioned block systems.
//!
//! Vertex and edge DOF on Dirichlet boundaries are removed from the numbering;
//! their prescribed values enter the right-hand side through the hierarchical
//! interpolant of the boundary data (vertex values plus edge corrections
//! `g(mid) - (g(a) + g(b)) / 2`).

use alloc::vec;
use alloc::vec::Vec;

use super::basis::TetGeometry;
use super::element::{element_matrices, VELOCITY_DOFS};
use super::problem::{ProblemKind, ProblemSpec};
use super::quadrature::triangle_rule;
use crate::coarsening::{Layout, Partition, PartitionKind};
use crate::error::{Error, Result};
use crate::mesh::{cross, BoundaryTag, Mesh, Point};
use crate::sparse::{BlockSparseMatrix, CsrMatrix};

/// Free-DOF numbering of vertices (linear partition) and edges (quadratic partition).
#[derive(Debug, Clone, PartialEq)]
pub struct DofMap {
    pub vertex_linear: Vec<Option<usize>>,
    pub edge_quadratic: Vec<Option<usize>>,
    pub linear_vertices: Vec<usize>,
    pub quadratic_edges: Vec<usize>,
}

impl DofMap {
    pub fn from_mesh(mesh: &Mesh) -> Self {
        let mut linear_vertices = Vec::new();
        let vertex_linear = mesh
            .vertex_tags()
            .iter()
            .enumerate()
            .map(|(v, &t)| {
                (t != BoundaryTag::Dirichlet).then(|| {
                    linear_vertices.push(v);
                    linear_vertices.len() - 1
                })
            })
            .collect();
        let mut quadratic_edges = Vec::new();
        let edge_quadratic = mesh
            .edge_tags()
            .iter()
            .enumerate()
            .map(|(e, &t)| {
                (t != BoundaryTag::Dirichlet).then(|| {
                    quadratic_edges.push(e);
                    quadratic_edges.len() - 1
                })
            })
            .collect();
        Self { vertex_linear, edge_quadratic, linear_vertices, quadratic_edges }
    }

    pub fn num_linear(&self) -> usize {
        self.linear_vertices.len()
    }

    pub fn num_quadratic(&self) -> usize {
        self.quadratic_edges.len()
    }
}

/// Hierarchical coefficients of a vector field: one value per vertex and one
/// bubble coefficient per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalField {
    pub vertex: Vec<[f64; 3]>,
    pub edge: Vec<[f64; 3]>,
}

impl NodalField {
    /// Hierarchical P2 interpolant of `f`.
    pub fn interpolate<F: Fn(&Point) -> [f64; 3]>(mesh: &Mesh, f: F) -> Self {
        let vertex: Vec<[f64; 3]> = mesh.vertices().iter().map(&f).collect();
        let edge = mesh
            .edges()
            .iter()
            .enumerate()
            .map(|(e, [a, b])| {
                let m = f(&mesh.edge_midpoint(e));
                let (va, vb) = (vertex[*a], vertex[*b]);
                [m[0] - 0.5 * (va[0] + vb[0]), m[1] - 0.5 * (va[1] + vb[1]), m[2] - 0.5 * (va[2] + vb[2])]
            })
            .collect();
        Self { vertex, edge }
    }
}

/// The SPD system `[[K_ll, K_ql^T], [K_ql, K_qq]] u = f`.
#[derive(Debug, Clone)]
pub struct BlockSystem {
    pub k_ll: BlockSparseMatrix,
    pub k_ql: BlockSparseMatrix,
    pub k_qq: BlockSparseMatrix,
    pub f_l: Vec<f64>,
    pub f_q: Vec<f64>,
    pub dofs: DofMap,
    /// Dirichlet lift (zero on free entities).
    pub lift: NodalField,
}

/// The saddle point system `[[A, B^T], [B, -C]] (u, p) = (f, g)` with one
/// pressure unknown per mesh vertex.
#[derive(Debug, Clone)]
pub struct SaddleSystem {
    pub velocity: BlockSystem,
    pub b_ll: BlockSparseMatrix,
    pub b_lq: BlockSparseMatrix,
    pub c_ll: BlockSparseMatrix,
    /// Unscaled P1 mass matrix; its pattern drives the pressure coarsening.
    pub pressure_mass: BlockSparseMatrix,
    pub g_l: Vec<f64>,
}

#[derive(Debug, Clone)]
pub enum AssembledSystem {
    Elliptic(BlockSystem),
    Saddle(SaddleSystem),
}

/// Finite element solution with Dirichlet values restored.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub velocity: NodalField,
    pub pressure: Option<Vec<f64>>,
}

fn block3(a: &[f64], k: usize, l: usize) -> [f64; 9] {
    let mut blk = [0.0; 9];
    for c in 0..3 {
        for e in 0..3 {
            blk[3 * c + e] = a[(3 * k + c) * VELOCITY_DOFS + 3 * l + e];
        }
    }
    blk
}

#[derive(Clone, Copy)]
enum LocalNode {
    Linear(usize),
    Quadratic(usize),
    Fixed,
}

pub fn assemble(mesh: &Mesh, spec: &ProblemSpec) -> Result<AssembledSystem> {
    if !mesh.is_tagged() {
        return Err(Error::MissingTags);
    }
    spec.validate()?;
    let dofs = DofMap::from_mesh(mesh);
    let (nl, nq, nv) = (dofs.num_linear(), dofs.num_quadratic(), mesh.num_vertices());
    let saddle = spec.kind.is_saddle();

    let dirichlet = |p: &Point| (spec.dirichlet)(p);
    let full = NodalField::interpolate(mesh, dirichlet);
    let mut lift = NodalField { vertex: vec![[0.0; 3]; nv], edge: vec![[0.0; 3]; mesh.num_edges()] };
    for v in 0..nv {
        if dofs.vertex_linear[v].is_none() {
            lift.vertex[v] = full.vertex[v];
        }
    }
    for e in 0..mesh.num_edges() {
        if dofs.edge_quadratic[e].is_none() {
            lift.edge[e] = full.edge[e];
        }
    }

    let local_nodes = |t: usize| -> [LocalNode; 10] {
        let tet = mesh.tets()[t];
        let te = mesh.tet_edges()[t];
        let mut out = [LocalNode::Fixed; 10];
        for k in 0..4 {
            if let Some(i) = dofs.vertex_linear[tet[k]] {
                out[k] = LocalNode::Linear(i);
            }
        }
        for k in 0..6 {
            if let Some(i) = dofs.edge_quadratic[te[k]] {
                out[4 + k] = LocalNode::Quadratic(i);
            }
        }
        out
    };

    // sparsity patterns from element connectivity
    let mut p_ll = vec![Vec::new(); nl];
    let mut p_ql = vec![Vec::new(); nq];
    let mut p_qq = vec![Vec::new(); nq];
    let (mut p_bl, mut p_bq, mut p_m) = if saddle {
        (vec![Vec::new(); nv], vec![Vec::new(); nv], vec![Vec::new(); nv])
    } else {
        (Vec::new(), Vec::new(), Vec::new())
    };
    for t in 0..mesh.num_tets() {
        let nodes = local_nodes(t);
        for rn in nodes {
            for cn in nodes {
                match (rn, cn) {
                    (LocalNode::Linear(i), LocalNode::Linear(j)) => p_ll[i].push(j),
                    (LocalNode::Quadratic(i), LocalNode::Linear(j)) => p_ql[i].push(j),
                    (LocalNode::Quadratic(i), LocalNode::Quadratic(j)) => p_qq[i].push(j),
                    _ => {}
                }
            }
        }
        if saddle {
            let tet = mesh.tets()[t];
            for &p in &tet {
                for cn in nodes {
                    match cn {
                        LocalNode::Linear(j) => p_bl[p].push(j),
                        LocalNode::Quadratic(j) => p_bq[p].push(j),
                        LocalNode::Fixed => {}
                    }
                }
                p_m[p].extend_from_slice(&tet);
            }
        }
    }
    let mut k_ll = BlockSparseMatrix::from_pattern(nl, 3, 3, p_ll)?;
    let mut k_ql = BlockSparseMatrix::from_pattern(nl, 3, 3, p_ql)?;
    let mut k_qq = BlockSparseMatrix::from_pattern(nq, 3, 3, p_qq)?;
    let mut b_ll = BlockSparseMatrix::from_pattern(nl, 1, 3, p_bl)?;
    let mut b_lq = BlockSparseMatrix::from_pattern(nq, 1, 3, p_bq)?;
    let mut mass = BlockSparseMatrix::from_pattern(nv, 1, 1, p_m)?;

    let mut f_l = vec![0.0; 3 * nl];
    let mut f_q = vec![0.0; 3 * nq];
    let mut g_l = vec![0.0; if saddle { nv } else { 0 }];

    for t in 0..mesh.num_tets() {
        let geom = TetGeometry::new(mesh.tet_points(t), t)?;
        let em = element_matrices(&geom, spec);
        let nodes = local_nodes(t);
        let tet = mesh.tets()[t];
        let te = mesh.tet_edges()[t];
        let mut ud = [0.0; VELOCITY_DOFS];
        for (k, n) in nodes.iter().enumerate() {
            if let LocalNode::Fixed = n {
                let v = if k < 4 { lift.vertex[tet[k]] } else { lift.edge[te[k - 4]] };
                ud[3 * k..3 * k + 3].copy_from_slice(&v);
            }
        }
        for (k, rn) in nodes.iter().enumerate() {
            let (rhs, row) = match *rn {
                LocalNode::Linear(i) => (&mut f_l, i),
                LocalNode::Quadratic(i) => (&mut f_q, i),
                LocalNode::Fixed => continue,
            };
            for (l, cn) in nodes.iter().enumerate() {
                let blk = block3(&em.a, k, l);
                match (*rn, *cn) {
                    (LocalNode::Linear(i), LocalNode::Linear(j)) => k_ll.add_block(i, j, &blk)?,
                    (LocalNode::Quadratic(i), LocalNode::Linear(j)) => k_ql.add_block(i, j, &blk)?,
                    (LocalNode::Quadratic(i), LocalNode::Quadratic(j)) => k_qq.add_block(i, j, &blk)?,
                    (_, LocalNode::Fixed) => {
                        let u = &ud[3 * l..3 * l + 3];
                        for c in 0..3 {
                            rhs[3 * row + c] -= blk[3 * c] * u[0] + blk[3 * c + 1] * u[1] + blk[3 * c + 2] * u[2];
                        }
                    }
                    _ => {}
                }
            }
        }
        if let (Some(b), Some(m)) = (&em.b, &em.mass) {
            for i in 0..4 {
                let p = tet[i];
                for (l, cn) in nodes.iter().enumerate() {
                    let blk = &b[i * VELOCITY_DOFS + 3 * l..i * VELOCITY_DOFS + 3 * l + 3];
                    match *cn {
                        LocalNode::Linear(j) => b_ll.add_block(p, j, blk)?,
                        LocalNode::Quadratic(j) => b_lq.add_block(p, j, blk)?,
                        LocalNode::Fixed => {
                            g_l[p] -= blk[0] * ud[3 * l] + blk[1] * ud[3 * l + 1] + blk[2] * ud[3 * l + 2];
                        }
                    }
                }
                for j in 0..4 {
                    mass.add_block(p, tet[j], &[m[i][j]])?;
                }
            }
        }
    }

    if let Some(traction) = &spec.neumann {
        let rule = triangle_rule();
        for face in mesh.boundary_faces().iter().filter(|f| f.tag == BoundaryTag::Neumann) {
            let [a, b, c] = face.vertices;
            let pts = [a, b, c].map(|v| mesh.vertices()[v]);
            let nrm = cross(
                &[pts[1][0] - pts[0][0], pts[1][1] - pts[0][1], pts[1][2] - pts[0][2]],
                &[pts[2][0] - pts[0][0], pts[2][1] - pts[0][1], pts[2][2] - pts[0][2]],
            );
            let area2 = libm::sqrt(nrm[0] * nrm[0] + nrm[1] * nrm[1] + nrm[2] * nrm[2]);
            let unit = [nrm[0] / area2, nrm[1] / area2, nrm[2] / area2];
            let edge_of = |u: usize, v: usize| {
                let key = if u < v { [u, v] } else { [v, u] };
                mesh.edges().binary_search(&key).expect("face edge exists")
            };
            let face_edges = [edge_of(a, b), edge_of(b, c), edge_of(a, c)];
            for q in &rule {
                let mu = q.bary;
                let x = [0, 1, 2].map(|d| mu[0] * pts[0][d] + mu[1] * pts[1][d] + mu[2] * pts[2][d]);
                let g = traction(&x, &unit);
                let w = q.weight * area2;
                let phi_v = mu;
                let phi_e = [4.0 * mu[0] * mu[1], 4.0 * mu[1] * mu[2], 4.0 * mu[0] * mu[2]];
                for (k, v) in [a, b, c].iter().enumerate() {
                    if let Some(i) = dofs.vertex_linear[*v] {
                        for d in 0..3 {
                            f_l[3 * i + d] += w * phi_v[k] * g[d];
                        }
                    }
                }
                for (k, e) in face_edges.iter().enumerate() {
                    if let Some(i) = dofs.edge_quadratic[*e] {
                        for d in 0..3 {
                            f_q[3 * i + d] += w * phi_e[k] * g[d];
                        }
                    }
                }
            }
        }
    }

    let velocity = BlockSystem { k_ll, k_ql, k_qq, f_l, f_q, dofs, lift };
    if !saddle {
        return Ok(AssembledSystem::Elliptic(velocity));
    }
    let c_ll = match spec.kind {
        ProblemKind::ElasticityMixed => mass.scaled(1.0 / spec.material.lambda),
        _ => BlockSparseMatrix::from_pattern(nv, 1, 1, vec![Vec::new(); nv])?,
    };
    Ok(AssembledSystem::Saddle(SaddleSystem { velocity, b_ll, b_lq, c_ll, pressure_mass: mass, g_l }))
}

impl BlockSystem {
    pub fn layout(&self) -> Layout {
        Layout::new(vec![
            Partition { kind: PartitionKind::Linear, nodes: self.dofs.num_linear(), components: 3 },
            Partition { kind: PartitionKind::Quadratic, nodes: self.dofs.num_quadratic(), components: 3 },
        ])
    }

    /// Monolithic scalar matrix `[[K_ll, K_ql^T], [K_ql, K_qq]]`.
    pub fn monolithic(&self) -> CsrMatrix {
        let (ll, ql, qq) = (self.k_ll.to_csr(), self.k_ql.to_csr(), self.k_qq.to_csr());
        let lq = ql.transpose();
        CsrMatrix::block_compose(&[&[Some(&ll), Some(&lq)], &[Some(&ql), Some(&qq)]])
            .expect("partition blocks conform")
    }

    pub fn rhs(&self) -> Vec<f64> {
        let mut r = self.f_l.clone();
        r.extend_from_slice(&self.f_q);
        r
    }
}

impl SaddleSystem {
    pub fn layout(&self) -> Layout {
        let mut parts = self.velocity.layout().parts().to_vec();
        parts.push(Partition { kind: PartitionKind::Pressure, nodes: self.g_l.len(), components: 1 });
        Layout::new(parts)
    }

    /// Monolithic scalar matrix `[[A, B^T], [B, -C]]`.
    pub fn monolithic(&self) -> CsrMatrix {
        let v = &self.velocity;
        let (ll, ql, qq) = (v.k_ll.to_csr(), v.k_ql.to_csr(), v.k_qq.to_csr());
        let lq = ql.transpose();
        let (bl, bq) = (self.b_ll.to_csr(), self.b_lq.to_csr());
        let (blt, bqt) = (bl.transpose(), bq.transpose());
        let c = self.c_ll.to_csr().scaled(-1.0);
        CsrMatrix::block_compose(&[
            &[Some(&ll), Some(&lq), Some(&blt)],
            &[Some(&ql), Some(&qq), Some(&bqt)],
            &[Some(&bl), Some(&bq), Some(&c)],
        ])
        .expect("partition blocks conform")
    }

    pub fn rhs(&self) -> Vec<f64> {
        let mut r = self.velocity.rhs();
        r.extend_from_slice(&self.g_l);
        r
    }
}

impl AssembledSystem {
    pub fn layout(&self) -> Layout {
        match self {
            AssembledSystem::Elliptic(s) => s.layout(),
            AssembledSystem::Saddle(s) => s.layout(),
        }
    }

    pub fn monolithic(&self) -> CsrMatrix {
        match self {
            AssembledSystem::Elliptic(s) => s.monolithic(),
            AssembledSystem::Saddle(s) => s.monolithic(),
        }
    }

    pub fn rhs(&self) -> Vec<f64> {
        match self {
            AssembledSystem::Elliptic(s) => s.rhs(),
            AssembledSystem::Saddle(s) => s.rhs(),
        }
    }

    pub fn is_saddle(&self) -> bool {
        matches!(self, AssembledSystem::Saddle(_))
    }

    pub fn velocity(&self) -> &BlockSystem {
        match self {
            AssembledSystem::Elliptic(s) => s,
            AssembledSystem::Saddle(s) => &s.velocity,
        }
    }

    /// Pattern carrier for pressure coarsening (saddle systems only).
    pub fn pressure_graph_matrix(&self) -> Option<CsrMatrix> {
        match self {
            AssembledSystem::Elliptic(_) => None,
            AssembledSystem::Saddle(s) => Some(s.pressure_mass.to_csr()),
        }
    }

    /// Scatters a monolithic solution vector back onto mesh entities and adds the Dirichlet lift.
    pub fn expand_solution(&self, x: &[f64]) -> Result<Solution> {
        let layout = self.layout();
        if x.len() != layout.dofs() {
            return Err(Error::ShapeError { expected: (layout.dofs(), 1), found: (x.len(), 1) });
        }
        let v = self.velocity();
        let mut velocity = v.lift.clone();
        let nl = v.dofs.num_linear();
        for (i, &vert) in v.dofs.linear_vertices.iter().enumerate() {
            velocity.vertex[vert].copy_from_slice(&x[3 * i..3 * i + 3]);
        }
        for (i, &e) in v.dofs.quadratic_edges.iter().enumerate() {
            let o = 3 * (nl + i);
            velocity.edge[e].copy_from_slice(&x[o..o + 3]);
        }
        let pressure = self.is_saddle().then(|| x[layout.pressure_dofs()].to_vec());
        Ok(Solution { velocity, pressure })
    }
}
