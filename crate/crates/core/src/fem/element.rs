//! Element matrices of the four bilinear forms.

use alloc::vec;
use alloc::vec::Vec;

use super::basis::{self, TetGeometry, NODES_PER_TET};
use super::problem::{ProblemKind, ProblemSpec};
use super::quadrature::tet_rule;

pub const VELOCITY_DOFS: usize = 3 * NODES_PER_TET;

/// Local matrices for one tetrahedron. Velocity DOF are ordered node-major:
/// local index `3 * node + component`, nodes `0..4` vertices, `4..10` edges.
#[derive(Debug, Clone)]
pub struct ElementMatrices {
    /// 30x30 row-major.
    pub a: Vec<f64>,
    /// 4x30 row-major, `b(v, q) = -int q div v`; saddle problems only.
    pub b: Option<Vec<f64>>,
    /// 4x4 pressure mass `int p q` (unscaled); saddle problems only.
    pub mass: Option<[[f64; 4]; 4]>,
}

/// `d[k][l][a][b] = int d_a phi_k d_b phi_l`
pub fn gradient_products(geom: &TetGeometry) -> Vec<[[f64; 3]; 3]> {
    let mut d = vec![[[0.0; 3]; 3]; NODES_PER_TET * NODES_PER_TET];
    for q in tet_rule() {
        let w = q.weight * 6.0 * geom.volume;
        let g = basis::gradients(geom, &q.bary);
        for k in 0..NODES_PER_TET {
            for l in 0..NODES_PER_TET {
                let e = &mut d[k * NODES_PER_TET + l];
                for a in 0..3 {
                    for b in 0..3 {
                        e[a][b] += w * g[k][a] * g[l][b];
                    }
                }
            }
        }
    }
    d
}

pub fn element_matrices(geom: &TetGeometry, spec: &ProblemSpec) -> ElementMatrices {
    let d = gradient_products(geom);
    let mu = spec.material.mu;
    let n = VELOCITY_DOFS;
    let mut a = vec![0.0; n * n];
    for k in 0..NODES_PER_TET {
        for l in 0..NODES_PER_TET {
            let dk = &d[k * NODES_PER_TET + l];
            let trace = dk[0][0] + dk[1][1] + dk[2][2];
            for c in 0..3 {
                for e in 0..3 {
                    let delta = if c == e { 1.0 } else { 0.0 };
                    let v = match spec.kind {
                        ProblemKind::VectorLaplace => delta * trace,
                        ProblemKind::ElasticityDisplacement => {
                            mu * (delta * trace + dk[e][c]) + spec.material.lambda * dk[c][e]
                        }
                        ProblemKind::ElasticityMixed | ProblemKind::Stokes => mu * (delta * trace + dk[e][c]),
                    };
                    a[(3 * k + c) * n + 3 * l + e] = v;
                }
            }
        }
    }

    let (b, mass) = if spec.kind.is_saddle() {
        let mut b = vec![0.0; 4 * n];
        let mut m = [[0.0; 4]; 4];
        for q in tet_rule() {
            let w = q.weight * 6.0 * geom.volume;
            let g = basis::gradients(geom, &q.bary);
            for i in 0..4 {
                let li = q.bary[i];
                for k in 0..NODES_PER_TET {
                    for c in 0..3 {
                        b[i * n + 3 * k + c] -= w * li * g[k][c];
                    }
                }
                for j in 0..4 {
                    m[i][j] += w * li * q.bary[j];
                }
            }
        }
        (Some(b), Some(m))
    } else {
        (None, None)
    };
    ElementMatrices { a, b, mass }
}
