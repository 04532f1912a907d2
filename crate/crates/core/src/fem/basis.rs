//! Hierarchical quadratic basis on a tetrahedron: the four barycentric hat
//! functions followed by the six edge bubbles `4 l_a l_b`.

use crate::error::{Error, Result};
use crate::mesh::{signed_volume, Point, LOCAL_EDGES};

pub const NODES_PER_TET: usize = 10;

/// Affine geometry of one tetrahedron.
#[derive(Debug, Clone, Copy)]
pub struct TetGeometry {
    pub points: [Point; 4],
    pub volume: f64,
    /// Constant gradients of the barycentric coordinates.
    pub grad_lambda: [[f64; 3]; 4],
}

impl TetGeometry {
    pub fn new(points: [Point; 4], tet_index: usize) -> Result<Self> {
        let [p0, p1, p2, p3] = points;
        let volume = signed_volume(&p0, &p1, &p2, &p3);
        let scale = points.iter().flatten().fold(0.0f64, |m, v| m.max(libm::fabs(*v))).max(1.0);
        if !(volume > 1e-14 * scale * scale * scale) {
            return Err(Error::DegenerateElement { tet: tet_index });
        }
        let j = [
            [p1[0] - p0[0], p2[0] - p0[0], p3[0] - p0[0]],
            [p1[1] - p0[1], p2[1] - p0[1], p3[1] - p0[1]],
            [p1[2] - p0[2], p2[2] - p0[2], p3[2] - p0[2]],
        ];
        let inv = invert3(&j);
        let mut grad_lambda = [[0.0; 3]; 4];
        for k in 0..3 {
            grad_lambda[k + 1] = inv[k];
        }
        for c in 0..3 {
            grad_lambda[0][c] = -(inv[0][c] + inv[1][c] + inv[2][c]);
        }
        Ok(Self { points, volume, grad_lambda })
    }

    /// Physical coordinates of a barycentric point.
    pub fn map(&self, bary: &[f64; 4]) -> Point {
        let mut x = [0.0; 3];
        for (l, p) in bary.iter().zip(&self.points) {
            for c in 0..3 {
                x[c] += l * p[c];
            }
        }
        x
    }
}

pub(crate) fn invert3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let inv_det = 1.0 / det;
    [
        [
            (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * inv_det,
            (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv_det,
            (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv_det,
        ],
        [
            (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * inv_det,
            (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv_det,
            (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv_det,
        ],
        [
            (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * inv_det,
            (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv_det,
            (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv_det,
        ],
    ]
}

/// Values of the ten basis functions at a barycentric point.
pub fn values(bary: &[f64; 4]) -> [f64; NODES_PER_TET] {
    let mut phi = [0.0; NODES_PER_TET];
    phi[..4].copy_from_slice(bary);
    for (k, [a, b]) in LOCAL_EDGES.iter().enumerate() {
        phi[4 + k] = 4.0 * bary[*a] * bary[*b];
    }
    phi
}

/// Physical gradients of the ten basis functions at a barycentric point.
pub fn gradients(geom: &TetGeometry, bary: &[f64; 4]) -> [[f64; 3]; NODES_PER_TET] {
    let g = &geom.grad_lambda;
    let mut grad = [[0.0; 3]; NODES_PER_TET];
    grad[..4].copy_from_slice(g);
    for (k, [a, b]) in LOCAL_EDGES.iter().enumerate() {
        for c in 0..3 {
            grad[4 + k][c] = 4.0 * (bary[*a] * g[*b][c] + bary[*b] * g[*a][c]);
        }
    }
    grad
}
