//! Structured tetrahedral meshes of boxes.
//!
//! Every grid cell is split into six tetrahedra around the common body
//! diagonal `(0,0,0)-(1,1,1)` (Kuhn subdivision). All cells are split the same
//! way, so the mesh is conforming and its vertex, edge and face sets are fully
//! determined by the grid dimensions.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type Point = [f64; 3];

/// Local vertex pairs of the six tetrahedron edges, in the order of the
/// quadratic edge functions `4 l1 l2, 4 l2 l3, 4 l3 l4, 4 l1 l3, 4 l1 l4, 4 l2 l4`.
pub const LOCAL_EDGES: [[usize; 2]; 6] = [[0, 1], [1, 2], [2, 3], [0, 2], [0, 3], [1, 3]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryTag {
    Interior,
    Dirichlet,
    Neumann,
}

/// Boundary triangle, oriented so that `(b - a) x (c - a)` points out of the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryFace {
    pub vertices: [usize; 3],
    pub tet: usize,
    pub tag: BoundaryTag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    vertices: Vec<Point>,
    tets: Vec<[usize; 4]>,
    edges: Vec<[usize; 2]>,
    tet_edges: Vec<[usize; 6]>,
    boundary_faces: Vec<BoundaryFace>,
    vertex_tags: Vec<BoundaryTag>,
    edge_tags: Vec<BoundaryTag>,
    tagged: bool,
}

/// Signed volume of the tetrahedron `(a, b, c, d)`.
pub fn signed_volume(a: &Point, b: &Point, c: &Point, d: &Point) -> f64 {
    let u = sub(b, a);
    let v = sub(c, a);
    let w = sub(d, a);
    dot(&cross(&u, &v), &w) / 6.0
}

pub(crate) fn sub(a: &Point, b: &Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: &Point, b: &Point) -> Point {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn dot(a: &Point, b: &Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Kuhn subdivision of the unit cube with `n` cells per axis.
pub fn generate_unit_cube_mesh(n: usize) -> Result<Mesh> {
    if n == 0 {
        return Err(Error::InvalidParameter("cube subdivisions must be at least 1"));
    }
    generate_box_mesh([n, n, n], [1.0, 1.0, 1.0])
}

/// Box channel `[0,lx] x [0,ly] x [0,lz]`; inflow at `x = 0`, outflow at `x = lx`.
pub fn generate_channel_mesh(nx: usize, ny: usize, nz: usize, lx: f64, ly: f64, lz: f64) -> Result<Mesh> {
    if nx == 0 || ny == 0 || nz == 0 {
        return Err(Error::InvalidParameter("channel subdivisions must be at least 1"));
    }
    if !(lx > 0.0 && ly > 0.0 && lz > 0.0) {
        return Err(Error::InvalidParameter("channel lengths must be positive"));
    }
    generate_box_mesh([nx, ny, nz], [lx, ly, lz])
}

fn generate_box_mesh(cells: [usize; 3], lengths: [f64; 3]) -> Result<Mesh> {
    let [nx, ny, nz] = cells;
    let (px, py) = (nx + 1, ny + 1);
    let index = |i: usize, j: usize, k: usize| i + px * (j + py * k);

    let mut vertices = Vec::with_capacity(px * py * (nz + 1));
    for k in 0..=nz {
        for j in 0..=ny {
            for i in 0..=nx {
                vertices.push([
                    i as f64 / nx as f64 * lengths[0],
                    j as f64 / ny as f64 * lengths[1],
                    k as f64 / nz as f64 * lengths[2],
                ]);
            }
        }
    }

    // axis permutations; each one is a monotone lattice path from the cell's
    // origin corner to its opposite corner
    const PATHS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut tets = Vec::with_capacity(6 * nx * ny * nz);
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                for path in PATHS {
                    let mut corner = [i, j, k];
                    let mut tet = [index(i, j, k), 0, 0, 0];
                    for (step, &axis) in path.iter().enumerate() {
                        corner[axis] += 1;
                        tet[step + 1] = index(corner[0], corner[1], corner[2]);
                    }
                    let [a, b, c, d] = tet.map(|v| vertices[v]);
                    if signed_volume(&a, &b, &c, &d) < 0.0 {
                        tet.swap(2, 3);
                    }
                    tets.push(tet);
                }
            }
        }
    }
    Mesh::from_parts(vertices, tets)
}

impl Mesh {
    /// Builds the edge and boundary-face tables for an arbitrary conforming
    /// tetrahedral mesh.
    pub fn from_parts(vertices: Vec<Point>, tets: Vec<[usize; 4]>) -> Result<Self> {
        for (t, tet) in tets.iter().enumerate() {
            if tet.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::MalformedSystem("tetrahedron references a missing vertex"));
            }
            let [a, b, c, d] = tet.map(|v| vertices[v]);
            if signed_volume(&a, &b, &c, &d) <= 0.0 {
                return Err(Error::DegenerateElement { tet: t });
            }
        }

        let mut edges: Vec<[usize; 2]> = Vec::with_capacity(tets.len() * 2);
        for tet in &tets {
            for [a, b] in LOCAL_EDGES {
                let (u, v) = (tet[a], tet[b]);
                edges.push(if u < v { [u, v] } else { [v, u] });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let tet_edges: Vec<[usize; 6]> = tets
            .iter()
            .map(|tet| {
                LOCAL_EDGES.map(|[a, b]| {
                    let (u, v) = (tet[a], tet[b]);
                    let key = if u < v { [u, v] } else { [v, u] };
                    edges.binary_search(&key).expect("edge was inserted above")
                })
            })
            .collect();

        // (sorted face, tet, local vertex opposite the face)
        let mut faces: Vec<([usize; 3], usize, usize)> = Vec::with_capacity(tets.len() * 4);
        for (t, tet) in tets.iter().enumerate() {
            for opp in 0..4 {
                let mut f = [0usize; 3];
                let mut m = 0;
                for (l, &v) in tet.iter().enumerate() {
                    if l != opp {
                        f[m] = v;
                        m += 1;
                    }
                }
                f.sort_unstable();
                faces.push((f, t, opp));
            }
        }
        faces.sort_unstable();
        let mut boundary_faces = Vec::new();
        let mut i = 0;
        while i < faces.len() {
            let mut j = i + 1;
            while j < faces.len() && faces[j].0 == faces[i].0 {
                j += 1;
            }
            match j - i {
                1 => {
                    let (f, t, opp) = faces[i];
                    let (a, b, c) = (&vertices[f[0]], &vertices[f[1]], &vertices[f[2]]);
                    let d = &vertices[tets[t][opp]];
                    let normal = cross(&sub(b, a), &sub(c, a));
                    let oriented = if dot(&normal, &sub(d, a)) > 0.0 { [f[0], f[2], f[1]] } else { f };
                    boundary_faces.push(BoundaryFace { vertices: oriented, tet: t, tag: BoundaryTag::Neumann });
                }
                2 => {}
                _ => return Err(Error::MalformedSystem("face shared by more than two tetrahedra")),
            }
            i = j;
        }

        let nv = vertices.len();
        let ne = edges.len();
        Ok(Self {
            vertices,
            tets,
            edges,
            tet_edges,
            boundary_faces,
            vertex_tags: vec![BoundaryTag::Interior; nv],
            edge_tags: vec![BoundaryTag::Interior; ne],
            tagged: false,
        })
    }

    /// Tags boundary entities. A boundary triangle is Dirichlet when all three
    /// of its vertices satisfy `is_dirichlet`; vertices and edges of Dirichlet
    /// triangles are Dirichlet, other boundary entities are Neumann.
    pub fn tag_boundary<F: Fn(&Point) -> bool>(mut self, is_dirichlet: F) -> Mesh {
        self.vertex_tags.iter_mut().for_each(|t| *t = BoundaryTag::Interior);
        self.edge_tags.iter_mut().for_each(|t| *t = BoundaryTag::Interior);
        let on_dirichlet: Vec<bool> = self.vertices.iter().map(&is_dirichlet).collect();
        let mut face_edges = Vec::with_capacity(3);
        for face in self.boundary_faces.iter_mut() {
            let [a, b, c] = face.vertices;
            face.tag = if on_dirichlet[a] && on_dirichlet[b] && on_dirichlet[c] {
                BoundaryTag::Dirichlet
            } else {
                BoundaryTag::Neumann
            };
        }
        // Neumann first so Dirichlet wins on shared entities
        for pass in [BoundaryTag::Neumann, BoundaryTag::Dirichlet] {
            for face in self.boundary_faces.iter().filter(|f| f.tag == pass) {
                let [a, b, c] = face.vertices;
                for v in [a, b, c] {
                    self.vertex_tags[v] = pass;
                }
                face_edges.clear();
                face_edges.extend([[a, b], [b, c], [a, c]].map(|[u, v]| if u < v { [u, v] } else { [v, u] }));
                for key in &face_edges {
                    let e = self.edges.binary_search(key).expect("boundary edge exists");
                    self.edge_tags[e] = pass;
                }
            }
        }
        self.tagged = true;
        self
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn tets(&self) -> &[[usize; 4]] {
        &self.tets
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn tet_edges(&self) -> &[[usize; 6]] {
        &self.tet_edges
    }

    pub fn boundary_faces(&self) -> &[BoundaryFace] {
        &self.boundary_faces
    }

    pub fn vertex_tags(&self) -> &[BoundaryTag] {
        &self.vertex_tags
    }

    pub fn edge_tags(&self) -> &[BoundaryTag] {
        &self.edge_tags
    }

    pub fn is_tagged(&self) -> bool {
        self.tagged
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_tets(&self) -> usize {
        self.tets.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn tet_points(&self, t: usize) -> [Point; 4] {
        self.tets[t].map(|v| self.vertices[v])
    }

    pub fn edge_midpoint(&self, e: usize) -> Point {
        let [a, b] = self.edges[e];
        let (p, q) = (self.vertices[a], self.vertices[b]);
        [(p[0] + q[0]) * 0.5, (p[1] + q[1]) * 0.5, (p[2] + q[2]) * 0.5]
    }

    pub fn total_volume(&self) -> f64 {
        (0..self.tets.len())
            .map(|t| {
                let [a, b, c, d] = self.tet_points(t);
                signed_volume(&a, &b, &c, &d)
            })
            .sum()
    }

    pub fn count_tag(&self, tags: &[BoundaryTag], tag: BoundaryTag) -> usize {
        tags.iter().filter(|&&t| t == tag).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cube_counts() {
        let m = generate_unit_cube_mesh(1).unwrap();
        assert_eq!(m.num_vertices(), 8);
        assert_eq!(m.num_tets(), 6);
        assert_eq!(m.num_edges(), 19);
        assert_eq!(m.boundary_faces().len(), 12);
    }

    #[test]
    fn refinement_counts_follow_formulas() {
        for n in 1..=4 {
            let m = generate_unit_cube_mesh(n).unwrap();
            assert_eq!(m.num_vertices(), (n + 1).pow(3));
            assert_eq!(m.num_tets(), 6 * n.pow(3));
            // 3 axis families, 3 face-diagonal families, 1 body diagonal
            let expected_edges = 3 * n * (n + 1) * (n + 1) + 3 * n * n * (n + 1) + n * n * n;
            assert_eq!(m.num_edges(), expected_edges);
            assert_eq!(m.boundary_faces().len(), 12 * n * n);
        }
    }

    #[test]
    fn zero_subdivisions_rejected() {
        assert!(matches!(generate_unit_cube_mesh(0), Err(Error::InvalidParameter(_))));
        assert!(matches!(generate_channel_mesh(0, 1, 1, 10.0, 2.0, 2.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(generate_channel_mesh(1, 1, 1, -1.0, 2.0, 2.0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn channel_scaling() {
        let m = generate_channel_mesh(1, 1, 1, 10.0, 2.0, 2.0).unwrap();
        assert_eq!(m.num_vertices(), 8);
        assert_eq!(m.num_tets(), 6);
        let max = m.vertices().iter().fold([0.0f64; 3], |acc, p| [acc[0].max(p[0]), acc[1].max(p[1]), acc[2].max(p[2])]);
        assert_eq!(max, [10.0, 2.0, 2.0]);
        let m2 = generate_channel_mesh(2, 1, 1, 10.0, 2.0, 2.0).unwrap();
        assert_eq!((m2.num_vertices(), m2.num_tets()), (12, 12));
        assert!((m2.total_volume() - 40.0).abs() < 1e-12 * 40.0);
    }

    #[test]
    fn positive_orientation_and_volume() {
        let m = generate_unit_cube_mesh(3).unwrap();
        for t in 0..m.num_tets() {
            let [a, b, c, d] = m.tet_points(t);
            assert!(signed_volume(&a, &b, &c, &d) > 0.0);
        }
        assert!((m.total_volume() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tet_edges_resolve_to_local_pairs() {
        let m = generate_unit_cube_mesh(2).unwrap();
        for (t, tet) in m.tets().iter().enumerate() {
            for (l, [a, b]) in LOCAL_EDGES.iter().enumerate() {
                let e = m.edges()[m.tet_edges()[t][l]];
                let (u, v) = (tet[*a].min(tet[*b]), tet[*a].max(tet[*b]));
                assert_eq!(e, [u, v]);
            }
        }
        assert!(m.edges().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn boundary_faces_point_outward() {
        let m = generate_unit_cube_mesh(2).unwrap();
        for f in m.boundary_faces() {
            let [a, b, c] = f.vertices.map(|v| m.vertices()[v]);
            let nrm = cross(&sub(&b, &a), &sub(&c, &a));
            let centroid = [(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0, (a[2] + b[2] + c[2]) / 3.0];
            let outward = sub(&centroid, &[0.5, 0.5, 0.5]);
            assert!(dot(&nrm, &outward) > 0.0);
        }
    }

    fn z_faces(p: &Point) -> bool {
        p[2] == 0.0 || p[2] == 1.0
    }

    #[test]
    fn tagging_cube_top_and_bottom() {
        let m = generate_unit_cube_mesh(1).unwrap().tag_boundary(z_faces);
        assert_eq!(m.count_tag(m.vertex_tags(), BoundaryTag::Dirichlet), 8);
        let m = generate_unit_cube_mesh(2).unwrap().tag_boundary(z_faces);
        assert_eq!(m.count_tag(m.vertex_tags(), BoundaryTag::Dirichlet), 18);
        assert_eq!(m.count_tag(m.vertex_tags(), BoundaryTag::Interior), 1);
        assert_eq!(m.count_tag(m.vertex_tags(), BoundaryTag::Neumann), 8);
        // each 2x2 face: 12 grid edges + 4 diagonals
        assert_eq!(m.count_tag(m.edge_tags(), BoundaryTag::Dirichlet), 32);
        for (e, [a, b]) in m.edges().iter().enumerate() {
            let dirichlet_ends = z_faces(&m.vertices()[*a]) && z_faces(&m.vertices()[*b])
                && m.vertices()[*a][2] == m.vertices()[*b][2];
            assert_eq!(m.edge_tags()[e] == BoundaryTag::Dirichlet, dirichlet_ends);
        }
    }

    #[test]
    fn tagging_never_dirichlet() {
        let m = generate_unit_cube_mesh(2).unwrap().tag_boundary(|_| false);
        assert_eq!(m.count_tag(m.vertex_tags(), BoundaryTag::Dirichlet), 0);
        assert_eq!(m.count_tag(m.edge_tags(), BoundaryTag::Dirichlet), 0);
        assert!(m.boundary_faces().iter().all(|f| f.tag == BoundaryTag::Neumann));
    }

    #[test]
    fn regeneration_is_identical() {
        assert_eq!(generate_unit_cube_mesh(3).unwrap(), generate_unit_cube_mesh(3).unwrap());
    }
}
