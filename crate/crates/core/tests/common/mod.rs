#![allow(dead_code)]

use hqamg::coarsening::Layout;
use hqamg::fem::{assemble, AssembledSystem, ProblemKind};
use hqamg::problems::cube_problem;
use hqamg::sparse::{CsrMatrix, DenseMatrix, LuFactorization};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn cube_system(kind: ProblemKind, n: usize) -> AssembledSystem {
    let (mesh, spec) = cube_problem(kind, n).unwrap();
    assemble(&mesh, &spec).unwrap()
}

pub fn operator_and_layout(kind: ProblemKind, n: usize) -> (CsrMatrix, Layout, Vec<f64>) {
    let sys = cube_system(kind, n);
    (sys.monolithic(), sys.layout(), sys.rhs())
}

pub fn random_vec(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn dense_solve(a: &DenseMatrix, b: &[f64]) -> Vec<f64> {
    LuFactorization::new(a).unwrap().solve(b)
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn energy(a: &CsrMatrix, e: &[f64]) -> f64 {
    let ae = a.mul_vec(e).unwrap();
    e.iter().zip(&ae).map(|(x, y)| x * y).sum::<f64>()
}

/// Unit cube with one cell per direction, clamped only at `z = 0`; small
/// enough for dense oracles and with a full-rank divergence block.
pub fn small_saddle(kind: ProblemKind) -> (CsrMatrix, Layout, Vec<f64>) {
    let (mesh, spec) = cube_problem(kind, 1).unwrap();
    let mesh = hqamg::mesh::Mesh::from_parts(mesh.vertices().to_vec(), mesh.tets().to_vec())
        .unwrap()
        .tag_boundary(|p| p[2] < 1e-12);
    let spec = hqamg::fem::ProblemSpec::new(kind, spec.material, std::sync::Arc::new(|p: &[f64; 3]| [p[0], 0.0, 0.0]))
        .with_neumann(std::sync::Arc::new(|_: &[f64; 3], n: &[f64; 3]| [n[2], 0.5 * n[0], 0.0]));
    let sys = assemble(&mesh, &spec).unwrap();
    (sys.monolithic(), sys.layout(), sys.rhs())
}
