//! Direct-solve checks against exact solutions contained in the discrete space.

use crate::error::Result;
use crate::fem::assembly::{assemble, NodalField};
use crate::fem::problem::ProblemSpec;
use crate::mesh::{Mesh, Point};
use crate::sparse::LuFactorization;

/// Maximum nodal errors of a discrete solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteError {
    pub velocity: f64,
    pub pressure: Option<f64>,
}

/// Assembles, solves with dense LU and compares every DOF with the
/// hierarchical interpolant of `exact_u` (and `exact_p` at the vertices).
/// Only meant for small meshes.
pub fn manufactured_solution_error(
    mesh: &Mesh,
    spec: &ProblemSpec,
    exact_u: &dyn Fn(&Point) -> [f64; 3],
    exact_p: Option<&dyn Fn(&Point) -> f64>,
) -> Result<DiscreteError> {
    let sys = assemble(mesh, spec)?;
    let lu = LuFactorization::new(&sys.monolithic().to_dense())?;
    let x = lu.solve(&sys.rhs());
    let sol = sys.expand_solution(&x)?;
    let exact = NodalField::interpolate(mesh, exact_u);
    let mut velocity: f64 = 0.0;
    for (a, b) in sol.velocity.vertex.iter().chain(&sol.velocity.edge).zip(exact.vertex.iter().chain(&exact.edge)) {
        for c in 0..3 {
            velocity = velocity.max((a[c] - b[c]).abs());
        }
    }
    let pressure = match (sol.pressure, exact_p) {
        (Some(p), Some(f)) => Some(
            p.iter().zip(mesh.vertices()).map(|(ph, x)| (ph - f(x)).abs()).fold(0.0, f64::max),
        ),
        _ => None,
    };
    Ok(DiscreteError { velocity, pressure })
}
