//! Standard benchmark problems: the unit cube pulled at its top face and a
//! rectangular channel with prescribed inflow.

use alloc::sync::Arc;

use crate::error::Result;
use crate::fem::{Material, ProblemKind, ProblemSpec};
use crate::mesh::{generate_channel_mesh, generate_unit_cube_mesh, Mesh, Point};

const EPS: f64 = 1e-10;

pub const CHANNEL_LENGTH: f64 = 10.0;
pub const CHANNEL_WIDTH: f64 = 5.0;

pub fn default_material(kind: ProblemKind) -> Material {
    match kind {
        ProblemKind::VectorLaplace => Material::UNIT,
        ProblemKind::ElasticityDisplacement | ProblemKind::ElasticityMixed => Material::ELASTICITY,
        ProblemKind::Stokes => Material::STOKES,
    }
}

/// Unit cube with `n` cells per direction, clamped at `z = 0` and displaced
/// by `(0, 0, 1)` at `z = 1`; the side faces are traction free.
pub fn cube_problem(kind: ProblemKind, n: usize) -> Result<(Mesh, ProblemSpec)> {
    let mesh = generate_unit_cube_mesh(n)?.tag_boundary(|p| p[2] < EPS || p[2] > 1.0 - EPS);
    let spec = ProblemSpec::new(kind, default_material(kind), Arc::new(|p: &Point| [0.0, 0.0, p[2]]));
    Ok((mesh, spec))
}

/// Channel `[0, 10] x [0, 5] x [0, 5]` with `2n x n x n` (cubic) cells.
pub fn channel_problem(n: usize) -> Result<(Mesh, ProblemSpec)> {
    channel_problem_with(2 * n, n, n, CHANNEL_LENGTH, CHANNEL_WIDTH)
}

/// Box channel `[0, length] x [0, width]^2`: unit inflow `(1, 0, 0)` on the
/// open inlet face, no-slip walls, natural outflow at `x = length`.
pub fn channel_problem_with(nx: usize, ny: usize, nz: usize, length: f64, width: f64) -> Result<(Mesh, ProblemSpec)> {
    let on_wall = move |p: &Point| p[1] < EPS || p[1] > width - EPS || p[2] < EPS || p[2] > width - EPS;
    let mesh = generate_channel_mesh(nx, ny, nz, length, width, width)?.tag_boundary(|p| p[0] < EPS || on_wall(p));
    let inflow = move |p: &Point| if p[0] < EPS && !on_wall(p) { [1.0, 0.0, 0.0] } else { [0.0; 3] };
    let spec = ProblemSpec::new(ProblemKind::Stokes, Material::STOKES, Arc::new(inflow));
    Ok((mesh, spec))
}
