use alloc::sync::Arc;
use core::fmt;

use crate::error::{Error, Result};
use crate::mesh::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    VectorLaplace,
    ElasticityDisplacement,
    ElasticityMixed,
    Stokes,
}

impl ProblemKind {
    pub fn is_saddle(self) -> bool {
        matches!(self, ProblemKind::ElasticityMixed | ProblemKind::Stokes)
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::VectorLaplace => "vector_laplace",
            ProblemKind::ElasticityDisplacement => "elasticity",
            ProblemKind::ElasticityMixed => "elasticity_mixed",
            ProblemKind::Stokes => "stokes",
        }
    }
}

/// Shear modulus / viscosity `mu` and Lame constant `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    pub mu: f64,
    pub lambda: f64,
}

impl Material {
    pub const ELASTICITY: Material = Material { mu: 1.15e6, lambda: 1.73e6 };
    pub const STOKES: Material = Material { mu: 0.5, lambda: f64::INFINITY };
    pub const UNIT: Material = Material { mu: 1.0, lambda: 1.0 };
}

pub type VectorField = Arc<dyn Fn(&Point) -> [f64; 3] + Send + Sync>;
/// Boundary traction as a function of position and outward unit normal.
pub type TractionField = Arc<dyn Fn(&Point, &[f64; 3]) -> [f64; 3] + Send + Sync>;

#[derive(Clone)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub material: Material,
    pub dirichlet: VectorField,
    pub neumann: Option<TractionField>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("kind", &self.kind)
            .field("material", &self.material)
            .field("neumann", &self.neumann.is_some())
            .finish()
    }
}

impl ProblemSpec {
    /// Homogeneous Neumann data.
    pub fn new(kind: ProblemKind, material: Material, dirichlet: VectorField) -> Self {
        Self { kind, material, dirichlet, neumann: None }
    }

    pub fn with_neumann(mut self, traction: TractionField) -> Self {
        self.neumann = Some(traction);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.material.mu > 0.0) {
            return Err(Error::InvalidParameter("mu must be positive"));
        }
        let needs_lambda = matches!(self.kind, ProblemKind::ElasticityDisplacement | ProblemKind::ElasticityMixed);
        if needs_lambda && !(self.material.lambda > 0.0 && self.material.lambda.is_finite()) {
            return Err(Error::InvalidParameter("lambda must be positive and finite"));
        }
        Ok(())
    }
}
