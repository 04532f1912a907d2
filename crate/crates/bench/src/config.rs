//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "name": "vector-laplace-v",
//!   "problem": "vector_laplace",
//!   "levels": [4, 8, 16],
//!   "coarsening": "separated",
//!   "solvers": [
//!     { "method": "amg", "cycle": "V", "smoother": "GS-2-2" },
//!     { "method": "pcg", "cycle": "V", "smoother": "GS-2-2", "tol": 1e-11 }
//!   ]
//! }
//! ```
//!
//! `problem` is one of `vector_laplace`, `elasticity`, `elasticity_mixed`,
//! `stokes_cube` and `stokes_channel`. `levels` are subdivision counts (the
//! channel uses `2n x n x n` cells); `large_levels` are appended when large
//! runs are requested. `material` overrides `{ "mu": .., "lambda": .. }`.
//! `method` is `amg` (stand-alone), `pcg` or `gmres`; `cycle` accepts `V`,
//! `W`, `1 V-cycle`, `2 V-cycles`, and so on. `tol` defaults to 1e-11 for
//! SPD problems and 1e-9 for saddle point problems; `maxit` to 200 for AMG
//! and 500 for the Krylov methods. Entries marked `"ablation": true` are
//! expected not to converge and do not affect the exit status.

use std::path::{Path, PathBuf};

use hqamg::coarsening::{CoarseningMode, HierarchyConfig};
use hqamg::fem::{Material, ProblemKind, ProblemSpec};
use hqamg::krylov::DEFAULT_KRYLOV_MAXIT;
use hqamg::mesh::Mesh;
use hqamg::multigrid::DEFAULT_AMG_MAXIT;
use hqamg::problems::{channel_problem, cube_problem, default_material};
use hqamg::smoothers::{PressureScaling, SmootherConfig};
use serde::{Deserialize, Serialize};

use crate::error::{io_err, BenchError, Result};
use crate::naming::{parse_cycle, parse_smoother, CycleSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    VectorLaplace,
    Elasticity,
    ElasticityMixed,
    StokesCube,
    StokesChannel,
}

impl Problem {
    pub fn kind(self) -> ProblemKind {
        match self {
            Problem::VectorLaplace => ProblemKind::VectorLaplace,
            Problem::Elasticity => ProblemKind::ElasticityDisplacement,
            Problem::ElasticityMixed => ProblemKind::ElasticityMixed,
            Problem::StokesCube | Problem::StokesChannel => ProblemKind::Stokes,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::VectorLaplace => "vector_laplace",
            Problem::Elasticity => "elasticity",
            Problem::ElasticityMixed => "elasticity_mixed",
            Problem::StokesCube => "stokes_cube",
            Problem::StokesChannel => "stokes_channel",
        }
    }

    pub fn default_tol(self) -> f64 {
        if self.kind().is_saddle() {
            1e-9
        } else {
            1e-11
        }
    }

    /// Tagged mesh and problem data at subdivision level `n`.
    pub fn instance(self, n: usize, material: Option<Material>) -> hqamg::Result<(Mesh, ProblemSpec)> {
        let (mesh, mut spec) = match self {
            Problem::StokesChannel => channel_problem(n)?,
            _ => cube_problem(self.kind(), n)?,
        };
        if let Some(m) = material {
            spec.material = m;
        }
        Ok((mesh, spec))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coarsening {
    #[default]
    Separated,
    Monolithic,
}

impl From<Coarsening> for CoarseningMode {
    fn from(c: Coarsening) -> Self {
        match c {
            Coarsening::Separated => CoarseningMode::Separated,
            Coarsening::Monolithic => CoarseningMode::Monolithic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Amg,
    Pcg,
    Gmres,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Amg => "AMG",
            Method::Pcg => "PCG",
            Method::Gmres => "GMRES",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialConfig {
    pub mu: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scaling {
    Identity,
    SchurDiagonal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverEntry {
    pub method: Method,
    #[serde(default = "default_cycle")]
    pub cycle: String,
    pub smoother: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maxit: Option<usize>,
    /// GMRES restart length; unrestarted when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restart: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pressure_scaling: Option<Scaling>,
    #[serde(default)]
    pub ablation: bool,
}

fn default_cycle() -> String {
    "V".into()
}

fn default_levels() -> Vec<usize> {
    vec![4, 8, 16]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub problem: Problem,
    #[serde(default = "default_levels")]
    pub levels: Vec<usize>,
    #[serde(default)]
    pub large_levels: Vec<usize>,
    #[serde(default)]
    pub material: Option<MaterialConfig>,
    #[serde(default)]
    pub coarsening: Coarsening,
    #[serde(default)]
    pub coarse_size_cap: Option<usize>,
    #[serde(default)]
    pub solvers: Vec<SolverEntry>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Seeds the random vectors of the preconditioner checks.
    #[serde(default)]
    pub seed: u64,
}

/// A solver entry with its names resolved and defaults filled in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedSolver {
    pub method: Method,
    pub cycle: CycleSpec,
    pub smoother: SmootherConfig,
    pub tol: f64,
    pub maxit: usize,
    pub restart: Option<usize>,
    pub ablation: bool,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| BenchError::Config { line: e.line(), column: e.column(), message: e.to_string() })?;
        cfg.resolve_with(text)?;
        if cfg.levels.iter().chain(&cfg.large_levels).any(|&n| n == 0) {
            return Err(locate(text, "\"levels\"", "mesh levels must be positive".into()));
        }
        if let Some(m) = cfg.material {
            if !(m.mu > 0.0) || !(m.lambda > 0.0) {
                return Err(locate(text, "\"material\"", "material constants must be positive".into()));
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Self::parse(&text)
    }

    pub fn material(&self) -> Option<Material> {
        self.material.map(|m| Material { mu: m.mu, lambda: m.lambda })
    }

    pub fn effective_material(&self) -> Material {
        self.material().unwrap_or_else(|| default_material(self.problem.kind()))
    }

    pub fn hierarchy_config(&self) -> HierarchyConfig {
        let mut h = HierarchyConfig { mode: self.coarsening.into(), ..Default::default() };
        if let Some(cap) = self.coarse_size_cap {
            h.coarse_size_cap = cap;
        }
        h
    }

    /// Mesh levels to run, with `large_levels` appended on request.
    pub fn run_levels(&self, large: bool) -> Vec<usize> {
        let mut levels = self.levels.clone();
        if large {
            levels.extend(&self.large_levels);
        }
        levels
    }

    pub fn resolve(&self) -> Result<Vec<ResolvedSolver>> {
        self.resolve_with("")
    }

    fn resolve_with(&self, text: &str) -> Result<Vec<ResolvedSolver>> {
        self.solvers
            .iter()
            .map(|e| {
                let cycle = parse_cycle(&e.cycle).map_err(|m| locate(text, &format!("\"{}\"", e.cycle), m))?;
                let mut smoother =
                    parse_smoother(&e.smoother).map_err(|m| locate(text, &format!("\"{}\"", e.smoother), m))?;
                if let Some(s) = e.pressure_scaling {
                    smoother.pressure_scaling = match s {
                        Scaling::Identity => PressureScaling::Identity,
                        Scaling::SchurDiagonal => PressureScaling::SchurDiagonal,
                    };
                }
                let tol = e.tol.unwrap_or(self.problem.default_tol());
                if !(tol > 0.0 && tol < 1.0) {
                    return Err(locate(text, "\"tol\"", format!("tolerance {tol} outside (0, 1)")));
                }
                let maxit = e.maxit.unwrap_or(match e.method {
                    Method::Amg => DEFAULT_AMG_MAXIT,
                    Method::Pcg | Method::Gmres => DEFAULT_KRYLOV_MAXIT,
                });
                if maxit == 0 || e.restart == Some(0) {
                    return Err(locate(text, "\"maxit\"", "maxit and restart must be positive".into()));
                }
                Ok(ResolvedSolver { method: e.method, cycle, smoother, tol, maxit, restart: e.restart, ablation: e.ablation })
            })
            .collect()
    }
}

/// Attaches the position of the first occurrence of `needle` to a message.
fn locate(text: &str, needle: &str, message: String) -> BenchError {
    let (line, column) = text
        .find(needle)
        .map(|pos| {
            let before = &text[..pos];
            let line = before.matches('\n').count() + 1;
            let column = pos - before.rfind('\n').map_or(0, |i| i + 1) + 1;
            (line, column)
        })
        .unwrap_or((0, 0));
    BenchError::Config { line, column, message }
}
