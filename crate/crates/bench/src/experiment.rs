//! Runs the solver matrix of an [`ExperimentConfig`] over its mesh levels.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use hqamg::coarsening::Hierarchy;
use hqamg::fem::{assemble, AssembledSystem};
use hqamg::krylov::{gmres, pcg, KrylovConfig};
use hqamg::multigrid::{AmgSolver, CycleConfig};
use hqamg::report::SolveReport;
use hqamg::sparse::CsrMatrix;
use hqamg::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::{ExperimentConfig, Method, ResolvedSolver};
use crate::error::Result;
use crate::naming::{cycle_name, smoother_name};
use crate::reference::reference_value;

/// Iteration count of a table cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iterations {
    Converged(usize),
    /// Ran out of iterations; holds `maxit`.
    MaxIt(usize),
    Diverged(usize),
    Stagnated(usize),
    Breakdown(usize),
}

impl Iterations {
    pub fn converged(self) -> bool {
        matches!(self, Iterations::Converged(_))
    }

    pub fn count(self) -> usize {
        match self {
            Iterations::Converged(k)
            | Iterations::MaxIt(k)
            | Iterations::Diverged(k)
            | Iterations::Stagnated(k)
            | Iterations::Breakdown(k) => k,
        }
    }
}

impl fmt::Display for Iterations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Iterations::Converged(k) => write!(f, "{k}"),
            Iterations::MaxIt(k) => write!(f, ">{k}"),
            Iterations::Diverged(k) => write!(f, "DIVERGED@{k}"),
            Iterations::Stagnated(k) => write!(f, "STAGNATED@{k}"),
            Iterations::Breakdown(k) => write!(f, "BREAKDOWN@{k}"),
        }
    }
}

impl FromStr for Iterations {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad iteration count {s:?}"));
        if let Some(k) = s.strip_prefix('>') {
            return Ok(Iterations::MaxIt(num(k)?));
        }
        match s.split_once('@') {
            Some(("DIVERGED", k)) => Ok(Iterations::Diverged(num(k)?)),
            Some(("STAGNATED", k)) => Ok(Iterations::Stagnated(num(k)?)),
            Some(("BREAKDOWN", k)) => Ok(Iterations::Breakdown(num(k)?)),
            Some(_) => Err(format!("bad iteration count {s:?}")),
            None => Ok(Iterations::Converged(num(s)?)),
        }
    }
}

impl Serialize for Iterations {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Iterations {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One (mesh level, solver entry) cell. Field order is the CSV column order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRow {
    pub problem: String,
    pub level: String,
    pub n: usize,
    pub dof: usize,
    pub solver: String,
    pub cycle: String,
    pub smoother: String,
    pub iterations: Iterations,
    pub converged: bool,
    pub final_rel_residual: f64,
    pub op_complexity: f64,
    pub wall_ms: f64,
    pub paper_ref_value: String,
    #[serde(skip)]
    pub ablation: bool,
}

fn same_f64(a: f64, b: f64) -> bool {
    a == b || (a.is_nan() && b.is_nan())
}

impl ResultRow {
    /// Equality ignoring the wall-clock time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        self.problem == other.problem
            && self.level == other.level
            && self.n == other.n
            && self.dof == other.dof
            && self.solver == other.solver
            && self.cycle == other.cycle
            && self.smoother == other.smoother
            && self.iterations == other.iterations
            && self.converged == other.converged
            && same_f64(self.final_rel_residual, other.final_rel_residual)
            && same_f64(self.op_complexity, other.op_complexity)
            && self.paper_ref_value == other.paper_ref_value
    }
}

impl PartialEq for ResultRow {
    fn eq(&self, other: &Self) -> bool {
        self.same_outcome(other) && same_f64(self.wall_ms, other.wall_ms)
    }
}

/// Assembled system of one mesh level together with its hierarchy.
pub struct LevelSetup {
    pub n: usize,
    pub system: AssembledSystem,
    pub operator: CsrMatrix,
    pub rhs: Vec<f64>,
    pub hierarchy: Hierarchy,
    pub setup_ms: f64,
}

impl LevelSetup {
    pub fn new(config: &ExperimentConfig, n: usize) -> Result<Self> {
        let (mesh, spec) = config.problem.instance(n, config.material())?;
        let system = assemble(&mesh, &spec)?;
        let start = Instant::now();
        let hierarchy = Hierarchy::from_system(&system, &config.hierarchy_config())?;
        let setup_ms = start.elapsed().as_secs_f64() * 1e3;
        let operator = system.monolithic();
        let rhs = system.rhs();
        Ok(Self { n, system, operator, rhs, hierarchy, setup_ms })
    }

    pub fn amg(&self, solver: &ResolvedSolver) -> Result<AmgSolver> {
        let mut cycle = CycleConfig::new(solver.cycle.cycle, solver.smoother);
        cycle.cycles_per_application = solver.cycle.count;
        Ok(AmgSolver::new(self.hierarchy.clone(), cycle)?)
    }

    /// Solves once; solver breakdowns become table entries.
    pub fn solve(&self, solver: &ResolvedSolver) -> Result<CellOutcome> {
        let start = Instant::now();
        let amg = self.amg(solver)?;
        let kcfg = KrylovConfig { maxit: solver.maxit, restart: solver.restart, ..KrylovConfig::new(solver.tol) };
        let outcome = match solver.method {
            Method::Amg => amg.solve(&self.rhs, solver.tol, solver.maxit),
            Method::Pcg => pcg(&self.operator, &self.rhs, &amg, &kcfg),
            Method::Gmres => gmres(&self.operator, &self.rhs, &amg, &kcfg),
        };
        let wall_ms = self.setup_ms + start.elapsed().as_secs_f64() * 1e3;
        let (iterations, residual, report) = match outcome {
            Ok((_, report)) => (classify(&report, solver.maxit), report.final_residual, Some(report)),
            Err(Error::DivergenceDetected { iteration, residual }) => (Iterations::Diverged(iteration), residual, None),
            Err(Error::StagnationDetected { iteration, residual }) => (Iterations::Stagnated(iteration), residual, None),
            Err(Error::IndefiniteBreakdown { iteration }) => (Iterations::Breakdown(iteration), f64::NAN, None),
            Err(e) => return Err(e.into()),
        };
        Ok(CellOutcome { iterations, residual, wall_ms, report })
    }
}

pub struct CellOutcome {
    pub iterations: Iterations,
    pub residual: f64,
    pub wall_ms: f64,
    /// Full report when the solver returned normally.
    pub report: Option<SolveReport>,
}

fn classify(report: &SolveReport, maxit: usize) -> Iterations {
    if report.converged {
        Iterations::Converged(report.iterations)
    } else {
        Iterations::MaxIt(maxit)
    }
}

/// Runs every solver entry on every level, calling `on_row` as cells finish.
/// Rows come out level by level, in config order.
pub fn run_experiment_with(
    config: &ExperimentConfig,
    large: bool,
    on_row: &mut dyn FnMut(&ResultRow),
) -> Result<Vec<ResultRow>> {
    let solvers = config.resolve()?;
    let mut rows = Vec::new();
    if solvers.is_empty() {
        return Ok(rows);
    }
    for (li, n) in config.run_levels(large).into_iter().enumerate() {
        let setup = LevelSetup::new(config, n)?;
        for s in &solvers {
            let CellOutcome { iterations, residual, wall_ms, .. } = setup.solve(s)?;
            let row = ResultRow {
                problem: config.problem.name().into(),
                level: format!("L{}", li + 1),
                n,
                dof: setup.operator.nrows(),
                solver: s.method.name().into(),
                cycle: cycle_name(s.cycle),
                smoother: smoother_name(&s.smoother),
                iterations,
                converged: iterations.converged(),
                final_rel_residual: residual,
                op_complexity: setup.hierarchy.operator_complexity(),
                wall_ms,
                paper_ref_value: reference_value(config.problem, config.coarsening, s, li),
                ablation: s.ablation,
            };
            on_row(&row);
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn run_experiment(config: &ExperimentConfig, large: bool) -> Result<Vec<ResultRow>> {
    run_experiment_with(config, large, &mut |_| {})
}

/// True when every entry not marked as an ablation converged.
pub fn all_required_converged(rows: &[ResultRow]) -> bool {
    rows.iter().all(|r| r.ablation || r.converged)
}

/// Deviation of the preconditioner from linearity and from self-adjointness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreconditionerCheck {
    /// `|M(a x + b y) - a M x - b M y| / |M(a x + b y)|`.
    pub linearity: f64,
    /// `|<M x, y> - <x, M y>| / (|M x| |y|)`.
    pub symmetry: f64,
}

/// Random-vector checks of the first solver entry's preconditioner on level `n`.
pub fn check_preconditioner(config: &ExperimentConfig, n: usize) -> Result<PreconditionerCheck> {
    let solvers = config.resolve()?;
    let solver = solvers.first().ok_or(hqamg::Error::InvalidParameter("config has no solver entry"))?;
    let setup = LevelSetup::new(config, n)?;
    let amg = setup.amg(solver)?;
    let mut rng = StdRng::seed_from_u64(config.seed);
    let dim = setup.operator.nrows();
    let mut rand_vec = || (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
    let (x, y) = (rand_vec(), rand_vec());
    let (a, b) = (0.7, -1.3);
    let combo: Vec<f64> = x.iter().zip(&y).map(|(xi, yi)| a * xi + b * yi).collect();
    let (mx, my, mc) = (amg.apply(&x)?, amg.apply(&y)?, amg.apply(&combo)?);
    let norm = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>().sqrt();
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(s, t)| s * t).sum::<f64>();
    let diff: Vec<f64> = (0..dim).map(|i| mc[i] - a * mx[i] - b * my[i]).collect();
    let linearity = norm(&diff) / norm(&mc);
    let symmetry = (dot(&mx, &y) - dot(&x, &my)).abs() / (norm(&mx) * norm(&y));
    Ok(PreconditionerCheck { linearity, symmetry })
}
