//! V- and W-cycles over a [`Hierarchy`], the stand-alone AMG iteration and
//! the preconditioner application.

use alloc::vec;
use alloc::vec::Vec;

use crate::coarsening::Hierarchy;
use crate::error::{Error, Result};
use crate::report::SolveReport;
use crate::smoothers::{Smoother, SmootherConfig, Stage};
use crate::vector::{axpy, norm2};

/// Relative residual above which the stand-alone iteration is declared divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;
pub const DEFAULT_AMG_MAXIT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleType {
    V,
    W,
}

impl CycleType {
    /// Recursive coarse visits per level.
    pub fn nu(self) -> usize {
        match self {
            CycleType::V => 1,
            CycleType::W => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleConfig {
    pub cycle: CycleType,
    pub smoother: SmootherConfig,
    /// Cycles per preconditioner application.
    pub cycles_per_application: usize,
}

impl CycleConfig {
    pub fn new(cycle: CycleType, smoother: SmootherConfig) -> Self {
        Self { cycle, smoother, cycles_per_application: 1 }
    }
}

/// A hierarchy together with the smoothers of all non-coarsest levels.
#[derive(Debug, Clone)]
pub struct AmgSolver {
    hierarchy: Hierarchy,
    smoothers: Vec<Smoother>,
    config: CycleConfig,
}

impl AmgSolver {
    pub fn new(hierarchy: Hierarchy, config: CycleConfig) -> Result<Self> {
        if config.cycles_per_application == 0 {
            return Err(Error::InvalidParameter("cycles_per_application must be at least 1"));
        }
        let nl = hierarchy.num_levels();
        if nl > 1 && config.smoother.pre + config.smoother.post == 0 {
            return Err(Error::InvalidParameter("a multilevel cycle needs at least one smoothing step"));
        }
        let smoothers = hierarchy.levels()[..nl - 1]
            .iter()
            .map(|l| Smoother::new(&config.smoother, &l.operator, &l.layout))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { hierarchy, smoothers, config })
    }

    pub fn hierarchy(&self) -> &Hierarchy {
        &self.hierarchy
    }

    pub fn config(&self) -> &CycleConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.hierarchy.level(0).operator.nrows()
    }

    /// One cycle on the finest level, updating `x` in place.
    pub fn cycle(&self, x: &mut [f64], b: &[f64]) -> Result<()> {
        if x.len() != self.dim() || b.len() != self.dim() {
            return Err(Error::ShapeError { expected: (self.dim(), 1), found: (b.len(), x.len()) });
        }
        self.cycle_level(0, x, b)
    }

    fn cycle_level(&self, l: usize, x: &mut [f64], b: &[f64]) -> Result<()> {
        let last = self.hierarchy.num_levels() - 1;
        if l == last {
            x.copy_from_slice(&self.hierarchy.coarse_solver().solve(b));
            return Ok(());
        }
        let level = self.hierarchy.level(l);
        let a = &level.operator;
        let p = level.prolongation.as_ref().expect("non-coarsest level has a prolongation");
        let smoother = &self.smoothers[l];
        smoother.smooth(a, x, b, Stage::Pre)?;
        let mut r = vec![0.0; b.len()];
        a.residual(x, b, &mut r)?;
        let mut bc = vec![0.0; p.ncols()];
        p.spmv_transpose(&r, &mut bc)?;
        let mut xc = vec![0.0; p.ncols()];
        let visits = if l + 1 == last { 1 } else { self.config.cycle.nu() };
        for _ in 0..visits {
            self.cycle_level(l + 1, &mut xc, &bc)?;
        }
        let mut corr = vec![0.0; b.len()];
        p.spmv(&xc, &mut corr)?;
        axpy(1.0, &corr, x);
        smoother.smooth(a, x, b, Stage::Post)
    }

    /// Stand-alone iteration from a zero initial guess until the relative
    /// residual drops to `tol` or `maxit` iterations have run. Each iteration
    /// performs `cycles_per_application` cycles.
    pub fn solve(&self, b: &[f64], tol: f64, maxit: usize) -> Result<(Vec<f64>, SolveReport)> {
        if !(tol > 0.0 && tol < 1.0) || maxit == 0 {
            return Err(Error::InvalidParameter("tol must lie in (0, 1) and maxit be positive"));
        }
        let n = self.dim();
        if b.len() != n {
            return Err(Error::ShapeError { expected: (n, 1), found: (b.len(), 1) });
        }
        let a = &self.hierarchy.level(0).operator;
        let mut x = vec![0.0; n];
        let mut report = SolveReport::start(self.hierarchy.operator_complexity());
        let bnorm = norm2(b);
        if bnorm == 0.0 {
            report.converged = true;
            report.final_residual = 0.0;
            return Ok((x, report));
        }
        let mut r = vec![0.0; n];
        for it in 1..=maxit {
            for _ in 0..self.config.cycles_per_application {
                self.cycle(&mut x, b)?;
            }
            a.residual(&x, b, &mut r)?;
            let rel = norm2(&r) / bnorm;
            report.push(rel);
            report.final_residual = rel;
            if !(rel <= DIVERGENCE_THRESHOLD) {
                return Err(Error::DivergenceDetected { iteration: it, residual: rel });
            }
            if rel <= tol {
                report.converged = true;
                break;
            }
        }
        Ok((x, report))
    }

    /// `cycles_per_application` cycles on `A z = r` from `z = 0`.
    pub fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        let mut z = vec![0.0; r.len()];
        for _ in 0..self.config.cycles_per_application {
            self.cycle(&mut z, r)?;
        }
        Ok(z)
    }
}
