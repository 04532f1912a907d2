//! Preconditioned conjugate gradients and right-preconditioned GMRES.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::multigrid::AmgSolver;
use crate::report::SolveReport;
use crate::sparse::CsrMatrix;
use crate::vector::{axpy, dot, norm2};

pub const DEFAULT_KRYLOV_MAXIT: usize = 500;

/// A fixed linear approximation of `A^{-1}`.
pub trait Preconditioner {
    fn apply(&self, r: &[f64]) -> Result<Vec<f64>>;

    fn operator_complexity(&self) -> f64 {
        1.0
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityPreconditioner;

impl Preconditioner for IdentityPreconditioner {
    fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        Ok(r.to_vec())
    }
}

impl Preconditioner for AmgSolver {
    fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        AmgSolver::apply(self, r)
    }

    fn operator_complexity(&self) -> f64 {
        self.hierarchy().operator_complexity()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrylovConfig {
    pub tol: f64,
    pub maxit: usize,
    /// GMRES restart length; `None` runs unrestarted.
    pub restart: Option<usize>,
    /// PCG replaces the recursive residual by the true one this often.
    pub residual_refresh: usize,
    /// GMRES gives up when the residual shrinks by less than
    /// `stagnation_ratio` over `stagnation_window` iterations.
    pub stagnation_window: usize,
    pub stagnation_ratio: f64,
}

impl KrylovConfig {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            maxit: DEFAULT_KRYLOV_MAXIT,
            restart: None,
            residual_refresh: 50,
            stagnation_window: 50,
            stagnation_ratio: 1e-3,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) || self.maxit == 0 {
            return Err(Error::InvalidParameter("tol must lie in (0, 1) and maxit be positive"));
        }
        if self.restart == Some(0) {
            return Err(Error::InvalidParameter("restart length must be positive"));
        }
        Ok(())
    }
}

fn check_shapes(a: &CsrMatrix, b: &[f64]) -> Result<()> {
    if a.nrows() != a.ncols() || a.nrows() != b.len() {
        return Err(Error::ShapeError { expected: (a.nrows(), a.nrows()), found: (b.len(), a.ncols()) });
    }
    Ok(())
}

fn true_residual(a: &CsrMatrix, x: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let mut r = vec![0.0; b.len()];
    a.residual(x, b, &mut r)?;
    Ok(r)
}

/// Preconditioned conjugate gradients from `x = 0`. Convergence is only
/// accepted once the true residual satisfies the tolerance.
pub fn pcg(a: &CsrMatrix, b: &[f64], m: &dyn Preconditioner, config: &KrylovConfig) -> Result<(Vec<f64>, SolveReport)> {
    config.validate()?;
    check_shapes(a, b)?;
    let n = b.len();
    let mut report = SolveReport::start(m.operator_complexity());
    let mut x = vec![0.0; n];
    let bnorm = norm2(b);
    if bnorm == 0.0 {
        report.converged = true;
        report.final_residual = 0.0;
        return Ok((x, report));
    }
    let mut r = b.to_vec();
    let mut z = m.apply(&r)?;
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    for it in 1..=config.maxit {
        a.spmv(&p, &mut ap)?;
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(Error::IndefiniteBreakdown { iteration: it });
        }
        let alpha = rz / pap;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &ap, &mut r);
        let mut rel = norm2(&r) / bnorm;
        if rel <= config.tol || it % config.residual_refresh == 0 {
            r = true_residual(a, &x, b)?;
            rel = norm2(&r) / bnorm;
        }
        report.push(rel);
        report.final_residual = rel;
        if rel <= config.tol {
            report.converged = true;
            break;
        }
        z = m.apply(&r)?;
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for (pi, zi) in p.iter_mut().zip(&z) {
            *pi = zi + beta * *pi;
        }
    }
    Ok((x, report))
}

/// Plane rotation zeroing the second component of `(a, b)`.
fn givens(a: f64, b: f64) -> (f64, f64) {
    if b == 0.0 {
        (1.0, 0.0)
    } else {
        let h = libm::hypot(a, b);
        (a / h, b / h)
    }
}

/// Right-preconditioned GMRES (`A M^{-1} y = b`, `x = M^{-1} y`) from `x = 0`
/// with modified Gram-Schmidt. Residuals in the history are the Arnoldi
/// estimates; the final residual is recomputed.
pub fn gmres(a: &CsrMatrix, b: &[f64], m: &dyn Preconditioner, config: &KrylovConfig) -> Result<(Vec<f64>, SolveReport)> {
    config.validate()?;
    check_shapes(a, b)?;
    let n = b.len();
    let mut report = SolveReport::start(m.operator_complexity());
    let mut x = vec![0.0; n];
    let bnorm = norm2(b);
    if bnorm == 0.0 {
        report.converged = true;
        report.final_residual = 0.0;
        return Ok((x, report));
    }
    let restart = config.restart.unwrap_or(config.maxit).min(config.maxit);
    let mut r = b.to_vec();
    let mut total = 0;
    'outer: while total < config.maxit {
        let beta = norm2(&r);
        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        let mut h: Vec<Vec<f64>> = Vec::new();
        let mut cs: Vec<(f64, f64)> = Vec::new();
        let mut g = vec![beta];
        let mut converged = false;
        let mut w = vec![0.0; n];
        for j in 0..restart.min(config.maxit - total) {
            let z = m.apply(&basis[j])?;
            a.spmv(&z, &mut w)?;
            let mut col = Vec::with_capacity(j + 2);
            for v in &basis {
                let hij = dot(&w, v);
                axpy(-hij, v, &mut w);
                col.push(hij);
            }
            let hnext = norm2(&w);
            col.push(hnext);
            for (i, &(c, s)) in cs.iter().enumerate() {
                let (u, v) = (col[i], col[i + 1]);
                col[i] = c * u + s * v;
                col[i + 1] = -s * u + c * v;
            }
            let (c, s) = givens(col[j], col[j + 1]);
            col[j] = c * col[j] + s * col[j + 1];
            col[j + 1] = 0.0;
            cs.push((c, s));
            let gj = g[j];
            g[j] = c * gj;
            g.push(-s * gj);
            h.push(col);
            total += 1;
            let rel = libm::fabs(g[j + 1]) / bnorm;
            report.push(rel);
            report.final_residual = rel;
            if rel <= config.tol {
                converged = true;
            }
            let k = report.iterations;
            if !converged && k >= config.stagnation_window {
                let old = report.history[k - config.stagnation_window];
                if 1.0 - rel / old < config.stagnation_ratio {
                    return Err(Error::StagnationDetected { iteration: k, residual: rel });
                }
            }
            if converged || hnext == 0.0 {
                break;
            }
            basis.push(w.iter().map(|v| v / hnext).collect());
        }
        // back substitution on the triangular factor
        let k = h.len();
        let mut y = vec![0.0; k];
        for i in (0..k).rev() {
            let mut s = g[i];
            for jj in i + 1..k {
                s -= h[jj][i] * y[jj];
            }
            y[i] = s / h[i][i];
        }
        let mut v = vec![0.0; n];
        for (yi, vi) in y.iter().zip(&basis) {
            axpy(*yi, vi, &mut v);
        }
        axpy(1.0, &m.apply(&v)?, &mut x);
        r = true_residual(a, &x, b)?;
        let rel = norm2(&r) / bnorm;
        report.final_residual = rel;
        if converged || rel <= config.tol {
            report.converged = true;
            break 'outer;
        }
    }
    Ok((x, report))
}
