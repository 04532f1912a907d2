use alloc::vec::Vec;

/// Outcome of an iterative solve. `history[k]` is the relative residual
/// `||b - A x_k|| / ||b||` after `k` iterations, so `history[0] == 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub iterations: usize,
    pub history: Vec<f64>,
    pub converged: bool,
    /// Relative residual of the returned iterate, recomputed from scratch.
    pub final_residual: f64,
    /// Total hierarchy nonzeros over finest-level nonzeros (1 without a hierarchy).
    pub operator_complexity: f64,
    /// Filled in by callers that have a clock.
    pub wall_ms: f64,
}

impl SolveReport {
    pub(crate) fn start(operator_complexity: f64) -> Self {
        Self {
            iterations: 0,
            history: alloc::vec![1.0],
            converged: false,
            final_residual: 1.0,
            operator_complexity,
            wall_ms: 0.0,
        }
    }

    pub(crate) fn push(&mut self, residual: f64) {
        self.iterations += 1;
        self.history.push(residual);
    }
}
