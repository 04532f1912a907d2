//! Smoothers for the multigrid cycle.
//!
//! [`Smoother`] holds the per-level setup (inverted node blocks, Vanka
//! patches, Schur approximations) and applies the configured number of
//! sweeps before or after the coarse-grid correction.

pub mod braess_sarazin;
pub mod relax;
pub mod saddle;
pub mod segregated;
pub mod vanka;

pub use braess_sarazin::{braess_sarazin_update, BraessSarazin, SchurSolve};
pub use relax::{gs_sweep, jacobi_sweep, BlockDiagonal, SweepDirection};
pub use saddle::SaddleBlocks;
pub use segregated::{PressureScaling, SegregatedGs, VELOCITY_DAMPING};
pub use vanka::{build_vanka_patches, Vanka, VankaPatch};

use crate::coarsening::Layout;
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SmootherKind {
    Jacobi,
    GaussSeidel,
    Vanka,
    BraessSarazin,
    SegregatedGs,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmootherConfig {
    pub kind: SmootherKind,
    /// Jacobi damping, Vanka damping or the segregated pressure step size.
    pub omega: f64,
    pub pre: usize,
    pub post: usize,
    pub pressure_scaling: PressureScaling,
    /// Largest approximate Schur complement that is factorized densely.
    pub schur_cap: usize,
}

impl SmootherConfig {
    fn with(kind: SmootherKind, omega: f64, pre: usize, post: usize) -> Self {
        Self { kind, omega, pre, post, pressure_scaling: PressureScaling::SchurDiagonal, schur_cap: 500 }
    }

    pub fn jacobi(sweeps: usize, omega: f64) -> Self {
        Self::with(SmootherKind::Jacobi, omega, sweeps, sweeps)
    }

    pub fn gauss_seidel(sweeps: usize) -> Self {
        Self::with(SmootherKind::GaussSeidel, 1.0, sweeps, sweeps)
    }

    pub fn vanka(sweeps: usize) -> Self {
        Self::with(SmootherKind::Vanka, 1.0, sweeps, sweeps)
    }

    pub fn braess_sarazin(sweeps: usize) -> Self {
        Self::with(SmootherKind::BraessSarazin, 1.0, sweeps, sweeps)
    }

    pub fn segregated_gs(sweeps: usize) -> Self {
        Self::with(SmootherKind::SegregatedGs, 0.125, sweeps, sweeps)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::InvalidParameter("smoother damping must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Pre,
    Post,
}

#[derive(Debug, Clone)]
enum State {
    Jacobi(BlockDiagonal),
    GaussSeidel(BlockDiagonal),
    Vanka(Vanka),
    BraessSarazin(BraessSarazin),
    SegregatedGs(SegregatedGs),
}

#[derive(Debug, Clone)]
pub struct Smoother {
    config: SmootherConfig,
    state: State,
}

impl Smoother {
    pub fn new(config: &SmootherConfig, a: &CsrMatrix, layout: &Layout) -> Result<Self> {
        config.validate()?;
        let state = match config.kind {
            SmootherKind::Jacobi => State::Jacobi(BlockDiagonal::new(a, layout)?),
            SmootherKind::GaussSeidel => State::GaussSeidel(BlockDiagonal::new(a, layout)?),
            SmootherKind::Vanka => State::Vanka(Vanka::new(a, layout, config.omega)?),
            SmootherKind::BraessSarazin => State::BraessSarazin(BraessSarazin::new(a, layout, config.schur_cap)?),
            SmootherKind::SegregatedGs => {
                State::SegregatedGs(SegregatedGs::new(a, layout, config.omega, config.pressure_scaling)?)
            }
        };
        Ok(Self { config: *config, state })
    }

    pub fn config(&self) -> &SmootherConfig {
        &self.config
    }

    /// One sweep. Gauss-Seidel runs forward before and backward after the
    /// coarse-grid correction; the other smoothers ignore the stage.
    pub fn sweep(&self, a: &CsrMatrix, x: &mut [f64], b: &[f64], stage: Stage) -> Result<()> {
        match &self.state {
            State::Jacobi(d) => jacobi_sweep(a, d, x, b, self.config.omega),
            State::GaussSeidel(d) => {
                let dir = match stage {
                    Stage::Pre => SweepDirection::Forward,
                    Stage::Post => SweepDirection::Backward,
                };
                gs_sweep(a, d, x, b, dir)
            }
            State::Vanka(v) => v.sweep(a, x, b),
            State::BraessSarazin(bs) => bs.sweep(a, x, b),
            State::SegregatedGs(s) => s.sweep(a, x, b),
        }
    }

    /// The configured number of sweeps for `stage`.
    pub fn smooth(&self, a: &CsrMatrix, x: &mut [f64], b: &[f64], stage: Stage) -> Result<()> {
        let n = match stage {
            Stage::Pre => self.config.pre,
            Stage::Post => self.config.post,
        };
        for _ in 0..n {
            self.sweep(a, x, b, stage)?;
        }
        Ok(())
    }
}
