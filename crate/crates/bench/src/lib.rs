//! Benchmark harness for the `hqamg` solvers: JSON experiment configs, the
//! experiment runner, CSV/Markdown result tables and Matrix Market / VTK
//! export.

pub mod config;
pub mod error;
pub mod experiment;
pub mod formats;
pub mod naming;
pub mod reference;
pub mod tables;

pub use config::{Coarsening, ExperimentConfig, Method, Problem, ResolvedSolver, SolverEntry};
pub use error::{BenchError, Result};
pub use experiment::{
    all_required_converged, check_preconditioner, CellOutcome, run_experiment, run_experiment_with, Iterations, LevelSetup,
    PreconditionerCheck, ResultRow,
};
pub use tables::{emit_tables, read_csv, to_csv, to_markdown, write_csv, TableFormat};
