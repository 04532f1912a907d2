//! Hierarchical P2 (and P2-P1 Taylor-Hood) finite element discretisation.

pub mod assembly;
pub mod basis;
pub mod element;
pub mod problem;
pub mod quadrature;
pub mod verify;

pub use assembly::{assemble, AssembledSystem, BlockSystem, DofMap, NodalField, SaddleSystem, Solution};
pub use problem::{Material, ProblemKind, ProblemSpec, TractionField, VectorField};
