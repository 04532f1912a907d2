//! Algebraic multigrid for quadratic tetrahedral finite element systems.
//!
//! The crate covers the full pipeline from a structured tetrahedral mesh to a
//! converged solution:
//!
//! * [`mesh`] builds Kuhn-subdivided boxes and tags their boundary,
//! * [`fem`] assembles the hierarchical P1+P2 block systems (SPD and saddle point),
//! * [`sparse`] holds the block/scalar sparse kernels and the dense coarse solver,
//! * [`coarsening`] splits every node partition into coarse and fine nodes and
//!   builds the Galerkin hierarchy,
//! * [`smoothers`], [`multigrid`] and [`krylov`] provide the iterations.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coarsening;
pub mod error;
pub mod fem;
pub mod krylov;
pub mod mesh;
pub mod multigrid;
pub mod problems;
pub mod report;
pub mod smoothers;
pub mod sparse;
pub mod vector;

pub use error::{Error, Result};
