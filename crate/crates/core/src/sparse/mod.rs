//! Sparse storage and kernels.
//!
//! Finite element blocks are kept in [`BlockSparseMatrix`] (dense node blocks);
//! the solvers run on the monolithic scalar expansion held in [`CsrMatrix`].
//! The coarsest level is solved with the dense [`LuFactorization`].

mod bsr;
mod csr;
mod dense;

pub use bsr::BlockSparseMatrix;
pub use csr::CsrMatrix;
pub use dense::{DenseMatrix, LuFactorization};
