use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    InvalidParameter(&'static str),
    DegenerateElement { tet: usize },
    MissingTags,
    ShapeError { expected: (usize, usize), found: (usize, usize) },
    SingularCoarseMatrix { pivot: usize },
    SingularBlock { node: usize },
    SingularPatch { patch: usize },
    MalformedSystem(&'static str),
    CoarseningFailure { node: usize },
    DivergenceDetected { iteration: usize, residual: f64 },
    IndefiniteBreakdown { iteration: usize },
    StagnationDetected { iteration: usize, residual: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::DegenerateElement { tet } => write!(f, "tetrahedron {tet} has non-positive volume"),
            Error::MissingTags => write!(f, "mesh boundary has not been tagged"),
            Error::ShapeError { expected, found } => write!(
                f,
                "shape mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::SingularCoarseMatrix { pivot } => {
                write!(f, "coarse matrix is numerically singular at pivot {pivot}")
            }
            Error::SingularBlock { node } => write!(f, "diagonal block of node {node} is singular"),
            Error::SingularPatch { patch } => write!(f, "local Vanka matrix of patch {patch} is singular"),
            Error::MalformedSystem(what) => write!(f, "malformed system: {what}"),
            Error::CoarseningFailure { node } => {
                write!(f, "fine node {node} has no coarse neighbour")
            }
            Error::DivergenceDetected { iteration, residual } => write!(
                f,
                "divergence detected at iteration {iteration} (relative residual {residual:e})"
            ),
            Error::IndefiniteBreakdown { iteration } => {
                write!(f, "CG breakdown at iteration {iteration}: p^T A p <= 0")
            }
            Error::StagnationDetected { iteration, residual } => write!(
                f,
                "GMRES stagnated at iteration {iteration} (relative residual {residual:e})"
            ),
        }
    }
}

impl core::error::Error for Error {}
