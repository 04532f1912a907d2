//! Published iteration counts on the four reference mesh levels, used as
//! the `paper_ref_value` column. Level `i` of a run is compared with entry
//! `i`; `-` marks a solver that failed to converge.

use hqamg::multigrid::CycleType;
use hqamg::smoothers::SmootherKind;

use crate::config::{Coarsening, Method, Problem, ResolvedSolver};

type Row = [&'static str; 4];

struct Entry {
    problems: &'static [Problem],
    method: Method,
    cycle: CycleType,
    count: usize,
    smoother: SmootherKind,
    sweeps: usize,
    values: Row,
}

const LAPLACE: &[Problem] = &[Problem::VectorLaplace];
const ELASTICITY: &[Problem] = &[Problem::Elasticity];
const MIXED: &[Problem] = &[Problem::ElasticityMixed];
const STOKES: &[Problem] = &[Problem::StokesChannel];

macro_rules! table {
    ($( $p:ident $m:ident $c:ident $k:literal $s:ident $w:literal => [$($v:literal),*]; )*) => {
        &[$( Entry {
            problems: $p,
            method: Method::$m,
            cycle: CycleType::$c,
            count: $k,
            smoother: SmootherKind::$s,
            sweeps: $w,
            values: [$($v),*],
        }, )*]
    };
}

/// Jacobi rows all use damping 0.5.
const SEPARATED: &[Entry] = table! {
    LAPLACE Amg V 1 Jacobi 1 => ["129", "125", "124", "128"];
    LAPLACE Amg V 1 Jacobi 2 => ["65", "65", "65", "66"];
    LAPLACE Amg V 1 GaussSeidel 1 => ["43", "46", "47", "47"];
    LAPLACE Amg V 1 GaussSeidel 2 => ["23", "24", "24", "24"];
    LAPLACE Amg W 1 Jacobi 1 => ["128", "124", "121", "123"];
    LAPLACE Amg W 1 Jacobi 2 => ["65", "64", "63", "64"];
    LAPLACE Amg W 1 GaussSeidel 1 => ["43", "46", "47", "47"];
    LAPLACE Amg W 1 GaussSeidel 2 => ["23", "24", "24", "24"];
    LAPLACE Pcg V 1 Jacobi 1 => ["30", "30", "30", "30"];
    LAPLACE Pcg V 1 Jacobi 2 => ["21", "22", "22", "22"];
    LAPLACE Pcg V 1 GaussSeidel 1 => ["26", "29", "29", "30"];
    LAPLACE Pcg V 1 GaussSeidel 2 => ["17", "19", "19", "19"];
    LAPLACE Pcg W 1 Jacobi 1 => ["30", "30", "30", "29"];
    LAPLACE Pcg W 1 Jacobi 2 => ["21", "21", "21", "21"];
    LAPLACE Pcg W 1 GaussSeidel 1 => ["26", "29", "29", "29"];
    LAPLACE Pcg W 1 GaussSeidel 2 => ["17", "18", "18", "18"];
    ELASTICITY Amg V 1 Jacobi 1 => ["-", "-", "-", "-"];
    ELASTICITY Amg V 1 Jacobi 2 => ["-", "-", "-", "-"];
    ELASTICITY Amg V 1 GaussSeidel 1 => ["80", "78", "76", "75"];
    ELASTICITY Amg V 1 GaussSeidel 2 => ["44", "40", "39", "39"];
    ELASTICITY Amg W 1 Jacobi 1 => ["-", "-", "-", "-"];
    ELASTICITY Amg W 1 Jacobi 2 => ["-", "-", "-", "-"];
    ELASTICITY Amg W 1 GaussSeidel 1 => ["80", "78", "75", "73"];
    ELASTICITY Amg W 1 GaussSeidel 2 => ["44", "40", "39", "44"];
    ELASTICITY Pcg V 1 Jacobi 1 => ["50", "81", "-", "-"];
    ELASTICITY Pcg V 1 Jacobi 2 => ["32", "63", "-", "-"];
    ELASTICITY Pcg V 1 GaussSeidel 1 => ["40", "43", "43", "42"];
    ELASTICITY Pcg V 1 GaussSeidel 2 => ["28", "27", "27", "27"];
    ELASTICITY Pcg W 1 Jacobi 1 => ["47", "80", "-", "-"];
    ELASTICITY Pcg W 1 Jacobi 2 => ["32", "62", "-", "-"];
    ELASTICITY Pcg W 1 GaussSeidel 1 => ["39", "44", "42", "41"];
    ELASTICITY Pcg W 1 GaussSeidel 2 => ["28", "27", "27", "26"];
    MIXED Gmres V 1 Vanka 1 => ["60", "45", "49", "69"];
    MIXED Gmres V 2 Vanka 1 => ["42", "30", "32", "45"];
    MIXED Amg V 1 BraessSarazin 1 => ["135", "133", "125", "117"];
    MIXED Amg V 1 BraessSarazin 2 => ["71", "70", "66", "62"];
    MIXED Gmres V 1 BraessSarazin 1 => ["27", "27", "27", "27"];
    MIXED Gmres V 2 BraessSarazin 1 => ["18", "19", "19", "19"];
    MIXED Amg V 1 SegregatedGs 1 => ["107", "104", "99", "93"];
    MIXED Amg V 1 SegregatedGs 2 => ["54", "53", "53", "59"];
    MIXED Gmres V 1 SegregatedGs 1 => ["14", "18", "19", "21"];
    MIXED Gmres V 2 SegregatedGs 1 => ["12", "15", "15", "15"];
    STOKES Gmres V 1 BraessSarazin 1 => ["25", "42", "38", "39"];
    STOKES Gmres V 2 BraessSarazin 1 => ["16", "17", "18", "21"];
};

/// Black-box coarsening of the vector Laplacian (two W-cycles per iteration).
const MONOLITHIC_AMG: Row = ["90", "158", ">200", ">200"];
const MONOLITHIC_PCG: Row = ["22", "25", "36", "64"];

/// Reference iteration counts for a solver, if published.
pub fn reference_row(problem: Problem, coarsening: Coarsening, solver: &ResolvedSolver) -> Option<Row> {
    if coarsening == Coarsening::Monolithic {
        return match (problem, solver.method) {
            (Problem::VectorLaplace, Method::Amg) => Some(MONOLITHIC_AMG),
            (Problem::VectorLaplace, Method::Pcg) => Some(MONOLITHIC_PCG),
            _ => None,
        };
    }
    let s = &solver.smoother;
    if s.pre != s.post || (s.kind == SmootherKind::Jacobi && s.omega != 0.5) {
        return None;
    }
    SEPARATED
        .iter()
        .find(|e| {
            e.problems.contains(&problem)
                && e.method == solver.method
                && e.cycle == solver.cycle.cycle
                && e.count == solver.cycle.count
                && e.smoother == s.kind
                && e.sweeps == s.pre
        })
        .map(|e| e.values)
}

/// Reference value for the `level`-th mesh of a run (0-based), or `""`.
pub fn reference_value(problem: Problem, coarsening: Coarsening, solver: &ResolvedSolver, level: usize) -> String {
    reference_row(problem, coarsening, solver)
        .and_then(|row| row.get(level).copied())
        .unwrap_or("")
        .to_string()
}
