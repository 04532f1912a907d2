mod common;

use common::*;
use hqamg::coarsening::{Hierarchy, HierarchyConfig, Layout};
use hqamg::fem::ProblemKind;
use hqamg::multigrid::{AmgSolver, CycleConfig, CycleType};
use hqamg::smoothers::SmootherConfig;
use hqamg::sparse::CsrMatrix;
use hqamg::Error;

fn small_cap() -> HierarchyConfig {
    HierarchyConfig { coarse_size_cap: 60, ..HierarchyConfig::default() }
}

fn laplace_solver(n: usize, cycle: CycleType, smoother: SmootherConfig, cfg: &HierarchyConfig) -> (AmgSolver, Vec<f64>) {
    let sys = cube_system(ProblemKind::VectorLaplace, n);
    let h = Hierarchy::from_system(&sys, cfg).unwrap();
    (AmgSolver::new(h, CycleConfig::new(cycle, smoother)).unwrap(), sys.rhs())
}

#[test]
fn single_level_cycle_is_direct_solve() {
    let (amg, b) = laplace_solver(1, CycleType::W, SmootherConfig::gauss_seidel(1), &HierarchyConfig::default());
    assert_eq!(amg.hierarchy().num_levels(), 1);
    let a = &amg.hierarchy().level(0).operator;
    let x = amg.apply(&b).unwrap();
    let xe = dense_solve(&a.to_dense(), &b);
    assert!(max_diff(&x, &xe) <= 1e-13 * norm(&xe));
}

#[test]
fn coarse_correction_is_exact_on_range_of_prolongation() {
    let sys = cube_system(ProblemKind::VectorLaplace, 2);
    let h = Hierarchy::from_system(&sys, &HierarchyConfig { max_levels: 2, coarse_size_cap: 10, ..Default::default() }).unwrap();
    assert_eq!(h.num_levels(), 2);
    let a = &h.level(0).operator;
    let p = h.level(0).prolongation.as_ref().unwrap();
    let mut r = rng(1);
    let ec = random_vec(&mut r, p.ncols());
    let e = p.mul_vec(&ec).unwrap();
    // two-grid error propagation without smoothing: e - P A_c^{-1} P^T A e
    let ae = a.mul_vec(&e).unwrap();
    let mut rc = vec![0.0; p.ncols()];
    p.spmv_transpose(&ae, &mut rc).unwrap();
    let xc = h.coarse_solver().solve(&rc);
    let pc = p.mul_vec(&xc).unwrap();
    assert!(max_diff(&e, &pc) <= 1e-10 * norm(&e));
}

#[test]
fn gs_v_cycle_reduces_energy_error_every_cycle() {
    let (amg, _) = laplace_solver(2, CycleType::V, SmootherConfig::gauss_seidel(1), &small_cap());
    assert!(amg.hierarchy().num_levels() >= 2);
    let a = &amg.hierarchy().level(0).operator;
    let zero = vec![0.0; a.nrows()];
    let mut r = rng(2);
    for _ in 0..10 {
        let mut e = random_vec(&mut r, a.nrows());
        let mut prev = energy(a, &e);
        for _ in 0..5 {
            amg.cycle(&mut e, &zero).unwrap();
            let now = energy(a, &e);
            assert!(now < prev);
            prev = now;
        }
    }
}

#[test]
fn zero_rhs_gives_zero() {
    let (amg, b) = laplace_solver(2, CycleType::W, SmootherConfig::gauss_seidel(2), &small_cap());
    let zero = vec![0.0; b.len()];
    let z = amg.apply(&zero).unwrap();
    assert!(z.iter().all(|&v| v == 0.0));
    let (x, rep) = amg.solve(&zero, 1e-8, 10).unwrap();
    assert!(x.iter().all(|&v| v == 0.0));
    assert_eq!(rep.iterations, 0);
    assert_eq!(rep.history, vec![1.0]);
    assert!(rep.converged);
}

#[test]
fn identity_operator_converges_in_one_iteration() {
    let h = Hierarchy::build(CsrMatrix::identity(7), Layout::scalar(7), None, &HierarchyConfig::default()).unwrap();
    let amg = AmgSolver::new(h, CycleConfig::new(CycleType::V, SmootherConfig::gauss_seidel(1))).unwrap();
    let (x, rep) = amg.solve(&[1.0; 7], 1e-10, 5).unwrap();
    assert_eq!(rep.iterations, 1);
    assert_eq!(rep.history.len(), 2);
    assert_eq!(x, vec![1.0; 7]);
}

#[test]
fn standalone_gs22_v_cycle_on_n4() {
    let (amg, b) = laplace_solver(4, CycleType::V, SmootherConfig::gauss_seidel(2), &HierarchyConfig::default());
    let (_, rep) = amg.solve(&b, 1e-11, 200).unwrap();
    assert!(rep.converged && rep.iterations <= 48, "{}", rep.iterations);
    assert_eq!(rep.history.len(), rep.iterations + 1);
    assert_eq!(rep.history[0], 1.0);
    assert!(rep.operator_complexity > 1.0);
}

#[test]
fn preconditioner_is_linear_and_deterministic() {
    let (amg, b) = laplace_solver(2, CycleType::V, SmootherConfig::gauss_seidel(1), &small_cap());
    let mut r = rng(4);
    let v = random_vec(&mut r, b.len());
    let z1 = amg.apply(&v).unwrap();
    let z2 = amg.apply(&v).unwrap();
    assert_eq!(z1, z2);
    let alpha = -2.75;
    let scaled: Vec<f64> = v.iter().map(|x| alpha * x).collect();
    let za = amg.apply(&scaled).unwrap();
    let expected: Vec<f64> = z1.iter().map(|x| alpha * x).collect();
    assert!(max_diff(&za, &expected) <= 1e-12 * norm(&expected));
    let w = random_vec(&mut r, b.len());
    let sum: Vec<f64> = v.iter().zip(&w).map(|(x, y)| x + y).collect();
    let zs = amg.apply(&sum).unwrap();
    let zw = amg.apply(&w).unwrap();
    let expected: Vec<f64> = z1.iter().zip(&zw).map(|(x, y)| x + y).collect();
    assert!(max_diff(&zs, &expected) <= 1e-12 * norm(&expected));
}

#[test]
fn symmetric_gs_preconditioner_is_self_adjoint() {
    for cycle in [CycleType::V, CycleType::W] {
        let (amg, b) = laplace_solver(2, cycle, SmootherConfig::gauss_seidel(1), &small_cap());
        let mut r = rng(6);
        for _ in 0..5 {
            let u = random_vec(&mut r, b.len());
            let v = random_vec(&mut r, b.len());
            let mu = amg.apply(&u).unwrap();
            let mv = amg.apply(&v).unwrap();
            let lhs: f64 = mu.iter().zip(&v).map(|(a, b)| a * b).sum();
            let rhs: f64 = u.iter().zip(&mv).map(|(a, b)| a * b).sum();
            assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(rhs.abs()), "{lhs} {rhs}");
        }
    }
}

#[test]
fn w_and_v_cycles_perform_alike() {
    let (v, b) = laplace_solver(2, CycleType::V, SmootherConfig::gauss_seidel(2), &small_cap());
    let (w, _) = laplace_solver(2, CycleType::W, SmootherConfig::gauss_seidel(2), &small_cap());
    let (_, rv) = v.solve(&b, 1e-10, 15).unwrap();
    let (_, rw) = w.solve(&b, 1e-10, 15).unwrap();
    for k in 1..rv.history.len().min(rw.history.len()) {
        assert!(rw.history[k] <= rv.history[k] * 1.05, "k = {k} {:?} {:?}", rv.history, rw.history);
    }
}

#[test]
fn saddle_cycles_converge_on_small_cube() {
    for (kind, smoother) in [
        (ProblemKind::ElasticityMixed, SmootherConfig::braess_sarazin(1)),
        (ProblemKind::ElasticityMixed, SmootherConfig::segregated_gs(2)),
        (ProblemKind::Stokes, SmootherConfig::braess_sarazin(2)),
    ] {
        let sys = cube_system(kind, 3);
        let h = Hierarchy::from_system(&sys, &HierarchyConfig { coarse_size_cap: 100, ..Default::default() }).unwrap();
        assert!(h.num_levels() >= 2);
        let amg = AmgSolver::new(h, CycleConfig::new(CycleType::V, smoother)).unwrap();
        let (_, rep) = amg.solve(&sys.rhs(), 1e-9, 200).unwrap();
        assert!(rep.converged, "{kind:?} {:?}: {}", smoother.kind, rep.final_residual);
    }
}

#[test]
fn unstable_smoother_reports_divergence() {
    // heavily over-damped Jacobi is unstable
    let (amg, b) = laplace_solver(2, CycleType::V, SmootherConfig::jacobi(1, 1.9), &small_cap());
    match amg.solve(&b, 1e-11, 500) {
        Err(Error::DivergenceDetected { residual, .. }) => assert!(residual > 1e6),
        other => panic!("expected divergence, got {other:?}"),
    }
}

#[test]
fn invalid_arguments_rejected() {
    let (amg, b) = laplace_solver(1, CycleType::V, SmootherConfig::gauss_seidel(1), &HierarchyConfig::default());
    assert!(amg.solve(&b, 0.0, 10).is_err());
    assert!(amg.solve(&b, 1e-8, 0).is_err());
    assert!(amg.solve(&b[1..], 1e-8, 10).is_err());
    let sys = cube_system(ProblemKind::VectorLaplace, 2);
    let h = Hierarchy::from_system(&sys, &small_cap()).unwrap();
    let mut none = SmootherConfig::gauss_seidel(0);
    none.post = 0;
    assert!(AmgSolver::new(h, CycleConfig::new(CycleType::V, none)).is_err());
}
