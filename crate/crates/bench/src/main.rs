use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use hqamg::coarsening::Hierarchy;
use hqamg::fem::assemble;
use hqamg_bench::config::{Coarsening, Problem};
use hqamg_bench::formats::{hierarchy_csv, write_matrix_market, write_vector_market, write_vtk};
use hqamg_bench::{all_required_converged, check_preconditioner, emit_tables, run_experiment_with, ExperimentConfig, TableFormat};

#[derive(Parser)]
#[command(name = "bench", about = "Run AMG benchmark experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    VectorLaplace,
    Elasticity,
    ElasticityMixed,
    StokesCube,
    StokesChannel,
}

#[derive(Subcommand)]
enum Command {
    /// Run every solver entry of a config on every mesh level.
    Run {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Output directory; defaults to the config's `output` or `results`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also run the config's `large_levels`.
        #[arg(long)]
        large: bool,
    },
    /// Write the system matrix, right-hand side, mesh and hierarchy summary.
    Export {
        #[arg(value_enum)]
        problem: ProblemArg,
        n: usize,
        #[arg(long, default_value = "export")]
        out: PathBuf,
        #[arg(long)]
        monolithic: bool,
    },
    /// Linearity and symmetry of the first solver entry's preconditioner.
    Check {
        config: PathBuf,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
}

fn main() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Run { config, format, out, large } => {
            let cfg = ExperimentConfig::load(&config)?;
            let rows = run_experiment_with(&cfg, large, &mut |r| {
                eprintln!(
                    "{} {} n={} dof={} {} {} {}: {} (residual {:.2e}, {:.0} ms)",
                    r.problem, r.level, r.n, r.dof, r.solver, r.cycle, r.smoother, r.iterations, r.final_rel_residual, r.wall_ms
                );
            })?;
            let dir = out.or_else(|| cfg.output.clone()).unwrap_or_else(|| "results".into());
            let stem = cfg
                .name
                .clone()
                .or_else(|| config.file_stem().map(|s| s.to_string_lossy().into_owned()))
                .unwrap_or_else(|| "results".into());
            let format = match format {
                Format::Csv => TableFormat::Csv,
                Format::Md => TableFormat::Markdown,
            };
            let path = emit_tables(&rows, format, &dir, &stem)?;
            println!("{}", path.display());
            Ok(if all_required_converged(&rows) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Export { problem, n, out, monolithic } => {
            let problem = match problem {
                ProblemArg::VectorLaplace => Problem::VectorLaplace,
                ProblemArg::Elasticity => Problem::Elasticity,
                ProblemArg::ElasticityMixed => Problem::ElasticityMixed,
                ProblemArg::StokesCube => Problem::StokesCube,
                ProblemArg::StokesChannel => Problem::StokesChannel,
            };
            let (mesh, spec) = problem.instance(n, None)?;
            let sys = assemble(&mesh, &spec)?;
            let cfg = ExperimentConfig {
                name: None,
                problem,
                levels: vec![n],
                large_levels: Vec::new(),
                material: None,
                coarsening: if monolithic { Coarsening::Monolithic } else { Coarsening::Separated },
                coarse_size_cap: None,
                solvers: Vec::new(),
                output: None,
                seed: 0,
            };
            let h = Hierarchy::from_system(&sys, &cfg.hierarchy_config())?;
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            write_matrix_market(&out.join("matrix.mtx"), &sys.monolithic())?;
            write_vector_market(&out.join("rhs.mtx"), &sys.rhs())?;
            write_vtk(&out.join("mesh.vtk"), &mesh)?;
            let path = out.join("hierarchy.csv");
            std::fs::write(&path, hierarchy_csv(&h.summary())).with_context(|| format!("writing {}", path.display()))?;
            println!("{}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { config, level } => {
            let cfg = ExperimentConfig::load(&config)?;
            let c = check_preconditioner(&cfg, level)?;
            println!("linearity {:.3e}\nsymmetry {:.3e}", c.linearity, c.symmetry);
            Ok(ExitCode::SUCCESS)
        }
    }
}
