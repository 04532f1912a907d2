//! CSV and Markdown result tables.
//!
//! CSV columns, one row per (mesh level, solver entry):
//! `problem, level, n, dof, solver, cycle, smoother, iterations, converged,
//! final_rel_residual, op_complexity, wall_ms, paper_ref_value`.
//! `iterations` is the count for converged runs, `>maxit` when the iteration
//! limit was hit, and `DIVERGED@k`, `STAGNATED@k` or `BREAKDOWN@k` when the
//! solver stopped at iteration `k`. `paper_ref_value` is empty when no
//! published value exists.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{io_err, Result};
use crate::experiment::ResultRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl TableFormat {
    pub fn extension(self) -> &'static str {
        match self {
            TableFormat::Csv => "csv",
            TableFormat::Markdown => "md",
        }
    }
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(COLUMNS)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(io_err("<csv>"))?;
    Ok(())
}

pub const COLUMNS: [&str; 13] = [
    "problem",
    "level",
    "n",
    "dof",
    "solver",
    "cycle",
    "smoother",
    "iterations",
    "converged",
    "final_rel_residual",
    "op_complexity",
    "wall_ms",
    "paper_ref_value",
];

pub fn to_csv(rows: &[ResultRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_reader(input);
    let rows = r.deserialize().collect::<std::result::Result<Vec<ResultRow>, _>>()?;
    Ok(rows)
}

/// One table per problem; one row per solver entry and one column per mesh
/// level. Cells show our iteration count with the published one in brackets.
pub fn to_markdown(rows: &[ResultRow]) -> String {
    let mut out = String::new();
    let mut problems: Vec<&str> = Vec::new();
    for r in rows {
        if !problems.contains(&r.problem.as_str()) {
            problems.push(&r.problem);
        }
    }
    for problem in problems {
        let sel: Vec<&ResultRow> = rows.iter().filter(|r| r.problem == problem).collect();
        let mut levels: Vec<(&str, usize, usize)> = Vec::new();
        let mut solvers: Vec<(&str, &str, &str)> = Vec::new();
        for r in &sel {
            if !levels.iter().any(|l| l.0 == r.level) {
                levels.push((&r.level, r.n, r.dof));
            }
            let key = (r.solver.as_str(), r.cycle.as_str(), r.smoother.as_str());
            if !solvers.contains(&key) {
                solvers.push(key);
            }
        }
        let _ = writeln!(out, "### {problem}\n");
        out.push_str("| Solver | Cycle | Smoother |");
        for (l, n, dof) in &levels {
            let _ = write!(out, " {l} (n={n}, {dof} DOF) |");
        }
        out.push_str("\n|---|---|---|");
        out.push_str(&"---|".repeat(levels.len()));
        out.push('\n');
        for key in &solvers {
            let _ = write!(out, "| {} | {} | {} |", key.0, key.1, key.2);
            for (l, ..) in &levels {
                let cell = sel.iter().find(|r| r.level == *l && (r.solver.as_str(), r.cycle.as_str(), r.smoother.as_str()) == *key);
                match cell {
                    Some(r) if r.paper_ref_value.is_empty() => {
                        let _ = write!(out, " {} |", r.iterations);
                    }
                    Some(r) => {
                        let _ = write!(out, " {} [{}] |", r.iterations, r.paper_ref_value);
                    }
                    None => out.push_str(" |"),
                }
            }
            out.push('\n');
        }
        let oc: Vec<String> = levels
            .iter()
            .filter_map(|(l, ..)| sel.iter().find(|r| r.level == *l).map(|r| format!("{l}: {:.3}", r.op_complexity)))
            .collect();
        let _ = writeln!(out, "\nOperator complexity: {}\n", oc.join(", "));
    }
    out
}

/// Writes `<dir>/<stem>.<ext>` and returns the path.
pub fn emit_tables(rows: &[ResultRow], format: TableFormat, dir: &Path, stem: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let path = dir.join(format!("{stem}.{}", format.extension()));
    let text = match format {
        TableFormat::Csv => to_csv(rows)?,
        TableFormat::Markdown => to_markdown(rows),
    };
    std::fs::write(&path, text).map_err(io_err(&path))?;
    Ok(path)
}
