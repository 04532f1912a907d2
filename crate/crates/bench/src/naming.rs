//! Solver names as used in result tables: `JA-1-1-0.5`, `GS-2-2`,
//! `sGS-2-2`, `Braess-Sarazin-1-1`, `Vanka`, `1 V-cycle`, `2 V-cycles`.

use hqamg::multigrid::CycleType;
use hqamg::smoothers::{SmootherConfig, SmootherKind};

/// Cycle type and number of cycles per preconditioner application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleSpec {
    pub cycle: CycleType,
    pub count: usize,
}

/// Parses `V`, `W`, `1 V-cycle`, `2 V-cycles`, `2 W-cycles`.
pub fn parse_cycle(s: &str) -> Result<CycleSpec, String> {
    let s = s.trim();
    let (count, rest) = match s.split_once(char::is_whitespace) {
        Some((c, rest)) => (c.parse::<usize>().map_err(|_| format!("bad cycle count in {s:?}"))?, rest.trim()),
        None => (1, s),
    };
    if count == 0 {
        return Err(format!("cycle count must be positive in {s:?}"));
    }
    let cycle = match rest {
        "V" | "V-cycle" | "V-cycles" => CycleType::V,
        "W" | "W-cycle" | "W-cycles" => CycleType::W,
        _ => return Err(format!("unknown cycle {s:?}")),
    };
    Ok(CycleSpec { cycle, count })
}

pub fn cycle_name(spec: CycleSpec) -> String {
    let c = match spec.cycle {
        CycleType::V => "V",
        CycleType::W => "W",
    };
    if spec.count == 1 {
        format!("1 {c}-cycle")
    } else {
        format!("{} {c}-cycles", spec.count)
    }
}

const PREFIXES: [(&str, SmootherKind); 6] = [
    ("Braess-Sarazin", SmootherKind::BraessSarazin),
    ("BS", SmootherKind::BraessSarazin),
    ("sGS", SmootherKind::SegregatedGs),
    ("GS", SmootherKind::GaussSeidel),
    ("JA", SmootherKind::Jacobi),
    ("Vanka", SmootherKind::Vanka),
];

/// Parses `<name>[-pre-post[-omega]]`. Jacobi needs an explicit damping;
/// the other smoothers take their default one unless it is given.
pub fn parse_smoother(s: &str) -> Result<SmootherConfig, String> {
    let s = s.trim();
    let (kind, rest) = PREFIXES
        .iter()
        .find_map(|&(p, k)| s.strip_prefix(p).map(|rest| (k, rest)))
        .ok_or_else(|| format!("unknown smoother {s:?}"))?;
    let fields: Vec<&str> = if rest.is_empty() {
        Vec::new()
    } else {
        rest.strip_prefix('-').ok_or_else(|| format!("unknown smoother {s:?}"))?.split('-').collect()
    };
    let sweeps = |f: &str| f.parse::<usize>().map_err(|_| format!("bad sweep count {f:?} in {s:?}"));
    let (pre, post, omega) = match fields.as_slice() {
        [] if kind != SmootherKind::Jacobi => (1, 1, None),
        [pre, post] => (sweeps(pre)?, sweeps(post)?, None),
        [pre, post, w] => {
            let w = w.parse::<f64>().map_err(|_| format!("bad damping {w:?} in {s:?}"))?;
            (sweeps(pre)?, sweeps(post)?, Some(w))
        }
        _ => return Err(format!("expected <name>-<pre>-<post>[-<omega>] in {s:?}")),
    };
    let mut cfg = match kind {
        SmootherKind::Jacobi => SmootherConfig::jacobi(1, omega.ok_or_else(|| format!("Jacobi needs a damping in {s:?}"))?),
        SmootherKind::GaussSeidel => SmootherConfig::gauss_seidel(1),
        SmootherKind::Vanka => SmootherConfig::vanka(1),
        SmootherKind::BraessSarazin => SmootherConfig::braess_sarazin(1),
        SmootherKind::SegregatedGs => SmootherConfig::segregated_gs(1),
    };
    cfg.pre = pre;
    cfg.post = post;
    if let Some(w) = omega {
        cfg.omega = w;
    }
    cfg.validate().map_err(|e| format!("{e} in {s:?}"))?;
    Ok(cfg)
}

/// Canonical table name of a smoother configuration.
pub fn smoother_name(cfg: &SmootherConfig) -> String {
    let (name, default_omega) = match cfg.kind {
        SmootherKind::Jacobi => ("JA", f64::NAN),
        SmootherKind::GaussSeidel => ("GS", 1.0),
        SmootherKind::Vanka => ("Vanka", 1.0),
        SmootherKind::BraessSarazin => ("Braess-Sarazin", 1.0),
        SmootherKind::SegregatedGs => ("sGS", 0.125),
    };
    if cfg.omega == default_omega {
        format!("{name}-{}-{}", cfg.pre, cfg.post)
    } else {
        format!("{name}-{}-{}-{}", cfg.pre, cfg.post, cfg.omega)
    }
}
