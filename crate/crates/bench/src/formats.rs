//! Matrix Market, legacy VTK and hierarchy summary files.

use std::fmt::Write as _;
use std::path::Path;

use hqamg::coarsening::LevelSummary;
use hqamg::mesh::{BoundaryTag, Mesh};
use hqamg::sparse::CsrMatrix;

use crate::error::{io_err, BenchError, Result};

/// Coordinate real general Matrix Market text, 1-based indices.
pub fn matrix_market_string(a: &CsrMatrix) -> String {
    let mut s = String::from("%%MatrixMarket matrix coordinate real general\n");
    let _ = writeln!(s, "{} {} {}", a.nrows(), a.ncols(), a.nnz());
    for r in 0..a.nrows() {
        for (c, v) in a.row(r) {
            let _ = writeln!(s, "{} {} {:e}", r + 1, c + 1, v);
        }
    }
    s
}

pub fn write_matrix_market(path: &Path, a: &CsrMatrix) -> Result<()> {
    std::fs::write(path, matrix_market_string(a)).map_err(io_err(path))
}

/// Dense column vector in Matrix Market array format.
pub fn write_vector_market(path: &Path, v: &[f64]) -> Result<()> {
    let mut s = String::from("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(s, "{} 1", v.len());
    for x in v {
        let _ = writeln!(s, "{x:e}");
    }
    std::fs::write(path, s).map_err(io_err(path))
}

pub fn read_matrix_market(path: &Path) -> Result<CsrMatrix> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    parse_matrix_market(&text, path)
}

/// Parses coordinate `real`/`integer`/`pattern` matrices, `general` or
/// `symmetric`. Duplicate entries are summed.
pub fn parse_matrix_market(text: &str, origin: &Path) -> Result<CsrMatrix> {
    let fail = |line: usize, message: String| BenchError::Format { path: origin.to_path_buf(), line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines.next().ok_or_else(|| fail(1, "empty file".into()))?;
    let h: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if h.len() != 5 || h[0] != "%%matrixmarket" || h[1] != "matrix" || h[2] != "coordinate" {
        return Err(fail(1, format!("unsupported header {header:?}")));
    }
    let pattern = match h[3].as_str() {
        "real" | "integer" => false,
        "pattern" => true,
        f => return Err(fail(1, format!("unsupported field {f:?}"))),
    };
    let symmetric = match h[4].as_str() {
        "general" => false,
        "symmetric" => true,
        s => return Err(fail(1, format!("unsupported symmetry {s:?}"))),
    };
    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (ln, size) = body.next().ok_or_else(|| fail(2, "missing size line".into()))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| fail(ln, format!("bad size {t:?}"))))
        .collect::<Result<_>>()?;
    let [nrows, ncols, nnz] = dims[..] else {
        return Err(fail(ln, "size line needs rows, columns and entries".into()));
    };
    let mut triplets = Vec::with_capacity(if symmetric { 2 * nnz } else { nnz });
    let mut count = 0;
    for (ln, line) in body {
        let t: Vec<&str> = line.split_whitespace().collect();
        let want = if pattern { 2 } else { 3 };
        if t.len() != want {
            return Err(fail(ln, format!("expected {want} fields")));
        }
        let idx = |s: &str, max: usize| match s.parse::<usize>() {
            Ok(i) if i >= 1 && i <= max => Ok(i - 1),
            _ => Err(fail(ln, format!("index {s:?} out of range 1..={max}"))),
        };
        let (r, c) = (idx(t[0], nrows)?, idx(t[1], ncols)?);
        let v = if pattern { 1.0 } else { t[2].parse::<f64>().map_err(|_| fail(ln, format!("bad value {:?}", t[2])))? };
        triplets.push((r, c, v));
        if symmetric && r != c {
            triplets.push((c, r, v));
        }
        count += 1;
    }
    if count != nnz {
        return Err(fail(0, format!("expected {nnz} entries, found {count}")));
    }
    Ok(CsrMatrix::from_triplets(nrows, ncols, triplets)?)
}

/// Legacy ASCII VTK unstructured grid of the tetrahedra with the vertex
/// boundary tags (0 interior, 1 Dirichlet, 2 Neumann) as point data.
pub fn vtk_string(mesh: &Mesh) -> String {
    let mut s = String::from("# vtk DataFile Version 3.0\ntetrahedral mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n");
    let _ = writeln!(s, "POINTS {} double", mesh.num_vertices());
    for p in mesh.vertices() {
        let _ = writeln!(s, "{} {} {}", p[0], p[1], p[2]);
    }
    let nt = mesh.num_tets();
    let _ = writeln!(s, "CELLS {nt} {}", 5 * nt);
    for t in mesh.tets() {
        let _ = writeln!(s, "4 {} {} {} {}", t[0], t[1], t[2], t[3]);
    }
    let _ = writeln!(s, "CELL_TYPES {nt}");
    for _ in 0..nt {
        s.push_str("10\n");
    }
    if mesh.is_tagged() {
        let _ = writeln!(s, "POINT_DATA {}\nSCALARS boundary_tag int 1\nLOOKUP_TABLE default", mesh.num_vertices());
        for tag in mesh.vertex_tags() {
            let v = match tag {
                BoundaryTag::Interior => 0,
                BoundaryTag::Dirichlet => 1,
                BoundaryTag::Neumann => 2,
            };
            let _ = writeln!(s, "{v}");
        }
    }
    s
}

pub fn write_vtk(path: &Path, mesh: &Mesh) -> Result<()> {
    std::fs::write(path, vtk_string(mesh)).map_err(io_err(path))
}

/// `level,partition,dofs,level_dofs,level_nnz`, one line per partition.
pub fn hierarchy_csv(summary: &[LevelSummary]) -> String {
    let mut s = String::from("level,partition,dofs,level_dofs,level_nnz\n");
    for l in summary {
        for (kind, dofs) in &l.partitions {
            let _ = writeln!(s, "{},{},{},{},{}", l.level, kind.name(), dofs, l.dofs, l.nnz);
        }
    }
    s
}
