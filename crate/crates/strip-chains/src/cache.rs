//! On-disk boundary matrix cache.
//!
//! Layout: `{dir}/{complex-hash}/d{degree}.mtx` holds the matrix as sparse
//! triplets, `d{degree}.json` beside it holds the complex, the canonical row
//! and column cells, and a SHA-256 digest of the `.mtx` file.
//!
//! The `.mtx` format is line based:
//!
//! ```text
//! %%StripMatrix coordinate integer
//! <rows> <cols> <nnz>
//! <row> <col> <value>        (1-based, sorted by column then row)
//! ```
//!
//! Both files are written to a temporary file in the target directory and
//! renamed into place.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use strip_cells::{Cell, ComplexSpec, Weight};

use crate::matrix::{BoundaryMatrix, CellIndex};
use crate::ChainError;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "STRIP_CACHE_DIR";

/// Describes the sign conventions baked into cached matrices. Changing the
/// boundary rule or the canonical cell order must change this string.
pub const CONVENTIONS: &str = "boundary=(-1)^wlength(e1)*wsgn(g->e1e2),leibniz=(-1)^wdim;order=sizes,labels;v1";

const HEADER: &str = "%%StripMatrix coordinate integer";

#[derive(Serialize, Deserialize)]
struct Sidecar {
    schema: u32,
    conventions: String,
    spec: ComplexSpec,
    degree: Weight,
    rows: Vec<String>,
    cols: Vec<String>,
    digest: String,
}

pub fn default_cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("cache"))
}

/// Directory name for a complex: a digest of its descriptor and the
/// conventions.
pub fn complex_hash(spec: &ComplexSpec) -> String {
    let mut h = Sha256::new();
    h.update(CONVENTIONS.as_bytes());
    h.update(b"\n");
    h.update(serde_json::to_string(spec).expect("spec serializes").as_bytes());
    hex::encode(&h.finalize()[..8])
}

fn paths(dir: &Path, spec: &ComplexSpec, degree: Weight) -> (PathBuf, PathBuf, PathBuf) {
    let sub = dir.join(complex_hash(spec));
    let mtx = sub.join(format!("d{degree}.mtx"));
    let json = sub.join(format!("d{degree}.json"));
    (sub, mtx, json)
}

fn write_atomic(dir: &Path, target: &Path, bytes: &[u8]) -> Result<(), ChainError> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(target).map_err(|e| ChainError::Io(e.error))?;
    Ok(())
}

fn encode(m: &BoundaryMatrix) -> String {
    let mut s = String::new();
    writeln!(s, "{HEADER}").unwrap();
    writeln!(s, "{} {} {}", m.nrows(), m.ncols(), m.nnz()).unwrap();
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            writeln!(s, "{} {} {}", i + 1, j + 1, v).unwrap();
        }
    }
    s
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes the matrix into the cache and returns the `.mtx` path.
pub fn store(dir: &Path, m: &BoundaryMatrix) -> Result<PathBuf, ChainError> {
    let (sub, mtx, json) = paths(dir, &m.spec, m.degree);
    fs::create_dir_all(&sub)?;
    let body = encode(m);
    let sidecar = Sidecar {
        schema: 1,
        conventions: CONVENTIONS.to_string(),
        spec: m.spec.clone(),
        degree: m.degree,
        rows: m.rows.cells().iter().map(Cell::to_string).collect(),
        cols: m.cols.cells().iter().map(Cell::to_string).collect(),
        digest: digest(body.as_bytes()),
    };
    write_atomic(&sub, &mtx, body.as_bytes())?;
    let text = serde_json::to_string_pretty(&sidecar).map_err(|e| ChainError::Cache(e.to_string()))?;
    write_atomic(&sub, &json, text.as_bytes())?;
    Ok(mtx)
}

/// Reads a cached matrix. Returns `Ok(None)` when absent; a corrupt or
/// stale entry is an error.
pub fn load(dir: &Path, spec: &ComplexSpec, degree: Weight) -> Result<Option<BoundaryMatrix>, ChainError> {
    let (_, mtx, json) = paths(dir, spec, degree);
    if !mtx.exists() || !json.exists() {
        return Ok(None);
    }
    let body = fs::read(&mtx)?;
    let sidecar: Sidecar =
        serde_json::from_slice(&fs::read(&json)?).map_err(|e| ChainError::Cache(format!("{}: {e}", json.display())))?;
    if sidecar.conventions != CONVENTIONS || &sidecar.spec != spec || sidecar.degree != degree {
        return Err(ChainError::Cache(format!("{} was written for a different complex", json.display())));
    }
    if sidecar.digest != digest(&body) {
        return Err(ChainError::Cache(format!("{} does not match its digest", mtx.display())));
    }
    let parse_cells = |v: &[String]| -> Result<Vec<Cell>, ChainError> {
        v.iter().map(|s| s.parse().map_err(ChainError::from)).collect()
    };
    let rows = CellIndex::new(parse_cells(&sidecar.rows)?);
    let cols = CellIndex::new(parse_cells(&sidecar.cols)?);
    let text = String::from_utf8(body).map_err(|e| ChainError::Cache(e.to_string()))?;
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(ChainError::Cache(format!("{}: bad header", mtx.display())));
    }
    let bad = || ChainError::Cache(format!("{}: malformed", mtx.display()));
    let dims: Vec<usize> = lines
        .next()
        .ok_or_else(bad)?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    if dims.len() != 3 || dims[0] != rows.len() || dims[1] != cols.len() {
        return Err(bad());
    }
    let mut columns = vec![Vec::new(); cols.len()];
    let mut count = 0;
    for line in lines {
        let t: Vec<i64> = line.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        if t.len() != 3 || t[0] < 1 || t[1] < 1 || t[0] as usize > rows.len() || t[1] as usize > cols.len() {
            return Err(bad());
        }
        columns[t[1] as usize - 1].push((t[0] as u32 - 1, t[2]));
        count += 1;
    }
    if count != dims[2] {
        return Err(bad());
    }
    Ok(Some(BoundaryMatrix { spec: spec.clone(), degree, rows, cols, columns }))
}

/// Loads from the cache, building and storing on a miss.
pub fn load_or_build(dir: &Path, spec: &ComplexSpec, degree: Weight) -> Result<BoundaryMatrix, ChainError> {
    if let Some(m) = load(dir, spec, degree)? {
        return Ok(m);
    }
    let m = BoundaryMatrix::build(spec, degree)?;
    store(dir, &m)?;
    Ok(m)
}
