//! Exact rational homology of the strip cell complexes: Betti numbers,
//! boundary tests with witnesses or certificates, and coordinates of cycles
//! in a chosen homology basis.
//!
//! All linear algebra is integer column reduction; entries start as `i64`
//! and move to big integers on overflow.

pub mod reduce;
mod space;

use std::collections::HashMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use strip_cells::{orderings, wheel_decomposition, ComplexSpec, Kind, Weight};
use strip_chains::{cache, BoundaryMatrix, ChainError, ChainVector, Q};

pub use reduce::{Engine, Overflow};
pub use space::{BoundaryTest, Certificate, HomologySpace};

use reduce::{Aug, Reducer};

#[derive(Debug, thiserror::Error)]
pub enum HomologyError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Cell(#[from] strip_cells::CellError),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: Weight, found: Weight },
    #[error("chains live on different complexes: {0} and {1}")]
    SpecMismatch(String, String),
    #[error("complex has about {cells} cells, over the limit of {cap}")]
    ResourceLimit { cells: u128, cap: u128 },
    #[error("not in the span of the basis modulo boundaries: residual has {residual_terms} terms, leading cell {leading_cell}")]
    NotInSpan { residual_terms: usize, leading_cell: String },
    #[error("basis element {0} depends on the earlier ones modulo boundaries")]
    DependentBasis(usize),
    #[error("boundary witnesses need a tracked homology space")]
    Untracked,
}

/// Resource limits and caching for homology computations.
#[derive(Clone, Debug)]
pub struct HomologyOptions {
    /// Largest number of cells a computation may enumerate.
    pub cap: u128,
    /// Where boundary matrices are cached, if anywhere.
    pub cache_dir: Option<PathBuf>,
}

pub const DEFAULT_CELL_CAP: u128 = 5_000_000;

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions { cap: DEFAULT_CELL_CAP, cache_dir: None }
    }
}

pub(crate) fn check_cap(cells: u128, cap: u128) -> Result<(), HomologyError> {
    if cells > cap {
        Err(HomologyError::ResourceLimit { cells, cap })
    } else {
        Ok(())
    }
}

/// Betti numbers of a complex with the data they came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub spec: ComplexSpec,
    /// `betti[k]` for `k` up to the last degree with cells.
    pub betti: Vec<u64>,
    pub cells: Vec<u64>,
    /// `ranks[k]` is the rank of `∂_k`; `ranks[0] = 0`.
    pub ranks: Vec<u64>,
}

impl HomologyProfile {
    pub fn euler_from_betti(&self) -> i128 {
        alternating(&self.betti)
    }

    pub fn euler_from_cells(&self) -> i128 {
        alternating(&self.cells)
    }

    pub fn betti_in(&self, k: Weight) -> u64 {
        self.betti.get(k as usize).copied().unwrap_or(0)
    }
}

fn alternating(v: &[u64]) -> i128 {
    v.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i128 } else { -(x as i128) }).sum()
}

/// Rank of a sparse integer matrix given by columns.
pub fn column_rank(columns: &[Vec<(u32, i64)>]) -> usize {
    let mut small: Reducer<i64> = Reducer::new();
    let mut i = 0;
    while i < columns.len() {
        match small.insert(Aug::new(columns[i].clone(), Vec::new())) {
            Ok(_) => i += 1,
            Err(Overflow) => break,
        }
    }
    if i == columns.len() {
        return small.rank();
    }
    let mut big: Reducer<BigInt> = small.convert();
    for col in &columns[i..] {
        let x = Aug::new(col.iter().map(|&(r, v)| (r, BigInt::from(v))).collect(), Vec::new());
        big.insert(x).expect("big integers do not overflow");
    }
    big.rank()
}

fn matrix(spec: &ComplexSpec, degree: Weight, opts: &HomologyOptions) -> Result<BoundaryMatrix, HomologyError> {
    Ok(match &opts.cache_dir {
        Some(dir) => cache::load_or_build(dir, spec, degree)?,
        None => BoundaryMatrix::build(spec, degree)?,
    })
}

pub fn betti(spec: &ComplexSpec) -> Result<HomologyProfile, HomologyError> {
    betti_with(spec, &HomologyOptions::default())
}

/// Exact rational Betti numbers. Refuses complexes with more than
/// `opts.cap` cells before enumerating anything.
pub fn betti_with(spec: &ComplexSpec, opts: &HomologyOptions) -> Result<HomologyProfile, HomologyError> {
    check_cap(spec.total_cells(), opts.cap)?;
    let mut top = spec.top_dim();
    while top > 0 && spec.count_cells(top) == 0 {
        top -= 1;
    }
    let cells: Vec<u64> = (0..=top).map(|k| spec.count_cells(k) as u64).collect();
    let mut ranks: Vec<u64> = (0..=top as usize)
        .into_par_iter()
        .map(|k| -> Result<u64, HomologyError> {
            if k == 0 || cells[k] == 0 || cells[k - 1] == 0 {
                return Ok(0);
            }
            let m = matrix(spec, k as Weight, opts)?;
            debug_assert_eq!(m.ncols() as u64, cells[k]);
            Ok(column_rank(&m.columns) as u64)
        })
        .collect::<Result<_, _>>()?;
    ranks.push(0);
    let betti: Vec<u64> = (0..=top as usize).map(|k| cells[k] - ranks[k] - ranks[k + 1]).collect();
    ranks.pop();
    let profile = HomologyProfile { spec: spec.clone(), betti, cells, ranks };
    assert_eq!(profile.euler_from_betti(), profile.euler_from_cells());
    Ok(profile)
}

/// Decides whether the cycle `z` is a boundary, with a witness `c`
/// (`∂c = z`) or a certificate functional.
pub fn is_boundary(z: &ChainVector) -> Result<BoundaryTest, HomologyError> {
    if z.is_zero() {
        return Ok(BoundaryTest::Boundary { witness: ChainVector::zero(z.spec_arc().clone(), z.degree() + 1) });
    }
    HomologySpace::new(z.spec(), z.degree(), true, &HomologyOptions::default())?.is_boundary(z)
}

/// Coefficients of `z` in `basis` modulo boundaries.
pub fn express(z: &ChainVector, basis: &[ChainVector]) -> Result<Vec<Q>, HomologyError> {
    HomologySpace::new(z.spec(), z.degree(), false, &HomologyOptions::default())?.express(z, basis)
}

/// Per-degree comparison of `betti(cell(A, W, w))` with the sum over
/// permutations `σ` of `betti(P(A - #σ, W(σ), w))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub spec: ComplexSpec,
    pub cell_betti: Vec<u64>,
    pub permutohedron_sum: Vec<u64>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        let n = self.cell_betti.len().max(self.permutohedron_sum.len());
        (0..n).all(|k| self.cell_betti.get(k).unwrap_or(&0) == self.permutohedron_sum.get(k).unwrap_or(&0))
    }

    pub fn mismatched_degrees(&self) -> Vec<usize> {
        let n = self.cell_betti.len().max(self.permutohedron_sum.len());
        (0..n)
            .filter(|&k| self.cell_betti.get(k).unwrap_or(&0) != self.permutohedron_sum.get(k).unwrap_or(&0))
            .collect()
    }
}

pub fn decomposition_check(spec: &ComplexSpec) -> Result<DecompositionReport, HomologyError> {
    if spec.kind() != Kind::OrderedCell {
        return Err(HomologyError::SpecMismatch(spec.descriptor(), "an ordered cell complex".into()));
    }
    let cell_betti = betti(spec)?.betti;
    let labels: Vec<_> = spec.labels().labels().collect();
    // The homology of a permutohedron depends only on its wheel weights.
    let mut memo: HashMap<Vec<Weight>, Vec<u64>> = HashMap::new();
    let mut sum: Vec<u64> = Vec::new();
    for sigma in orderings(&labels) {
        let wheels = wheel_decomposition(&sigma, spec.labels())?;
        let mut key = wheels.weights.clone();
        key.sort_unstable();
        let b = match memo.get(&key) {
            Some(b) => b.clone(),
            None => {
                let p = ComplexSpec::permutohedron(wheels.weighted_set(), spec.width())?;
                let b = if p.total_cells() == 0 { Vec::new() } else { betti(&p)?.betti };
                memo.insert(key, b.clone());
                b
            }
        };
        if sum.len() < b.len() {
            sum.resize(b.len(), 0);
        }
        for (k, x) in b.iter().enumerate() {
            sum[k] += x;
        }
    }
    while sum.last() == Some(&0) {
        sum.pop();
    }
    Ok(DecompositionReport { spec: spec.clone(), cell_betti, permutohedron_sum: sum })
}
