//! Rational cellular chains on `cell(A, W, w)` and `P(A, W, w)`, the
//! weighted boundary operator, the concatenation product, and boundary
//! matrices with an on-disk cache.

mod boundary;
pub mod cache;
mod chain;
mod matrix;

pub use boundary::cell_boundary;
pub use chain::{q, q_frac, q_text, ChainVector, Q};
pub use matrix::{BoundaryMatrix, CellIndex};

use strip_cells::{CellError, ComplexSpec, Weight};

#[derive(Debug, thiserror::Error)]
pub enum ChainError {
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error("chains live on different complexes: {0} and {1}")]
    SpecMismatch(String, String),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: Weight, found: Weight },
    #[error("concatenated chains share a label")]
    OverlappingLabels,
    #[error("concatenated chains have different widths")]
    WidthMismatch,
    #[error("boundary matrices start in degree 1")]
    DegreeZero,
    #[error("cell {0} is not among the indexed cells")]
    NotInIndex(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Result of checking `∂∘∂ = 0` on a whole complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareReport {
    pub max_degree: Weight,
    pub cells_checked: usize,
    /// First cell whose boundary's boundary is nonzero.
    pub failure: Option<String>,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Applies the boundary twice to every cell of every degree.
pub fn verify_boundary_squared(spec: &ComplexSpec) -> Result<SquareReport, ChainError> {
    let mut report = SquareReport { max_degree: 0, cells_checked: 0, failure: None };
    for d in 2..=spec.top_dim() {
        let cells = spec.enumerate(d);
        if cells.is_empty() {
            continue;
        }
        report.max_degree = d;
        for cell in cells {
            report.cells_checked += 1;
            let c = ChainVector::from_cell(spec.clone(), cell.clone())?;
            if !c.boundary()?.boundary()?.is_zero() {
                report.failure = Some(cell.to_string());
                return Ok(report);
            }
        }
    }
    Ok(report)
}
