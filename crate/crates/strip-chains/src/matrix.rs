use std::collections::HashMap;

use rayon::prelude::*;
use strip_cells::{Cell, ComplexSpec, Weight};

use crate::boundary::cell_boundary;
use crate::chain::{ChainVector, Q};
use crate::ChainError;

/// Cells of one degree with their canonical positions.
#[derive(Clone, Debug)]
pub struct CellIndex {
    cells: Vec<Cell>,
    pos: HashMap<Cell, u32>,
}

impl CellIndex {
    pub fn new(cells: Vec<Cell>) -> Self {
        let pos = cells.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
        CellIndex { cells, pos }
    }

    pub fn of(spec: &ComplexSpec, degree: Weight) -> Self {
        Self::new(spec.enumerate(degree))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn position(&self, cell: &Cell) -> Option<u32> {
        self.pos.get(cell).copied()
    }

    /// Coordinates of a chain, sorted by position.
    pub fn coordinates(&self, chain: &ChainVector) -> Result<Vec<(u32, Q)>, ChainError> {
        let mut out = Vec::with_capacity(chain.len());
        for (cell, c) in chain.terms() {
            let i = self.position(cell).ok_or_else(|| ChainError::NotInIndex(cell.to_string()))?;
            out.push((i, c.clone()));
        }
        out.sort_by_key(|p| p.0);
        Ok(out)
    }
}

/// The matrix of `∂: C_k -> C_{k-1}` with columns indexed by the canonical
/// `k`-cells and rows by the canonical `(k-1)`-cells.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub spec: ComplexSpec,
    pub degree: Weight,
    pub rows: CellIndex,
    pub cols: CellIndex,
    /// Sparse columns, each sorted by row.
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl BoundaryMatrix {
    pub fn build(spec: &ComplexSpec, degree: Weight) -> Result<Self, ChainError> {
        if degree == 0 {
            return Err(ChainError::DegreeZero);
        }
        let rows = CellIndex::of(spec, degree - 1);
        let cols = CellIndex::of(spec, degree);
        let columns = cols
            .cells()
            .par_iter()
            .map(|cell| column(spec, &rows, cell))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BoundaryMatrix { spec: spec.clone(), degree, rows, cols, columns })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Dense form, for small matrices and tests.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.ncols()]; self.nrows()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i as usize][j] = v;
            }
        }
        m
    }
}

fn column(spec: &ComplexSpec, rows: &CellIndex, cell: &Cell) -> Result<Vec<(u32, i64)>, ChainError> {
    let mut col: Vec<(u32, i64)> = Vec::new();
    for (facet, s) in cell_boundary(spec, cell)? {
        let i = rows.position(&facet).ok_or_else(|| ChainError::NotInIndex(facet.to_string()))?;
        col.push((i, s as i64));
    }
    col.sort_by_key(|p| p.0);
    col.dedup_by(|b, a| {
        if a.0 == b.0 {
            a.1 += b.1;
            true
        } else {
            false
        }
    });
    col.retain(|p| p.1 != 0);
    Ok(col)
}
