use strip_cells::{Cell, ComplexSpec, Label, Weight};

use crate::ChainError;

/// Facets of `cell` with their signs.
///
/// A block `g` splits as `e1|e2` for every way of writing `g` as a shuffle of
/// two non-empty subsequences. The sign is `(-1)^wlength(e1)` times the
/// weighted sign of the rearrangement `g -> e1 e2`, and the Leibniz rule
/// contributes `(-1)^wdim` of the blocks to the left. Ordered and
/// permutohedron complexes share this rule: subsequences of a canonical block
/// are canonical.
///
/// The source cell is not checked against the width, so boundaries of cells
/// outside a width-restricted complex can be taken and then restricted.
pub fn cell_boundary(spec: &ComplexSpec, cell: &Cell) -> Result<Vec<(Cell, i8)>, ChainError> {
    let set = spec.labels();
    let mut weights: Vec<Weight> = Vec::with_capacity(cell.labels().len());
    for &l in cell.labels() {
        weights.push(set.weight(l).ok_or(strip_cells::CellError::UnknownLabel(l))?);
    }
    let sizes = cell.sizes();
    let seq = cell.labels();
    let mut out = Vec::new();
    let mut offset = 0usize;
    let mut prefix_parity = 0u64;
    for (bi, &size) in sizes.iter().enumerate() {
        let size = size as usize;
        let block = &seq[offset..offset + size];
        let bw = &weights[offset..offset + size];
        if size >= 2 {
            for mask in 1u32..(1u32 << size) - 1 {
                let mut e1: Vec<Label> = Vec::with_capacity(size);
                let mut e2: Vec<Label> = Vec::with_capacity(size);
                let mut parity = prefix_parity;
                let mut odd_e2_seen = 0u64;
                for i in 0..size {
                    if mask >> i & 1 == 1 {
                        e1.push(block[i]);
                        parity += bw[i];
                        // Every odd element of e2 before this one is passed.
                        if bw[i] % 2 == 1 {
                            parity += odd_e2_seen;
                        }
                    } else {
                        e2.push(block[i]);
                        if bw[i] % 2 == 1 {
                            odd_e2_seen += 1;
                        }
                    }
                }
                let mut new_sizes = Vec::with_capacity(sizes.len() + 1);
                new_sizes.extend_from_slice(&sizes[..bi]);
                new_sizes.push(e1.len() as u32);
                new_sizes.push(e2.len() as u32);
                new_sizes.extend_from_slice(&sizes[bi + 1..]);
                let mut new_seq = Vec::with_capacity(seq.len());
                new_seq.extend_from_slice(&seq[..offset]);
                new_seq.extend_from_slice(&e1);
                new_seq.extend_from_slice(&e2);
                new_seq.extend_from_slice(&seq[offset + size..]);
                let sign = if parity.is_multiple_of(2) { 1 } else { -1 };
                out.push((Cell::from_parts_unchecked(new_sizes, new_seq), sign));
            }
        }
        prefix_parity += bw.iter().sum::<Weight>() - 1;
        offset += size;
    }
    Ok(out)
}
