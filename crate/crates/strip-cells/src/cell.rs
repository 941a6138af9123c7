use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::weights::{Label, Weight, WeightedSet};
use crate::CellError;

/// A cell symbol: labels split by bars into non-empty blocks.
///
/// Field order gives the canonical cell order: first the sequence of block
/// sizes, then the flattened label sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    sizes: Vec<u32>,
    seq: Vec<Label>,
}

impl Cell {
    pub fn from_blocks<I, B>(blocks: I) -> Result<Self, CellError>
    where
        I: IntoIterator<Item = B>,
        B: AsRef<[Label]>,
    {
        let mut cell = Cell::default();
        for b in blocks {
            let b = b.as_ref();
            if b.is_empty() {
                return Err(CellError::EmptyBlock);
            }
            cell.sizes.push(b.len() as u32);
            cell.seq.extend_from_slice(b);
        }
        if let Some(l) = repeated(&cell.seq) {
            return Err(CellError::DuplicateLabel(l));
        }
        Ok(cell)
    }

    /// Builds a cell without checking for empty blocks or repeats.
    pub fn from_parts_unchecked(sizes: Vec<u32>, seq: Vec<Label>) -> Self {
        debug_assert_eq!(sizes.iter().sum::<u32>() as usize, seq.len());
        Cell { sizes, seq }
    }

    /// The single cell of the empty configuration.
    pub fn empty() -> Self {
        Cell::default()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// The flattened label sequence.
    pub fn labels(&self) -> &[Label] {
        &self.seq
    }

    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn blocks(&self) -> Blocks<'_> {
        Blocks { cell: self, block: 0, offset: 0 }
    }

    pub fn block(&self, i: usize) -> &[Label] {
        let start: usize = self.sizes[..i].iter().map(|&s| s as usize).sum();
        &self.seq[start..start + self.sizes[i] as usize]
    }

    /// Block-sequence concatenation `self|other`.
    pub fn concat(&self, other: &Cell) -> Cell {
        let mut sizes = self.sizes.clone();
        sizes.extend_from_slice(&other.sizes);
        let mut seq = self.seq.clone();
        seq.extend_from_slice(&other.seq);
        Cell { sizes, seq }
    }

    /// Applies `f` to every label, keeping the block structure.
    pub fn map_labels(&self, mut f: impl FnMut(Label) -> Label) -> Cell {
        Cell {
            sizes: self.sizes.clone(),
            seq: self.seq.iter().map(|&l| f(l)).collect(),
        }
    }

    /// Sum over blocks of `wlength - 1`.
    pub fn wdim(&self, set: &WeightedSet) -> Result<Weight, CellError> {
        let mut total = 0;
        for &l in &self.seq {
            total += set.weight_of(l)?;
        }
        Ok(total - self.sizes.len() as Weight)
    }

    /// Dimension of the cell in the unweighted sense: labels minus blocks.
    pub fn geometric_dim(&self) -> usize {
        self.seq.len() - self.sizes.len()
    }
}

fn repeated(seq: &[Label]) -> Option<Label> {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
}

pub struct Blocks<'a> {
    cell: &'a Cell,
    block: usize,
    offset: usize,
}

impl<'a> Iterator for Blocks<'a> {
    type Item = &'a [Label];

    fn next(&mut self) -> Option<&'a [Label]> {
        let size = *self.cell.sizes.get(self.block)? as usize;
        let out = &self.cell.seq[self.offset..self.offset + size];
        self.block += 1;
        self.offset += size;
        Some(out)
    }
}

/// Total weight of a block.
pub fn wlength(block: &[Label], set: &WeightedSet) -> Result<Weight, CellError> {
    block.iter().map(|&l| set.weight_of(l)).sum()
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("()");
        }
        for (i, b) in self.blocks().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{}", b.iter().join(" "))?;
        }
        Ok(())
    }
}

/// Parses `2 4|3 5 1`; `()` is the empty cell.
impl FromStr for Cell {
    type Err = CellError;

    fn from_str(s: &str) -> Result<Self, CellError> {
        let s = s.trim();
        if s == "()" {
            return Ok(Cell::empty());
        }
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let block: Vec<Label> = part
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| CellError::Parse(t.to_string())))
                .collect::<Result<_, _>>()?;
            blocks.push(block);
        }
        Cell::from_blocks(blocks)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// `cell(A, W, w)`: blocks are ordered.
    OrderedCell,
    /// `P(A, W, w)`: order within a block is forgotten.
    Permutohedron,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Width {
    Bounded(Weight),
    Unbounded,
}

impl Width {
    pub fn admits(self, weight: Weight) -> bool {
        match self {
            Width::Bounded(w) => weight <= w,
            Width::Unbounded => true,
        }
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Width::Bounded(w) => write!(f, "{w}"),
            Width::Unbounded => f.write_str("inf"),
        }
    }
}

/// A cell complex `cell(A, W, w)` or `P(A, W, w)`.
///
/// Ordered complexes keep their labels sorted ascending, since the order of
/// the label set only matters for permutohedra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexSpec {
    kind: Kind,
    labels: WeightedSet,
    width: Width,
}

impl ComplexSpec {
    pub fn new(kind: Kind, labels: WeightedSet, width: Width) -> Result<Self, CellError> {
        if width == Width::Bounded(0) {
            return Err(CellError::ZeroWidth);
        }
        let labels = match kind {
            Kind::OrderedCell => labels.sorted(),
            Kind::Permutohedron => labels,
        };
        Ok(ComplexSpec { kind, labels, width })
    }

    pub fn ordered(labels: WeightedSet, width: Width) -> Result<Self, CellError> {
        Self::new(Kind::OrderedCell, labels, width)
    }

    pub fn permutohedron(labels: WeightedSet, width: Width) -> Result<Self, CellError> {
        Self::new(Kind::Permutohedron, labels, width)
    }

    /// `cell(n, w)`: labels `1..=n` of weight one.
    pub fn conf(n: u32, w: Weight) -> Result<Self, CellError> {
        Self::ordered(WeightedSet::range(n), Width::Bounded(w))
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn labels(&self) -> &WeightedSet {
        &self.labels
    }

    pub fn width(&self) -> Width {
        self.width
    }

    pub fn with_kind(&self, kind: Kind) -> Self {
        ComplexSpec::new(kind, self.labels.clone(), self.width).expect("width already validated")
    }

    pub fn with_width(&self, width: Width) -> Result<Self, CellError> {
        ComplexSpec::new(self.kind, self.labels.clone(), width)
    }

    pub fn with_labels(&self, labels: WeightedSet) -> Self {
        ComplexSpec::new(self.kind, labels, self.width).expect("width already validated")
    }

    /// Highest weighted dimension a cell could have.
    pub fn top_dim(&self) -> Weight {
        self.labels.total_weight().saturating_sub(1)
    }

    /// Reorders a block into canonical form: unchanged for ordered
    /// complexes, sorted by label-set position for permutohedra.
    pub fn canonical_block(&self, block: &mut [Label]) {
        if self.kind == Kind::Permutohedron {
            block.sort_by_key(|&l| self.labels.position(l).unwrap_or(usize::MAX));
        }
    }

    /// Checks that `cell` is an admissible cell of this complex.
    pub fn check(&self, cell: &Cell) -> Result<(), CellError> {
        if cell.labels().len() != self.labels.len() {
            return Err(CellError::WrongLabels(cell.to_string()));
        }
        let mut seen = vec![false; self.labels.len()];
        for block in cell.blocks() {
            let mut weight = 0;
            let mut last = None;
            for &l in block {
                let pos = self.labels.position(l).ok_or(CellError::UnknownLabel(l))?;
                if std::mem::replace(&mut seen[pos], true) {
                    return Err(CellError::DuplicateLabel(l));
                }
                if self.kind == Kind::Permutohedron {
                    if last.is_some_and(|p| p > pos) {
                        return Err(CellError::NotCanonical(cell.to_string()));
                    }
                    last = Some(pos);
                }
                weight += self.labels.entries()[pos].weight;
            }
            if !self.width.admits(weight) {
                return Err(CellError::BlockTooHeavy { cell: cell.to_string(), weight });
            }
        }
        Ok(())
    }

    pub fn wdim(&self, cell: &Cell) -> Result<Weight, CellError> {
        cell.wdim(&self.labels)
    }

    /// All admissible cells of weighted dimension `dim`, in canonical order.
    pub fn enumerate(&self, dim: Weight) -> Vec<Cell> {
        let entries = self.labels.entries();
        let n = entries.len();
        let total = self.labels.total_weight();
        if n == 0 {
            return if dim == 0 { vec![Cell::empty()] } else { Vec::new() };
        }
        if dim >= total {
            return Vec::new();
        }
        let blocks = (total - dim) as usize;
        if blocks > n {
            return Vec::new();
        }
        let weights: Vec<Weight> = entries.iter().map(|e| e.weight).collect();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.enumerate_into((1u64 << n) - 1, blocks, &weights, &mut stack, &mut out);
        out.sort_unstable();
        out
    }

    fn enumerate_into(
        &self,
        remaining: u64,
        blocks_left: usize,
        weights: &[Weight],
        stack: &mut Vec<Vec<Label>>,
        out: &mut Vec<Cell>,
    ) {
        if remaining == 0 {
            if blocks_left == 0 {
                emit(self.kind, stack, out);
            }
            return;
        }
        if blocks_left == 0 || (remaining.count_ones() as usize) < blocks_left {
            return;
        }
        let entries = self.labels.entries();
        let mut sub = remaining;
        while sub != 0 {
            let rest = remaining & !sub;
            let ok_count = blocks_left == 1 && rest == 0 || blocks_left > 1 && rest != 0;
            if ok_count {
                let weight: Weight = bits(sub).map(|i| weights[i]).sum();
                if self.width.admits(weight) {
                    stack.push(bits(sub).map(|i| entries[i].label).collect());
                    self.enumerate_into(rest, blocks_left - 1, weights, stack, out);
                    stack.pop();
                }
            }
            sub = (sub - 1) & remaining;
        }
    }

    /// Number of admissible cells of weighted dimension `dim`, without
    /// enumerating them.
    pub fn count_cells(&self, dim: Weight) -> u128 {
        let entries = self.labels.entries();
        let n = entries.len();
        let total = self.labels.total_weight();
        if n == 0 {
            return u128::from(dim == 0);
        }
        if dim >= total || (total - dim) as usize > n || n > 24 {
            return if n > 24 { u128::MAX } else { 0 };
        }
        let blocks = (total - dim) as usize;
        let full = (1usize << n) - 1;
        // ways[mask][b]: arrangements of the labels in `mask` into b blocks.
        let mut ways = vec![vec![0u128; blocks + 1]; full + 1];
        ways[0][0] = 1;
        for mask in 1..=full {
            let mut sub = mask;
            while sub != 0 {
                let weight: Weight = bits(sub as u64).map(|i| entries[i].weight).sum();
                if self.width.admits(weight) {
                    let inner = match self.kind {
                        Kind::OrderedCell => factorial(sub.count_ones() as u128),
                        Kind::Permutohedron => 1,
                    };
                    let rest = mask & !sub;
                    for b in 1..=blocks {
                        let w = ways[rest][b - 1];
                        if w != 0 {
                            ways[mask][b] = ways[mask][b].saturating_add(inner.saturating_mul(w));
                        }
                    }
                }
                sub = (sub - 1) & mask;
            }
        }
        ways[full][blocks]
    }

    pub fn total_cells(&self) -> u128 {
        (0..=self.top_dim()).map(|d| self.count_cells(d)).fold(0u128, |a, b| a.saturating_add(b))
    }

    /// Stable text form used for hashing and reports.
    pub fn descriptor(&self) -> String {
        let kind = match self.kind {
            Kind::OrderedCell => "cell",
            Kind::Permutohedron => "P",
        };
        format!("{kind}({};{})", self.labels, self.width)
    }
}

impl fmt::Display for ComplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn emit(kind: Kind, stack: &[Vec<Label>], out: &mut Vec<Cell>) {
    let sizes: Vec<u32> = stack.iter().map(|b| b.len() as u32).collect();
    match kind {
        Kind::Permutohedron => {
            out.push(Cell { sizes, seq: stack.concat() });
        }
        Kind::OrderedCell => {
            let orderings: Vec<Vec<Vec<Label>>> = stack
                .iter()
                .map(|b| b.iter().copied().permutations(b.len()).collect())
                .collect();
            for choice in orderings.iter().map(|o| o.iter()).multi_cartesian_product() {
                let seq: Vec<Label> = choice.into_iter().flatten().copied().collect();
                out.push(Cell { sizes: sizes.clone(), seq });
            }
        }
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conf(n: u32, w: Weight) -> ComplexSpec {
        ComplexSpec::conf(n, w).unwrap()
    }

    #[test]
    fn conf_3_2_counts() {
        let c = conf(3, 2);
        assert_eq!(c.enumerate(0).len(), 6);
        assert_eq!(c.enumerate(1).len(), 12);
        assert!(c.enumerate(2).is_empty());
        for d in 0..3 {
            assert_eq!(c.count_cells(d), c.enumerate(d).len() as u128);
        }
    }

    #[test]
    fn weighted_permutohedron_edges() {
        let set: WeightedSet = "1:1 2:1 3:3".parse().unwrap();
        let p = ComplexSpec::permutohedron(set, Width::Bounded(3)).unwrap();
        // Total weight 5; one-dimensional cells have four blocks' worth of
        // weight removed, i.e. two blocks, and the heavy label stays alone.
        let edges: Vec<String> = p.enumerate(3).iter().map(|c| c.to_string()).collect();
        assert_eq!(edges, ["3|1 2", "1 2|3"]);
        let vertices = p.enumerate(2);
        assert_eq!(vertices.len(), 6);
    }

    #[test]
    fn wdim_examples() {
        let set = WeightedSet::range(5);
        let c: Cell = "2 4|3 5 1".parse().unwrap();
        assert_eq!(c.wdim(&set).unwrap(), 3);
        let heavy: WeightedSet = "7:3".parse().unwrap();
        assert_eq!(wlength(&[7], &heavy).unwrap(), 3);
        assert_eq!(Cell::from_blocks([[7]]).unwrap().wdim(&heavy).unwrap(), 2);
    }

    #[test]
    fn check_rejects_bad_cells() {
        let c = conf(3, 2);
        assert!(c.check(&"1 2 3".parse().unwrap()).is_err());
        assert!(c.check(&"1 2|4".parse().unwrap()).is_err());
        assert!(c.check(&"2 1|3".parse().unwrap()).is_ok());
        let p = c.with_kind(Kind::Permutohedron);
        assert!(p.check(&"2 1|3".parse().unwrap()).is_err());
        assert!("1 1|2".parse::<Cell>().is_err());
        assert!("1||2".parse::<Cell>().is_err());
    }

    #[test]
    fn empty_configuration() {
        let c = conf(0, 2);
        assert_eq!(c.enumerate(0), vec![Cell::empty()]);
        assert_eq!(c.total_cells(), 1);
    }

    #[test]
    fn canonical_order_is_by_sizes_then_labels() {
        let cells = conf(3, 3).enumerate(1);
        assert!(cells.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(cells[0].to_string(), "1|2 3");
    }
}
