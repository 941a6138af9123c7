//! Weighted label sets, cell symbols of the complexes `cell(A, W, w)` and
//! `P(A, W, w)`, and the wheel structure of permutations.
//!
//! A cell is a sequence of labels cut by bars into non-empty blocks. In an
//! ordered complex the order inside each block matters; in a permutohedron
//! it does not, and blocks are stored sorted by the label set's order.

mod cell;
mod perm;
mod weights;

pub use cell::{wlength, Blocks, Cell, ComplexSpec, Kind, Width};
pub use perm::{lex_compare, orderings, s_of_sigma, wheel_decomposition, Relabeling, WheelDecomposition};
pub use weights::{inversion_sign, wsgn, Label, Weight, WeightedLabel, WeightedSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellError {
    #[error("label 0 is not allowed; labels are positive integers")]
    ZeroLabel,
    #[error("label {0} has weight 0")]
    ZeroWeight(Label),
    #[error("label {0} appears more than once")]
    DuplicateLabel(Label),
    #[error("label {0} is not in the label set")]
    UnknownLabel(Label),
    #[error("width must be positive")]
    ZeroWidth,
    #[error("empty block")]
    EmptyBlock,
    #[error("cell {0} does not use exactly the complex's labels")]
    WrongLabels(String),
    #[error("cell {0} has a permutohedron block out of canonical order")]
    NotCanonical(String),
    #[error("cell {cell} has a block of weight {weight}, exceeding the width")]
    BlockTooHeavy { cell: String, weight: Weight },
    #[error("sequences are not rearrangements of each other")]
    NotARearrangement,
    #[error("not a permutation of the label set: {0}")]
    NotAPermutation(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}
