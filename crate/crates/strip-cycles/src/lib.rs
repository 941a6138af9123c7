//! Representative cycles: wheels, filters, averaged-filters and their
//! concatenation products, with a text grammar for words.

mod filter;
mod grammar;
mod wheel;
mod word;

pub use filter::{filter_cycle, normalization, FilterSpec};
pub use grammar::{parse_combination, parse_word};
pub use wheel::{wheel_cycle, ProperWheel, WheelTree};
pub use word::{word_cycle, CycleCache, Factor, GeneratorWord, WordCombination};

use strip_cells::{CellError, Weight, Width};
use strip_chains::ChainError;
use strip_maps::MapError;

#[derive(Debug, thiserror::Error)]
pub enum CycleError {
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("a wheel needs at least one label")]
    EmptyWheel,
    #[error("repeated label in {0}")]
    RepeatedLabel(String),
    #[error("wheel of weight {weight} does not fit in width {width}")]
    TooHeavy { weight: Weight, width: Width },
    #[error("a filter needs at least two wheels, got {0}")]
    TooFewWheels(usize),
    #[error("inadmissible filter: {0}")]
    Inadmissible(String),
    #[error("not a generator: {0}")]
    NotAGenerator(String),
    #[error("the zero combination has no chain")]
    EmptyCombination,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
