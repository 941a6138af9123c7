//! The two bases of the rational homology of strip configuration spaces:
//! concatenations of proper wheels with proper filters (`AM`), and with
//! proper averaged-filters on at least three wheels (`AMW`).

mod enumerate;
mod verify;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use strip_cells::Label;
use strip_cycles::{CycleError, GeneratorWord, ProperWheel};
use strip_homology::HomologyError;

pub use enumerate::{enumerate_basis, is_basis_word};
pub use verify::{basis_change, complexity, verify_basis, verify_basis_all, BasisChange, BasisReport};

#[derive(Debug, thiserror::Error)]
pub enum BasisError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Cell(#[from] strip_cells::CellError),
    #[error("unknown basis style `{0}`, expected AM or AMW")]
    UnknownStyle(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Style {
    /// Proper wheels and proper filters.
    #[serde(rename = "AM")]
    Am,
    /// Proper wheels and proper averaged-filters on three or more wheels.
    #[serde(rename = "AMW")]
    Amw,
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Style::Am => "AM",
            Style::Amw => "AMW",
        })
    }
}

impl FromStr for Style {
    type Err = BasisError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "AM" => Ok(Style::Am),
            "AMW" => Ok(Style::Amw),
            _ => Err(BasisError::UnknownStyle(s.into())),
        }
    }
}

/// More disks ranks higher; on equal size the larger maximal label wins.
pub fn rank_cmp(a: &ProperWheel, b: &ProperWheel) -> Ordering {
    (a.len(), a.max_label()).cmp(&(b.len(), b.max_label()))
}

pub fn outranks(a: &ProperWheel, b: &ProperWheel) -> bool {
    rank_cmp(a, b) == Ordering::Greater
}

/// The lowest-ranked wheel of a set.
pub fn least(wheels: &[ProperWheel]) -> &ProperWheel {
    wheels.iter().min_by(|a, b| rank_cmp(a, b)).expect("filters have wheels")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub word: GeneratorWord,
    pub style: Style,
    pub degree: u64,
    pub labels: Vec<Label>,
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}
