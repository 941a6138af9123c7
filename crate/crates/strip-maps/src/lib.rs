//! Chain maps between ordered cell complexes and permutohedra: spin maps,
//! the inclusions of a permutohedron for each ordering of its labels, their
//! average `q`, and the projection `p`.

mod inclusion;
mod spin;

pub use inclusion::{averaged_inclusion_q, include_permutohedron, project_p, project_p_ascending};
pub use spin::{peel_chunks, spin, spin_sigma, spin_sigma_program, spin_tau_sigma_program, SpinProgram, SpinStep};

use strip_cells::{CellError, Label, Weight};
use strip_chains::ChainError;

#[derive(Debug, thiserror::Error)]
pub enum MapError {
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("label {0} is not in the complex")]
    MissingLabel(Label),
    #[error("label {label} has weight {weight}, which is not {} + {}", parts.0, parts.1)]
    WeightMismatch { label: Label, weight: Weight, parts: (Weight, Weight) },
    #[error("label {0} is already in use")]
    NotFresh(Label),
    #[error("{0}")]
    WrongKind(&'static str),
    #[error("bad ordering: {0}")]
    BadOrdering(String),
    #[error("{0}")]
    WrongComplex(String),
    #[error("the wheels of {0} are not unions of wheels of the second permutation")]
    NotRefinement(String),
}
