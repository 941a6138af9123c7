//! The twisted algebra of generator words: the symmetric group action,
//! the relation families, normal forms in the averaged-filter basis,
//! barrier bookkeeping and stability parameters.

mod action;
mod barrier;
mod relations;
mod rewrite;
mod sample;
mod stability;

pub use action::{act, canonical_word, properize_wheel};
pub use barrier::{barrier_decompose, count_barriers};
pub use relations::{
    generate_instances, r5_closed_form, r5_coefficients, relation_instance, verify_instances, Family, InstanceCheck,
    R5Coefficients, RelationData, RelationInstance,
};
pub use rewrite::{measure, quotient_reduce, reduce, Measure};
pub use sample::{random_relabeling, random_word};
pub use stability::{generation_check, higher_stability_params, stability_params, GenerationReport, StabilityParams};

use strip_cells::Label;
use strip_cycles::CycleError;
use strip_homology::HomologyError;

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Cell(#[from] strip_cells::CellError),
    #[error("permutation moves label {0}, which is not in {1}")]
    Domain(Label, String),
    #[error("not a generator: {0}")]
    NotAGenerator(String),
    #[error("{0}")]
    Inadmissible(String),
    #[error("d = {d} is outside {min}..={max} for width {w}")]
    OrderOutOfRange { d: u64, min: u64, max: u64, w: u64 },
    #[error("words of a combination must share labels and degree: {0} and {1}")]
    Inhomogeneous(String, String),
}
