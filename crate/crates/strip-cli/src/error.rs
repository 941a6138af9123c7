use strip_algebra::AlgebraError;
use strip_basis::BasisError;
use strip_chains::ChainError;
use strip_cycles::CycleError;
use strip_homology::HomologyError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    fn new(code: u8, e: &impl std::fmt::Display) -> Self {
        CliError { code, message: e.to_string() }
    }
}

fn homology_code(e: &HomologyError) -> u8 {
    match e {
        HomologyError::ResourceLimit { .. } => EXIT_RESOURCE,
        _ => EXIT_FAILED,
    }
}

fn cycle_code(e: &CycleError) -> u8 {
    match e {
        CycleError::Chain(_) | CycleError::Map(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        CliError::new(homology_code(&e), &e)
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        CliError::new(EXIT_FAILED, &e)
    }
}

impl From<strip_cells::CellError> for CliError {
    fn from(e: strip_cells::CellError) -> Self {
        CliError::new(EXIT_USAGE, &e)
    }
}

impl From<CycleError> for CliError {
    fn from(e: CycleError) -> Self {
        CliError::new(cycle_code(&e), &e)
    }
}

impl From<BasisError> for CliError {
    fn from(e: BasisError) -> Self {
        let code = match &e {
            BasisError::Homology(h) => homology_code(h),
            BasisError::Cycle(c) => cycle_code(c),
            _ => EXIT_USAGE,
        };
        CliError::new(code, &e)
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        let code = match &e {
            AlgebraError::Homology(h) => homology_code(h),
            AlgebraError::Cycle(c) => cycle_code(c),
            _ => EXIT_USAGE,
        };
        CliError::new(code, &e)
    }
}
