use torsionlab::algebra::AlgebraError;
use torsionlab::dfj::DfjError;
use torsionlab::explorer::ExplorerError;
use torsionlab::knots::KnotError;
use torsionlab::reps::RepsError;
use torsionlab::torsion::TorsionError;

/// Exit status 2 for bad input, 3 for a computation that failed.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub name: String,
    pub message: String,
}

impl CliError {
    pub fn input(name: &str, message: impl Into<String>) -> Self {
        CliError { code: 2, name: name.to_string(), message: message.into() }
    }

    pub fn compute(name: &str, message: impl Into<String>) -> Self {
        CliError { code: 3, name: name.to_string(), message: message.into() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input("IoError", e.to_string())
    }
}

impl From<KnotError> for CliError {
    fn from(e: KnotError) -> Self {
        CliError::input(e.name(), e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Parse(_) | AlgebraError::InvalidPrecision(_) => CliError::input(e.name(), e.to_string()),
            _ => CliError::compute(e.name(), e.to_string()),
        }
    }
}

impl From<TorsionError> for CliError {
    fn from(e: TorsionError) -> Self {
        match e {
            TorsionError::Algebra(inner) => inner.into(),
            TorsionError::Parse(_)
            | TorsionError::Shape(_)
            | TorsionError::NotAComplex { .. }
            | TorsionError::HomologyBasisMismatch(_)
            | TorsionError::NotDeficiencyOne { .. } => CliError::input(e.name(), e.to_string()),
            _ => CliError::compute(e.name(), e.to_string()),
        }
    }
}

impl From<RepsError> for CliError {
    fn from(e: RepsError) -> Self {
        match e {
            RepsError::DegenerateParameter(_) | RepsError::UnsupportedPresentation(_) => {
                CliError::input(e.name(), e.to_string())
            }
            _ => CliError::compute(e.name(), e.to_string()),
        }
    }
}

impl From<DfjError> for CliError {
    fn from(e: DfjError) -> Self {
        match e {
            DfjError::Torsion(inner) => inner.into(),
            DfjError::Reps(inner) => inner.into(),
            DfjError::InvalidGenus => CliError::input(e.name(), e.to_string()),
            _ => CliError::compute(e.name(), e.to_string()),
        }
    }
}

impl From<ExplorerError> for CliError {
    fn from(e: ExplorerError) -> Self {
        match e {
            ExplorerError::InvalidSeed { .. } => CliError::input(e.name(), e.to_string()),
            ExplorerError::Reps(inner) => inner.into(),
            ExplorerError::Dfj(inner) => inner.into(),
        }
    }
}
