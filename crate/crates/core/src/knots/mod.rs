//! Knot groups: words, presentations, the 2-bridge table and the
//! abelianization onto `<t>`.

mod presentation;
mod table;
mod word;

pub use presentation::{two_bridge_presentation, GroupPresentation, PresentationFile};
pub use table::{alexander_polynomial, builtin_knot, builtin_names, load_knot, KnotRecord};
pub use word::Word;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KnotError {
    #[error("invalid 2-bridge fraction {p}/{q}: need 0 < q < p, gcd(p, q) = 1, p odd")]
    InvalidFraction { p: u64, q: u64 },
    #[error("unknown knot {0:?}")]
    UnknownKnot(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("custom presentations must declare a positive genus")]
    MissingGenus,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl KnotError {
    pub fn name(&self) -> &'static str {
        match self {
            KnotError::InvalidFraction { .. } => "InvalidFraction",
            KnotError::UnknownKnot(_) => "UnknownKnot",
            KnotError::InvalidPresentation(_) => "InvalidPresentation",
            KnotError::MissingGenus => "MissingGenus",
            KnotError::Parse(_) => "ParseError",
            KnotError::Io(_) => "IoError",
        }
    }
}
