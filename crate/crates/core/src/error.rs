use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("invalid Cartan matrix for `{0}`")]
    InvalidCartan(String),
    #[error("root systems do not match: {0}")]
    Mismatch(String),
    #[error("unsupported subalgebra type `{0}`")]
    UnsupportedSubalgebra(String),
    #[error("non-integral solution for lambda: {0}")]
    NonIntegral(String),
    #[error("no weighted Dynkin diagram matches {0}")]
    NoOrbitMatch(String),
    #[error("zero denominator: deformation direction is not in general position ({0})")]
    ZeroDenominator(String),
    #[error("no case matches {0}")]
    NoSuchCase(String),
    #[error("checkpoint journal: {0}")]
    Checkpoint(String),
    #[error(
        "enumeration interrupted after {done} of {total} blocks; resume with the same journal"
    )]
    Interrupted { done: usize, total: usize },
    #[error("precision unreachable: {0}")]
    Precision(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
