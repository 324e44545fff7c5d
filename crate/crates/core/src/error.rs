use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid row set: {0}")]
    InvalidRowSet(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(String),
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("{0} and {1} are comparable")]
    Comparable(String, String),
    #[error("derivative order {k_prime} is not below k = {k}")]
    DerivativeTooLarge { k_prime: usize, k: usize },
    #[error("minor of size {size} needs more than the {cols} available columns")]
    TooManyRows { size: usize, cols: usize },
    #[error("{0} is allowed, nothing to straighten")]
    NotForbidden(String),
    #[error("singular inclusion system for s = {0}")]
    SingularSystem(usize),
    #[error("straightening did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("jet degree {jet} exceeds truncation {trunc}")]
    JetBeyondTruncation { jet: usize, trunc: usize },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
