use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("brute-force ceiling exceeded: {what} is {actual}, limit {limit}")]
    CeilingExceeded {
        what: &'static str,
        actual: u64,
        limit: u64,
    },

    /// `witness` lists the elements of a violating set, when one is known.
    #[error("infeasible: {reason}")]
    Infeasible { reason: String, witness: Vec<usize> },

    #[error("empty base-polyhedron")]
    Empty,

    #[error("not dec-min: moving a unit from {t} to {s} improves")]
    NotDecMin { s: usize, t: usize },

    #[error("undefined value: {0}")]
    Undefined(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn infeasible(reason: impl Into<String>, witness: Vec<usize>) -> Self {
        Error::Infeasible {
            reason: reason.into(),
            witness,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
