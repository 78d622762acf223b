use thiserror::Error;

/// Errors raised by constructions and checked operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation bounds differ: {0} vs {1}")]
    BoundMismatch(usize, usize),

    #[error("multivariate bounds differ: {0:?} vs {1:?}")]
    MultiBoundMismatch(Vec<usize>, Vec<usize>),

    #[error("truncation bound {0} out of range (1..={1})")]
    BoundOutOfRange(usize, usize),

    #[error("coefficient bits set at or above the truncation bound {0}")]
    BitsAboveBound(usize),

    #[error("substituted polynomial has a nonzero constant term")]
    InvalidSubstitution,

    #[error("element with zero constant term is not invertible")]
    NonInvertible,

    #[error("carrier of size {size} exceeds the limit {limit} for {what}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("not a morphism: {0}")]
    NotAMorphism(String),

    #[error("not an automorphism: linear coefficient of {0} is zero")]
    NotAnAutomorphism(String),

    #[error("Q-ring axioms fail: {0}")]
    QRingAxioms(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
