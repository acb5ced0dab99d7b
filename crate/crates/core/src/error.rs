use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a series that vanishes to its full precision")]
    DivisionByZeroSeries,

    #[error("valuation of divisor ({divisor}) exceeds valuation of dividend ({dividend})")]
    Valuation { dividend: usize, divisor: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("empty input")]
    EmptyInput,

    #[error(
        "inputs are dependent at the available precision: echelon rank {rank} < {count}; \
         either the series are linearly dependent or the precision is too small to separate them"
    )]
    DependentInput { rank: usize, count: usize },

    #[error("series is not in the space of level 1 modular forms of weight {weight}: {reason}")]
    NotInSpace { weight: u32, reason: String },

    #[error(
        "monomial span has rank {rank} < dim S^H_m = {expected} on a non-hyperelliptic curve; \
         the basis data is inconsistent"
    )]
    RankDeficit { rank: usize, expected: usize },

    #[error(
        "hyperelliptic curve: degree-{degree} monomials span only {rank} of {expected} dimensions, \
         so the gap criterion does not apply"
    )]
    HyperellipticUnsupported {
        degree: u32,
        rank: usize,
        expected: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("validation error: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
