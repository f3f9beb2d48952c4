use thiserror::Error;

use crate::poly::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("substitution would give `{var}` a negative exponent")]
    NegativeExponent { var: Var },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("division is not exact")]
    InexactDivision,

    #[error("cannot set {var} = 0: it appears with a negative exponent")]
    ZeroToNegativePower { var: Var },

    #[error("cannot set {var} = {value}: it appears with a negative exponent and the result leaves the integers")]
    NonIntegralSpecialization { var: Var, value: String },

    #[error("{what} ceiling exceeded: requested {requested}, ceiling is {ceiling}")]
    CeilingExceeded {
        what: &'static str,
        requested: usize,
        ceiling: usize,
    },

    #[error("invalid set partition: {0}")]
    InvalidPartition(String),

    #[error("partition {0} is not layered")]
    NotLayered(String),

    #[error("partition {0} is not a matching")]
    NotMatching(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("path tuple is noncrossing; tail swap is undefined")]
    Noncrossing,

    #[error("sources and sinks share vertex {0}")]
    OverlappingVertices(usize),

    #[error("index sequences are not strictly interleaved")]
    NotInterleaved,

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
