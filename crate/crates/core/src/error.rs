use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("pole at k = {at} (denominator factor {factor})")]
    Pole { at: String, factor: String },
    #[error("limit diverges: {0}")]
    Diverges(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("fields belong to different algebras")]
    MixedAlgebra,
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("inconsistent OPE table: {0}")]
    InconsistentTable(String),
    #[error("pole order {order} exceeds bound {bound}: internal consistency failure")]
    PoleBound { order: i64, bound: i64 },
    #[error("not a Virasoro field: {0}")]
    NotVirasoro(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("exponent pairing {0} is not an integer")]
    NonIntegralPairing(String),
    #[error("field is not in the commutant: {0}")]
    NotInCommutant(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
