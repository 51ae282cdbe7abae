use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("omega = {omega} is below the minimum 2n = {min}")]
    OmegaTooSmall { omega: i64, min: i64 },

    #[error("cannot add pi^({lhs}/2) to pi^({rhs}/2)")]
    PiPowerMismatch { lhs: i64, rhs: i64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("series is not invertible: constant term is zero")]
    NotInvertible,

    #[error("monomial degree {degree} exceeds truncation order {order}")]
    BeyondTruncation { degree: usize, order: usize },

    #[error("hypergeometric series does not terminate")]
    NonTerminating,

    #[error("pochhammer symbol (c)_{index} vanishes before the series terminates")]
    PochhammerPole { index: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("summation index cap {cap} exceeded before the tail bound was met")]
    SummationCap { cap: u64 },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("no closed form available for d = {0}")]
    UnsupportedDimension(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
