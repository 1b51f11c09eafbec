use thiserror::Error;

/// Errors raised by the exact evaluation and verification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A measure was applied to a character with a nonzero trivial-weight part.
    #[error("character has a nonzero fixed part: {0}")]
    TrivialWeight(String),

    /// A denominator factor vanished at the chosen specialization.
    #[error("pole at evaluation point: {0}")]
    PoleAtPoint(String),

    /// The p^(1/12) prefactor of an elliptic measure did not resolve to an integer power.
    #[error("elliptic prefactor p^({rank}/12) is not an integer power of p")]
    FractionalPower { rank: i64 },

    /// The elliptic prefactor is a negative power of p, which a power series cannot hold.
    #[error("elliptic prefactor p^({rank}/12) is a negative power of p")]
    NegativePower { rank: i64 },

    /// A bracket was requested for a weight whose square root needs a fourth root of t.
    #[error("weight {0} has half-integral exponents, its bracket is not representable")]
    HalfIntegralWeight(String),

    /// Truncated exp/log/inverse called on a series with the wrong constant term.
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),

    /// The vertex character acquired a fixed part; indicates an implementation bug.
    #[error("vertex term is not T-movable: {0}")]
    NotMovable(String),

    /// A structural invariant (square root, rank) was violated.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// The point sampler hit its retry cap without finding a pole-free point.
    #[error("sampler exhausted after {attempts} attempts")]
    SamplerExhausted { attempts: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
