use num_bigint::BigInt;
use thiserror::Error;

use crate::cayley::Triple;
use crate::markov::MarkovTriple;

/// Errors raised by the library. Every variant describes a violated
/// precondition; arithmetic itself is exact and never fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be a positive integer, got {value}")]
    NonPositive { what: &'static str, value: BigInt },

    #[error("s = {s} does not divide 2b = 2*{b}; the R-sequence is not integral")]
    NonIntegralFamily { s: BigInt, b: BigInt },

    #[error("({triple}) does not solve C_{} = 0 (value {value})", triple.s())]
    NotASolution { triple: Box<Triple>, value: BigInt },

    #[error("index {what} = {value} is below the minimum {min}")]
    IndexTooSmall {
        what: &'static str,
        value: usize,
        min: usize,
    },

    #[error("({triple}) is not a Markov triple (value {value})")]
    NotMarkov {
        triple: Box<MarkovTriple>,
        value: BigInt,
    },

    #[error("both indices are zero")]
    BothZero,

    #[error("degenerate Pell parameter d = {d}: must be >= 2 and not a perfect square")]
    DegenerateD { d: BigInt },

    #[error("s*(R_(n+m) - R_|n-m|) = {value} is odd; a is not an integer")]
    NonIntegralA { value: BigInt },

    #[error("word of length {len} is too short (need at least {need})")]
    TooShort { len: usize, need: usize },

    #[error("alpha must have even length, got {len}")]
    OddAlpha { len: usize },

    #[error("word entries must be positive, found 0 at position {position}")]
    ZeroEntry { position: usize },

    #[error("replacement value {value} is not positive")]
    NonPositiveResult { value: BigInt },

    #[error("bound {bound} is smaller than the seed's largest component {max}")]
    BoundTooSmall { bound: BigInt, max: BigInt },

    #[error("search needs {needed} quadratic solves, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("depth {depth} exceeds the cap of {cap}")]
    DepthExceeded { depth: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
