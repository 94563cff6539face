use thiserror::Error;

use crate::exact::Fraction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("negative input {0} (expected a nonnegative fraction)")]
    NegativeInput(Fraction),

    #[error("{value} is outside {range}")]
    OutOfRange {
        value: Fraction,
        range: &'static str,
    },

    #[error("arguments out of order: {left} must be strictly less than {right}")]
    Ordering {
        left: Box<Fraction>,
        right: Box<Fraction>,
    },

    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),

    #[error("unsupported equation {a}x^2 + {b}y^2 + {c}z^2 = {d}xyz")]
    UnsupportedEquation { a: u32, b: u32, c: u32, d: u32 },

    #[error("{0} is not an exceptional slope")]
    NotExceptional(Fraction),

    #[error("radicand mismatch: sqrt({0}) and sqrt({1}) cannot be combined exactly")]
    RadicandMismatch(String, String),

    #[error("degenerate identity: p1/q1 - p2/q2 + 3 vanishes")]
    DegenerateIdentity,

    #[error("depth {depth} exceeds the supported maximum {max}")]
    DepthLimit { depth: u32, max: u32 },

    #[error("invalid Markov triple ({0}, {1}, {2})")]
    InvalidTriple(String, String, String),

    #[error("cannot parse {kind} from {token:?}")]
    Parse { kind: &'static str, token: String },
}

pub type Result<T> = std::result::Result<T, Error>;
