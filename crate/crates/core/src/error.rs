use thiserror::Error;

use crate::exactnum::DigitString;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("base {0} is outside the supported range 2..=36")]
    BaseOutOfRange(u32),

    #[error("digit {digit} is not valid in base {base}")]
    InvalidDigit { digit: u8, base: u32 },

    #[error("expected a positive integer, got zero")]
    ZeroNotAllowed,

    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: u32, right: u32 },

    #[error("cannot parse endpoint {0:?}: expected a terminating decimal in [0, 1]")]
    InvalidEndpoint(String),

    #[error("empty interval: lower endpoint must be strictly below the upper endpoint")]
    EmptyInterval,

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("index {n} lies below the certified domain start {n_min}")]
    BelowDomain { n: u64, n_min: u64 },

    #[error("value lies below f(n_min)")]
    BelowRange,

    #[error("membership of x_{n} undecided after {} digits", prefix.len())]
    Undecided { n: u64, prefix: DigitString },

    #[error("index range overflows u64")]
    IndexOverflow,

    #[error("{0} requires base 10")]
    RequiresDecimal(&'static str),

    #[error("no subsequence point with j <= {j_max} satisfies 2*10^j > {k}")]
    EmptySubsequence { k: u64, j_max: u32 },

    #[error("scan points must be non-empty with strictly increasing N")]
    InvalidScanPoints,

    #[error("input is empty")]
    EmptyInput,

    #[error("value {0} is outside [0, 1)")]
    PointOutOfRange(f64),

    #[error("point {value} is outside [{alpha}, {beta})")]
    PointOutsideInterval { value: f64, alpha: f64, beta: f64 },

    #[error("frequency h must be non-zero")]
    ZeroFrequency,

    #[error("argument out of domain: {0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
