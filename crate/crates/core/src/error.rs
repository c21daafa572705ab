use thiserror::Error;

/// Errors raised by the algebra, combinatorics and numerics modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("sign tuple length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid sign entry {0}; entries must be +1 or -1")]
    InvalidSign(i64),

    #[error("order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not congruent to 3 mod 4")]
    NotThreeModFour(u64),

    #[error("order {order} is not reachable by {method}; reachable orders up to {cap}: {reachable:?}")]
    UnreachableOrder {
        order: usize,
        method: &'static str,
        cap: usize,
        reachable: Vec<usize>,
    },

    #[error("matrix is not Hadamard: rows {row_a} and {row_b} have inner product {value}")]
    NotHadamard { row_a: usize, row_b: usize, value: i64 },

    #[error("family is not orthogonal: members {first} and {second} have dot product {value}")]
    NotOrthogonal { first: usize, second: usize, value: i64 },

    #[error("family members {0} and {1} coincide")]
    DuplicateMember(usize, usize),

    #[error("family has {found} members of length {k}; a Hadamard matrix needs exactly {k}")]
    IncompleteFamily { k: usize, found: usize },

    #[error("integration step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("time grid must have at least {min} strictly increasing finite nodes")]
    InvalidGrid { min: usize },

    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },

    #[error("n = {n} is too large to enumerate (limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
