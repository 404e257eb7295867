use thiserror::Error;

/// Errors raised by the exact-arithmetic, operator, and construction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient series precision: need {needed} coefficients, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },

    #[error("operator coefficient {index} is not a polynomial")]
    NonPolynomialCoefficient { index: usize },

    #[error("operators act on different variables")]
    VariableMismatch,

    #[error("w = max(deg a - 2, deg b - 1) is negative; the operator has no Laurent solutions of this kind")]
    NegativeW,

    #[error("leading recurrence coefficient vanishes at k = {k} (assumption a_u(k+u)+b_v != 0 for all k >= 0 fails)")]
    AssumptionViolated { k: u64 },

    #[error("Rodrigues image P(z) is zero (the construction requires P(z) != 0)")]
    ZeroPolynomial,

    #[error("weighted Rodrigues operators {0} and {1} do not commute")]
    NotCommuting(usize, usize),

    #[error("F(z) is not contained in the ideal generated by prod a_v^(sum_j r_(j,v))")]
    IdealMembership,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
