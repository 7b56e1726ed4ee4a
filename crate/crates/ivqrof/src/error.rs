use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the fuzzy-number core and the aggregation operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "{side} interval violates order or range: [{lo}, {hi}] must satisfy 0 <= lo <= hi <= 1"
    )]
    IntervalOrder {
        side: &'static str,
        lo: f64,
        hi: f64,
    },

    #[error("rung constraint violated at q={q}: mu_hi^q + nu_hi^q = {sum} exceeds 1 by {excess}")]
    RungConstraint { q: f64, sum: f64, excess: f64 },

    #[error("rung q must be a real >= 1, got {0}")]
    RungBelowOne(f64),

    #[error("scalar argument must be positive, got {0}")]
    NonPositiveScalar(f64),

    #[error("hamacher parameter phi must be positive, got {0}")]
    NonPositivePhi(f64),

    #[error("value for {what} must lie in [0, 1], got {value}")]
    UnitRange { what: &'static str, value: f64 },

    #[error("heronian exponents must be nonnegative, got x={x}, y={y}")]
    NegativeExponent { x: f64, y: f64 },

    #[error("real-valued mean requires finite nonnegative inputs, got {0}")]
    NegativeValue(f64),

    #[error("heronian exponents x and y must not both be zero")]
    BothExponentsZero,

    #[error("aggregation input must not be empty")]
    EmptyInput,

    #[error("weight vector has {got} entries but {expected} values were supplied")]
    WeightDimensionMismatch { expected: usize, got: usize },

    #[error("weight {0} lies outside [0, 1]")]
    WeightRange(f64),

    #[error("weights must sum to 1 within 1e-9, got {0}")]
    WeightSum(f64),

    #[error("expert weights must be given for all experts or none")]
    MixedExpertWeights,

    #[error("{what} must not be empty")]
    EmptyDimension { what: &'static str },

    #[error("expert {expert} matrix has wrong shape: expected {expected_rows}x{expected_cols}, row {row} has {got} entries")]
    MatrixShape {
        expert: String,
        expected_rows: usize,
        expected_cols: usize,
        row: usize,
        got: usize,
    },

    #[error("no finite rung accommodates mu_hi={mu_hi}, nu_hi={nu_hi}")]
    Infeasible { mu_hi: f64, nu_hi: f64 },

    #[error("numerical degeneracy in {context}: {detail}")]
    NumericalDegeneracy {
        context: &'static str,
        detail: String,
    },

    #[error("parse error at line {line}, column {column}: {detail}")]
    Parse {
        line: usize,
        column: usize,
        detail: String,
    },

    #[error("rung field must be a real >= 1 or \"auto\", got \"{0}\"")]
    BadRungField(String),

    #[error("expert {expert}, cell ({alternative}, {criterion}): {source}")]
    Cell {
        expert: String,
        alternative: String,
        criterion: String,
        source: Box<Error>,
    },
}

impl Error {
    /// True for failures of internal numeric invariants, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NumericalDegeneracy { .. })
    }
}
