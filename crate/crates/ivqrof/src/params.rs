//! Shared parameter types for the aggregation operators and the pipeline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weights must sum to 1 within this tolerance.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Parameter bundle for the Hamacher-Heronian operators.
///
/// Invariants enforced on construction: q >= 1, phi > 0, x >= 0, y >= 0,
/// x + y > 0. All fields are immutable afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggParams {
    q: f64,
    phi: f64,
    x: f64,
    y: f64,
}

impl AggParams {
    pub fn new(q: f64, phi: f64, x: f64, y: f64) -> Result<Self> {
        if !(q >= 1.0) || !q.is_finite() {
            return Err(Error::RungBelowOne(q));
        }
        if !(phi > 0.0) || !phi.is_finite() {
            return Err(Error::NonPositivePhi(phi));
        }
        if !(x >= 0.0) || !(y >= 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::NegativeExponent { x, y });
        }
        if x + y == 0.0 {
            return Err(Error::BothExponentsZero);
        }
        Ok(AggParams { q, phi, x, y })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Same parameters with a different rung.
    pub fn with_q(&self, q: f64) -> Result<Self> {
        AggParams::new(q, self.phi, self.x, self.y)
    }
}

/// Nonempty weight vector with entries in [0, 1] summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyInput);
        }
        for &w in &weights {
            if !(0.0..=1.0).contains(&w) || !w.is_finite() {
                return Err(Error::WeightRange(w));
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::WeightSum(sum));
        }
        Ok(WeightVector(weights))
    }

    /// Uniform weights 1/n.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(WeightVector(vec![1.0 / n as f64; n]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn require_len(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::WeightDimensionMismatch {
                expected,
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// Which score function drives the ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ScoreKind {
    /// Linear interval score; the comparison-rule default.
    #[default]
    #[serde(rename = "linear")]
    Linear,
    /// Mean of q-th powers, membership minus non-membership.
    #[serde(rename = "qpow")]
    QPow,
}

/// Rung selection for a decision problem: pinned or inferred from the data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RungSpec {
    Fixed(f64),
    Auto,
}
