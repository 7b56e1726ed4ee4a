//! Interval-valued q-rung orthopair fuzzy numbers and their basic algebra.
//!
//! A number carries a membership interval [mu_lo, mu_hi] and a non-membership
//! interval [nu_lo, nu_hi], both inside [0, 1], subject to the rung constraint
//! mu_hi^q + nu_hi^q <= 1 for the working rung q >= 1. Values are immutable
//! after construction; every operation returns a fresh value.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance for score/accuracy ties in [`compare`].
pub const CMP_TOL: f64 = 1e-12;

/// Closed real interval with lo <= hi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::IntervalOrder {
                side: "interval",
                lo,
                hi,
            });
        }
        Ok(Interval { lo, hi })
    }
}

/// Interval-valued q-rung orthopair fuzzy number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IvqRofn {
    mu_lo: f64,
    mu_hi: f64,
    nu_lo: f64,
    nu_hi: f64,
}

fn unit_interval_ok(lo: f64, hi: f64) -> bool {
    lo >= 0.0 && lo <= hi && hi <= 1.0
}

impl IvqRofn {
    /// Builds a number, checking interval order and [0, 1] range.
    /// The rung constraint is q-dependent; see [`IvqRofn::validate_for`].
    pub fn new(mu_lo: f64, mu_hi: f64, nu_lo: f64, nu_hi: f64) -> Result<Self> {
        if !unit_interval_ok(mu_lo, mu_hi) {
            return Err(Error::IntervalOrder {
                side: "membership",
                lo: mu_lo,
                hi: mu_hi,
            });
        }
        if !unit_interval_ok(nu_lo, nu_hi) {
            return Err(Error::IntervalOrder {
                side: "non-membership",
                lo: nu_lo,
                hi: nu_hi,
            });
        }
        Ok(IvqRofn {
            mu_lo,
            mu_hi,
            nu_lo,
            nu_hi,
        })
    }

    pub fn mu_lo(&self) -> f64 {
        self.mu_lo
    }

    pub fn mu_hi(&self) -> f64 {
        self.mu_hi
    }

    pub fn nu_lo(&self) -> f64 {
        self.nu_lo
    }

    pub fn nu_hi(&self) -> f64 {
        self.nu_hi
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.mu_lo, self.mu_hi, self.nu_lo, self.nu_hi]
    }

    /// Checks the rung constraint mu_hi^q + nu_hi^q <= 1 (with a tiny float
    /// allowance) and that q >= 1.
    pub fn validate_for(&self, q: f64) -> Result<()> {
        if !(q >= 1.0) || !q.is_finite() {
            return Err(Error::RungBelowOne(q));
        }
        let sum = self.mu_hi.powf(q) + self.nu_hi.powf(q);
        let excess = sum - 1.0;
        if excess > 1e-12 {
            return Err(Error::RungConstraint { q, sum, excess });
        }
        Ok(())
    }

    /// Hesitancy interval [pi_lo, pi_hi]; pi_lo comes from the upper
    /// endpoints, so pi_lo <= pi_hi.
    pub fn hesitancy(&self, q: f64) -> Result<Interval> {
        self.validate_for(q)?;
        let root = |m: f64, n: f64| {
            let rad = (1.0 - m.powf(q) - n.powf(q)).max(0.0);
            rad.powf(1.0 / q)
        };
        Interval::new(root(self.mu_hi, self.nu_hi), root(self.mu_lo, self.nu_lo))
    }

    /// Linear interval score in [-1, 1].
    pub fn score(&self) -> f64 {
        0.5 * (self.mu_lo - self.nu_hi * (1.0 - self.mu_hi) + self.mu_hi
            - self.nu_lo * (1.0 - self.mu_lo))
    }

    /// Alternate score: mean of q-th powers, membership minus non-membership.
    pub fn score_qpow(&self, q: f64) -> f64 {
        0.5 * (self.mu_lo.powf(q) + self.mu_hi.powf(q) - self.nu_lo.powf(q) - self.nu_hi.powf(q))
    }

    /// Accuracy in [0, 1]: mean of all four q-th powers.
    pub fn accuracy(&self, q: f64) -> f64 {
        0.5 * (self.mu_lo.powf(q) + self.mu_hi.powf(q) + self.nu_lo.powf(q) + self.nu_hi.powf(q))
    }

    /// The same number with membership and non-membership roles exchanged.
    pub fn swapped(&self) -> IvqRofn {
        IvqRofn {
            mu_lo: self.nu_lo,
            mu_hi: self.nu_hi,
            nu_lo: self.mu_lo,
            nu_hi: self.mu_hi,
        }
    }
}

impl fmt::Display for IvqRofn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "([{}, {}], [{}, {}])",
            self.mu_lo, self.mu_hi, self.nu_lo, self.nu_hi
        )
    }
}

impl Serialize for IvqRofn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_array().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IvqRofn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c, d] = <[f64; 4]>::deserialize(deserializer)?;
        IvqRofn::new(a, b, c, d).map_err(D::Error::custom)
    }
}

/// Total preorder: score first, accuracy as tie-break, ties within
/// [`CMP_TOL`] collapse to `Equal`.
pub fn compare(a: &IvqRofn, b: &IvqRofn, q: f64) -> Ordering {
    let (sa, sb) = (a.score(), b.score());
    if (sa - sb).abs() > CMP_TOL {
        return sa.partial_cmp(&sb).expect("scores are finite");
    }
    let (ha, hb) = (a.accuracy(q), b.accuracy(q));
    if (ha - hb).abs() > CMP_TOL {
        return ha.partial_cmp(&hb).expect("accuracies are finite");
    }
    Ordering::Equal
}

fn check_scalar(lambda: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonPositiveScalar(lambda));
    }
    Ok(())
}

/// 1 - z^q for an endpoint z, computed without cancellation near z = 1.
pub(crate) fn one_minus_pow(z: f64, q: f64) -> f64 {
    if z <= 0.0 {
        return 1.0;
    }
    if z >= 1.0 {
        return 0.0;
    }
    -(q * z.ln()).exp_m1()
}

/// Probabilistic sum on q-th powers per endpoint, product on the
/// non-membership endpoints.
pub fn alg_sum(a: &IvqRofn, b: &IvqRofn, q: f64) -> Result<IvqRofn> {
    a.validate_for(q)?;
    b.validate_for(q)?;
    let sum_side = |ea: f64, eb: f64| {
        let (za, zb) = (ea.powf(q), eb.powf(q));
        (za + zb - za * zb).powf(1.0 / q)
    };
    IvqRofn::new(
        sum_side(a.mu_lo, b.mu_lo),
        sum_side(a.mu_hi, b.mu_hi),
        a.nu_lo * b.nu_lo,
        a.nu_hi * b.nu_hi,
    )
}

/// Dual of [`alg_sum`]: product on membership, probabilistic sum on
/// non-membership q-th powers.
pub fn alg_prod(a: &IvqRofn, b: &IvqRofn, q: f64) -> Result<IvqRofn> {
    a.validate_for(q)?;
    b.validate_for(q)?;
    let sum_side = |ea: f64, eb: f64| {
        let (za, zb) = (ea.powf(q), eb.powf(q));
        (za + zb - za * zb).powf(1.0 / q)
    };
    IvqRofn::new(
        a.mu_lo * b.mu_lo,
        a.mu_hi * b.mu_hi,
        sum_side(a.nu_lo, b.nu_lo),
        sum_side(a.nu_hi, b.nu_hi),
    )
}

/// lambda-fold probabilistic sum: membership (1-(1-u^q)^lambda)^(1/q),
/// non-membership v^lambda. Requires lambda > 0.
pub fn alg_scalar_mul(lambda: f64, a: &IvqRofn, q: f64) -> Result<IvqRofn> {
    check_scalar(lambda)?;
    a.validate_for(q)?;
    let grow = |e: f64| {
        let co = one_minus_pow(e, q); // 1 - e^q
        if co == 0.0 {
            return 1.0;
        }
        (-(lambda * co.ln()).exp_m1()).powf(1.0 / q)
    };
    IvqRofn::new(
        grow(a.mu_lo),
        grow(a.mu_hi),
        a.nu_lo.powf(lambda),
        a.nu_hi.powf(lambda),
    )
}

/// lambda-th power: dual of [`alg_scalar_mul`].
pub fn alg_power(a: &IvqRofn, lambda: f64, q: f64) -> Result<IvqRofn> {
    check_scalar(lambda)?;
    a.validate_for(q)?;
    let grow = |e: f64| {
        let co = one_minus_pow(e, q);
        if co == 0.0 {
            return 1.0;
        }
        (-(lambda * co.ln()).exp_m1()).powf(1.0 / q)
    };
    IvqRofn::new(
        a.mu_lo.powf(lambda),
        a.mu_hi.powf(lambda),
        grow(a.nu_lo),
        grow(a.nu_hi),
    )
}

/// Smallest integer rung q >= 1 at which every number satisfies the rung
/// constraint. Vacuously 1 for an empty slice. Fails with
/// [`Error::Infeasible`] when an upper endpoint equals 1 while the partner
/// endpoint is positive, since no finite rung absorbs that.
pub fn infer_q(nums: &[IvqRofn]) -> Result<u64> {
    let mut q = 1u64;
    for a in nums {
        q = q.max(min_feasible_q(a)?);
    }
    Ok(q)
}

fn min_feasible_q(a: &IvqRofn) -> Result<u64> {
    let ok = |q: u64| a.mu_hi.powf(q as f64) + a.nu_hi.powf(q as f64) <= 1.0;
    if ok(1) {
        return Ok(1);
    }
    if a.mu_hi >= 1.0 || a.nu_hi >= 1.0 {
        return Err(Error::Infeasible {
            mu_hi: a.mu_hi,
            nu_hi: a.nu_hi,
        });
    }
    // Both endpoints are < 1, so a feasible rung exists; locate the smallest
    // by doubling then bisecting. The 2^40 guard only trips for endpoints
    // within ~1e-12 of 1, which we refuse rather than loop on.
    let mut hi = 2u64;
    while !ok(hi) {
        if hi > 1 << 40 {
            return Err(Error::Infeasible {
                mu_hi: a.mu_hi,
                nu_hi: a.nu_hi,
            });
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
