//! Brute-force fold evaluation of the Heronian aggregation operators.
//!
//! Each operator is evaluated exactly as its defining fold reads: scalar
//! multiples and powers of the inputs, a pairwise combination over all index
//! pairs i <= j in ascending (i, then j) order, and the trailing 1/(x+y)
//! correction. No closed form is involved, so this path serves as the ground
//! truth the `heronian` module is checked against, both in tests and in the
//! CLI selfcheck.
//!
//! Internally each scalar channel carries its complement alongside the value
//! ([`CoVal`]): a fold applies many transform round trips in sequence, and
//! representing an intermediate near 1 as a bare f64 would erase the
//! complement that the next step depends on. Carrying both keeps the fold
//! trustworthy arbitrarily close to the endpoints without borrowing anything
//! from the closed forms.

use crate::error::{Error, Result};
use crate::hamacher::build;
use crate::number::{one_minus_pow, IvqRofn};
use crate::params::{AggParams, WeightVector};

/// Which operator the fold evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldKind {
    /// Unweighted mean: (1/(x+y)) * prod_{i<=j} (x a_i + y a_j)^(2/(n(n+1))).
    Hmm,
    /// Weighted arithmetic mean: as `Hmm` with a_i replaced by a_i^(w_i).
    Hhmwa,
    /// Weighted geometric mean, dual reading:
    /// (sum_{i<=j} (2/(n(n+1))) * (a_i^(w_i x)) (a_j^(w_j y)))^(1/(x+y)).
    HhmgaDual,
    /// Weighted geometric mean, literal reading:
    /// (1/(x+y)) * sum_{i<=j} ((x a_i^(w_i)) (y a_j^(w_j)))^(2/(n(n+1))).
    HhmgaLiteral,
}

/// A fold request: operator, operands, optional weights, parameters.
/// Weights must be present exactly when the kind is weighted.
#[derive(Debug, Clone)]
pub struct FoldSpec<'a> {
    pub kind: FoldKind,
    pub values: &'a [IvqRofn],
    pub weights: Option<&'a WeightVector>,
    pub params: &'a AggParams,
}

/// One channel value in the z = endpoint^q domain with its complement
/// co = 1 - z carried alongside rather than recomputed by subtraction.
///
/// Transform values are handled as offsets from 1: the conorm-side transform
/// satisfies H(z) - 1 = phi z / (1 - z) and the norm side G(z) - 1 =
/// phi (1 - z) / z, both exact in the tracked parts. Offsets multiply via
/// t_ab = t_a + t_b + t_a t_b and invert via z = t / (t + phi), so no step
/// subtracts nearly equal quantities.
#[derive(Debug, Clone, Copy)]
struct CoVal {
    z: f64,
    co: f64,
}

/// Offset product; explicit about infinities so 0 * inf cannot arise.
fn offset_mul(a: f64, b: f64) -> f64 {
    if a.is_infinite() || b.is_infinite() {
        f64::INFINITY
    } else {
        a + b + a * b
    }
}

/// Offset power: (1 + t)^theta - 1 for theta > 0.
fn offset_pow(t: f64, theta: f64) -> f64 {
    if t.is_infinite() {
        f64::INFINITY
    } else {
        (theta * t.ln_1p()).exp_m1()
    }
}

impl CoVal {
    /// Conorm-side transform offset H(z) - 1; infinite when z = 1.
    fn hm1(&self, phi: f64) -> f64 {
        phi * self.z / self.co
    }

    /// Norm-side transform offset G(z) - 1; infinite when z = 0.
    fn gm1(&self, phi: f64) -> f64 {
        phi * self.co / self.z
    }

    fn from_hm1(t: f64, phi: f64) -> CoVal {
        if t.is_infinite() {
            CoVal { z: 1.0, co: 0.0 }
        } else {
            CoVal {
                z: t / (t + phi),
                co: phi / (t + phi),
            }
        }
    }

    fn from_gm1(t: f64, phi: f64) -> CoVal {
        if t.is_infinite() {
            CoVal { z: 0.0, co: 1.0 }
        } else {
            CoVal {
                z: phi / (t + phi),
                co: t / (t + phi),
            }
        }
    }
}

/// A fuzzy number under fold evaluation: membership and non-membership
/// endpoint channels, each complement-tracked.
#[derive(Debug, Clone, Copy)]
struct CoNum {
    mu: [CoVal; 2],
    nu: [CoVal; 2],
}

impl CoNum {
    fn from_number(v: &IvqRofn, q: f64) -> CoNum {
        let chan = |e: f64| CoVal {
            z: e.powf(q),
            co: one_minus_pow(e, q),
        };
        CoNum {
            mu: [chan(v.mu_lo()), chan(v.mu_hi())],
            nu: [chan(v.nu_lo()), chan(v.nu_hi())],
        }
    }

    fn sum_neutral() -> CoNum {
        CoNum {
            mu: [CoVal { z: 0.0, co: 1.0 }; 2],
            nu: [CoVal { z: 1.0, co: 0.0 }; 2],
        }
    }

    fn prod_neutral() -> CoNum {
        CoNum {
            mu: [CoVal { z: 1.0, co: 0.0 }; 2],
            nu: [CoVal { z: 0.0, co: 1.0 }; 2],
        }
    }

    fn sum(&self, b: &CoNum, phi: f64) -> CoNum {
        let mu_join =
            |s: &CoVal, o: &CoVal| CoVal::from_hm1(offset_mul(s.hm1(phi), o.hm1(phi)), phi);
        let nu_join =
            |s: &CoVal, o: &CoVal| CoVal::from_gm1(offset_mul(s.gm1(phi), o.gm1(phi)), phi);
        CoNum {
            mu: [
                mu_join(&self.mu[0], &b.mu[0]),
                mu_join(&self.mu[1], &b.mu[1]),
            ],
            nu: [
                nu_join(&self.nu[0], &b.nu[0]),
                nu_join(&self.nu[1], &b.nu[1]),
            ],
        }
    }

    fn prod(&self, b: &CoNum, phi: f64) -> CoNum {
        let mu_join =
            |s: &CoVal, o: &CoVal| CoVal::from_gm1(offset_mul(s.gm1(phi), o.gm1(phi)), phi);
        let nu_join =
            |s: &CoVal, o: &CoVal| CoVal::from_hm1(offset_mul(s.hm1(phi), o.hm1(phi)), phi);
        CoNum {
            mu: [
                mu_join(&self.mu[0], &b.mu[0]),
                mu_join(&self.mu[1], &b.mu[1]),
            ],
            nu: [
                nu_join(&self.nu[0], &b.nu[0]),
                nu_join(&self.nu[1], &b.nu[1]),
            ],
        }
    }

    fn scalar_mul(&self, theta: f64, phi: f64) -> CoNum {
        CoNum {
            mu: self
                .mu
                .map(|c| CoVal::from_hm1(offset_pow(c.hm1(phi), theta), phi)),
            nu: self
                .nu
                .map(|c| CoVal::from_gm1(offset_pow(c.gm1(phi), theta), phi)),
        }
    }

    fn power(&self, theta: f64, phi: f64) -> CoNum {
        CoNum {
            mu: self
                .mu
                .map(|c| CoVal::from_gm1(offset_pow(c.gm1(phi), theta), phi)),
            nu: self
                .nu
                .map(|c| CoVal::from_hm1(offset_pow(c.hm1(phi), theta), phi)),
        }
    }

    fn scalar_mul_or_neutral(&self, theta: f64, phi: f64) -> CoNum {
        if theta == 0.0 {
            CoNum::sum_neutral()
        } else {
            self.scalar_mul(theta, phi)
        }
    }

    fn power_or_neutral(&self, theta: f64, phi: f64) -> CoNum {
        if theta == 0.0 {
            CoNum::prod_neutral()
        } else {
            self.power(theta, phi)
        }
    }

    fn finish(&self, context: &'static str, q: f64) -> Result<IvqRofn> {
        let root = |c: &CoVal| c.z.powf(1.0 / q);
        build(
            context,
            root(&self.mu[0]),
            root(&self.mu[1]),
            root(&self.nu[0]),
            root(&self.nu[1]),
        )
    }
}

/// Evaluates the requested fold.
pub fn fold_eval(spec: &FoldSpec) -> Result<IvqRofn> {
    let n = spec.values.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let p = spec.params;
    for v in spec.values {
        v.validate_for(p.q())?;
    }
    let weighted = spec.kind != FoldKind::Hmm;
    let thetas: Vec<f64> = match (weighted, spec.weights) {
        (false, None) => vec![1.0; n],
        (false, Some(w)) => {
            return Err(Error::WeightDimensionMismatch {
                expected: 0,
                got: w.len(),
            })
        }
        (true, Some(w)) => {
            w.require_len(n)?;
            w.as_slice().to_vec()
        }
        (true, None) => {
            return Err(Error::WeightDimensionMismatch {
                expected: n,
                got: 0,
            })
        }
    };

    let (x, y, phi, q) = (p.x(), p.y(), p.phi(), p.q());
    let pair_exp = 2.0 / (n as f64 * (n as f64 + 1.0));
    let raw: Vec<CoNum> = spec
        .values
        .iter()
        .map(|v| CoNum::from_number(v, q))
        .collect();

    match spec.kind {
        FoldKind::Hmm | FoldKind::Hhmwa => {
            let inputs: Vec<CoNum> = if spec.kind == FoldKind::Hmm {
                raw
            } else {
                raw.iter()
                    .zip(&thetas)
                    .map(|(v, &w)| v.power_or_neutral(w, phi))
                    .collect()
            };
            let mut acc: Option<CoNum> = None;
            for i in 0..n {
                for j in i..n {
                    let term = inputs[i]
                        .scalar_mul_or_neutral(x, phi)
                        .sum(&inputs[j].scalar_mul_or_neutral(y, phi), phi);
                    let powered = term.power(pair_exp, phi);
                    acc = Some(match acc {
                        None => powered,
                        Some(prev) => prev.prod(&powered, phi),
                    });
                }
            }
            acc.expect("n >= 1")
                .scalar_mul(1.0 / (x + y), phi)
                .finish("fold arithmetic", q)
        }
        FoldKind::HhmgaDual => {
            let inputs: Vec<CoNum> = raw
                .iter()
                .zip(&thetas)
                .map(|(v, &w)| v.power_or_neutral(w, phi))
                .collect();
            let mut acc: Option<CoNum> = None;
            for i in 0..n {
                for j in i..n {
                    let term = inputs[i]
                        .power_or_neutral(x, phi)
                        .prod(&inputs[j].power_or_neutral(y, phi), phi);
                    let scaled = term.scalar_mul(pair_exp, phi);
                    acc = Some(match acc {
                        None => scaled,
                        Some(prev) => prev.sum(&scaled, phi),
                    });
                }
            }
            acc.expect("n >= 1")
                .power(1.0 / (x + y), phi)
                .finish("fold geometric dual", q)
        }
        FoldKind::HhmgaLiteral => {
            let inputs: Vec<CoNum> = raw
                .iter()
                .zip(&thetas)
                .map(|(v, &w)| v.power_or_neutral(w, phi))
                .collect();
            let mut acc: Option<CoNum> = None;
            for i in 0..n {
                for j in i..n {
                    let term = inputs[i]
                        .scalar_mul_or_neutral(x, phi)
                        .prod(&inputs[j].scalar_mul_or_neutral(y, phi), phi);
                    let powered = term.power(pair_exp, phi);
                    acc = Some(match acc {
                        None => powered,
                        Some(prev) => prev.sum(&powered, phi),
                    });
                }
            }
            acc.expect("n >= 1")
                .scalar_mul(1.0 / (x + y), phi)
                .finish("fold geometric literal", q)
        }
    }
}
