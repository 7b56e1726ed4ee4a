//! Heronian-mean aggregation of fuzzy numbers over the Hamacher family.
//!
//! The exported operators are closed forms: `hmm` (unweighted), `hhmwa`
//! (weighted arithmetic), `hhmga` (weighted geometric, dual reading), plus
//! the plain real-valued mean `hm_real` and the algebraic special case
//! `hmm_phi1`. Every closed form is evaluated in the log domain of the
//! Hamacher generators rather than through the printed radical quotients:
//! the conorm side of a value is carried as ln H(z) = ln(1 + phi z/(1-z)),
//! the norm side as ln G(z) = ln(1 + phi (1-z)/z), and the involution
//! t -> ln(1 + phi^2/(e^t - 1)) moves between the two. This keeps relative
//! precision at both ends of [0, 1], where the radical forms cancel
//! catastrophically. Tests pin the radical transcriptions against these
//! implementations, and the `oracle` fold is the independent ground truth.

use crate::error::{Error, Result};
use crate::hamacher::build;
use crate::number::{one_minus_pow, IvqRofn};
use crate::oracle::{fold_eval, FoldKind, FoldSpec};
use crate::params::{AggParams, WeightVector};

/// Reading of the weighted geometric mean.
///
/// `Dual` is the role-swapped mirror of the arithmetic construction: weights
/// and the pair exponents enter as powers, the pair combiner is a product,
/// and it admits a closed form. `Literal` keeps scalar multiples inside the
/// pair term and is evaluated by the brute-force fold only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometricMode {
    Dual,
    Literal,
}

/// Pinned degenerate exponent pairs for [`hmm_special_xy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialExponents {
    /// (x, y) = (1, 0): pairs collapse to their first component.
    X1Y0,
    /// (x, y) = (0, 1): pairs collapse to their second component.
    X0Y1,
}

enum Flavor {
    Arithmetic,
    Geometric,
}

/// Product with the convention 0 * v = 0 even for infinite v.
fn xmul(c: f64, v: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else {
        c * v
    }
}

/// The generator involution: maps ln H(z) to ln G(z) of the same z and back.
/// Naturally sends 0 to +inf and +inf to 0.
fn convert(t: f64, phi2: f64) -> f64 {
    (phi2 / t.exp_m1()).ln_1p()
}

/// q-th power of an endpoint together with its stable complement 1 - e^q.
fn qpow_parts(endpoint: f64, q: f64) -> (f64, f64) {
    (endpoint.powf(q), one_minus_pow(endpoint, q))
}

/// ln G(z) for z given as (z, 1-z).
fn ln_g(z: f64, co: f64, phi: f64) -> f64 {
    (phi * co / z).ln_1p()
}

/// ln H(z) for z given as (z, 1-z).
fn ln_h(z: f64, co: f64, phi: f64) -> f64 {
    (phi * z / co).ln_1p()
}

/// Closed-form spine shared by every operator: given per-input generator
/// logs, combine x*ls[i] + y*ls[j] over pairs i <= j, convert, average with
/// the pair exponent 2/(n(n+1)), convert back, apply 1/(x+y), and invert.
/// Returns the q-th power of the endpoint, on the conorm side
/// (e/(e+phi), for results carried as ln H) or norm side (phi/(e+phi)).
fn spine(ls: &[f64], x: f64, y: f64, phi: f64, conorm_side: bool) -> f64 {
    let n = ls.len() as f64;
    let phi2 = phi * phi;
    let pair_exp = 2.0 / (n * (n + 1.0));
    let mut lam = 0.0;
    for i in 0..ls.len() {
        for j in i..ls.len() {
            let t = xmul(x, ls[i]) + xmul(y, ls[j]);
            lam += pair_exp * convert(t, phi2);
        }
    }
    let sigma = convert(lam, phi2) / (x + y);
    let e = sigma.exp_m1();
    if conorm_side {
        if e.is_infinite() {
            1.0
        } else {
            (e / (e + phi)).clamp(0.0, 1.0)
        }
    } else if e.is_infinite() {
        0.0
    } else {
        (phi / (e + phi)).clamp(0.0, 1.0)
    }
}

/// Per-input log for the arithmetic family: the conorm-side log of the
/// theta-th power of the input side. theta = 1 shortcuts the involution.
fn arithmetic_l(dual_log: f64, direct_log: f64, theta: f64, phi2: f64) -> f64 {
    if theta == 1.0 {
        direct_log
    } else {
        convert(xmul(theta, dual_log), phi2)
    }
}

fn closed_mean(
    context: &'static str,
    values: &[IvqRofn],
    thetas: &[f64],
    p: &AggParams,
    flavor: Flavor,
) -> Result<IvqRofn> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (q, phi, x, y) = (p.q(), p.phi(), p.x(), p.y());
    let phi2 = phi * phi;
    let n = values.len();
    let mut mem = [Vec::with_capacity(n), Vec::with_capacity(n)];
    let mut non = [Vec::with_capacity(n), Vec::with_capacity(n)];
    for (a, &th) in values.iter().zip(thetas) {
        a.validate_for(q)?;
        for (side, &endpoint) in mem.iter_mut().zip(&[a.mu_lo(), a.mu_hi()]) {
            let (z, co) = qpow_parts(endpoint, q);
            side.push(match flavor {
                // weights act as powers: the norm-side log scales by theta
                Flavor::Arithmetic => arithmetic_l(ln_g(z, co, phi), ln_h(z, co, phi), th, phi2),
                Flavor::Geometric => xmul(th, ln_g(z, co, phi)),
            });
        }
        for (side, &endpoint) in non.iter_mut().zip(&[a.nu_lo(), a.nu_hi()]) {
            let (z, co) = qpow_parts(endpoint, q);
            side.push(match flavor {
                Flavor::Arithmetic => arithmetic_l(ln_h(z, co, phi), ln_g(z, co, phi), th, phi2),
                Flavor::Geometric => xmul(th, ln_h(z, co, phi)),
            });
        }
    }
    let conorm_first = matches!(flavor, Flavor::Arithmetic);
    let root = |z: f64| z.powf(1.0 / q);
    build(
        context,
        root(spine(&mem[0], x, y, phi, conorm_first)),
        root(spine(&mem[1], x, y, phi, conorm_first)),
        root(spine(&non[0], x, y, phi, !conorm_first)),
        root(spine(&non[1], x, y, phi, !conorm_first)),
    )
}

/// Heronian mean of nonnegative reals:
/// ((2/(n(n+1))) * sum_{i<=j} a_i^x a_j^y)^(1/(x+y)).
pub fn hm_real(values: &[f64], x: f64, y: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::NegativeExponent { x, y });
    }
    if x + y == 0.0 {
        return Err(Error::BothExponentsZero);
    }
    for &v in values {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::NegativeValue(v));
        }
    }
    let n = values.len() as f64;
    let mut sum = 0.0;
    for i in 0..values.len() {
        for j in i..values.len() {
            sum += values[i].powf(x) * values[j].powf(y);
        }
    }
    Ok((2.0 / (n * (n + 1.0)) * sum).powf(1.0 / (x + y)))
}

/// Hamacher Heronian mean of fuzzy numbers, unweighted:
/// (1/(x+y)) (*) prod_{i<=j} (x a_i (+) y a_j)^(2/(n(n+1))).
pub fn hmm(values: &[IvqRofn], p: &AggParams) -> Result<IvqRofn> {
    let thetas = vec![1.0; values.len()];
    closed_mean("hmm", values, &thetas, p, Flavor::Arithmetic)
}

/// [`hmm`] with both degenerate exponent choices routed through the same
/// closed form with pinned (x, y).
pub fn hmm_special_xy(
    values: &[IvqRofn],
    p: &AggParams,
    which: SpecialExponents,
) -> Result<IvqRofn> {
    let (x, y) = match which {
        SpecialExponents::X1Y0 => (1.0, 0.0),
        SpecialExponents::X0Y1 => (0.0, 1.0),
    };
    let pinned = AggParams::new(p.q(), p.phi(), x, y)?;
    hmm(values, &pinned)
}

/// Unweighted mean in the algebraic family (phi = 1), on its own code path:
/// membership^q = 1 - (1 - prod_{i<=j} (1 - co_i^x co_j^y)^(2/(n(n+1))))^(1/(x+y))
/// with co = 1 - z, and dually for non-membership. Serves as an independent
/// cross-check of [`hmm`] at phi = 1.
pub fn hmm_phi1(values: &[IvqRofn], q: f64, x: f64, y: f64) -> Result<IvqRofn> {
    let p = AggParams::new(q, 1.0, x, y)?;
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    for v in values {
        v.validate_for(q)?;
    }
    let n = values.len() as f64;
    let pair_exp = 2.0 / (n * (n + 1.0));
    let xy = x + y;

    // ln(1 - e^t) for t <= 0; branch keeps precision when e^t underflows
    // the 1 - e^t subtraction
    let ln_one_minus_exp = |t: f64| -> f64 {
        if t < -std::f64::consts::LN_2 {
            (-t.exp()).ln_1p()
        } else {
            (-t.exp_m1()).ln()
        }
    };

    // lns[i] = ln of the pair factor base; returns ln prod_{i<=j} (1 - e^(x lns_i + y lns_j))^pair_exp
    let accumulate = |lns: &[f64]| -> f64 {
        let mut lam = 0.0;
        for i in 0..lns.len() {
            for j in i..lns.len() {
                let t = xmul(x, lns[i]) + xmul(y, lns[j]);
                lam += pair_exp * ln_one_minus_exp(t);
            }
        }
        lam
    };

    let mem_side = |endpoints: &[f64]| -> f64 {
        // base: 1 - z_i, logged; ln_1p keeps tiny z_i from rounding away
        // inside the subtraction
        let lns: Vec<f64> = endpoints
            .iter()
            .map(|&e| {
                let z = e.powf(q);
                if z < 0.5 {
                    (-z).ln_1p()
                } else {
                    one_minus_pow(e, q).ln()
                }
            })
            .collect();
        let lam = accumulate(&lns);
        // 1 - (1 - e^lam)^(1/(x+y))
        -(ln_one_minus_exp(lam) / xy).exp_m1()
    };
    let non_side = |endpoints: &[f64]| -> f64 {
        // base: z_i itself, logged as q ln(endpoint)
        let lns: Vec<f64> = endpoints.iter().map(|&e| xmul(q, e.ln())).collect();
        let lam = accumulate(&lns);
        // (1 - e^lam)^(1/(x+y))
        (ln_one_minus_exp(lam) / xy).exp()
    };

    let mu: Vec<f64> = values.iter().map(|v| v.mu_lo()).collect();
    let mu_hi: Vec<f64> = values.iter().map(|v| v.mu_hi()).collect();
    let nu: Vec<f64> = values.iter().map(|v| v.nu_lo()).collect();
    let nu_hi: Vec<f64> = values.iter().map(|v| v.nu_hi()).collect();
    let root = |z: f64| z.powf(1.0 / p.q());
    build(
        "hmm_phi1",
        root(mem_side(&mu)),
        root(mem_side(&mu_hi)),
        root(non_side(&nu)),
        root(non_side(&nu_hi)),
    )
}

/// Weighted arithmetic Heronian mean: [`hmm`] applied to a_i^(w_i).
pub fn hhmwa(values: &[IvqRofn], weights: &WeightVector, p: &AggParams) -> Result<IvqRofn> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    weights.require_len(values.len())?;
    closed_mean("hhmwa", values, weights.as_slice(), p, Flavor::Arithmetic)
}

/// Weighted geometric Heronian mean. `Dual` evaluates the closed form of the
/// role-swapped construction; `Literal` delegates to the brute-force fold of
/// the scalar-multiple reading, which has no closed form.
pub fn hhmga(
    values: &[IvqRofn],
    weights: &WeightVector,
    p: &AggParams,
    mode: GeometricMode,
) -> Result<IvqRofn> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    weights.require_len(values.len())?;
    match mode {
        GeometricMode::Dual => {
            closed_mean("hhmga", values, weights.as_slice(), p, Flavor::Geometric)
        }
        GeometricMode::Literal => fold_eval(&FoldSpec {
            kind: FoldKind::HhmgaLiteral,
            values,
            weights: Some(weights),
            params: p,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{fold_eval, FoldKind, FoldSpec};

    fn n(a: f64, b: f64, c: f64, d: f64) -> IvqRofn {
        IvqRofn::new(a, b, c, d).unwrap()
    }

    fn close(a: &IvqRofn, b: &IvqRofn, tol: f64) -> bool {
        a.as_array()
            .iter()
            .zip(b.as_array())
            .all(|(x, y)| (x - y).abs() < tol)
    }

    fn sample3() -> Vec<IvqRofn> {
        vec![
            n(0.6, 0.7, 0.3, 0.4),
            n(0.5, 0.6, 0.5, 0.6),
            n(0.2, 0.4, 0.3, 0.5),
        ]
    }

    // feasible at q = 1: mu_hi + nu_hi <= 1 in every entry
    fn sample3_q1() -> Vec<IvqRofn> {
        vec![
            n(0.3, 0.4, 0.4, 0.5),
            n(0.5, 0.6, 0.2, 0.3),
            n(0.2, 0.35, 0.3, 0.6),
        ]
    }

    #[test]
    fn real_mean_reference_values() {
        // x = y = 1 on {1, 2}: pairs 1*1, 1*2, 2*2 -> (7/3)^(1/2)
        let got = hm_real(&[1.0, 2.0], 1.0, 1.0).unwrap();
        assert!((got - (7.0f64 / 3.0).sqrt()).abs() < 1e-15);
        // single value is reproduced for any exponents
        for (x, y) in [(1.0, 1.0), (2.0, 3.0), (1.0, 0.0)] {
            assert!((hm_real(&[0.37], x, y).unwrap() - 0.37).abs() < 1e-12);
        }
        // constant input is reproduced
        let got = hm_real(&[2.5, 2.5, 2.5], 2.0, 3.0).unwrap();
        assert!((got - 2.5).abs() < 1e-12);
    }

    #[test]
    fn real_mean_domain_errors() {
        assert_eq!(hm_real(&[], 1.0, 1.0), Err(Error::EmptyInput));
        assert_eq!(hm_real(&[1.0], 0.0, 0.0), Err(Error::BothExponentsZero));
        assert!(matches!(
            hm_real(&[1.0], -1.0, 1.0),
            Err(Error::NegativeExponent { .. })
        ));
        assert_eq!(
            hm_real(&[1.0, -0.5], 1.0, 1.0),
            Err(Error::NegativeValue(-0.5))
        );
    }

    #[test]
    fn hmm_singleton_is_identity() {
        let a = n(0.35, 0.45, 0.5, 0.65);
        for (x, y) in [(1.0, 1.0), (2.0, 3.0), (1.0, 0.0), (0.0, 1.0)] {
            let p = AggParams::new(3.0, 3.0, x, y).unwrap();
            let got = hmm(std::slice::from_ref(&a), &p).unwrap();
            assert!(close(&got, &a, 1e-12), "x={x} y={y} got {got}");
        }
    }

    #[test]
    fn hmm_is_idempotent_on_constant_input() {
        let a = n(0.6, 0.7, 0.3, 0.4);
        let vals = vec![a; 4];
        for phi in [0.5, 1.0, 2.0, 3.0] {
            let p = AggParams::new(3.0, phi, 2.0, 3.0).unwrap();
            let got = hmm(&vals, &p).unwrap();
            assert!(close(&got, &a, 1e-12), "phi={phi} got {got}");
        }
    }

    #[test]
    fn hmm_matches_fold_oracle() {
        for (q, phi, x, y) in [
            (1.0, 0.5, 1.0, 1.0),
            (2.0, 3.0, 2.0, 3.0),
            (3.0, 3.0, 3.0, 3.0),
            (3.0, 2.0, 1.0, 0.0),
            (2.0, 1.0, 0.0, 1.0),
        ] {
            let vals = if q < 2.0 { sample3_q1() } else { sample3() };
            let p = AggParams::new(q, phi, x, y).unwrap();
            let closed = hmm(&vals, &p).unwrap();
            let folded = fold_eval(&FoldSpec {
                kind: FoldKind::Hmm,
                values: &vals,
                weights: None,
                params: &p,
            })
            .unwrap();
            assert!(
                close(&closed, &folded, 1e-11),
                "q={q} phi={phi} x={x} y={y}: {closed} vs {folded}"
            );
        }
    }

    #[test]
    fn hmm_matches_phi1_special_case() {
        for (q, x, y) in [(1.0, 1.0, 1.0), (2.0, 2.0, 3.0), (3.0, 1.0, 0.0)] {
            let vals = if q < 2.0 { sample3_q1() } else { sample3() };
            let p = AggParams::new(q, 1.0, x, y).unwrap();
            let general = hmm(&vals, &p).unwrap();
            let special = hmm_phi1(&vals, q, x, y).unwrap();
            assert!(
                close(&general, &special, 1e-12),
                "q={q} x={x} y={y}: {general} vs {special}"
            );
        }
    }

    #[test]
    fn hmm_literal_radical_accumulators_agree() {
        // direct transcription of the radical closed form at phi = 3, q = 2,
        // x = 2, y = 3: per-input factors Vf = phi (1 + (phi-1) z),
        // Wf = phi (1 - z) on membership, Nf = phi (1 + (phi-1)(1-z_v)),
        // Mf = phi z_v on non-membership, pair products, the two running
        // products A, B (resp. C, D), and the final quotient.
        let vals = sample3();
        let (q, phi, x, y) = (2.0f64, 3.0f64, 2.0f64, 3.0f64);
        let p = AggParams::new(q, phi, x, y).unwrap();
        let got = hmm(&vals, &p).unwrap();

        let pair_exp = 2.0 / (3.0 * 4.0);
        let mem_endpoint = |endpoints: Vec<f64>| -> f64 {
            let bases: Vec<(f64, f64)> = endpoints
                .iter()
                .map(|e| {
                    let z = e.powf(q);
                    (phi * (1.0 + (phi - 1.0) * z), phi * (1.0 - z))
                })
                .collect();
            let mut big_a = 1.0;
            let mut big_b = 1.0;
            for i in 0..bases.len() {
                for j in i..bases.len() {
                    let v = bases[i].0.powf(x) * bases[j].0.powf(y);
                    let w = bases[i].1.powf(x) * bases[j].1.powf(y);
                    big_a *= (v + (phi * phi - 1.0) * w).powf(pair_exp);
                    big_b *= (v - w).powf(pair_exp);
                }
            }
            let a = (big_a + (phi * phi - 1.0) * big_b).powf(1.0 / (x + y));
            let b = (big_a - big_b).powf(1.0 / (x + y));
            ((a - b) / (a + (phi - 1.0) * b)).powf(1.0 / q)
        };
        let non_endpoint = |endpoints: Vec<f64>| -> f64 {
            let bases: Vec<(f64, f64)> = endpoints
                .iter()
                .map(|e| {
                    let z = e.powf(q);
                    (phi * (1.0 + (phi - 1.0) * (1.0 - z)), phi * z)
                })
                .collect();
            let mut big_c = 1.0;
            let mut big_d = 1.0;
            for i in 0..bases.len() {
                for j in i..bases.len() {
                    let nn = bases[i].0.powf(x) * bases[j].0.powf(y);
                    let mm = bases[i].1.powf(x) * bases[j].1.powf(y);
                    big_c *= (nn + (phi * phi - 1.0) * mm).powf(pair_exp);
                    big_d *= (nn - mm).powf(pair_exp);
                }
            }
            let c = (big_c + (phi * phi - 1.0) * big_d).powf(1.0 / (x + y));
            let d = (big_c - big_d).powf(1.0 / (x + y));
            (phi * d / (c + (phi - 1.0) * d)).powf(1.0 / q)
        };

        let expect = [
            mem_endpoint(vals.iter().map(|v| v.mu_lo()).collect()),
            mem_endpoint(vals.iter().map(|v| v.mu_hi()).collect()),
            non_endpoint(vals.iter().map(|v| v.nu_lo()).collect()),
            non_endpoint(vals.iter().map(|v| v.nu_hi()).collect()),
        ];
        for (g, e) in got.as_array().iter().zip(expect) {
            assert!((g - e).abs() < 1e-12, "{got:?} vs {expect:?}");
        }
    }

    #[test]
    fn hhmwa_matches_fold_oracle() {
        let w = WeightVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        for (q, phi, x, y) in [
            (2.0, 3.0, 2.0, 3.0),
            (3.0, 0.5, 1.0, 1.0),
            (1.0, 2.0, 1.0, 0.0),
            (3.0, 3.0, 3.0, 3.0),
        ] {
            let vals = if q < 2.0 { sample3_q1() } else { sample3() };
            let p = AggParams::new(q, phi, x, y).unwrap();
            let closed = hhmwa(&vals, &w, &p).unwrap();
            let folded = fold_eval(&FoldSpec {
                kind: FoldKind::Hhmwa,
                values: &vals,
                weights: Some(&w),
                params: &p,
            })
            .unwrap();
            assert!(
                close(&closed, &folded, 1e-11),
                "q={q} phi={phi} x={x} y={y}: {closed} vs {folded}"
            );
        }
    }

    #[test]
    fn hhmwa_literal_radical_accumulators_agree() {
        // weighted radical transcription: per-input factors are built from
        // P = (1 + (phi-1)(1-z))^w, R = z^w on membership and
        // P' = (1 + (phi-1) z_v)^w, R' = (1 - z_v)^w on non-membership,
        // as Vf = P + (phi^2-1) R, Wf = P - R (resp. Nf, Mf).
        let vals = sample3();
        let w = [0.5, 0.3, 0.2];
        let (q, phi, x, y) = (2.0f64, 3.0f64, 2.0f64, 3.0f64);
        let p = AggParams::new(q, phi, x, y).unwrap();
        let wv = WeightVector::new(w.to_vec()).unwrap();
        let got = hhmwa(&vals, &wv, &p).unwrap();

        let pair_exp = 2.0 / (3.0 * 4.0);
        let assemble = |bases: Vec<(f64, f64)>| -> (f64, f64) {
            let mut big_a = 1.0;
            let mut big_b = 1.0;
            for i in 0..bases.len() {
                for j in i..bases.len() {
                    let v = bases[i].0.powf(x) * bases[j].0.powf(y);
                    let ww = bases[i].1.powf(x) * bases[j].1.powf(y);
                    big_a *= (v + (phi * phi - 1.0) * ww).powf(pair_exp);
                    big_b *= (v - ww).powf(pair_exp);
                }
            }
            (
                (big_a + (phi * phi - 1.0) * big_b).powf(1.0 / (x + y)),
                (big_a - big_b).powf(1.0 / (x + y)),
            )
        };
        let mem_endpoint = |endpoints: Vec<f64>| -> f64 {
            let bases: Vec<(f64, f64)> = endpoints
                .iter()
                .zip(w)
                .map(|(e, wi)| {
                    let z = e.powf(q);
                    let p_fac = (1.0 + (phi - 1.0) * (1.0 - z)).powf(wi);
                    let r_fac = z.powf(wi);
                    (p_fac + (phi * phi - 1.0) * r_fac, p_fac - r_fac)
                })
                .collect();
            let (a, b) = assemble(bases);
            ((a - b) / (a + (phi - 1.0) * b)).powf(1.0 / q)
        };
        let non_endpoint = |endpoints: Vec<f64>| -> f64 {
            let bases: Vec<(f64, f64)> = endpoints
                .iter()
                .zip(w)
                .map(|(e, wi)| {
                    let z = e.powf(q);
                    let p_fac = (1.0 + (phi - 1.0) * z).powf(wi);
                    let r_fac = (1.0 - z).powf(wi);
                    (p_fac + (phi * phi - 1.0) * r_fac, p_fac - r_fac)
                })
                .collect();
            let (c, d) = assemble(bases);
            (phi * d / (c + (phi - 1.0) * d)).powf(1.0 / q)
        };

        let expect = [
            mem_endpoint(vals.iter().map(|v| v.mu_lo()).collect()),
            mem_endpoint(vals.iter().map(|v| v.mu_hi()).collect()),
            non_endpoint(vals.iter().map(|v| v.nu_lo()).collect()),
            non_endpoint(vals.iter().map(|v| v.nu_hi()).collect()),
        ];
        // the radical assembly cancels in its running differences, so its own
        // conditioning caps the achievable agreement near 1e-10
        for (g, e) in got.as_array().iter().zip(expect) {
            assert!((g - e).abs() < 1e-9, "{got:?} vs {expect:?}");
        }
    }

    #[test]
    fn hhmwa_uniform_weights_differ_from_hmm() {
        // a_i^(1/n) inputs do not reproduce the unweighted mean; record the
        // measured gap so the relationship is documented, not assumed.
        let vals = sample3();
        let w = WeightVector::uniform(3).unwrap();
        let p = AggParams::new(3.0, 3.0, 3.0, 3.0).unwrap();
        let un = hmm(&vals, &p).unwrap();
        let wt = hhmwa(&vals, &w, &p).unwrap();
        let gap: f64 = un
            .as_array()
            .iter()
            .zip(wt.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(gap > 1e-3, "expected a visible gap, got {gap}");
    }

    #[test]
    fn hhmga_dual_matches_fold_oracle() {
        let vals = sample3();
        let w = WeightVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        for (q, phi, x, y) in [
            (2.0, 3.0, 2.0, 3.0),
            (3.0, 0.5, 1.0, 1.0),
            (3.0, 3.0, 3.0, 3.0),
            (2.0, 2.0, 0.0, 1.0),
        ] {
            let p = AggParams::new(q, phi, x, y).unwrap();
            let closed = hhmga(&vals, &w, &p, GeometricMode::Dual).unwrap();
            let folded = fold_eval(&FoldSpec {
                kind: FoldKind::HhmgaDual,
                values: &vals,
                weights: Some(&w),
                params: &p,
            })
            .unwrap();
            assert!(
                close(&closed, &folded, 1e-11),
                "q={q} phi={phi} x={x} y={y}: {closed} vs {folded}"
            );
        }
    }

    #[test]
    fn hhmga_literal_is_the_fold() {
        let vals = sample3();
        let w = WeightVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        let p = AggParams::new(2.0, 3.0, 2.0, 3.0).unwrap();
        let via_api = hhmga(&vals, &w, &p, GeometricMode::Literal).unwrap();
        let direct = fold_eval(&FoldSpec {
            kind: FoldKind::HhmgaLiteral,
            values: &vals,
            weights: Some(&w),
            params: &p,
        })
        .unwrap();
        assert_eq!(via_api, direct);
        // the two geometric readings genuinely differ
        let dual = hhmga(&vals, &w, &p, GeometricMode::Dual).unwrap();
        let gap: f64 = via_api
            .as_array()
            .iter()
            .zip(dual.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(gap > 1e-6, "expected the readings to differ, got {gap}");
    }

    #[test]
    fn geometric_dual_mirrors_a_swapped_arithmetic_fold() {
        // role-swapping the dual geometric mean lands on the arithmetic-side
        // fold in which weights and pair exponents act as scalar multiples:
        // (1/(x+y)) (*) prod_{i<=j} (x (*) (w_i (*) s_i) (+) y (*) (w_j (*) s_j))^(2/(n(n+1)))
        // with s_i the role-swapped inputs. Checked against an inline fold.
        use crate::hamacher::{h_power, h_prod, h_scalar_mul, h_sum};
        let vals = sample3();
        let w = WeightVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        let p = AggParams::new(2.0, 3.0, 2.0, 3.0).unwrap();
        let dual = hhmga(&vals, &w, &p, GeometricMode::Dual).unwrap().swapped();

        let swapped: Vec<IvqRofn> = vals.iter().map(|v| v.swapped()).collect();
        let scaled: Vec<IvqRofn> = swapped
            .iter()
            .zip(w.as_slice())
            .map(|(v, &wi)| h_scalar_mul(wi, v, &p).unwrap())
            .collect();
        let pair_exp = 2.0 / (3.0 * 4.0);
        let mut acc: Option<IvqRofn> = None;
        for i in 0..3 {
            for j in i..3 {
                let term = h_sum(
                    &h_scalar_mul(p.x(), &scaled[i], &p).unwrap(),
                    &h_scalar_mul(p.y(), &scaled[j], &p).unwrap(),
                    &p,
                )
                .unwrap();
                let powered = h_power(&term, pair_exp, &p).unwrap();
                acc = Some(match acc {
                    None => powered,
                    Some(prev) => h_prod(&prev, &powered, &p).unwrap(),
                });
            }
        }
        let mirrored = h_scalar_mul(1.0 / (p.x() + p.y()), &acc.unwrap(), &p).unwrap();
        assert!(close(&dual, &mirrored, 1e-11), "{dual} vs {mirrored}");
    }

    #[test]
    fn special_exponents_relate_by_reversal() {
        let vals = sample3();
        let p = AggParams::new(3.0, 3.0, 3.0, 3.0).unwrap();
        let first = hmm_special_xy(&vals, &p, SpecialExponents::X1Y0).unwrap();
        let reversed: Vec<IvqRofn> = vals.iter().rev().cloned().collect();
        let second = hmm_special_xy(&reversed, &p, SpecialExponents::X0Y1).unwrap();
        assert!(close(&first, &second, 1e-12));
        // and they are not equal on the same ordering in general
        let second_same = hmm_special_xy(&vals, &p, SpecialExponents::X0Y1).unwrap();
        let gap: f64 = first
            .as_array()
            .iter()
            .zip(second_same.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(gap > 1e-6, "expected asymmetry, got {gap}");
    }

    #[test]
    fn weighted_operators_check_dimensions() {
        let vals = sample3();
        let w = WeightVector::uniform(2).unwrap();
        let p = AggParams::new(2.0, 3.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            hhmwa(&vals, &w, &p),
            Err(Error::WeightDimensionMismatch { .. })
        ));
        assert!(matches!(
            hhmga(&vals, &w, &p, GeometricMode::Dual),
            Err(Error::WeightDimensionMismatch { .. })
        ));
        assert_eq!(hmm(&[], &p), Err(Error::EmptyInput));
    }

    #[test]
    fn extreme_endpoints_stay_accurate() {
        // tiny memberships survive the log-domain evaluation with relative
        // accuracy: closed form vs fold at 1e-9 componentwise even at 1e-4
        let vals = vec![
            n(1e-4, 2e-4, 0.9, 0.95),
            n(3e-4, 5e-4, 0.85, 0.9),
            n(0.99, 0.995, 1e-4, 2e-4),
        ];
        let p = AggParams::new(3.0, 3.0, 2.0, 3.0).unwrap();
        let closed = hmm(&vals, &p).unwrap();
        let folded = fold_eval(&FoldSpec {
            kind: FoldKind::Hmm,
            values: &vals,
            weights: None,
            params: &p,
        })
        .unwrap();
        assert!(close(&closed, &folded, 1e-9), "{closed} vs {folded}");
    }

    #[test]
    fn degenerate_and_boundary_inputs() {
        // full-membership and full-non-membership inputs aggregate cleanly
        let vals = vec![n(1.0, 1.0, 0.0, 0.0), n(0.0, 0.0, 1.0, 1.0)];
        let p = AggParams::new(2.0, 3.0, 1.0, 1.0).unwrap();
        let got = hmm(&vals, &p).unwrap();
        let folded = fold_eval(&FoldSpec {
            kind: FoldKind::Hmm,
            values: &vals,
            weights: None,
            params: &p,
        })
        .unwrap();
        assert!(close(&got, &folded, 1e-9), "{got} vs {folded}");
    }
}
