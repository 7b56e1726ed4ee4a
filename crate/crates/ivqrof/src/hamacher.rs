//! Hamacher t-norm family, on plain scalars and on fuzzy numbers.
//!
//! The family is parameterised by phi > 0: phi = 1 gives the algebraic
//! (probabilistic) pair, phi = 2 the Einstein pair. Fuzzy-number operations
//! share one code path: take q-th powers of the endpoints, apply the scalar
//! operation, take q-th roots. Scalar multiples and powers are evaluated
//! through `ln_1p`/`exp_m1` so that relative precision survives at both ends
//! of [0, 1]; the printed radical forms are asserted in tests.

use crate::error::{Error, Result};
use crate::number::IvqRofn;
use crate::params::AggParams;

fn check_unit(what: &'static str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) || !v.is_finite() {
        return Err(Error::UnitRange { what, value: v });
    }
    Ok(())
}

fn check_phi(phi: f64) -> Result<()> {
    if !(phi > 0.0) || !phi.is_finite() {
        return Err(Error::NonPositivePhi(phi));
    }
    Ok(())
}

fn check_scalar(theta: f64) -> Result<()> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::NonPositiveScalar(theta));
    }
    Ok(())
}

/// Hamacher t-conorm on [0, 1] scalars.
pub fn h_sum_scalar(a: f64, b: f64, phi: f64) -> Result<f64> {
    check_unit("h_sum_scalar lhs", a)?;
    check_unit("h_sum_scalar rhs", b)?;
    check_phi(phi)?;
    let den = 1.0 + (phi - 1.0) * a * b;
    if !(den > 0.0) {
        return Err(Error::NumericalDegeneracy {
            context: "h_sum_scalar",
            detail: format!("denominator {den} for a={a}, b={b}, phi={phi}"),
        });
    }
    Ok(conorm(a, b, phi))
}

/// Hamacher t-norm on [0, 1] scalars.
pub fn h_prod_scalar(a: f64, b: f64, phi: f64) -> Result<f64> {
    check_unit("h_prod_scalar lhs", a)?;
    check_unit("h_prod_scalar rhs", b)?;
    check_phi(phi)?;
    let den = phi + (1.0 - phi) * (a + b - a * b);
    if !(den > 0.0) {
        return Err(Error::NumericalDegeneracy {
            context: "h_prod_scalar",
            detail: format!("denominator {den} for a={a}, b={b}, phi={phi}"),
        });
    }
    Ok(norm(a, b, phi))
}

/// Unchecked t-conorm kernel; callers guarantee a, b in [0, 1], phi > 0.
pub(crate) fn conorm(a: f64, b: f64, phi: f64) -> f64 {
    let num = a + b - (2.0 - phi) * a * b;
    let den = 1.0 + (phi - 1.0) * a * b;
    (num / den).clamp(0.0, 1.0)
}

/// Unchecked t-norm kernel.
pub(crate) fn norm(a: f64, b: f64, phi: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let den = phi + (1.0 - phi) * (a + b - a * b);
    ((a * b) / den).clamp(0.0, 1.0)
}

/// theta-fold t-conorm of z: the scalar-multiple kernel. theta = 0 yields the
/// conorm neutral 0. Equals ((1+(phi-1)z)^t - (1-z)^t) / ((1+(phi-1)z)^t +
/// (phi-1)(1-z)^t) in radical form.
pub(crate) fn conorm_scale(z: f64, theta: f64, phi: f64) -> f64 {
    if theta == 0.0 || z <= 0.0 {
        return 0.0;
    }
    if z >= 1.0 {
        return 1.0;
    }
    let d = theta * (phi * z / (1.0 - z)).ln_1p();
    let e = d.exp_m1();
    if e.is_infinite() {
        return 1.0;
    }
    (e / (e + phi)).clamp(0.0, 1.0)
}

/// theta-th t-norm power of z: the power kernel, dual of [`conorm_scale`].
/// theta = 0 yields the norm neutral 1.
pub(crate) fn norm_power(z: f64, theta: f64, phi: f64) -> f64 {
    if theta == 0.0 || z >= 1.0 {
        return 1.0;
    }
    if z <= 0.0 {
        return 0.0;
    }
    let d = theta * (phi * (1.0 - z) / z).ln_1p();
    let e = d.exp_m1();
    if e.is_infinite() {
        return 0.0;
    }
    (phi / (e + phi)).clamp(0.0, 1.0)
}

fn qp(endpoint: f64, q: f64) -> f64 {
    endpoint.powf(q)
}

fn qroot(z: f64, q: f64) -> f64 {
    z.powf(1.0 / q)
}

/// Rebuilds a number from computed endpoints, absorbing ulp-level interval
/// inversions and refusing anything larger.
pub(crate) fn build(
    context: &'static str,
    mu_lo: f64,
    mu_hi: f64,
    nu_lo: f64,
    nu_hi: f64,
) -> Result<IvqRofn> {
    for v in [mu_lo, mu_hi, nu_lo, nu_hi] {
        if !v.is_finite() {
            return Err(Error::NumericalDegeneracy {
                context: "endpoint evaluation",
                detail: format!("{context} produced non-finite endpoint {v}"),
            });
        }
    }
    if mu_lo > mu_hi + 1e-12 || nu_lo > nu_hi + 1e-12 {
        return Err(Error::NumericalDegeneracy {
            context: "endpoint evaluation",
            detail: format!(
                "{context} inverted an interval: mu=[{mu_lo}, {mu_hi}], nu=[{nu_lo}, {nu_hi}]"
            ),
        });
    }
    IvqRofn::new(mu_lo, mu_hi.max(mu_lo), nu_lo, nu_hi.max(nu_lo))
}

/// Hamacher sum of two fuzzy numbers: t-conorm on membership q-th powers,
/// t-norm on non-membership q-th powers.
pub fn h_sum(a: &IvqRofn, b: &IvqRofn, p: &AggParams) -> Result<IvqRofn> {
    let (q, phi) = (p.q(), p.phi());
    a.validate_for(q)?;
    b.validate_for(q)?;
    build(
        "h_sum",
        qroot(conorm(qp(a.mu_lo(), q), qp(b.mu_lo(), q), phi), q),
        qroot(conorm(qp(a.mu_hi(), q), qp(b.mu_hi(), q), phi), q),
        qroot(norm(qp(a.nu_lo(), q), qp(b.nu_lo(), q), phi), q),
        qroot(norm(qp(a.nu_hi(), q), qp(b.nu_hi(), q), phi), q),
    )
}

/// Hamacher product: role-swapped dual of [`h_sum`].
pub fn h_prod(a: &IvqRofn, b: &IvqRofn, p: &AggParams) -> Result<IvqRofn> {
    let (q, phi) = (p.q(), p.phi());
    a.validate_for(q)?;
    b.validate_for(q)?;
    build(
        "h_prod",
        qroot(norm(qp(a.mu_lo(), q), qp(b.mu_lo(), q), phi), q),
        qroot(norm(qp(a.mu_hi(), q), qp(b.mu_hi(), q), phi), q),
        qroot(conorm(qp(a.nu_lo(), q), qp(b.nu_lo(), q), phi), q),
        qroot(conorm(qp(a.nu_hi(), q), qp(b.nu_hi(), q), phi), q),
    )
}

/// theta-fold Hamacher sum of one number; requires theta > 0.
pub fn h_scalar_mul(theta: f64, a: &IvqRofn, p: &AggParams) -> Result<IvqRofn> {
    check_scalar(theta)?;
    let (q, phi) = (p.q(), p.phi());
    a.validate_for(q)?;
    build(
        "h_scalar_mul",
        qroot(conorm_scale(qp(a.mu_lo(), q), theta, phi), q),
        qroot(conorm_scale(qp(a.mu_hi(), q), theta, phi), q),
        qroot(norm_power(qp(a.nu_lo(), q), theta, phi), q),
        qroot(norm_power(qp(a.nu_hi(), q), theta, phi), q),
    )
}

/// theta-th Hamacher power of one number; requires theta > 0.
pub fn h_power(a: &IvqRofn, theta: f64, p: &AggParams) -> Result<IvqRofn> {
    check_scalar(theta)?;
    let (q, phi) = (p.q(), p.phi());
    a.validate_for(q)?;
    build(
        "h_power",
        qroot(norm_power(qp(a.mu_lo(), q), theta, phi), q),
        qroot(norm_power(qp(a.mu_hi(), q), theta, phi), q),
        qroot(conorm_scale(qp(a.nu_lo(), q), theta, phi), q),
        qroot(conorm_scale(qp(a.nu_hi(), q), theta, phi), q),
    )
}
