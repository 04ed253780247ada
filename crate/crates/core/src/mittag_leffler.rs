//! The two-parameter Mittag-Leffler function `E_{a,b}(x) = sum x^n / Gamma(b + a n)`
//! and its derivatives on the real line.
//!
//! On the negative half-line with `0 < a < 1` three methods compete: the
//! algebraic asymptotic expansion at optimal truncation, the double-precision
//! series and the double-double series. The one with the smallest error
//! estimate wins. Everywhere else the series is used, log-scaled so that large
//! positive arguments report overflow instead of returning infinity.

use crate::error::{domain, Error, Result};
use crate::eval::{EvalResult, Method};
use crate::gamma::{is_pole, log_abs_gamma, recip_gamma};
use crate::quad::Quadrature;
use crate::series::{self, ln_recip_gamma_envelope, Kind, Precision, Scaled};
use crate::wright::{self, WrightParams};

/// Parameters `(alpha, beta)` of `E_{alpha,beta}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MlParams {
    pub alpha: f64,
    pub beta: f64,
}

impl MlParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return domain(format!("alpha must be finite and >= 0, got {alpha}"));
        }
        if !beta.is_finite() {
            return domain(format!("beta must be finite, got {beta}"));
        }
        Ok(MlParams { alpha, beta })
    }

    /// `E_alpha = E_{alpha,1}`.
    pub fn classical(alpha: f64) -> Result<Self> {
        MlParams::new(alpha, 1.0)
    }
}

const ACCEPT_REL: f64 = 1e-14;

fn check(p: MlParams, x: f64) -> Result<()> {
    MlParams::new(p.alpha, p.beta)?;
    if !x.is_finite() {
        return domain(format!("argument must be finite, got {x}"));
    }
    Ok(())
}

fn falling_factorial(n: f64, k: u8) -> f64 {
    (0..k).map(|j| n - f64::from(j)).product()
}

fn better(a: EvalResult, b: EvalResult) -> EvalResult {
    if b.abs_err < a.abs_err {
        b
    } else {
        a
    }
}

/// Evaluates `E_{alpha,beta}(x)`.
pub fn ml_eval(p: MlParams, x: f64) -> Result<EvalResult> {
    ml_eval_order(p, x, 0)
}

/// `d^order/dx^order E_{alpha,beta}(x)` for order in 1..=4, from the
/// term-wise differentiated series or expansion.
pub fn ml_derivative(p: MlParams, x: f64, order: u8) -> Result<EvalResult> {
    if !(1..=4).contains(&order) {
        return domain(format!("derivative order must be in 1..=4, got {order}"));
    }
    if p.alpha <= 0.0 {
        return domain("derivatives need alpha > 0");
    }
    ml_eval_order(p, x, order)
}

fn ml_eval_order(p: MlParams, x: f64, order: u8) -> Result<EvalResult> {
    check(p, x)?;
    let (a, b) = (p.alpha, p.beta);
    if a == 0.0 {
        if x >= 1.0 {
            return domain(format!("E_0 is only defined for x < 1, got {x}"));
        }
        let k = f64::from(order);
        let fact: f64 = (1..=order).map(f64::from).product();
        let v = fact * recip_gamma(b) / (1.0 - x).powf(k + 1.0);
        return Ok(EvalResult::exact(v, Method::ClosedForm));
    }
    if a == 1.0 && b == 1.0 {
        let v = x.exp();
        if v.is_infinite() {
            return Err(Error::Overflow(format!("exp({x})")));
        }
        return Ok(EvalResult::exact(v, Method::ClosedForm));
    }
    if x > 0.0 && x.ln() / a > 750f64.ln() {
        return Err(Error::Overflow(format!(
            "E_({a},{b}) at x = {x} exceeds the double range"
        )));
    }

    let mut best: Option<EvalResult> = None;
    if x < 0.0 && a < 1.0 {
        if let Ok(r) = asymptotic_optimal(p, x, order) {
            if r.rel_err() <= 1e-15 {
                return Ok(r);
            }
            best = Some(r);
        }
    }
    for (prec, method) in [
        (Precision::F64, Method::Series),
        (Precision::Dd, Method::ExtendedSeries),
    ] {
        // the series loses about |x|^(1/alpha) nats to cancellation
        let lost = x.abs().powf(1.0 / a);
        let digits = if prec == Precision::F64 { 36.0 } else { 74.0 };
        if x < 0.0 && best.is_some() && lost > digits {
            continue;
        }
        match series::sum(Kind::Ml(order), a, b, x, prec) {
            Ok(s) => {
                // on the negative axis an infinite series value only means
                // the cancellation is out of reach
                let r = match finite(&s, method, a, b, x) {
                    Ok(r) => r,
                    Err(e) if x > 0.0 || best.is_none() => return Err(e),
                    Err(_) => continue,
                };
                best = Some(match best {
                    Some(prev) => better(prev, r),
                    None => r,
                });
                if r.rel_err() <= ACCEPT_REL {
                    break;
                }
            }
            Err(e) => {
                if best.is_none() && prec == Precision::Dd {
                    return Err(e);
                }
            }
        }
    }
    best.ok_or_else(|| Error::Accuracy {
        what: format!("E_({a},{b}) at x = {x}"),
        value: f64::NAN,
        abs_err: f64::INFINITY,
    })
}

fn finite(s: &Scaled, method: Method, a: f64, b: f64, x: f64) -> Result<EvalResult> {
    let r = EvalResult::from_scaled(s, method);
    if r.value.is_infinite() {
        return Err(Error::Overflow(format!(
            "E_({a},{b}) at x = {x} exceeds the double range"
        )));
    }
    Ok(r)
}

// ln |k-th derivative of the n-th expansion term| upper bound
fn asym_envelope(p: MlParams, lx: f64, n: usize, order: u8) -> f64 {
    let nf = n as f64;
    let ff = falling_factorial(-nf, order).abs();
    ff.ln() - (nf + f64::from(order)) * lx + ln_recip_gamma_envelope(p.beta - p.alpha * nf)
}

// the expansion truncated just before its smallest term
fn asymptotic_optimal(p: MlParams, x: f64, order: u8) -> Result<EvalResult> {
    let lx = x.abs().ln();
    let mut best_n = 1;
    let mut best_e = asym_envelope(p, lx, 1, order);
    let first = best_e;
    let mut n = 2;
    while n <= 600 {
        let e = asym_envelope(p, lx, n, order);
        if e < best_e {
            best_e = e;
            best_n = n;
            if e < first - 45.0 {
                // negligible already; further terms only risk overflow
                break;
            }
        } else if e > best_e + 5.0 {
            break;
        }
        n += 1;
    }
    let (v, abs_err) = asymptotic_sum(p, x, best_n - 1, order);
    let err = abs_err + 2.0 * best_e.exp();
    Ok(EvalResult {
        value: v,
        abs_err: err,
        method: Method::Asymptotic,
    })
}

// -sum_{n=1}^{nterms} d^k/dx^k x^{-n} / Gamma(beta - alpha n), with its rounding error
fn asymptotic_sum(p: MlParams, x: f64, nterms: usize, order: u8) -> (f64, f64) {
    let mut sum = 0.0;
    let mut abs = 0.0;
    for n in 1..=nterms {
        let nf = n as f64;
        let a = p.beta - p.alpha * nf;
        if is_pole(a) {
            continue;
        }
        let (lg, sg) = log_abs_gamma(a);
        let ff = falling_factorial(-nf, order);
        let k = -nf - f64::from(order);
        let sx = if k.rem_euclid(2.0) == 1.0 { -1.0 } else { 1.0 };
        let t = -f64::from(sg) * ff.signum() * sx * (ff.abs().ln() - lg + k * x.abs().ln()).exp();
        sum += t;
        abs += t.abs() * (4.0 + nf);
    }
    (sum, abs * f64::EPSILON * 4.0)
}

/// The algebraic expansion `-sum_{n=1}^{nterms} x^{-n} / Gamma(beta - alpha n)`
/// for `x <= -8`, `0 < alpha < 1`.
///
/// `abs_err` is the envelope of the first neglected term that is not
/// identically zero.
pub fn ml_asymptotic_negative(p: MlParams, x: f64, nterms: usize) -> Result<EvalResult> {
    check(p, x)?;
    if !(p.alpha > 0.0 && p.alpha < 1.0) {
        return domain(format!("expansion needs 0 < alpha < 1, got {}", p.alpha));
    }
    if x > -8.0 {
        return Err(Error::Regime(format!("expansion needs x <= -8, got {x}")));
    }
    if nterms == 0 {
        return domain("nterms must be at least 1");
    }
    let (value, round) = asymptotic_sum(p, x, nterms, 0);
    // a coefficient near a pole of Gamma is small by accident, not because
    // the remainder is; bound it by its envelope
    let lx = x.abs().ln();
    let next = (nterms + 1..nterms + 64)
        .find(|&n| !is_pole(p.beta - p.alpha * n as f64))
        .map_or(0.0, |n| asym_envelope(p, lx, n, 0).exp());
    let abs_err = next + round;
    if abs_err >= 0.5 * value.abs() {
        return Err(Error::Regime(format!(
            "{nterms} terms at x = {x} cannot resolve the value (remainder {abs_err:e})"
        )));
    }
    Ok(EvalResult {
        value,
        abs_err,
        method: Method::Asymptotic,
    })
}

/// `E_{alpha,beta}(x)` for `x <= 0` through its Laplace representation
/// `int_0^inf phi(-alpha, beta - alpha, -u) e^{x u} du`; needs
/// `0 < alpha < 1`, `beta >= alpha`.
///
/// Slow; meant as an independent cross-check of [`ml_eval`].
pub fn ml_eval_laplace(p: MlParams, x: f64) -> Result<EvalResult> {
    check(p, x)?;
    if !(p.alpha > 0.0 && p.alpha < 1.0) || p.beta < p.alpha || x > 0.0 {
        return domain("Laplace representation needs 0 < alpha < 1, beta >= alpha, x <= 0");
    }
    let wp = WrightParams::new(-p.alpha, p.beta - p.alpha)?;
    let (v, e) = wright::laplace_transform(wp, -x, Quadrature::with_tol(0.0, 1e-12))?;
    Ok(EvalResult {
        value: v,
        abs_err: e,
        method: Method::LaplaceQuadrature,
    })
}
