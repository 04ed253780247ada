//! The Wright function `phi(rho, beta, z) = sum z^n / (n! Gamma(beta + rho n))`.
//!
//! For `rho = -alpha` in `(-1, 0)` and `z = -x < 0` the series cancels badly:
//! its largest term is about `exp(B x^q)` while the sum is about
//! `exp(-B x^q)`, with `q = 1 / (1 - alpha)` and
//! `B = (1 - alpha) alpha^(alpha / (1 - alpha))`. The evaluator therefore
//! escalates
//!
//! 1. double-precision series while the cancellation stays below `1e3`,
//! 2. double-double series up to `x_asym`, where it reaches `1e12`,
//! 3. quadrature of the Hankel integral along its steepest-descent contour
//!    beyond `x_asym`.
//!
//! The contour rescales `t = t0 s` with saddle `t0 = (alpha x)^q` and follows
//! `s = r(theta) e^{i theta}`, `r^(1-alpha) = sin(alpha theta) / (alpha sin theta)`,
//! on which the exponent is real. The remaining integral over `(0, pi)` is
//! smooth and positive-weighted, valid for every real `beta`, and returned
//! with the factor `exp(-B x^q)` split off.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::eval::{EvalResult, Method};
use crate::mittag_leffler::{ml_eval, MlParams};
use crate::quad::Quadrature;
use crate::series::{self, Kind, Precision, Scaled};

/// Parameters `(rho, beta)` of `phi(rho, beta, .)`, with `rho > -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WrightParams {
    pub rho: f64,
    pub beta: f64,
}

impl WrightParams {
    pub fn new(rho: f64, beta: f64) -> Result<Self> {
        if !rho.is_finite() || rho <= -1.0 {
            return domain(format!("rho must be finite and > -1, got {rho}"));
        }
        if !beta.is_finite() {
            return domain(format!("beta must be finite, got {beta}"));
        }
        Ok(WrightParams { rho, beta })
    }

    /// `rho` in `(-1, 0]` and `beta >= 0`: `x -> phi(rho, beta, -x)` is then a
    /// positive, integrable function.
    pub fn is_probabilistic(&self) -> bool {
        self.rho > -1.0 && self.rho <= 0.0 && self.beta >= 0.0
    }

    fn second_kind(&self) -> bool {
        self.rho > -1.0 && self.rho < 0.0
    }

    /// The same `rho` with `beta` shifted by `k rho`.
    pub fn shifted(&self, k: i32) -> WrightParams {
        WrightParams {
            rho: self.rho,
            beta: self.beta + f64::from(k) * self.rho,
        }
    }
}

/// Exponential rate `B(alpha) = (1 - alpha) alpha^(alpha / (1 - alpha))`.
pub fn decay_rate(alpha: f64) -> f64 {
    (1.0 - alpha) * alpha.powf(alpha / (1.0 - alpha))
}

/// Point where the series cancellation `exp(2 B x^q)` reaches `1e12`.
pub fn x_asym(alpha: f64) -> f64 {
    (1e12f64.ln() / (2.0 * decay_rate(alpha))).powf(1.0 - alpha)
}

// cancellation exponent 2 B x^q of the series at x
fn cancellation(alpha: f64, x: f64) -> f64 {
    2.0 * decay_rate(alpha) * x.powf(1.0 / (1.0 - alpha))
}

const ACCEPT_REL: f64 = 1e-13;

fn pick(a: Option<(Scaled, Method)>, b: (Scaled, Method)) -> (Scaled, Method) {
    match a {
        Some(a) if a.0.abs_err() <= b.0.abs_err() => a,
        _ => b,
    }
}

/// Best available value of `phi(rho, beta, z)` as `m * exp(ln_scale)`.
///
/// Never fails for lack of accuracy; the error estimate says how good the
/// value is. This is the entry point for code that works near zeros of the
/// function, where no relative accuracy can be certified.
pub fn wright_eval_scaled(p: WrightParams, z: f64) -> Result<(Scaled, Method)> {
    let p = WrightParams::new(p.rho, p.beta)?;
    if !z.is_finite() {
        return domain(format!("argument must be finite, got {z}"));
    }
    let contour_ok = p.second_kind() && z < 0.0;
    if contour_ok {
        let x = -z;
        let alpha = -p.rho;
        let c = cancellation(alpha, x);
        if c > 1e12f64.ln() {
            return Ok((contour(alpha, p.beta, x)?, Method::ContourQuadrature));
        }
        let mut best = None;
        if c <= 1e3f64.ln() {
            let s = series::sum(Kind::Wright, p.rho, p.beta, z, Precision::F64)?;
            if s.rel_err() <= ACCEPT_REL {
                return Ok((s, Method::Series));
            }
            best = Some((s, Method::Series));
        }
        let s = series::sum(Kind::Wright, p.rho, p.beta, z, Precision::Dd)?;
        if s.rel_err() <= ACCEPT_REL {
            return Ok((s, Method::ExtendedSeries));
        }
        let best = pick(best, (s, Method::ExtendedSeries));
        return match contour(alpha, p.beta, x) {
            Ok(c) => Ok(pick(Some(best), (c, Method::ContourQuadrature))),
            Err(_) => Ok(best),
        };
    }
    let s = series::sum(Kind::Wright, p.rho, p.beta, z, Precision::F64)?;
    if s.rel_err() <= ACCEPT_REL {
        return Ok((s, Method::Series));
    }
    let d = series::sum(Kind::Wright, p.rho, p.beta, z, Precision::Dd)?;
    Ok(pick(Some((s, Method::Series)), (d, Method::ExtendedSeries)))
}

/// Evaluates `phi(rho, beta, z)`.
///
/// Fails with an accuracy error when no method reaches `1e-6` relative
/// accuracy; the error carries the best value found.
pub fn wright_eval(p: WrightParams, z: f64) -> Result<EvalResult> {
    let (s, m) = wright_eval_scaled(p, z)?;
    let r = EvalResult::from_scaled(&s, m);
    if r.value.is_infinite() {
        return Err(Error::Overflow(format!(
            "phi({}, {}, {z}) exceeds the double range",
            p.rho, p.beta
        )));
    }
    if !(r.rel_err() <= 1e-6) {
        return Err(Error::Accuracy {
            what: format!("phi({}, {}, {z})", p.rho, p.beta),
            value: r.value,
            abs_err: r.abs_err,
        });
    }
    Ok(r)
}

/// `d^order/dx^order phi(rho, beta, -x)` at `x = -z`, which is
/// `(-1)^order phi(rho, beta + order rho, z)`.
pub fn wright_deriv_shift(p: WrightParams, z: f64, order: u8) -> Result<EvalResult> {
    if !(p.rho > -1.0 && p.rho < 0.0) {
        return domain(format!("shift rule needs -1 < rho < 0, got {}", p.rho));
    }
    if z > 0.0 {
        return domain(format!("shift rule needs z <= 0, got {z}"));
    }
    if !(1..=3).contains(&order) {
        return domain(format!("order must be in 1..=3, got {order}"));
    }
    let mut r = wright_eval(p.shifted(i32::from(order)), z)?;
    if order % 2 == 1 {
        r.value = -r.value;
    }
    Ok(r)
}

// zeta(2k) / pi^(2k) for k = 1, 2, ...
const ZETA_OVER_PI: [f64; 20] = [
    0.166_666_666_666_666_67,
    0.011_111_111_111_111_111,
    0.001_058_201_058_201_058_2,
    0.000_105_820_105_820_105_82,
    1.068_889_957_778_846_7e-5,
    1.082_202_140_403_198_6e-6,
    1.096_297_392_593_688_9e-7,
    1.110_730_439_498_984e-8,
    1.125_392_325_840_449_6e-9,
    1.140_257_560_229_609_1e-10,
    1.155_321_629_950_131_2e-11,
    1.170_585_340_991_244_2e-12,
    1.186_050_870_011_682_7e-13,
    1.201_720_766_665_385_3e-14,
    1.217_597_701_459_168_4e-15,
    1.233_684_402_258_603_7e-16,
    1.249_983_638_561_040_4e-17,
    1.266_498_217_870_317_4e-18,
    1.283_230_985_141_314_3e-19,
    1.300_184_823_006_863_7e-20,
];

// ln(sin u / u) for 0 <= u < pi
fn ln_sinc(u: f64) -> f64 {
    if u < 1.0 {
        let u2 = u * u;
        let mut p = u2;
        let mut s = 0.0;
        for (k, c) in ZETA_OVER_PI.iter().enumerate() {
            s -= c * p / (k + 1) as f64;
            p *= u2;
        }
        s
    } else {
        (u.sin() / u).ln()
    }
}

// (1 - a^m) / (1 - a) without cancellation
fn geometric(a: f64, m: usize) -> f64 {
    let mut s = 0.0;
    let mut p = 1.0;
    for _ in 0..m {
        s += p;
        p *= a;
    }
    s
}

struct Contour {
    alpha: f64,
}

impl Contour {
    // (ln r, r'/r) at theta in (0, pi)
    fn radius(&self, th: f64) -> (f64, f64) {
        let a = self.alpha;
        if th < 1.0 {
            let t2 = th * th;
            let mut p = t2;
            let mut lr = 0.0;
            let mut dr = 0.0;
            for (k, c) in ZETA_OVER_PI.iter().enumerate() {
                let g = geometric(a, 2 * (k + 1));
                lr += c * g * p / (k + 1) as f64;
                dr += 2.0 * c * g * p / th;
                p *= t2;
            }
            (lr, dr)
        } else {
            let lr = (ln_sinc(a * th) - ln_sinc(th)) / (1.0 - a);
            let dr = (a / (a * th).tan() - 1.0 / th.tan()) / (1.0 - a);
            (lr, dr)
        }
    }

    // h(theta) - h(0), the real exponent relative to the saddle
    fn dh(&self, th: f64, lr: f64) -> f64 {
        let a = self.alpha;
        let w = lr + ln_sinc((1.0 - a) * th) - ln_sinc(a * th);
        -((1.0 - a) / a) * w.exp_m1()
    }
}

/// `phi(-alpha, beta, -x)` for `x > 0` by steepest-descent quadrature.
pub fn contour(alpha: f64, beta: f64, x: f64) -> Result<Scaled> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return domain(format!("contour needs 0 < alpha < 1, got {alpha}"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("contour needs finite x > 0, got {x}"));
    }
    let q = 1.0 / (1.0 - alpha);
    let t0 = (alpha * x).powf(q);
    let h0 = -(1.0 - alpha) / alpha;
    let c = Contour { alpha };
    let nb = 1.0 - beta;
    let f = |th: f64| {
        let (lr, dr) = c.radius(th);
        let e = t0 * c.dh(th, lr) + nb * lr;
        if e < -745.0 {
            return 0.0;
        }
        e.exp() * (dr * (nb * th).sin() + (nb * th).cos()) / PI
    };
    let w = (1.0 / (t0 * (1.0 - alpha)).sqrt()).min(PI / 4.0);
    let mut breaks = vec![0.0];
    let mut b = w;
    while b < 0.9 * PI {
        breaks.push(b);
        b *= 2.0;
    }
    if t0 < 1.0 {
        let mut gap = 0.1 * PI;
        while gap > 1e-12 {
            breaks.push(PI - gap);
            gap *= 0.1;
        }
    }
    breaks.push(PI);
    let quad = Quadrature {
        abs_tol: 1e-16 * w,
        rel_tol: 5e-14,
        max_intervals: 2000,
    };
    let (m, err) = match quad.integrate_breaks(f, &breaks) {
        Ok(r) => (r.value, r.abs_err),
        Err(Error::Quadrature { value, abs_err }) if value.is_finite() => (value, abs_err),
        Err(e) => return Err(e),
    };
    Ok(Scaled {
        m,
        err: err + 4.0 * f64::EPSILON * m.abs(),
        ln_scale: nb * t0.ln() + t0 * h0,
    })
}

// next-order relative correction of the saddle-point approximation
fn saddle_correction(alpha: f64, beta: f64) -> f64 {
    let a = alpha;
    let d = 1.0 - a;
    -beta * (beta + 1.0) / (2.0 * d) - beta * (a - 2.0) / (2.0 * d)
        + (a - 2.0) * (a - 3.0) / (8.0 * d)
        - 5.0 * (a - 2.0) * (a - 2.0) / (24.0 * d)
}

/// Leading saddle-point term of `phi(-alpha, beta, -x)` for `x >= x_asym`:
/// `t0^(1/2 - beta) exp(-B x^q) / sqrt(2 pi (1 - alpha))`.
///
/// `abs_err` is the size of the next correction, `|C1| / t0` relative.
pub fn wright_asymptotic(p: WrightParams, x: f64) -> Result<EvalResult> {
    if !p.second_kind() {
        return domain(format!("expansion needs -1 < rho < 0, got {}", p.rho));
    }
    let alpha = -p.rho;
    let xa = x_asym(alpha);
    if !(x >= xa) {
        return Err(Error::Regime(format!(
            "expansion needs x >= x_asym = {xa}, got {x}"
        )));
    }
    let q = 1.0 / (1.0 - alpha);
    let t0 = (alpha * x).powf(q);
    let ln_v = (0.5 - p.beta) * t0.ln()
        - decay_rate(alpha) * x.powf(q)
        - 0.5 * (2.0 * PI * (1.0 - alpha)).ln();
    let value = ln_v.exp();
    let c1 = saddle_correction(alpha, p.beta);
    Ok(EvalResult {
        value,
        abs_err: value * (c1.abs() / t0 + 4.0 * f64::EPSILON),
        method: Method::Asymptotic,
    })
}

/// Upper end beyond which `phi(-alpha, beta, -x)` times any weight of at
/// most polynomial growth `x^s` is negligible.
pub(crate) fn negligible_beyond(alpha: f64, beta: f64, s: f64) -> f64 {
    let b = decay_rate(alpha);
    let mut x = (80.0 / b).powf(1.0 - alpha);
    // algebraic prefactor and weight: a few fixed-point steps
    for _ in 0..4 {
        let q = 1.0 / (1.0 - alpha);
        let t0 = (alpha * x).powf(q);
        let extra = ((0.5 - beta) * t0.ln() + s * x.ln()).max(0.0);
        x = ((80.0 + extra) / b).powf(1.0 - alpha);
    }
    x
}

/// `int_0^inf weight(x) phi(-alpha, beta, -x) dx` with its error estimate.
pub fn integrate_weighted<W: Fn(f64) -> f64>(
    p: WrightParams,
    weight: W,
    growth: f64,
    quad: Quadrature,
) -> Result<(f64, f64)> {
    if !p.second_kind() {
        return domain(format!("integral needs -1 < rho < 0, got {}", p.rho));
    }
    let alpha = -p.rho;
    let end = negligible_beyond(alpha, p.beta, growth);
    let f = |x: f64| {
        let v = match wright_eval_scaled(p, -x) {
            Ok((s, _)) => s.value(),
            Err(_) => f64::NAN,
        };
        weight(x) * v
    };
    let breaks: Vec<f64> = [0.0, 1.0 / 64.0, 1.0 / 16.0, 0.125, 0.25, 0.5, 1.0]
        .iter()
        .map(|f| f * end)
        .collect();
    let r = quad.integrate_breaks(f, &breaks)?;
    Ok((r.value, r.abs_err))
}

/// `int_0^inf phi(rho, beta, -x) e^{-t x} dx`.
pub fn laplace_transform(p: WrightParams, t: f64, quad: Quadrature) -> Result<(f64, f64)> {
    if !(t >= 0.0) {
        return domain(format!("Laplace variable must be >= 0, got {t}"));
    }
    integrate_weighted(p, |x| (-t * x).exp(), 0.0, quad)
}

/// Both sides of `int_0^inf phi(-alpha, beta, -x) e^{-t x} dx = E_{alpha, beta+alpha}(-t)`.
pub fn laplace_identity_check(p: WrightParams, t: f64) -> Result<(f64, f64)> {
    if !p.second_kind() || p.beta < 0.0 {
        return domain("identity needs -1 < rho < 0 and beta >= 0");
    }
    if !(t > 0.0) {
        return domain(format!("t must be > 0, got {t}"));
    }
    let (lhs, _) = laplace_transform(p, t, Quadrature::with_tol(0.0, 1e-11))?;
    let alpha = -p.rho;
    let rhs = ml_eval(MlParams::new(alpha, p.beta + alpha)?, -t)?.value;
    Ok((lhs, rhs))
}
