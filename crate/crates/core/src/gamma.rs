//! Gamma-function primitives on the whole real line.
//!
//! One Lanczos log-gamma kernel serves `x >= 0.5`; everything left of that goes
//! through the reflection formula with an exact `sin(pi x)`. Arguments within
//! `POLE_SNAP` of a non-positive integer are treated as poles.

use std::f64::consts::PI;

use crate::error::{domain, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Distance from a non-positive integer below which the argument is a pole.
pub const POLE_SNAP: f64 = 1e-12;

/// `true` when `x` is within `POLE_SNAP` of 0, -1, -2, ...
pub fn is_pole(x: f64) -> bool {
    x <= POLE_SNAP && (x - x.round()).abs() <= POLE_SNAP
}

/// `sin(pi x)`, exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let n = x.round();
    let r = x - n;
    if r == 0.0 {
        return 0.0;
    }
    let ar = r.abs();
    let v = if ar <= 0.25 {
        (PI * ar).sin()
    } else {
        (PI * (0.5 - ar)).cos()
    };
    let odd = (n * 0.5).fract() != 0.0;
    if (r < 0.0) != odd {
        -v
    } else {
        v
    }
}

// Lanczos sum and shifted argument for x >= 0.5.
fn lanczos_parts(x: f64) -> (f64, f64) {
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    (a, z + LANCZOS_G + 0.5)
}

fn ln_gamma_pos(x: f64) -> f64 {
    // exact zeros at 1 and 2 keep pochhammer(1, 1) and friends exact
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    let (a, t) = lanczos_parts(x);
    HALF_LN_2PI + (x - 0.5) * t.ln() - t + a.ln()
}

fn gamma_pos(x: f64) -> f64 {
    if x > 171.7 {
        return f64::INFINITY;
    }
    if x.fract() == 0.0 && x <= 23.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    let (a, t) = lanczos_parts(x);
    if x < 140.0 {
        (2.0 * PI).sqrt() * t.powf(x - 0.5) * (-t).exp() * a
    } else {
        // split the power so neither factor overflows
        let h = t.powf(0.5 * (x - 0.5));
        (2.0 * PI).sqrt() * h * ((-t).exp() * h) * a
    }
}

/// `Gamma(x)`; infinite at the poles.
pub fn gamma(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if is_pole(x) {
        return f64::INFINITY;
    }
    if x >= 0.5 {
        return gamma_pos(x);
    }
    let s = sin_pi(x);
    let g = gamma_pos(1.0 - x);
    if g.is_infinite() {
        let (lg, sg) = log_abs_gamma(x);
        return f64::from(sg) * lg.exp();
    }
    PI / (s * g)
}

/// `1 / Gamma(x)`, an entire function: exactly zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if is_pole(x) {
        return 0.0;
    }
    if x >= 0.5 {
        if x < 171.0 {
            return 1.0 / gamma_pos(x);
        }
        return (-ln_gamma_pos(x)).exp();
    }
    let s = sin_pi(x);
    let w = 1.0 - x;
    if w < 171.0 {
        s * gamma_pos(w) / PI
    } else {
        s.signum() * (ln_gamma_pos(w) + s.abs().ln() - LN_PI).exp()
    }
}

/// `(ln |Gamma(x)|, sign Gamma(x))`; `(+inf, 0)` at the poles.
pub fn log_abs_gamma(x: f64) -> (f64, i8) {
    if !x.is_finite() {
        return (f64::NAN, 0);
    }
    if is_pole(x) {
        return (f64::INFINITY, 0);
    }
    if x >= 0.5 {
        return (ln_gamma_pos(x), 1);
    }
    let s = sin_pi(x);
    let sign = if s < 0.0 { -1 } else { 1 };
    (LN_PI - s.abs().ln() - ln_gamma_pos(1.0 - x), sign)
}

/// Pochhammer symbol `(a)_s = Gamma(a + s) / Gamma(a)` for `a > 0`.
pub fn pochhammer(a: f64, s: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return domain(format!("pochhammer needs a > 0, got a = {a}"));
    }
    if !s.is_finite() {
        return domain(format!("pochhammer needs finite s, got s = {s}"));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let b = a + s;
    if is_pole(b) {
        return domain(format!("a + s = {b} is a pole of Gamma"));
    }
    // short integer steps are exact products
    if s.fract() == 0.0 && s > 0.0 && s <= 64.0 {
        let mut p = 1.0;
        let mut k = 0.0;
        while k < s {
            p *= a + k;
            k += 1.0;
        }
        return Ok(p);
    }
    if a < 170.0 && b < 170.0 && b > -170.0 {
        return Ok(gamma(b) / gamma(a));
    }
    let (lb, sb) = log_abs_gamma(b);
    let (la, _) = log_abs_gamma(a);
    Ok(f64::from(sb) * (lb - la).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn reciprocal_at_simple_points() {
        assert_eq!(recip_gamma(1.0), 1.0);
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(-3.0), 0.0);
        let want = -1.0 / (2.0 * PI.sqrt());
        assert!(close(recip_gamma(-0.5), want, 1e-14));
    }

    #[test]
    fn log_abs_gamma_examples() {
        assert_eq!(log_abs_gamma(2.0), (0.0, 1));
        let (l, s) = log_abs_gamma(0.5);
        assert_eq!(s, 1);
        assert!(close(l, 0.5 * LN_PI, 1e-14));
        let (l, s) = log_abs_gamma(-1.5);
        assert_eq!(s, 1);
        assert!(close(l, (4.0 * PI.sqrt() / 3.0).ln(), 1e-13));
        assert_eq!(log_abs_gamma(-4.0), (f64::INFINITY, 0));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(pochhammer(0.75, 0.0).unwrap(), 1.0);
        assert!(close(pochhammer(1.0, 0.5).unwrap(), PI.sqrt() / 2.0, 1e-14));
        assert!(pochhammer(0.0, 1.0).is_err());
        assert!(pochhammer(-1.0, 1.0).is_err());
    }

    #[test]
    fn huge_arguments_stay_finite_in_log_form() {
        let (l, s) = log_abs_gamma(1000.0);
        assert_eq!(s, 1);
        // ln 999! from Stirling: 5905.220423209181...
        assert!(close(l, 5905.220_423_209_181, 1e-14));
        assert!(recip_gamma(200.0) >= 0.0 && recip_gamma(200.0) < 1e-300);
        let want = {
            let (b, _) = crate::dd::Dd::from_f64(302.5).ln_abs_gamma();
            let (a, _) = crate::dd::Dd::from_f64(300.0).ln_abs_gamma();
            (b - a).to_f64().exp()
        };
        assert!(close(pochhammer(300.0, 2.5).unwrap(), want, 1e-12));
    }

    #[test]
    fn sin_pi_is_exact_at_integers_and_half_integers() {
        assert_eq!(sin_pi(5.0), 0.0);
        assert_eq!(sin_pi(-2.0), 0.0);
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert_eq!(sin_pi(-0.5), -1.0);
    }
}
