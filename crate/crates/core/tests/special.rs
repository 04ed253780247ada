mod common;

use std::f64::consts::PI;

use common::{rel, ML, WRIGHT};
use wrightml::mittag_leffler::ml_eval_laplace;
use wrightml::quad::Quadrature;
use wrightml::wright::{self, wright_asymptotic, x_asym};
use wrightml::*;

#[test]
fn reciprocal_gamma_examples() {
    assert_eq!(recip_gamma(1.0), 1.0);
    assert_eq!(recip_gamma(0.0), 0.0);
    assert!((recip_gamma(-0.5) + 0.5 / PI.sqrt()).abs() < 1e-15);
}

#[test]
fn log_gamma_examples() {
    assert_eq!(log_abs_gamma(2.0), (0.0, 1));
    let (l, s) = log_abs_gamma(0.5);
    assert!((l - 0.5 * PI.ln()).abs() < 1e-15 && s == 1);
    let (l, s) = log_abs_gamma(-1.5);
    assert!((l - (4.0 * PI.sqrt() / 3.0).ln()).abs() < 1e-14 && s == 1);
}

#[test]
fn pochhammer_examples() {
    assert_eq!(pochhammer(1.0, 1.0).unwrap(), 1.0);
    assert!((pochhammer(1.0, 0.5).unwrap() - PI.sqrt() / 2.0).abs() < 1e-15);
    assert_eq!(pochhammer(0.75, 0.0).unwrap(), 1.0);
}

#[test]
fn reflection_formula() {
    for i in -160..=160 {
        let x = i as f64 / 20.0 + 0.013;
        let lhs = recip_gamma(x) * recip_gamma(1.0 - x);
        let rhs = (PI * x).sin() / PI;
        assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "{x}");
    }
}

#[test]
fn reciprocal_gamma_is_continuous_through_poles() {
    let mut fact = 1.0;
    for n in 0..=5 {
        if n > 0 {
            fact *= n as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        for d in [-1e-8, 1e-8] {
            let lead = sign * fact * d;
            assert!(rel(recip_gamma(-(n as f64) + d), lead) < 1e-6, "{n} {d}");
        }
    }
}

#[test]
fn pochhammer_matches_products() {
    for a in [0.25, 0.5, 1.0, 3.7, 7.5, 40.0] {
        let mut prod = 1.0;
        for m in 0..=12 {
            let p = pochhammer(a, m as f64).unwrap();
            assert!(rel(p, prod) < 1e-12, "({a}, {m})");
            prod *= a + m as f64;
        }
    }
}

#[test]
fn mittag_leffler_reference_values() {
    for &(a, b, x, v) in &ML {
        let r = ml_eval(MlParams::new(a, b).unwrap(), x).unwrap();
        assert!(rel(r.value, v) < 1e-12, "E_({a},{b})({x}) = {r:?}, want {v}");
        assert!((r.value - v).abs() <= 10.0 * r.abs_err + 1e-15 * v.abs(), "{r:?}");
    }
}

#[test]
fn mittag_leffler_derivative_reference() {
    let r = ml_derivative(MlParams::new(0.7, 1.0).unwrap(), -5.0, 1).unwrap();
    assert!(rel(r.value, 0.017430177381651610023) < 1e-12, "{r:?}");
}

#[test]
fn derivative_coefficients_at_zero() {
    let p = MlParams::new(0.5, 1.0).unwrap();
    assert!((ml_derivative(p, 0.0, 1).unwrap().value - 2.0 / PI.sqrt()).abs() < 1e-15);
    assert!((ml_derivative(p, 0.0, 2).unwrap().value - 2.0).abs() < 1e-14);
    assert!(ml_derivative(p, 0.0, 5).is_err());
}

#[test]
fn asymptotic_expansion_examples() {
    let p = MlParams::new(0.5, 1.0).unwrap();
    let r = ml_asymptotic_negative(p, -25.0, 3).unwrap();
    assert!(rel(r.value, 0.0225495724326413589436) < 5e-4, "{r:?}");
    let r = ml_asymptotic_negative(p, -100.0, 1).unwrap();
    assert!((r.value - 0.01 / PI.sqrt()).abs() < 1e-17);
    // the even terms vanish at alpha = 1/2
    let two = ml_asymptotic_negative(p, -100.0, 2).unwrap();
    assert_eq!(two.value, r.value);
}

#[test]
fn series_and_expansion_agree_on_the_overlap() {
    for a in [0.3, 0.5, 0.7, 0.9] {
        for b in [0.5, 1.0, 1.5] {
            let p = MlParams::new(a, b).unwrap();
            for x in [-8.0, -12.0, -16.0, -20.0] {
                let s = ml_eval(p, x).unwrap();
                if let Ok(e) = ml_asymptotic_negative(p, x, 6) {
                    let gap = (s.value - e.value).abs();
                    assert!(gap <= 10.0 * (s.abs_err + e.abs_err), "({a},{b},{x}) {s:?} {e:?}");
                }
            }
        }
    }
}

#[test]
fn recurrence_in_beta() {
    for a in [0.3, 0.6, 0.9, 1.4] {
        for b in [0.4, 1.0, 2.2] {
            for x in [-15.0, -4.0, -0.5, 0.7, 3.0] {
                let lhs = ml_eval(MlParams::new(a, b).unwrap(), x).unwrap().value;
                let next = ml_eval(MlParams::new(a, b + a).unwrap(), x).unwrap().value;
                let rhs = recip_gamma(b) + x * next;
                assert!(rel(lhs, rhs) < 1e-10, "({a},{b},{x}): {lhs} vs {rhs}");
            }
        }
    }
}

#[test]
fn complete_monotonicity_on_the_negative_axis() {
    for (a, b) in [(0.3, 0.5), (0.5, 1.0), (0.8, 0.8), (0.95, 2.0)] {
        let p = MlParams::new(a, b).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=60 {
            let t = if i == 0 { 0.0 } else { 50f64.powf(i as f64 / 60.0) - 1.0 };
            let v = ml_eval(p, -t).unwrap().value;
            assert!(v > 0.0 && v < prev, "({a},{b}) at {t}");
            prev = v;
        }
    }
}

#[test]
fn log_convexity_on_the_line() {
    for a in [0.3, 0.5, 0.7, 0.9] {
        let p = MlParams::classical(a).unwrap();
        for i in 0..=42 {
            let x = -30.0 + 0.75 * i as f64;
            let e0 = ml_eval(p, x).unwrap().value;
            let e1 = ml_derivative(p, x, 1).unwrap().value;
            let e2 = ml_derivative(p, x, 2).unwrap().value;
            assert!(e1 * e1 <= e0 * e2 * (1.0 + 1e-9), "{a} at {x}");
        }
    }
}

#[test]
fn laplace_quadrature_cross_check() {
    for (a, b, x) in [(0.5, 1.0, -1.0), (0.3, 0.7, -4.0), (0.8, 1.5, -0.3)] {
        let p = MlParams::new(a, b).unwrap();
        let s = ml_eval(p, x).unwrap();
        let q = ml_eval_laplace(p, x).unwrap();
        assert!((s.value - q.value).abs() <= 10.0 * (s.abs_err + q.abs_err) + 1e-12);
    }
}

#[test]
fn wright_reference_values() {
    for &(r, b, z, v) in &WRIGHT {
        let e = wright_eval(WrightParams::new(r, b).unwrap(), z).unwrap();
        assert!(rel(e.value, v) < 1e-10, "phi({r},{b},{z}) = {e:?}, want {v}");
    }
}

#[test]
fn wright_examples() {
    let v = wright_eval(WrightParams::new(-0.5, 0.5).unwrap(), 0.0).unwrap().value;
    assert!(rel(v, 1.0 / PI.sqrt()) < 4e-16);
    // J_0(1)
    let v = wright_eval(WrightParams::new(1.0, 1.0).unwrap(), -0.25).unwrap().value;
    assert!((v - 0.765_197_686_557_966_6).abs() < 1e-15);
    let v = wright_eval(WrightParams::new(-0.5, 0.5).unwrap(), -2.0).unwrap();
    assert!((v.value - (-1f64).exp() / PI.sqrt()).abs() <= v.abs_err.max(1e-15));
}

#[test]
fn shift_rule_examples() {
    let d = wright_deriv_shift(WrightParams::new(-0.5, 1.0).unwrap(), 0.0, 1).unwrap();
    assert!((d.value + 1.0 / PI.sqrt()).abs() < 1e-15);
    let p = WrightParams::new(-0.5, 0.5).unwrap();
    let d = wright_deriv_shift(p, -1.0, 1).unwrap();
    assert!((d.value + 0.219_695_644_733_861_2).abs() < 1e-14);
    for x in [0.3, 2.0, 6.0] {
        let two = wright_deriv_shift(p, -x, 2).unwrap().value;
        let once = wright_deriv_shift(p.shifted(1), -x, 1).unwrap().value;
        assert!(rel(two, -once) < 1e-14);
    }
}

#[test]
fn shift_rule_matches_finite_differences() {
    for a in [0.3, 0.5, 0.7, 0.9] {
        for b in [0.0, 0.25, 0.5, 1.0, 1.5] {
            let p = WrightParams::new(-a, b).unwrap();
            for x in [0.5, 1.0, 2.0, 5.0] {
                let f = |x: f64| wright_eval_scaled(p, -x).unwrap().0.value();
                let d = -wright_eval_scaled(p.shifted(1), -x).unwrap().0.value();
                let c = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
                let h = 1e-3 * x.min(1.0 / (d / f(x)).abs());
                let fd = (4.0 * c(h / 2.0) - c(h)) / 3.0;
                assert!(rel(fd, d) < 1e-6, "({a},{b},{x}): {fd} vs {d}");
            }
        }
    }
}

#[test]
fn fractional_integral_identity() {
    let q = Quadrature::with_tol(0.0, 1e-11);
    for (a, b) in [(0.4, 0.8), (0.7, 0.5), (0.5, 1.5)] {
        for x in [0.0, 1.0, 3.0] {
            let shifted = WrightParams::new(-a, b - a).unwrap();
            let f = |t: f64| wright_eval_scaled(shifted, -(x + t)).unwrap().0.value();
            let end = 60.0;
            let r = q.integrate_breaks(f, &[0.0, 1.0, 4.0, 16.0, end]).unwrap();
            let target = wright_eval(WrightParams::new(-a, b).unwrap(), -x).unwrap().value;
            assert!((r.value - target).abs() < 1e-7, "({a},{b},{x}) {} vs {target}", r.value);
        }
    }
}

#[test]
fn densities_integrate_to_one() {
    for (a, b) in [(0.2, 0.3), (0.5, 0.0), (0.75, 1.25), (0.9, 0.1)] {
        let p = WrightParams::new(-a, b).unwrap();
        let (v, _) = wright::laplace_transform(p, 0.0, Quadrature::with_tol(0.0, 1e-11)).unwrap();
        assert!((gamma(a + b) * v - 1.0).abs() < 1e-8, "({a},{b})");
    }
}

#[test]
fn laplace_identity_examples() {
    let (l, r) = wright::laplace_identity_check(WrightParams::new(-0.5, 0.5).unwrap(), 1.0).unwrap();
    assert!((r - 0.427_583_576_155_807).abs() < 1e-14 && (l - r).abs() < 1e-7);
    let (l, r) = wright::laplace_identity_check(WrightParams::new(-0.5, 0.0).unwrap(), 1.0).unwrap();
    assert!((r - 0.136_606_007_391_949_28).abs() < 1e-14 && (l - r).abs() < 1e-7);
    let (l, _) = wright::laplace_identity_check(WrightParams::new(-0.3, 0.4).unwrap(), 1e-9).unwrap();
    assert!((l - recip_gamma(0.7)).abs() < 1e-7);
}

#[test]
fn saddle_point_term() {
    // exact for alpha = beta = 1/2 up to the Gaussian normalization
    let p = WrightParams::new(-0.5, 0.5).unwrap();
    for x in [8.0, 12.0, 20.0] {
        let a = wright_asymptotic(p, x).unwrap();
        let exact = (-x * x / 4.0).exp() / PI.sqrt();
        assert!(rel(a.value, exact) < 1e-14);
    }
    for (a, b) in [(0.4, 0.3), (0.6, 1.2), (0.75, 0.0)] {
        let p = WrightParams::new(-a, b).unwrap();
        let x = 1.5 * x_asym(a);
        let e = wright_asymptotic(p, x).unwrap();
        let s = wright_eval(p, -x).unwrap();
        assert!(e.value > 0.0);
        assert!((e.value - s.value).abs() <= 2.0 * e.abs_err, "({a},{b}) {e:?} {s:?}");
    }
    assert!(matches!(wright_asymptotic(p, 1.0), Err(Error::Regime(_))));
}

#[test]
fn log_derivative_slope() {
    let a: f64 = 0.75;
    let p = WrightParams::new(-a, 0.5).unwrap();
    let q = 1.0 / (1.0 - a);
    let x = 4.0;
    let f = wright_eval_scaled(p, -x).unwrap().0;
    let d = wright_eval_scaled(p.shifted(1), -x).unwrap().0;
    let slope = -d.ratio(&f);
    let lead = -q * wright::decay_rate(a) * x.powf(a / (1.0 - a));
    assert!(rel(slope, lead) < 0.1, "{slope} vs {lead}");
}

#[test]
fn invalid_parameters() {
    assert!(WrightParams::new(-1.0, 0.5).is_err());
    assert!(MlParams::new(-0.1, 1.0).is_err());
    assert!(ml_eval(MlParams::new(0.5, 1.0).unwrap(), f64::NAN).is_err());
    assert!(matches!(
        ml_eval(MlParams::new(0.2, 1.0).unwrap(), 60.0),
        Err(Error::Overflow(_))
    ));
}
