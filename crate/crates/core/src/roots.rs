//! Bracketed root finding and one-dimensional maximization.

use crate::error::{Error, Result};

/// A root together with the final bracket and the work spent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub x: f64,
    pub lo: f64,
    pub hi: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Bisection-safeguarded secant iteration on a sign-changing bracket.
///
/// A secant step is taken whenever it lands strictly inside the bracket and
/// the previous step shrank the bracket by at least half; otherwise the
/// bracket is bisected. Converges whenever `f` is continuous.
pub fn find_root<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<Root> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            lo: a,
            hi: a,
            residual: 0.0,
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            lo: b,
            hi: b,
            residual: 0.0,
            iterations: 0,
        });
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            lo: a,
            hi: b,
            flo: fa,
            fhi: fb,
        });
    }
    let mut prev_width = f64::INFINITY;
    let mut iterations = 0;
    while iterations < max_iter {
        let width = b - a;
        if width <= xtol {
            break;
        }
        iterations += 1;
        let mut c = 0.5 * (a + b);
        if width <= 0.5 * prev_width {
            let s = b - fb * (b - a) / (fb - fa);
            let margin = 1e-3 * width;
            if s > a + margin && s < b - margin {
                c = s;
            }
        }
        prev_width = width;
        let fc = f(c);
        if fc == 0.0 {
            return Ok(Root {
                x: c,
                lo: c,
                hi: c,
                residual: 0.0,
                iterations,
            });
        }
        if fc.is_nan() {
            return Err(Error::Bracket {
                lo: a,
                hi: b,
                flo: fa,
                fhi: fb,
            });
        }
        if fc.signum() == fa.signum() {
            a = c;
            fa = fc;
        } else {
            b = c;
            fb = fc;
        }
    }
    let (x, residual) = if fa.abs() < fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    Ok(Root {
        x,
        lo: a,
        hi: b,
        residual,
        iterations,
    })
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a, b);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..300 {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_root() {
        let r = find_root(|x| x * x * x - 2.0, 0.0, 2.0, 1e-15, 200).unwrap();
        assert!((r.x - 2f64.cbrt()).abs() < 1e-14);
        assert!(r.iterations < 60);
    }

    #[test]
    fn no_sign_change_is_reported() {
        let e = find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 100).unwrap_err();
        assert!(matches!(e, Error::Bracket { .. }));
    }

    #[test]
    fn step_function_still_converges() {
        let r = find_root(|x| if x < 0.3 { -1.0 } else { 1.0 }, 0.0, 1.0, 1e-12, 200).unwrap();
        assert!((r.x - 0.3).abs() < 1e-11);
    }

    #[test]
    fn golden_finds_parabola_top() {
        let (x, fx) = golden_max(|x| -(x - 1.25) * (x - 1.25) + 3.0, 0.0, 4.0, 1e-10);
        assert!((x - 1.25).abs() < 1e-7);
        assert!((fx - 3.0).abs() < 1e-15);
    }
}
