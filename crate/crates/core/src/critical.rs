//! The critical parameter `alpha*` where log-concavity of the Mittag-Leffler
//! density is lost, and its analogue `alpha*(beta)` for fixed `beta`.

use std::fmt::Write as _;

use crate::error::{domain, Result};
use crate::gamma::{gamma, recip_gamma};
use crate::roots::find_root;

/// Outcome of a critical-parameter solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalResult {
    pub alpha_star: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
    pub iterations: usize,
    /// Set when the value is fixed by convention (`beta = 0` or `beta >= 1`)
    /// rather than solved.
    pub by_convention: bool,
}

/// `rho(alpha) = 1/Gamma(1-2a)^2 - 1/(Gamma(1-a) Gamma(1-3a))`.
pub fn rho_of_alpha(alpha: f64) -> f64 {
    let r = recip_gamma(1.0 - 2.0 * alpha);
    r * r - recip_gamma(1.0 - alpha) * recip_gamma(1.0 - 3.0 * alpha)
}

/// The same quantity written as `1/Gamma(1-2a)^2` times a factor that
/// increases from 0 to 3/2 on `(2/3, 1)`; undefined at `a = 1/2`.
pub fn rho_factorized(alpha: f64) -> (f64, f64) {
    let a = alpha;
    let r = recip_gamma(1.0 - 2.0 * a);
    let g = gamma(2.0 * (1.0 - a));
    let ratio = (3.0 * a - 1.0) * (3.0 * a - 2.0) * g * g
        / ((2.0 * a - 1.0).powi(2) * gamma(1.0 - a) * gamma(3.0 * (1.0 - a)));
    (r * r * (1.0 - ratio), ratio)
}

/// `1/Gamma(b-a)^2 - 1/(Gamma(b) Gamma(b-2a))`.
pub fn rho_of_alpha_beta(alpha: f64, beta: f64) -> f64 {
    let r = recip_gamma(beta - alpha);
    r * r - recip_gamma(beta) * recip_gamma(beta - 2.0 * alpha)
}

const XTOL: f64 = 1e-13;

/// Unique root of [`rho_of_alpha`] on `(2/3, 1)`.
pub fn solve_alpha_star() -> Result<CriticalResult> {
    let (lo, hi) = (2.0 / 3.0 + 1e-6, 1.0 - 1e-9);
    let r = find_root(rho_of_alpha, lo, hi, XTOL, 200)?;
    Ok(CriticalResult {
        alpha_star: r.x,
        bracket: (r.lo, r.hi),
        residual: r.residual,
        iterations: r.iterations,
        by_convention: false,
    })
}

/// Unique root in `alpha` of [`rho_of_alpha_beta`] on `((beta+1)/2, 1)`.
///
/// `beta = 0` and `beta >= 1` return 1 by convention.
pub fn solve_alpha_star_beta(beta: f64) -> Result<CriticalResult> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return domain(format!("beta must be finite and >= 0, got {beta}"));
    }
    if beta == 0.0 || beta >= 1.0 {
        return Ok(CriticalResult {
            alpha_star: 1.0,
            bracket: (1.0, 1.0),
            residual: 0.0,
            iterations: 0,
            by_convention: true,
        });
    }
    let (lo, hi) = (0.5 * (beta + 1.0), 1.0);
    let r = find_root(|a| rho_of_alpha_beta(a, beta), lo, hi, XTOL, 200)?;
    Ok(CriticalResult {
        alpha_star: r.x,
        bracket: (r.lo, r.hi),
        residual: r.residual,
        iterations: r.iterations,
        by_convention: false,
    })
}

/// `rho` on the uniform grid `i / (n + 1)`, `i = 1..=n`.
pub fn rho_curve(npoints: usize) -> Result<Vec<(f64, f64)>> {
    if npoints < 2 {
        return domain(format!("rho curve needs at least 2 points, got {npoints}"));
    }
    let h = 1.0 / (npoints + 1) as f64;
    Ok((1..=npoints)
        .map(|i| {
            let a = i as f64 * h;
            (a, rho_of_alpha(a))
        })
        .collect())
}

/// CSV with header `alpha,rho` and 17 significant digits.
pub fn rho_curve_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("alpha,rho\n");
    for (a, r) in rows {
        let _ = writeln!(out, "{a:.16e},{r:.16e}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_at_one_half() {
        assert!((rho_of_alpha(0.5) - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
    }

    #[test]
    fn conventions() {
        for b in [0.0, 1.0, 2.5] {
            let r = solve_alpha_star_beta(b).unwrap();
            assert!(r.by_convention && r.alpha_star == 1.0);
        }
        assert!(solve_alpha_star_beta(-0.1).is_err());
    }

    #[test]
    fn csv_shape() {
        let rows = rho_curve(3).unwrap();
        let csv = rho_curve_csv(&rows);
        assert!(csv.starts_with("alpha,rho\n"));
        assert_eq!(csv.lines().count(), 4);
        assert!(rho_curve(1).is_err());
    }
}
