//! Grid verification of shape properties: log-concavity, the Turan
//! inequality, zeros and inflections of Wright functions, reciprocal
//! convexity of Mittag-Leffler functions and multiplicative strong
//! unimodality.
//!
//! Every derivative is an exact parameter shift and every statistic is
//! computed from log-scaled values, so the tolerances come only from the
//! evaluation error estimates.

use rayon::prelude::*;

use crate::distribution::{AdmissiblePair, DensityModel};
use crate::error::{domain, Error, Result};
use crate::gamma::log_abs_gamma;
use crate::mittag_leffler::{ml_derivative, ml_eval, MlParams};
use crate::report::{GridSpec, Property, ScanReport, ZeroReport};
use crate::roots::find_root;
use crate::series::Scaled;
use crate::wright::{negligible_beyond, wright_eval_scaled, x_asym, WrightParams};

const DEFAULT_POINTS: usize = 2000;

/// Linear on `[0, 2 mode + 1]`, geometric beyond, up to where the density
/// is negligible.
pub fn default_grid(p: AdmissiblePair) -> Result<GridSpec> {
    let m = DensityModel::new(p)?;
    let mode = m.find_mode()?.0;
    let end = negligible_beyond(p.alpha, p.beta, 0.0);
    let knee = (2.0 * mode + 1.0).min(0.5 * end);
    Ok(GridSpec::mixed(0.0, knee, end, DEFAULT_POINTS))
}

/// Linear on `[0, x_asym / 4]` and geometric up to `x_asym`.
pub fn shape_grid(alpha: f64, n: usize) -> GridSpec {
    let end = x_asym(alpha);
    GridSpec::mixed(0.0, 0.25 * end, end, n)
}

fn interior(p: AdmissiblePair) -> Result<()> {
    if !(p.alpha > 0.0 && p.alpha < 1.0) {
        return domain(format!("scan needs 0 < alpha < 1, got {}", p.alpha));
    }
    Ok(())
}

// ratio a/b of scaled values with its propagated error
fn ratio(a: &Scaled, b: &Scaled) -> (f64, f64) {
    let rel = |s: &Scaled| if s.err == 0.0 { 0.0 } else { s.rel_err() };
    let r = a.ratio(b);
    (r, r.abs() * (rel(a) + rel(b)))
}

// the density derivatives of orders 0..=2 at x
fn shifts(m: &DensityModel, x: f64) -> Result<[Scaled; 3]> {
    Ok([
        m.derivative_scaled(x, 0)?,
        m.derivative_scaled(x, 1)?,
        m.derivative_scaled(x, 2)?,
    ])
}

fn scan<F>(grid: &GridSpec, f: F) -> Result<Vec<(f64, f64, f64)>>
where
    F: Fn(f64) -> Result<(f64, f64)> + Sync,
{
    grid.validate()?;
    grid.points()
        .par_iter()
        .map(|&x| {
            let (v, e) = f(x)?;
            if v.is_nan() || e.is_nan() {
                return Err(Error::Accuracy {
                    what: format!("scan statistic at x = {x}"),
                    value: v,
                    abs_err: e,
                });
            }
            Ok((x, v, e))
        })
        .collect()
}

// ten times the error estimate at the minimizing sample
fn tolerance(samples: &[(f64, f64, f64)]) -> f64 {
    let mut min = (f64::INFINITY, 0.0);
    for s in samples {
        if s.1 < min.0 {
            min = (s.1, s.2);
        }
    }
    10.0 * min.1
}

/// Checks `-(log phi)'' = (phi'/phi)^2 - phi''/phi >= 0` on the grid.
pub fn logconcavity_scan(p: AdmissiblePair, grid: GridSpec) -> Result<ScanReport> {
    interior(p)?;
    let m = DensityModel::new(p)?;
    let samples = scan(&grid, |x| {
        let [f0, f1, f2] = shifts(&m, x)?;
        if f0.m == 0.0 {
            // phi(0) = 0 when beta = 0, and -(log phi)'' blows up there
            return Ok((f64::INFINITY, 0.0));
        }
        let (r1, e1) = ratio(&f1, &f0);
        let (r2, e2) = ratio(&f2, &f0);
        Ok((r1 * r1 - r2, 2.0 * r1.abs() * e1 + e2))
    })?;
    let tol = tolerance(&samples);
    Ok(ScanReport::from_samples(
        Property::LogConcavity,
        &[("alpha", p.alpha), ("beta", p.beta)],
        grid,
        &samples,
        tol,
    ))
}

/// Checks `phi(-a, b, -x)^2 - phi(-a, b+a, -x) phi(-a, b-a, -x) >= 0`,
/// normalized by `phi(-a, b, -x)^2`.
pub fn turan_check(alpha: f64, beta: f64, grid: GridSpec) -> Result<ScanReport> {
    if !(alpha > 0.0 && alpha < 1.0) || !(beta >= 0.0) {
        return domain(format!(
            "Turan check needs 0 < alpha < 1, beta >= 0, got ({alpha}, {beta})"
        ));
    }
    let w = |b: f64, x: f64| wright_eval_scaled(WrightParams::new(-alpha, b)?, -x).map(|s| s.0);
    let samples = scan(&grid, |x| {
        let mid = w(beta, x)?;
        let up = w(beta + alpha, x)?;
        let down = w(beta - alpha, x)?;
        if mid.m == 0.0 {
            let v = -up.value() * down.value();
            return Ok((
                v,
                up.abs_err() * down.value().abs() + down.abs_err() * up.value().abs(),
            ));
        }
        let (ru, eu) = ratio(&up, &mid);
        let (rd, ed) = ratio(&down, &mid);
        Ok((1.0 - ru * rd, eu * rd.abs() + ed * ru.abs()))
    })?;
    let tol = tolerance(&samples);
    Ok(ScanReport::from_samples(
        Property::Turan,
        &[("alpha", alpha), ("beta", beta)],
        grid,
        &samples,
        tol,
    ))
}

struct SignPoint {
    x: f64,
    sign: f64,
}

// grid points whose value clears ten times its error
fn certified_signs<F>(points: &[f64], f: F) -> Result<(Vec<SignPoint>, usize)>
where
    F: Fn(f64) -> Result<Scaled> + Sync,
{
    let vals = points
        .par_iter()
        .map(|&x| f(x).map(|s| (x, s)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(vals.len());
    let mut skipped = 0;
    for (x, s) in vals {
        if s.m.abs() > 10.0 * s.err {
            out.push(SignPoint {
                x,
                sign: s.m.signum(),
            });
        } else {
            skipped += 1;
        }
    }
    Ok((out, skipped))
}

fn sign_changes(pts: &[SignPoint]) -> Vec<(f64, f64)> {
    pts.windows(2)
        .filter(|w| w[0].sign != w[1].sign)
        .map(|w| (w[0].x, w[1].x))
        .collect()
}

/// Certified zeros of `phi(rho, beta, -x)` on `(0, xmax]`.
///
/// Without `xmax` the scan stops where the function is exponentially small
/// and positive. Fails with an accuracy error when more than 1% of the grid
/// cannot be certified.
pub fn count_zeros(rho: f64, beta: f64, xmax: Option<f64>) -> Result<ZeroReport> {
    if !(rho > -1.0 && rho < 0.0) {
        return domain(format!("zero counting needs -1 < rho < 0, got {rho}"));
    }
    let p = WrightParams::new(rho, beta)?;
    let xmax = match xmax {
        Some(x) if x > 0.0 && x.is_finite() => x,
        Some(x) => return domain(format!("xmax must be finite and > 0, got {x}")),
        None => negligible_beyond(-rho, beta, 0.0),
    };
    let n = 4000;
    let points: Vec<f64> = (1..=n).map(|i| xmax * i as f64 / n as f64).collect();
    let f = |x: f64| wright_eval_scaled(p, -x).map(|s| s.0);
    let (pts, skipped) = certified_signs(&points, f)?;
    if skipped * 100 > n {
        return Err(Error::Accuracy {
            what: format!("sign of phi({rho}, {beta}, -x) on (0, {xmax}]"),
            value: skipped as f64,
            abs_err: f64::NAN,
        });
    }
    let mut locations = Vec::new();
    for (lo, hi) in sign_changes(&pts) {
        let r = find_root(|x| f(x).map(|s| s.m).unwrap_or(f64::NAN), lo, hi, 1e-9, 200)?;
        locations.push(r.x);
    }
    Ok(ZeroReport {
        rho,
        beta,
        count: locations.len(),
        locations,
        xmax,
    })
}

/// Certified sign changes of the `k`-th density derivative on the grid.
pub fn count_derivative_sign_changes(p: AdmissiblePair, k: u8, grid: GridSpec) -> Result<usize> {
    interior(p)?;
    grid.validate()?;
    let m = DensityModel::new(p)?;
    let (pts, _) = certified_signs(&grid.points(), |x| m.derivative_scaled(x, k))?;
    Ok(sign_changes(&pts).len())
}

/// Number of certified sign changes of the density derivative.
pub fn count_mode_changes(p: AdmissiblePair, grid: GridSpec) -> Result<usize> {
    count_derivative_sign_changes(p, 1, grid)
}

/// Number of certified sign changes of the second density derivative,
/// for `alpha in [1/2, 1)`, `beta in [0, alpha]`.
pub fn count_inflections(p: AdmissiblePair, grid: GridSpec) -> Result<usize> {
    if !(0.5..1.0).contains(&p.alpha) || !(p.beta >= 0.0 && p.beta <= p.alpha) {
        return domain(format!(
            "inflection count needs alpha in [1/2, 1), beta in [0, alpha], got ({}, {})",
            p.alpha, p.beta
        ));
    }
    count_derivative_sign_changes(p, 2, grid)
}

/// `ln u_n` for `n = 0..=nmax`, where
/// `u_n = Gamma(b + a(n+1)) / (n+1) * sum_k 1/(Gamma(b + a k) Gamma(b + a(n-k)))`.
pub fn recip_convexity_sequence(alpha: f64, beta: f64, nmax: usize) -> Result<Vec<f64>> {
    if !(alpha >= 0.0) || !(beta >= 0.0) || alpha + beta == 0.0 {
        return domain(format!(
            "sequence needs alpha, beta >= 0 not both 0, got ({alpha}, {beta})"
        ));
    }
    let lrg = |x: f64| {
        if x <= 0.0 {
            f64::NEG_INFINITY
        } else {
            -log_abs_gamma(x).0
        }
    };
    let terms: Vec<f64> = (0..=nmax + 1)
        .map(|k| lrg(beta + alpha * k as f64))
        .collect();
    Ok((0..=nmax)
        .map(|n| {
            let parts: Vec<f64> = (0..=n).map(|k| terms[k] + terms[n - k]).collect();
            let top = parts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let s: f64 = parts.iter().map(|v| (v - top).exp()).sum();
            -terms[n + 1] - ((n + 1) as f64).ln() + top + s.ln()
        })
        .collect())
}

/// Checks that `u_n` is non-decreasing up to `nmax`, allowing a relative
/// slack of `1e-12`.
pub fn reciprocal_convexity_un(alpha: f64, beta: f64, nmax: usize) -> Result<ScanReport> {
    if nmax < 2 {
        return domain(format!("nmax must be at least 2, got {nmax}"));
    }
    let lu = recip_convexity_sequence(alpha, beta, nmax)?;
    let samples: Vec<(f64, f64, f64)> = lu
        .windows(2)
        .enumerate()
        .map(|(n, w)| (n as f64, (w[1] - w[0]).exp_m1(), 0.0))
        .collect();
    Ok(ScanReport::from_samples(
        Property::ReciprocalConvexitySequence,
        &[("alpha", alpha), ("beta", beta)],
        GridSpec::linear(0.0, nmax as f64, nmax + 1),
        &samples,
        1e-12,
    ))
}

/// Which half-line a reciprocal convexity scan covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfLine {
    Positive,
    Negative,
}

/// Checks `(2 E'^2 - E E'') / E^2 >= 0` for `E = E_{a,b}` at `z = +x` or
/// `z = -x`, `x` on the grid. On the positive side the grid is clipped
/// where `E` would overflow.
pub fn reciprocal_convexity_grid(
    alpha: f64,
    beta: f64,
    half: HalfLine,
    grid: GridSpec,
) -> Result<ScanReport> {
    let ml = MlParams::new(alpha, beta)?;
    if alpha <= 0.0 {
        return domain("grid scan needs alpha > 0");
    }
    let mut grid = grid;
    if half == HalfLine::Positive {
        let cap = 600f64.powf(alpha);
        if grid.xmax > cap {
            grid.xmax = cap;
            if let crate::report::Spacing::Mixed { knee } = grid.spacing {
                if knee >= cap {
                    grid.spacing = crate::report::Spacing::Linear;
                }
            }
        }
    }
    let sgn = if half == HalfLine::Positive {
        1.0
    } else {
        -1.0
    };
    let samples = scan(&grid, |x| {
        let z = sgn * x;
        if alpha == 1.0 && beta == 1.0 {
            // E = exp, which underflows far out on the negative side
            return Ok((1.0, 0.0));
        }
        let e0 = ml_eval(ml, z)?;
        let e1 = ml_derivative(ml, z, 1)?;
        let e2 = ml_derivative(ml, z, 2)?;
        let r1 = e1.value / e0.value;
        let r2 = e2.value / e0.value;
        let err = 4.0 * r1.abs() * (e1.rel_err() + e0.rel_err()) * r1.abs()
            + r2.abs() * (e2.rel_err() + e0.rel_err())
            + 8.0 * f64::EPSILON * (2.0 * r1 * r1).max(r2.abs());
        Ok((2.0 * r1 * r1 - r2, err))
    })?;
    let tol = tolerance(&samples);
    let name = if half == HalfLine::Positive {
        1.0
    } else {
        -1.0
    };
    Ok(ScanReport::from_samples(
        Property::ReciprocalConvexity,
        &[("alpha", alpha), ("beta", beta), ("halfline", name)],
        grid,
        &samples,
        tol,
    ))
}

/// Closed-form MSU criterion and a numeric scan of log-concavity of
/// `t -> phi(e^t)`.
///
/// With `r1 = phi'/phi` and `r2 = phi''/phi` the scanned statistic is
/// `x (r1^2 - r2) - r1`, which is `-x^{-1} d^2/dt^2 log phi(e^t)`.
pub fn msu_classify(p: AdmissiblePair, grid: GridSpec) -> Result<(bool, ScanReport)> {
    interior(p)?;
    let predicted = p.beta >= p.alpha || (p.beta == 0.0 && p.alpha <= 0.5);
    let m = DensityModel::new(p)?;
    let samples = scan(&grid, |x| {
        let [f0, f1, f2] = shifts(&m, x)?;
        if f0.m == 0.0 {
            // phi(e^t) ~ c e^t as t -> -inf: statistic tends to -phi''(0)/(2 phi'(0))
            let (r, e) = ratio(&f2, &f1);
            return Ok((-0.5 * r, 0.5 * e));
        }
        let (r1, e1) = ratio(&f1, &f0);
        let (r2, e2) = ratio(&f2, &f0);
        Ok((x * (r1 * r1 - r2) - r1, x * (2.0 * r1.abs() * e1 + e2) + e1))
    })?;
    let tol = tolerance(&samples);
    Ok((
        predicted,
        ScanReport::from_samples(
            Property::Msu,
            &[("alpha", p.alpha), ("beta", p.beta)],
            grid,
            &samples,
            tol,
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_sequence() {
        let lu = recip_convexity_sequence(1.0, 1.0, 10).unwrap();
        for (n, l) in lu.iter().enumerate() {
            assert!((l - (n as f64) * 2f64.ln()).abs() < 1e-12, "{n}");
        }
    }

    #[test]
    fn half_normal_has_one_inflection() {
        let p = AdmissiblePair::new(0.5, 0.5).unwrap();
        let n = count_inflections(p, GridSpec::linear(0.0, 10.0, 400)).unwrap();
        assert_eq!(n, 1);
    }
}
