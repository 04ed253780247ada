//! The positive random variable `M_{a,b}` with density
//! `phi_{a,b}(x) = Gamma(a + b) phi(-a, b, -x)` on the admissible set
//! `a in [0, 1]`, `b >= 0`.
//!
//! Derivatives of the density come from the shift rule
//! `d/dx phi(-a, b, -x) = -phi(-a, b - a, -x)`, never from differences.
//! The distribution function is tabulated on 512 tanh-spaced nodes holding
//! exact cumulative integrals; values between nodes are integrated exactly,
//! while sampling inverts a monotone cubic Hermite interpolant of the table.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::gamma::{gamma, log_abs_gamma, recip_gamma};
use crate::quad::{gauss_legendre5, Quadrature};
use crate::roots::{find_root, golden_max};
use crate::series::Scaled;
use crate::wright::{self, negligible_beyond, wright_eval_scaled, WrightParams};

/// A point `(alpha, beta)` of the admissible set `[0, 1] x [0, inf)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmissiblePair {
    pub alpha: f64,
    pub beta: f64,
}

impl AdmissiblePair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return domain(format!("alpha must lie in [0, 1], got {alpha}"));
        }
        if !(beta >= 0.0) || !beta.is_finite() {
            return domain(format!("beta must be finite and >= 0, got {beta}"));
        }
        Ok(AdmissiblePair { alpha, beta })
    }

    /// The corner `(1, 0)`, where `M = 1` almost surely.
    pub fn is_degenerate(&self) -> bool {
        self.alpha == 1.0 && self.beta == 0.0
    }

    /// `M_alpha = M_{alpha, 1 - alpha}`, the Mittag-Leffler distribution.
    pub fn mittag_leffler(alpha: f64) -> Result<Self> {
        AdmissiblePair::new(alpha, 1.0 - alpha)
    }

    fn interior(&self) -> bool {
        self.alpha > 0.0 && self.alpha < 1.0
    }
}

const TABLE_NODES: usize = 512;

struct CdfTable {
    xs: Vec<f64>,
    cs: Vec<f64>,
    slopes: Vec<f64>,
}

/// Density handle for one admissible pair.
pub struct DensityModel {
    params: AdmissiblePair,
    normalizer: f64,
    ln_normalizer: f64,
    mode: OnceLock<Result<(f64, bool)>>,
    table: OnceLock<Result<CdfTable>>,
}

impl DensityModel {
    pub fn new(params: AdmissiblePair) -> Result<Self> {
        let p = AdmissiblePair::new(params.alpha, params.beta)?;
        let s = p.alpha + p.beta;
        let (normalizer, ln_normalizer) = if s > 0.0 {
            (gamma(s), log_abs_gamma(s).0)
        } else {
            (1.0, 0.0)
        };
        Ok(DensityModel {
            params: p,
            normalizer,
            ln_normalizer,
            mode: OnceLock::new(),
            table: OnceLock::new(),
        })
    }

    pub fn params(&self) -> AdmissiblePair {
        self.params
    }

    /// `Gamma(alpha + beta)`.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    fn wright(&self, k: i32) -> WrightParams {
        let (a, b) = (self.params.alpha, self.params.beta);
        WrightParams {
            rho: -a,
            beta: b - f64::from(k) * a,
        }
    }

    /// `k`-th derivative of the density at `x` as a scaled value, for
    /// `0 < alpha < 1`; `k` may be 0.
    pub fn derivative_scaled(&self, x: f64, k: u8) -> Result<Scaled> {
        if !self.params.interior() {
            return domain("scaled derivatives need 0 < alpha < 1");
        }
        if !(x >= 0.0) {
            return domain(format!("density needs x >= 0, got {x}"));
        }
        let (mut s, _) = wright_eval_scaled(self.wright(i32::from(k)), -x)?;
        if k % 2 == 1 {
            s.m = -s.m;
        }
        s.ln_scale += self.ln_normalizer;
        Ok(s)
    }

    /// `k`-th derivative of the density at `x >= 0`.
    pub fn derivative(&self, x: f64, k: u8) -> Result<f64> {
        if !(x >= 0.0) {
            return domain(format!("density needs x >= 0, got {x}"));
        }
        let (a, b) = (self.params.alpha, self.params.beta);
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        if a == 0.0 {
            return Ok(sign * (-x).exp());
        }
        if a == 1.0 {
            if b == 0.0 {
                return domain("(1, 0) is a point mass at 1");
            }
            if x >= 1.0 {
                return Ok(0.0);
            }
            // b (b-1) ... (b-k) (1-x)^(b-1-k) (-1)^k
            let mut c = b;
            for j in 1..=k {
                c *= b - f64::from(j);
            }
            return Ok(sign * c * (1.0 - x).powf(b - 1.0 - f64::from(k)));
        }
        Ok(self.derivative_scaled(x, k)?.value())
    }

    /// The density `phi_{alpha,beta}(x)`.
    pub fn density(&self, x: f64) -> Result<f64> {
        self.derivative(x, 0)
    }

    /// Point beyond which the density is below `exp(-80)` relative scale.
    pub fn upper(&self) -> f64 {
        let (a, b) = (self.params.alpha, self.params.beta);
        if a == 0.0 {
            80.0
        } else if a == 1.0 {
            1.0
        } else {
            negligible_beyond(a, b, 0.0)
        }
    }

    fn table(&self) -> Result<&CdfTable> {
        self.table
            .get_or_init(|| build_table(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `P(M <= x)`, integrated exactly from the nearest table node.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return domain("cdf of NaN");
        }
        if x <= 0.0 {
            return Ok(0.0);
        }
        let (a, b) = (self.params.alpha, self.params.beta);
        if a == 0.0 {
            return Ok(-(-x).exp_m1());
        }
        if a == 1.0 {
            if b == 0.0 {
                return Ok(if x >= 1.0 { 1.0 } else { 0.0 });
            }
            return Ok(if x >= 1.0 {
                1.0
            } else {
                1.0 - (1.0 - x).powf(b)
            });
        }
        let t = self.table()?;
        let last = *t.xs.last().unwrap_or(&0.0);
        if x >= last {
            return Ok(1.0);
        }
        let i = t.xs.partition_point(|&n| n <= x) - 1;
        let q = Quadrature::with_tol(1e-15, 1e-13);
        let piece = q.integrate(|u| self.density(u).unwrap_or(f64::NAN), t.xs[i], x)?;
        Ok((t.cs[i] + piece.value).clamp(0.0, 1.0))
    }

    /// `cdf` at each point of an ascending slice, integrating gap by gap.
    pub fn cdf_sorted(&self, xs: &[f64]) -> Result<Vec<f64>> {
        if xs.windows(2).any(|w| w[1] < w[0]) {
            return domain("cdf_sorted needs ascending input");
        }
        if !self.params.interior() {
            return xs.iter().map(|&x| self.cdf(x)).collect();
        }
        let t = self.table()?;
        let last = *t.xs.last().unwrap_or(&0.0);
        let mut out = Vec::with_capacity(xs.len());
        let mut node = 0;
        let mut pos = 0.0;
        let mut acc = 0.0;
        let mut failed = None;
        let mut f = |u: f64| match self.density(u) {
            Ok(v) => v,
            Err(e) => {
                failed = Some(e);
                0.0
            }
        };
        for &x in xs {
            if x <= 0.0 {
                out.push(0.0);
                continue;
            }
            if x >= last {
                out.push(1.0);
                continue;
            }
            while node + 1 < t.xs.len() && t.xs[node + 1] <= x {
                node += 1;
                pos = t.xs[node];
                acc = t.cs[node];
            }
            if pos < t.xs[node] {
                pos = t.xs[node];
                acc = t.cs[node];
            }
            acc += gauss_legendre5(&mut f, pos, x);
            pos = x;
            out.push(acc.clamp(0.0, 1.0));
        }
        match failed {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    // monotone Hermite interpolant of the tabulated cdf
    fn cdf_interp(&self, t: &CdfTable, x: f64) -> f64 {
        let i = (t.xs.partition_point(|&n| n <= x).max(1) - 1).min(t.xs.len() - 2);
        hermite(t, i, x)
    }

    /// Inverse of `cdf` to `1e-12` in probability.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return domain(format!("quantile needs 0 < u < 1, got {u}"));
        }
        let (a, b) = (self.params.alpha, self.params.beta);
        if a == 0.0 {
            return Ok(-(-u).ln_1p());
        }
        if a == 1.0 {
            if b == 0.0 {
                return Ok(1.0);
            }
            return Ok(1.0 - (1.0 - u).powf(1.0 / b));
        }
        let t = self.table()?;
        let i = t.cs.partition_point(|&c| c < u).clamp(1, t.xs.len() - 1);
        let (lo, hi) = (t.xs[i - 1], t.xs[i]);
        let mut x = invert_hermite(t, i - 1, u);
        for _ in 0..4 {
            let r = self.cdf(x)? - u;
            if r.abs() <= 1e-13 {
                return Ok(x);
            }
            let d = self.density(x)?;
            let next = x - r / d;
            if !(next > lo && next < hi) || d <= 0.0 {
                break;
            }
            x = next;
        }
        let root = find_root(
            |v| self.cdf(v).map(|c| c - u).unwrap_or(f64::NAN),
            lo,
            hi,
            1e-14 * hi,
            200,
        )?;
        Ok(root.x)
    }

    /// The mode and whether it is interior.
    ///
    /// For `beta >= alpha` the density is non-increasing and the mode is 0.
    /// Otherwise the density rises at 0 and the maximizer is located by
    /// golden-section search, then polished on the sign change of the exact
    /// derivative.
    pub fn find_mode(&self) -> Result<(f64, bool)> {
        self.mode.get_or_init(|| self.compute_mode()).clone()
    }

    fn compute_mode(&self) -> Result<(f64, bool)> {
        let (a, b) = (self.params.alpha, self.params.beta);
        if !self.params.interior() {
            return domain("mode search needs 0 < alpha < 1");
        }
        if b >= a {
            return Ok((0.0, false));
        }
        let d0 = self.derivative(0.0, 1)?;
        if !(d0 > 0.0) && b > 0.0 {
            return Err(Error::Accuracy {
                what: "density slope at 0 should be positive".into(),
                value: d0,
                abs_err: 0.0,
            });
        }
        // coarse scan for a bracket, then golden section
        let end = self.upper();
        let n = 400;
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 1..=n {
            let x = end * (i as f64 / n as f64).powi(2);
            let v = self.density(x)?;
            if v > best.1 {
                best = (x, v);
            }
        }
        let j = ((best.0 / end).sqrt() * n as f64).round();
        let lo = end * ((j - 1.0).max(0.0) / n as f64).powi(2);
        let hi = end * ((j + 1.0) / n as f64).powi(2);
        let (xg, _) = golden_max(
            |x| self.density(x).unwrap_or(f64::NEG_INFINITY),
            lo,
            hi,
            1e-10,
        );
        let w = (hi - lo).max(1e-6);
        let slope = |x: f64| self.derivative(x, 1).unwrap_or(f64::NAN);
        let (l, h) = ((xg - 0.05 * w).max(lo), (xg + 0.05 * w).min(hi));
        let x = match find_root(slope, l, h, 1e-14 * xg.max(1e-3), 200) {
            Ok(r) => r.x,
            Err(_) => xg,
        };
        Ok((x, true))
    }

    /// `n` independent draws, reproducible from `seed`.
    ///
    /// `beta = 1 - alpha` uses the exact stable representation
    /// `M = Z^(-alpha)`; other interior pairs invert the tabulated cdf.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (self.params.alpha, self.params.beta);
        if self.params.is_degenerate() {
            return Ok(vec![1.0; n]);
        }
        if a == 0.0 {
            return Ok((0..n).map(|_| exp1(&mut rng)).collect());
        }
        if a == 1.0 {
            return Ok((0..n)
                .map(|_| 1.0 - open01(&mut rng).powf(1.0 / b))
                .collect());
        }
        if (a + b - 1.0).abs() <= 1e-12 {
            return Ok((0..n).map(|_| stable_draw(a, &mut rng).powf(-a)).collect());
        }
        let t = self.table()?;
        let last = t.cs.len() - 1;
        Ok((0..n)
            .map(|_| {
                let u = open01(&mut rng) * t.cs[last];
                let i = t.cs.partition_point(|&c| c < u).clamp(1, last);
                invert_hermite(t, i - 1, u)
            })
            .collect())
    }

    /// Largest deviation between the interpolated and the exact cdf over
    /// the midpoints of the table.
    pub fn table_interpolation_error(&self) -> Result<f64> {
        let t = self.table()?;
        let mut worst: f64 = 0.0;
        for i in 0..t.xs.len() - 1 {
            let x = 0.5 * (t.xs[i] + t.xs[i + 1]);
            let exact = self.cdf(x)?;
            worst = worst.max((exact - self.cdf_interp(t, x)).abs());
        }
        Ok(worst)
    }
}

fn build_table(m: &DensityModel) -> Result<CdfTable> {
    let end = m.upper();
    let scale = 3.0f64;
    let xs: Vec<f64> = (0..TABLE_NODES)
        .map(|i| {
            let u = i as f64 / (TABLE_NODES - 1) as f64;
            end * (scale * u).tanh() / scale.tanh()
        })
        .collect();
    let q = Quadrature::with_tol(1e-16, 1e-13);
    let mut cs = vec![0.0; TABLE_NODES];
    for i in 1..TABLE_NODES {
        let r = q.integrate(|u| m.density(u).unwrap_or(f64::NAN), xs[i - 1], xs[i])?;
        cs[i] = cs[i - 1] + r.value;
    }
    let total = cs[TABLE_NODES - 1];
    if (total - 1.0).abs() > 1e-8 {
        return Err(Error::Accuracy {
            what: "density does not integrate to one".into(),
            value: total,
            abs_err: (total - 1.0).abs(),
        });
    }
    let mut slopes = xs
        .iter()
        .map(|&x| m.density(x))
        .collect::<Result<Vec<f64>>>()?;
    // Fritsch-Carlson limiter keeps the interpolant monotone
    for i in 0..TABLE_NODES - 1 {
        let h = xs[i + 1] - xs[i];
        let delta = (cs[i + 1] - cs[i]) / h;
        if delta <= 0.0 {
            slopes[i] = 0.0;
            slopes[i + 1] = 0.0;
            continue;
        }
        let (p, r) = (slopes[i] / delta, slopes[i + 1] / delta);
        let s = p * p + r * r;
        if s > 9.0 {
            let tau = 3.0 / s.sqrt();
            slopes[i] = tau * p * delta;
            slopes[i + 1] = tau * r * delta;
        }
    }
    Ok(CdfTable { xs, cs, slopes })
}

fn hermite(t: &CdfTable, i: usize, x: f64) -> f64 {
    let h = t.xs[i + 1] - t.xs[i];
    let s = (x - t.xs[i]) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    h00 * t.cs[i] + h10 * h * t.slopes[i] + h01 * t.cs[i + 1] + h11 * h * t.slopes[i + 1]
}

// solves hermite(t, i, x) = u on [x_i, x_{i+1}] by safeguarded Newton
fn invert_hermite(t: &CdfTable, i: usize, u: f64) -> f64 {
    let (mut lo, mut hi) = (t.xs[i], t.xs[i + 1]);
    let span = t.cs[i + 1] - t.cs[i];
    let mut x = if span > 0.0 {
        lo + (hi - lo) * ((u - t.cs[i]) / span).clamp(0.0, 1.0)
    } else {
        0.5 * (lo + hi)
    };
    let h = hi - lo;
    for _ in 0..60 {
        let f = hermite(t, i, x) - u;
        if f == 0.0 {
            break;
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let s = (x - t.xs[i]) / h;
        let d = (6.0 * s * s - 6.0 * s) * (t.cs[i] - t.cs[i + 1]) / h
            + (3.0 * s * s - 4.0 * s + 1.0) * t.slopes[i]
            + (3.0 * s * s - 2.0 * s) * t.slopes[i + 1];
        let mut next = if d > 0.0 { x - f / d } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * x.abs().max(1e-300) {
            x = next;
            break;
        }
        x = next;
    }
    x
}

fn open01<R: Rng>(rng: &mut R) -> f64 {
    // (0, 1]
    1.0 - rng.random::<f64>()
}

fn exp1<R: Rng>(rng: &mut R) -> f64 {
    -open01(rng).ln()
}

// Kanter's representation of the positive stable law with
// Laplace transform exp(-lambda^alpha).
fn stable_draw<R: Rng>(alpha: f64, rng: &mut R) -> f64 {
    let u = open01(rng).min(1.0 - f64::EPSILON);
    let e = exp1(rng);
    let a = ((alpha * PI * u).sin() / (PI * u).sin()).powf(1.0 / (1.0 - alpha))
        * ((1.0 - alpha) * PI * u).sin()
        / (alpha * PI * u).sin();
    (a / e).powf((1.0 - alpha) / alpha)
}

/// `n` draws of the positive stable variable `Z_alpha`,
/// `E exp(-lambda Z) = exp(-lambda^alpha)`, for `0 < alpha < 1`.
pub fn sample_stable(alpha: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return domain(format!("stable sampler needs 0 < alpha < 1, got {alpha}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| stable_draw(alpha, &mut rng)).collect())
}

/// `E[M^s] = Gamma(1 + s) Gamma(alpha + beta) / Gamma(alpha + beta + alpha s)`.
pub fn mellin_moment(p: AdmissiblePair, s: f64) -> Result<f64> {
    if !(s > -1.0) {
        return domain(format!("moments need s > -1, got {s}"));
    }
    let ab = p.alpha + p.beta;
    if !(ab > 0.0) {
        return domain("moments need alpha + beta > 0");
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let l = log_abs_gamma(1.0 + s).0 + log_abs_gamma(ab).0 - log_abs_gamma(ab + p.alpha * s).0;
    Ok(l.exp())
}

/// Mellin transform of the factor `X_{alpha,beta}` in
/// `M_{alpha,beta} = Gamma_{2-alpha-beta}^{1-alpha} X_{alpha,beta}`,
/// for `alpha in [1/2, 1)`, `beta in [0, alpha)`.
pub fn mellin_factor_x(p: AdmissiblePair, s: f64) -> Result<f64> {
    let (a, b) = (p.alpha, p.beta);
    if !(0.5..1.0).contains(&a) || !(b >= 0.0 && b < a) {
        return domain(format!(
            "factor X needs alpha in [1/2, 1) and beta in [0, alpha), got ({a}, {b})"
        ));
    }
    if !(s > -1.0) {
        return domain(format!("moments need s > -1, got {s}"));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let l = log_abs_gamma(1.0 + s).0 - log_abs_gamma(a + b + a * s).0 + log_abs_gamma(a + b).0
        - log_abs_gamma(2.0 - a - b + (1.0 - a) * s).0
        + log_abs_gamma(2.0 - a - b).0;
    Ok(l.exp())
}

/// `int_0^inf x^s phi_{alpha,beta}(x) dx` by quadrature.
pub fn moment_by_quadrature(p: AdmissiblePair, s: f64) -> Result<(f64, f64)> {
    if !p.interior() {
        return domain("quadrature moments need 0 < alpha < 1");
    }
    let m = DensityModel::new(p)?;
    let wp = WrightParams::new(-p.alpha, p.beta)?;
    let q = Quadrature::with_tol(0.0, 1e-11);
    let (v, e) = wright::integrate_weighted(wp, |x| x.powf(s), s.max(0.0), q)?;
    Ok((v * m.normalizer, e * m.normalizer))
}

/// `phi_{alpha,beta}(0) = Gamma(alpha + beta) / Gamma(beta)`.
pub fn density_at_zero(p: AdmissiblePair) -> f64 {
    gamma(p.alpha + p.beta) * recip_gamma(p.beta)
}
