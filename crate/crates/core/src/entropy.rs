//! Generalized logarithms built on Mittag-Leffler functions and the trace-form
//! entropies they generate.
//!
//! For `0 < alpha <= 1` and `beta >= 0` let `F(z) = Gamma(a+b) E_{a,a+b}(z)`,
//! normalized so that `F(0) = 1`. `F` increases on the real line, and
//! `log_{a,b}(x) = F^{-1}(x) / Gamma(a+b)^2` generates
//! `g(x) = -x log_{a,b}(x) + (x - 1) / (Gamma(b) Gamma(a+b))`.
//! The default `beta = 1 - alpha` gives `F = E_alpha` and `g_alpha`.

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::gamma::{gamma, recip_gamma};
use crate::mittag_leffler::{ml_derivative, ml_eval, MlParams};
use crate::report::{GridSpec, Property, ScanReport};
use crate::roots::find_root;

/// Left end of the inversion table.
pub const Z_TABLE: f64 = 1e4;

/// An entropy generator with its inversion table.
#[derive(Clone, Debug)]
pub struct EntropyGen {
    alpha: f64,
    beta: f64,
    ml: MlParams,
    norm: f64,
    offset: f64,
    zs: Vec<f64>,
    fs: Vec<f64>,
}

impl EntropyGen {
    /// `g_alpha`, the case `beta = 1 - alpha`.
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_beta(alpha, 1.0 - alpha)
    }

    pub fn with_beta(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return domain(format!("alpha must lie in (0, 1], got {alpha}"));
        }
        if !(beta >= 0.0) || !beta.is_finite() {
            return domain(format!("beta must be finite and >= 0, got {beta}"));
        }
        let ml = MlParams::new(alpha, alpha + beta)?;
        let norm = gamma(alpha + beta);
        let offset = recip_gamma(beta) * recip_gamma(alpha + beta);
        // E grows like exp(z^(1/alpha)); stay well inside the double range
        let ztop = 50f64.min(0.9 * 700f64.powf(alpha));
        // the exponential case decays instead of tending to zero like 1/z
        let zlow = if alpha == 1.0 { 700.0 } else { Z_TABLE };
        let mut zs: Vec<f64> = (0..240)
            .map(|i| -zlow * (1e-6f64.ln() * i as f64 / 239.0).exp())
            .collect();
        zs.extend((0..=80).map(|i| ztop * i as f64 / 80.0));
        let fs = zs
            .par_iter()
            .map(|&z| ml_eval(ml, z).map(|r| norm * r.value))
            .collect::<Result<Vec<f64>>>()?;
        if fs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Accuracy {
                what: format!("inversion table for ({alpha}, {beta}) is not increasing"),
                value: f64::NAN,
                abs_err: f64::NAN,
            });
        }
        Ok(EntropyGen {
            alpha,
            beta,
            ml,
            norm,
            offset,
            zs,
            fs,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `F(z) = Gamma(a+b) E_{a,a+b}(z)`.
    pub fn forward(&self, z: f64) -> Result<f64> {
        Ok(self.norm * ml_eval(self.ml, z)?.value)
    }

    /// `F^{-1}(x)` for `x > 0`.
    pub fn inverse(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) || !x.is_finite() {
            return domain(format!("generalized logarithm needs x > 0, got {x}"));
        }
        if x == 1.0 {
            return Ok(0.0);
        }
        let top = *self.fs.last().unwrap_or(&f64::NAN);
        if x > top {
            return Err(Error::Regime(format!(
                "x = {x} exceeds the tabulated range (max {top:e})"
            )));
        }
        let (mut lo, mut hi) = if x < self.fs[0] {
            // below the table F behaves like c / |z|; widen geometrically
            let mut lo = self.zs[0];
            let mut k = 0;
            while self.forward(lo)? > x {
                lo *= 16.0;
                k += 1;
                if k > 60 {
                    return domain(format!("x = {x} is too small to invert"));
                }
            }
            (lo, lo / 16.0)
        } else {
            let i = self
                .fs
                .partition_point(|&f| f < x)
                .clamp(1, self.fs.len() - 1);
            (self.zs[i - 1], self.zs[i])
        };
        // Newton inside the bracket, bisection when a step leaves it
        let mut z = 0.5 * (lo + hi);
        for _ in 0..100 {
            let f = self.forward(z)? - x;
            if f == 0.0 {
                return Ok(z);
            }
            if f > 0.0 {
                hi = z;
            } else {
                lo = z;
            }
            let d = self.norm * ml_derivative(self.ml, z, 1)?.value;
            let mut next = z - f / d;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - z).abs() <= 4.0 * f64::EPSILON * z.abs().max(1e-300) {
                return Ok(next);
            }
            z = next;
        }
        // fall back on the guaranteed solver
        let r = find_root(
            |z| self.forward(z).map(|f| f - x).unwrap_or(f64::NAN),
            lo,
            hi,
            1e-15 * lo.abs().max(hi.abs()),
            400,
        )?;
        Ok(r.x)
    }

    /// `log_{alpha,beta}(x) = F^{-1}(x) / Gamma(a+b)^2`.
    pub fn log_alpha(&self, x: f64) -> Result<f64> {
        Ok(self.inverse(x)? / (self.norm * self.norm))
    }

    /// The generator, extended continuously by `g(0) = 0`.
    pub fn g_alpha(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return domain(format!("generator needs x in [0, 1], got {x}"));
        }
        if x == 0.0 || x == 1.0 {
            return Ok(0.0);
        }
        Ok(-x * self.log_alpha(x)? + (x - 1.0) * self.offset)
    }

    /// `S(p) = sum g(p_i)` for a probability vector.
    pub fn entropy(&self, p: &[f64]) -> Result<f64> {
        validate_probabilities(p)?;
        p.iter().map(|&q| self.g_alpha(q.min(1.0))).sum()
    }

    /// `(D, abs_err)` with `D = 2 E'^2 - E E''` for `E = E_{a,a+b}` at `z`.
    pub fn concavity_statistic(&self, z: f64) -> Result<(f64, f64)> {
        let e0 = ml_eval(self.ml, z)?;
        let e1 = ml_derivative(self.ml, z, 1)?;
        let e2 = ml_derivative(self.ml, z, 2)?;
        let d = 2.0 * e1.value * e1.value - e0.value * e2.value;
        let err = 4.0 * e1.value.abs() * e1.abs_err
            + e0.value.abs() * e2.abs_err
            + e2.value.abs() * e0.abs_err
            + 4.0
                * f64::EPSILON
                * (2.0 * e1.value * e1.value)
                    .abs()
                    .max((e0.value * e2.value).abs());
        Ok((d, err))
    }

    /// Checks `D(z) >= 0` on `[-Z_TABLE, 0]`, the condition equivalent to
    /// concavity of the generator on `[0, 1]`.
    ///
    /// The grid is geometric from `-Z_TABLE` to `-1e-3` plus `z = 0`; the
    /// tolerance is `1e-10 max |D|`.
    pub fn certify_concavity(&self, n: usize) -> Result<ScanReport> {
        if n < 100 {
            return domain(format!("concavity grid needs at least 100 points, got {n}"));
        }
        let grid = GridSpec::log(1e-3, Z_TABLE, n - 1);
        let mut zs: Vec<f64> = grid.points().iter().map(|x| -x).collect();
        zs.push(0.0);
        let samples = zs
            .par_iter()
            .map(|&z| self.concavity_statistic(z).map(|(d, e)| (z, d, e)))
            .collect::<Result<Vec<_>>>()?;
        let scale = samples.iter().fold(0.0f64, |m, s| m.max(s.1.abs()));
        Ok(ScanReport::from_samples(
            Property::EntropyConcavity,
            &[("alpha", self.alpha), ("beta", self.beta)],
            GridSpec::log(1e-3, Z_TABLE, n - 1),
            &samples,
            1e-10 * scale,
        ))
    }
}

/// Entries must be finite and non-negative and sum to 1 within `1e-9`.
pub fn validate_probabilities(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution(
            "empty probability vector".into(),
        ));
    }
    if let Some(q) = p.iter().find(|q| !(q.is_finite() && **q >= 0.0)) {
        return Err(Error::InvalidDistribution(format!(
            "entries must be finite and >= 0, found {q}"
        )));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!(
            "entries sum to {s}, not 1"
        )));
    }
    Ok(())
}
