//! Power series with Gamma-ratio coefficients, summed in scaled form.
//!
//! Both the Wright and the Mittag-Leffler series have coefficients whose
//! logarithms are sums of log-gamma values. Terms are summed relative to the
//! largest envelope term so that neither the partial sums nor the individual
//! terms overflow, and every sum carries an absolute error bound.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::gamma::log_abs_gamma;

const LN_PI: f64 = 1.144_729_885_849_400_2;
const MAX_TERMS: usize = 200_000;
const EPS: f64 = f64::EPSILON;
// relative accuracy of a double-double term, padded for the log-gamma kernel
const DD_EPS: f64 = 2e-30;

/// Which family of coefficients a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Kind {
    /// `1 / (n! Gamma(beta + rho n))`
    Wright,
    /// k-th derivative of `sum x^n / Gamma(beta + rho n)`, reindexed:
    /// `(n+1)...(n+k) / Gamma(beta + rho (n + k))`
    Ml(u8),
}

/// Working precision of a summation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Precision {
    F64,
    Dd,
}

/// A value `m * exp(ln_scale)` with absolute error `err * exp(ln_scale)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    pub m: f64,
    pub err: f64,
    pub ln_scale: f64,
}

impl Scaled {
    pub fn value(&self) -> f64 {
        if self.m == 0.0 {
            return 0.0;
        }
        if self.ln_scale.abs() < 700.0 {
            return self.m * self.ln_scale.exp();
        }
        self.m.signum() * (self.m.abs().ln() + self.ln_scale).exp()
    }

    pub fn abs_err(&self) -> f64 {
        if self.err == 0.0 {
            return 0.0;
        }
        (self.err.ln() + self.ln_scale).exp()
    }

    /// Relative error; infinite when the value is zero.
    pub fn rel_err(&self) -> f64 {
        self.err / self.m.abs()
    }

    /// `self / other` without forming either value.
    pub fn ratio(&self, other: &Scaled) -> f64 {
        self.m / other.m * (self.ln_scale - other.ln_scale).exp()
    }
}

/// Upper bound of `ln |1 / Gamma(a)|`, exact for `a >= 0.5`.
pub(crate) fn ln_recip_gamma_envelope(a: f64) -> f64 {
    if a >= 0.5 {
        -log_abs_gamma(a).0
    } else {
        log_abs_gamma(1.0 - a).0 - LN_PI
    }
}

#[derive(Clone, Copy)]
struct Coef {
    ln_abs: Dd,
    sign: i8,
}

pub(crate) struct SeriesTable {
    kind: Kind,
    rho: f64,
    beta: f64,
    coefs: RwLock<Vec<Coef>>,
}

type Key = (Kind, u64, u64);

fn registry() -> &'static Mutex<HashMap<Key, Arc<SeriesTable>>> {
    static TABLES: OnceLock<Mutex<HashMap<Key, Arc<SeriesTable>>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared coefficient table for the given family, created on first use.
pub(crate) fn table(kind: Kind, rho: f64, beta: f64) -> Arc<SeriesTable> {
    let key = (kind, rho.to_bits(), beta.to_bits());
    let mut map = registry().lock().unwrap_or_else(|e| e.into_inner());
    if map.len() > 512 {
        map.clear();
    }
    map.entry(key)
        .or_insert_with(|| {
            Arc::new(SeriesTable {
                kind,
                rho,
                beta,
                coefs: RwLock::new(Vec::new()),
            })
        })
        .clone()
}

impl SeriesTable {
    fn order(&self) -> usize {
        match self.kind {
            Kind::Wright => 0,
            Kind::Ml(k) => k as usize,
        }
    }

    fn gamma_arg(&self, n: usize) -> f64 {
        self.beta + self.rho * (n + self.order()) as f64
    }

    // ln of (n+1)(n+2)...(n+k) for the derivative tables, ln n! for Wright
    fn ln_prefactor(&self, n: usize) -> f64 {
        match self.kind {
            Kind::Wright => -log_abs_gamma(n as f64 + 1.0).0,
            Kind::Ml(k) => (1..=k as usize).map(|j| ((n + j) as f64).ln()).sum(),
        }
    }

    /// Envelope `ln |c_n|` upper bound, cheap and in f64.
    fn envelope(&self, n: usize) -> f64 {
        self.ln_prefactor(n) + ln_recip_gamma_envelope(self.gamma_arg(n))
    }

    /// `(ln |c_n|, sign c_n)` in double precision.
    fn coef_f64(&self, n: usize) -> (f64, i8) {
        let a = self.gamma_arg(n);
        let (lg, s) = log_abs_gamma(a);
        if s == 0 {
            return (f64::NEG_INFINITY, 0);
        }
        (self.ln_prefactor(n) - lg, s)
    }

    fn ensure(&self, len: usize) {
        {
            let c = self.coefs.read().unwrap_or_else(|e| e.into_inner());
            if c.len() >= len {
                return;
            }
        }
        let mut c = self.coefs.write().unwrap_or_else(|e| e.into_inner());
        let k = self.order();
        while c.len() < len {
            let n = c.len();
            let arg = Dd::from_f64(self.beta) + Dd::from_f64(self.rho) * ((n + k) as f64);
            // only exact poles vanish; near-poles from rounded parameters
            // still carry terms of order ulp times the largest term
            let (lg, s) = arg.ln_abs_gamma();
            let coef = if s == 0 {
                Coef {
                    ln_abs: Dd::from_f64(f64::NEG_INFINITY),
                    sign: 0,
                }
            } else {
                let pre = match self.kind {
                    Kind::Wright => -(Dd::from_f64(n as f64 + 1.0).ln_abs_gamma().0),
                    Kind::Ml(_) => {
                        let mut p = Dd::ONE;
                        for j in 1..=k {
                            p *= Dd::from_f64((n + j) as f64);
                        }
                        p.ln()
                    }
                };
                Coef {
                    ln_abs: pre - lg,
                    sign: s,
                }
            };
            c.push(coef);
        }
    }

    /// Envelope pass: number of terms to sum, the scale, and a tail bound
    /// relative to that scale.
    fn plan(&self, lx: f64, drop: f64) -> Result<(usize, f64, f64)> {
        let mut emax = f64::NEG_INFINITY;
        let mut prev = f64::NEG_INFINITY;
        let mut n = 0;
        loop {
            if n > MAX_TERMS {
                return Err(Error::Accuracy {
                    what: format!("series needs more than {MAX_TERMS} terms"),
                    value: f64::NAN,
                    abs_err: f64::INFINITY,
                });
            }
            let e = if n == 0 {
                self.envelope(0)
            } else {
                n as f64 * lx + self.envelope(n)
            };
            if e > emax {
                emax = e;
            }
            if n >= 2 && e < prev && e < emax - drop {
                let ratio = (e - prev).exp().min(0.9);
                let tail = (e - emax).exp() / (1.0 - ratio);
                return Ok((n, emax, tail));
            }
            prev = e;
            n += 1;
        }
    }

    /// Sums the series at `x` (x = 0 allowed).
    pub(crate) fn sum(&self, x: f64, prec: Precision) -> Result<Scaled> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite argument {x}")));
        }
        if x == 0.0 {
            let (l, s) = self.coef_f64(0);
            if s == 0 {
                return Ok(Scaled {
                    m: 0.0,
                    err: 0.0,
                    ln_scale: 0.0,
                });
            }
            return Ok(Scaled {
                m: f64::from(s),
                err: 4.0 * EPS,
                ln_scale: l,
            });
        }
        let lx = x.abs().ln();
        let neg = x < 0.0;
        match prec {
            Precision::F64 => {
                let (n_end, eref, tail) = self.plan(lx, 40.0)?;
                let mut sum = 0.0;
                let mut comp = 0.0;
                let mut err = 0.0;
                let mut abs_sum = 0.0;
                for n in 0..n_end {
                    let (lc, s) = self.coef_f64(n);
                    if s == 0 {
                        continue;
                    }
                    let nl = n as f64 * lx;
                    let t = (nl + lc - eref).exp();
                    let arg = self.gamma_arg(n).abs();
                    err += t
                        * EPS
                        * (8.0 + 2.0 * lc.abs() + 2.0 * nl.abs() + arg * (1.0 + arg.ln_1p()));
                    abs_sum += t;
                    let signed = if (s < 0) != (neg && n % 2 == 1) {
                        -t
                    } else {
                        t
                    };
                    // Neumaier compensated summation
                    let u = sum + signed;
                    if sum.abs() >= signed.abs() {
                        comp += (sum - u) + signed;
                    } else {
                        comp += (signed - u) + sum;
                    }
                    sum = u;
                }
                let m = sum + comp;
                err += tail + 2.0 * EPS * m.abs() + (n_end as f64) * EPS * EPS * abs_sum;
                Ok(Scaled {
                    m,
                    err,
                    ln_scale: eref,
                })
            }
            Precision::Dd => {
                let (n_end, eref, tail) = self.plan(lx, 80.0)?;
                self.ensure(n_end);
                let coefs = self.coefs.read().unwrap_or_else(|e| e.into_inner());
                let lx_dd = Dd::from_f64(x.abs()).ln();
                let mut sum = Dd::ZERO;
                let mut err = 0.0;
                let mut abs_sum = 0.0;
                for (n, c) in coefs.iter().take(n_end).enumerate() {
                    if c.sign == 0 {
                        continue;
                    }
                    let l = lx_dd * (n as f64) + c.ln_abs;
                    let d = l - eref;
                    let t = if d.hi > -80.0 {
                        d.exp()
                    } else {
                        Dd::from_f64(d.hi.exp())
                    };
                    let th = t.hi;
                    err += th * DD_EPS * (10.0 + c.ln_abs.hi.abs() + (n as f64 * lx).abs());
                    abs_sum += th;
                    if (c.sign < 0) != (neg && n % 2 == 1) {
                        sum -= t;
                    } else {
                        sum += t;
                    }
                }
                let m = sum.to_f64();
                err += tail + EPS * m.abs() + (n_end as f64) * DD_EPS * abs_sum;
                Ok(Scaled {
                    m,
                    err,
                    ln_scale: eref,
                })
            }
        }
    }
}

/// Evaluates a series family at `x`.
pub(crate) fn sum(kind: Kind, rho: f64, beta: f64, x: f64, prec: Precision) -> Result<Scaled> {
    table(kind, rho, beta).sum(x, prec)
}
