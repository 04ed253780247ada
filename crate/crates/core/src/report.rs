//! Scan grids and the reports produced by the verification harness.
//!
//! Reports serialize to a two-column `field,value` CSV and to a plain text
//! block; both parse back without loss.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// Point placement of a [`GridSpec`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spacing {
    Linear,
    /// Geometric between `xmin > 0` and `xmax`.
    Log,
    /// Half the points linear on `[xmin, knee]`, the rest geometric on
    /// `(knee, xmax]`.
    Mixed {
        knee: f64,
    },
}

/// A one-dimensional scan grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub n: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn linear(xmin: f64, xmax: f64, n: usize) -> Self {
        GridSpec {
            xmin,
            xmax,
            n,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(xmin: f64, xmax: f64, n: usize) -> Self {
        GridSpec {
            xmin,
            xmax,
            n,
            spacing: Spacing::Log,
        }
    }

    pub fn mixed(xmin: f64, knee: f64, xmax: f64, n: usize) -> Self {
        GridSpec {
            xmin,
            xmax,
            n,
            spacing: Spacing::Mixed { knee },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.xmin.is_finite() && self.xmax.is_finite() && self.xmin < self.xmax) {
            return domain(format!(
                "grid needs xmin < xmax, got [{}, {}]",
                self.xmin, self.xmax
            ));
        }
        if self.n < 2 {
            return domain(format!("grid needs at least 2 points, got {}", self.n));
        }
        match self.spacing {
            Spacing::Log if self.xmin <= 0.0 => domain("log grid needs xmin > 0"),
            Spacing::Mixed { knee } if !(knee > self.xmin && knee < self.xmax) => {
                domain(format!("mixed grid needs xmin < knee < xmax, got {knee}"))
            }
            _ => Ok(()),
        }
    }

    /// The grid points in increasing order.
    pub fn points(&self) -> Vec<f64> {
        let (a, b, n) = (self.xmin, self.xmax, self.n);
        match self.spacing {
            Spacing::Linear => (0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect(),
            Spacing::Log => geometric(a, b, n, true),
            Spacing::Mixed { knee } => {
                let nl = n / 2;
                let mut v: Vec<f64> = (0..nl)
                    .map(|i| a + (knee - a) * i as f64 / (nl - 1).max(1) as f64)
                    .collect();
                v.extend(geometric(knee, b, n - nl, false));
                v
            }
        }
    }
}

fn geometric(a: f64, b: f64, n: usize, include_start: bool) -> Vec<f64> {
    let r = (b / a).ln();
    let (start, steps) = if include_start { (0, n - 1) } else { (1, n) };
    (start..start + n)
        .map(|i| a * (r * i as f64 / steps as f64).exp())
        .collect()
}

/// Scan outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

/// The property a [`ScanReport`] is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    LogConcavity,
    Turan,
    ReciprocalConvexitySequence,
    ReciprocalConvexity,
    Msu,
    EntropyConcavity,
}

macro_rules! names {
    ($t:ty { $($v:path => $s:literal),* $(,)? }) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($v => $s),* })
            }
        }
        impl FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s { $($s => Ok($v),)* _ => domain(format!("unknown name {s:?}")) }
            }
        }
    };
}

names!(Verdict {
    Verdict::Holds => "holds",
    Verdict::Fails => "fails",
    Verdict::Inconclusive => "inconclusive",
});

names!(Property {
    Property::LogConcavity => "logconcavity",
    Property::Turan => "turan",
    Property::ReciprocalConvexitySequence => "recip-convexity-sequence",
    Property::ReciprocalConvexity => "recip-convexity",
    Property::Msu => "msu",
    Property::EntropyConcavity => "entropy-concavity",
});

/// Result of checking a sign condition `statistic >= 0` on a grid.
///
/// `Fails` means the minimum is below `-tolerance`, `Holds` that it is not,
/// and `Inconclusive` that the error estimate at the witness swamps the
/// minimum.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub property: Property,
    pub params: BTreeMap<String, f64>,
    pub grid: GridSpec,
    pub verdict: Verdict,
    pub min_value: f64,
    pub witness: f64,
    pub tolerance: f64,
}

impl ScanReport {
    /// Builds a report from `(x, statistic, abs_err)` samples.
    pub fn from_samples(
        property: Property,
        params: &[(&str, f64)],
        grid: GridSpec,
        samples: &[(f64, f64, f64)],
        tolerance: f64,
    ) -> Self {
        let mut min = (f64::NAN, f64::INFINITY, 0.0);
        for &s in samples {
            if s.1 < min.1 {
                min = s;
            }
        }
        let (witness, min_value, err) = min;
        let verdict = if min_value >= -tolerance {
            Verdict::Holds
        } else if 10.0 * err >= min_value.abs() {
            Verdict::Inconclusive
        } else {
            Verdict::Fails
        };
        ScanReport {
            property,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            grid,
            verdict,
            min_value,
            witness,
            tolerance,
        }
    }

    fn fields(&self) -> Vec<(String, String)> {
        let mut out = vec![("property".to_string(), self.property.to_string())];
        for (k, v) in &self.params {
            out.push((format!("param.{k}"), num(*v)));
        }
        out.push(("grid.xmin".into(), num(self.grid.xmin)));
        out.push(("grid.xmax".into(), num(self.grid.xmax)));
        out.push(("grid.n".into(), self.grid.n.to_string()));
        let (name, knee) = match self.grid.spacing {
            Spacing::Linear => ("linear", None),
            Spacing::Log => ("log", None),
            Spacing::Mixed { knee } => ("mixed", Some(knee)),
        };
        out.push(("grid.spacing".into(), name.into()));
        if let Some(k) = knee {
            out.push(("grid.knee".into(), num(k)));
        }
        out.push(("verdict".into(), self.verdict.to_string()));
        out.push(("min_value".into(), num(self.min_value)));
        out.push(("witness".into(), num(self.witness)));
        out.push(("tolerance".into(), num(self.tolerance)));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("field,value\n");
        for (k, v) in self.fields() {
            let _ = writeln!(s, "{k},{v}");
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.fields() {
            let _ = writeln!(s, "{k:<14} {v}");
        }
        s
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        if lines.next() != Some("field,value") {
            return domain("report CSV must start with the header field,value");
        }
        Self::from_pairs(lines.map(|l| l.split_once(',')))
    }

    pub fn from_text(s: &str) -> Result<Self> {
        Self::from_pairs(
            s.lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| l.split_once(' ').map(|(k, v)| (k, v.trim()))),
        )
    }

    fn from_pairs<'a, I: Iterator<Item = Option<(&'a str, &'a str)>>>(it: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut params = BTreeMap::new();
        for kv in it {
            let (k, v) = kv.ok_or_else(|| Error::Domain("malformed report line".into()))?;
            match k.strip_prefix("param.") {
                Some(p) => {
                    params.insert(p.to_string(), parse(v)?);
                }
                None => {
                    map.insert(k.to_string(), v.to_string());
                }
            }
        }
        let get = |k: &str| {
            map.get(k)
                .map(String::as_str)
                .ok_or_else(|| Error::Domain(format!("report is missing {k}")))
        };
        let spacing = match get("grid.spacing")? {
            "linear" => Spacing::Linear,
            "log" => Spacing::Log,
            "mixed" => Spacing::Mixed {
                knee: parse(get("grid.knee")?)?,
            },
            other => return domain(format!("unknown spacing {other:?}")),
        };
        Ok(ScanReport {
            property: get("property")?.parse()?,
            params,
            grid: GridSpec {
                xmin: parse(get("grid.xmin")?)?,
                xmax: parse(get("grid.xmax")?)?,
                n: get("grid.n")?
                    .parse()
                    .map_err(|_| Error::Domain("bad grid.n".into()))?,
                spacing,
            },
            verdict: get("verdict")?.parse()?,
            min_value: parse(get("min_value")?)?,
            witness: parse(get("witness")?)?,
            tolerance: parse(get("tolerance")?)?,
        })
    }
}

/// Certified sign changes of `phi(rho, beta, -x)` on `(0, xmax]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroReport {
    pub rho: f64,
    pub beta: f64,
    pub count: usize,
    pub locations: Vec<f64>,
    pub xmax: f64,
}

impl ZeroReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("field,value\n");
        let _ = writeln!(s, "rho,{}", num(self.rho));
        let _ = writeln!(s, "beta,{}", num(self.beta));
        let _ = writeln!(s, "xmax,{}", num(self.xmax));
        let _ = writeln!(s, "count,{}", self.count);
        for x in &self.locations {
            let _ = writeln!(s, "location,{}", num(*x));
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "rho = {}\nbeta = {}\nxmax = {}\ncount = {}\n",
            num(self.rho),
            num(self.beta),
            num(self.xmax),
            self.count
        );
        for x in &self.locations {
            let _ = writeln!(s, "zero at {}", num(*x));
        }
        s
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        if lines.next() != Some("field,value") {
            return domain("report CSV must start with the header field,value");
        }
        let mut r = ZeroReport {
            rho: f64::NAN,
            beta: f64::NAN,
            count: 0,
            locations: Vec::new(),
            xmax: f64::NAN,
        };
        for l in lines {
            let (k, v) = l
                .split_once(',')
                .ok_or_else(|| Error::Domain("malformed report line".into()))?;
            match k {
                "rho" => r.rho = parse(v)?,
                "beta" => r.beta = parse(v)?,
                "xmax" => r.xmax = parse(v)?,
                "count" => r.count = v.parse().map_err(|_| Error::Domain("bad count".into()))?,
                "location" => r.locations.push(parse(v)?),
                _ => return domain(format!("unknown field {k:?}")),
            }
        }
        if r.count != r.locations.len() {
            return domain("count does not match the number of locations");
        }
        Ok(r)
    }
}

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Domain(format!("not a number: {s:?}")))
}
