//! Globally adaptive Gauss-Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub evals: usize,
}

/// Tolerances and subdivision budget.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_intervals: 400,
        }
    }
}

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Segment {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

impl Quadrature {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Quadrature {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<QuadResult> {
        self.integrate_breaks(f, &[a, b])
    }

    /// Integrates over consecutive intervals of the sorted `breaks`.
    pub fn integrate_breaks<F: FnMut(f64) -> f64>(
        &self,
        mut f: F,
        breaks: &[f64],
    ) -> Result<QuadResult> {
        let mut heap = BinaryHeap::new();
        let mut evals = 0;
        for w in breaks.windows(2) {
            if w[1] == w[0] {
                continue;
            }
            let (value, err) = gk15(&mut f, w[0], w[1]);
            evals += 15;
            heap.push(Segment {
                a: w[0],
                b: w[1],
                value,
                err,
            });
        }
        loop {
            let (total, err): (f64, f64) = heap
                .iter()
                .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.err));
            if !total.is_finite() || !err.is_finite() {
                return Err(Error::Quadrature {
                    value: total,
                    abs_err: err,
                });
            }
            let target = self.abs_tol.max(self.rel_tol * total.abs());
            if err <= target {
                return Ok(QuadResult {
                    value: total,
                    abs_err: err,
                    evals,
                });
            }
            let worst = match heap.pop() {
                Some(s) => s,
                None => {
                    return Ok(QuadResult {
                        value: 0.0,
                        abs_err: 0.0,
                        evals,
                    })
                }
            };
            let mid = 0.5 * (worst.a + worst.b);
            if heap.len() + 2 > self.max_intervals || mid <= worst.a || mid >= worst.b {
                heap.push(worst);
                return Err(Error::Quadrature {
                    value: total,
                    abs_err: err,
                });
            }
            for (a, b) in [(worst.a, mid), (mid, worst.b)] {
                let (value, err) = gk15(&mut f, a, b);
                evals += 15;
                heap.push(Segment { a, b, value, err });
            }
        }
    }

    /// Integrates over `[a, inf)` by panels of doubling width starting at `h`.
    ///
    /// Stops once two consecutive panels add less than the relative
    /// tolerance; the integrand is assumed to decay monotonically in the tail.
    pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(
        &self,
        mut f: F,
        a: f64,
        h: f64,
    ) -> Result<QuadResult> {
        let mut total = 0.0f64;
        let mut err = 0.0;
        let mut evals = 0;
        let mut lo = a;
        let mut width = h;
        let mut small = 0;
        for _ in 0..80 {
            let hi = lo + width;
            let panel_tol = Quadrature {
                abs_tol: self.abs_tol.max(0.25 * self.rel_tol * total.abs()),
                ..*self
            };
            let r = panel_tol.integrate(&mut f, lo, hi)?;
            total += r.value;
            err += r.abs_err;
            evals += r.evals;
            if r.value.abs() <= self.rel_tol * total.abs() + self.abs_tol {
                small += 1;
                if small >= 2 {
                    return Ok(QuadResult {
                        value: total,
                        abs_err: err + r.value.abs(),
                        evals,
                    });
                }
            } else {
                small = 0;
            }
            lo = hi;
            width *= 2.0;
        }
        Err(Error::Quadrature {
            value: total,
            abs_err: err,
        })
    }
}

/// Five-point Gauss-Legendre rule on `[a, b]`, for short smooth pieces.
pub fn gauss_legendre5<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    const X: [f64; 3] = [0.0, 0.538_469_310_105_683_1, 0.906_179_845_938_664];
    const W: [f64; 3] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
    ];
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = W[0] * f(c);
    for j in 1..3 {
        s += W[j] * (f(c - h * X[j]) + f(c + h * X[j]));
    }
    s * h
}
