//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`, which
//! carries about 106 bits of significand. Only the operations needed by the
//! extended-precision series live here: the four field operations, `exp`,
//! `ln`, `sin(pi x)` and `ln |Gamma|`.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

// requires |a| >= |b|
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

// Dekker product; exact unless a*b over/underflows.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: 3.141592653589793,
        lo: 1.2246467991473532e-16,
    };
    pub const LN2: Dd = Dd {
        hi: 0.6931471805599453,
        lo: 2.3190468138462996e-17,
    };
    pub const LN_PI: Dd = Dd {
        hi: 1.1447298858494002,
        lo: 1.0265951162707826e-17,
    };
    pub const HALF_LN_2PI: Dd = Dd {
        hi: 0.9189385332046728,
        lo: -3.8782941580672414e-17,
    };

    #[inline]
    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        let (p, e) = two_prod(self.hi, self.hi);
        let e = e + 2.0 * self.hi * self.lo;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    fn add_f64(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }

    #[inline]
    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    #[inline]
    fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, t) = two_sum(self.hi, -p);
        let q2 = (s + (t - e + self.lo)) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    /// Multiplies by `2^k` exactly (barring over/underflow).
    pub fn ldexp(self, k: i32) -> Dd {
        let scale = |x: f64| {
            let mut x = x;
            let mut k = k;
            while k > 1000 {
                x *= 2f64.powi(1000);
                k -= 1000;
            }
            while k < -1000 {
                x *= 2f64.powi(-1000);
                k += 1000;
            }
            x * 2f64.powi(k)
        };
        Dd {
            hi: scale(self.hi),
            lo: scale(self.lo),
        }
    }

    /// Splits into the nearest integer `n` and the remainder `self - n`.
    fn round_split(self) -> (f64, Dd) {
        let n = self.hi.round();
        let (s, e) = two_sum(self.hi - n, self.lo);
        let r = Dd { hi: s, lo: e };
        if r.hi > 0.5 {
            (n + 1.0, r - 1.0)
        } else if r.hi < -0.5 {
            (n - 1.0, r + 1.0)
        } else {
            (n, r)
        }
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.78 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = (self - Dd::LN2.mul_f64(k)).ldexp(-10);
        // expm1(r) by Taylor; |r| < 3.4e-4
        let mut term = r;
        let mut s = r;
        for i in 2..=14 {
            term = (term * r).div_f64(i as f64);
            s += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            s = s.mul_f64(2.0) + s.sqr();
        }
        (s + 1.0).ldexp(k as i32)
    }

    /// Natural logarithm; NaN for non-positive input.
    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(if self.hi == 0.0 {
                f64::NEG_INFINITY
            } else {
                f64::NAN
            });
        }
        if !self.hi.is_finite() {
            return self;
        }
        let y = Dd::from_f64(self.hi.ln());
        // one Newton step on exp(y) = x doubles the precision
        y + self * (-y).exp() - 1.0
    }

    fn sin_small(self) -> Dd {
        let x2 = self.sqr();
        let mut term = self;
        let mut s = self;
        let mut i = 1.0;
        loop {
            term = -(term * x2).div_f64((2.0 * i) * (2.0 * i + 1.0));
            s += term;
            if term.hi.abs() <= 1e-34 * s.hi.abs() || i > 30.0 {
                return s;
            }
            i += 1.0;
        }
    }

    fn cos_small(self) -> Dd {
        let x2 = self.sqr();
        let mut term = Dd::ONE;
        let mut s = Dd::ONE;
        let mut i = 1.0;
        loop {
            term = -(term * x2).div_f64((2.0 * i - 1.0) * (2.0 * i));
            s += term;
            if term.hi.abs() <= 1e-34 || i > 30.0 {
                return s;
            }
            i += 1.0;
        }
    }

    /// `sin(pi * self)`, exact at integers and accurate near them.
    pub fn sin_pi(self) -> Dd {
        let (n, r) = self.round_split();
        if r.hi == 0.0 {
            return Dd::ZERO;
        }
        let ar = r.abs();
        let v = if ar.hi <= 0.25 {
            (Dd::PI * ar).sin_small()
        } else {
            (Dd::PI * (Dd::from_f64(0.5) - ar)).cos_small()
        };
        let odd = (n * 0.5).fract() != 0.0;
        let neg = (r.hi < 0.0) != odd;
        if neg {
            -v
        } else {
            v
        }
    }

    /// `(ln |Gamma(self)|, sign Gamma(self))`; sign 0 at the poles.
    pub fn ln_abs_gamma(self) -> (Dd, i8) {
        if self.hi < 0.5 {
            let s = self.sin_pi();
            if s.hi == 0.0 {
                return (Dd::from_f64(f64::INFINITY), 0);
            }
            let (lg, _) = (Dd::ONE - self).ln_abs_gamma();
            let sign = if s.hi < 0.0 { -1 } else { 1 };
            return (Dd::LN_PI - s.abs().ln() - lg, sign);
        }
        let mut w = self;
        let mut prod = Dd::ONE;
        while w.hi < 25.0 {
            prod *= w;
            w += 1.0;
        }
        let lg = stirling(w);
        if prod.hi == 1.0 && prod.lo == 0.0 {
            (lg, 1)
        } else {
            (lg - prod.ln(), 1)
        }
    }
}

// B_{2k} / (2k (2k - 1)) as exact numerator / denominator pairs.
const STIRLING: [(f64, f64); 15] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
    (43867.0, 244188.0),
    (-174611.0, 125400.0),
    (77683.0, 5796.0),
    (-236364091.0, 1506960.0),
    (657931.0, 300.0),
    (-3392780147.0, 93960.0),
    (1723168255201.0, 2492028.0),
];

// ln Gamma(w) for w >= 25.
fn stirling(w: Dd) -> Dd {
    let inv = Dd::ONE / w;
    let inv2 = inv.sqr();
    let mut p = inv;
    let mut corr = Dd::ZERO;
    for &(num, den) in STIRLING.iter() {
        corr += (p * Dd::from_f64(num)).div_f64(den);
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + Dd::HALF_LN_2PI + corr
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: f64) -> Dd {
        self.add_f64(b)
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: f64) -> Dd {
        self.add_f64(-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: f64) -> Dd {
        self.mul_f64(b)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: f64) -> Dd {
        self.div_f64(b)
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl AddAssign<f64> for Dd {
    #[inline]
    fn add_assign(&mut self, b: f64) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}
