use std::fmt;

use crate::series::Scaled;

/// How a value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Power series in double precision with compensated summation.
    Series,
    /// Power series in double-double arithmetic.
    ExtendedSeries,
    /// Asymptotic expansion or its leading term.
    Asymptotic,
    /// Quadrature of a Laplace-type integral representation.
    LaplaceQuadrature,
    /// Quadrature along the steepest-descent contour of the Hankel integral.
    ContourQuadrature,
    /// An elementary closed form.
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Series => "series",
            Method::ExtendedSeries => "extended_series",
            Method::Asymptotic => "asymptotic",
            Method::LaplaceQuadrature => "laplace_quadrature",
            Method::ContourQuadrature => "contour_quadrature",
            Method::ClosedForm => "closed_form",
        };
        f.write_str(s)
    }
}

/// A function value with an absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err: f64,
    pub method: Method,
}

impl EvalResult {
    pub(crate) fn from_scaled(s: &Scaled, method: Method) -> Self {
        EvalResult {
            value: s.value(),
            abs_err: s.abs_err(),
            method,
        }
    }

    pub(crate) fn exact(value: f64, method: Method) -> Self {
        EvalResult {
            value,
            abs_err: 4.0 * f64::EPSILON * value.abs(),
            method,
        }
    }

    /// `abs_err / |value|`; infinite at a zero value with nonzero error.
    pub fn rel_err(&self) -> f64 {
        if self.abs_err == 0.0 {
            0.0
        } else {
            self.abs_err / self.value.abs()
        }
    }
}
