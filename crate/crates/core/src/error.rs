use thiserror::Error;

/// Errors raised by the evaluators, solvers and scans.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested evaluation branch does not apply at this argument.
    #[error("regime error: {0}")]
    Regime(String),

    /// No available method could certify the requested accuracy.
    #[error("accuracy error: {what} (best value {value:e}, abs_err {abs_err:e})")]
    Accuracy {
        what: String,
        value: f64,
        abs_err: f64,
    },

    /// Adaptive quadrature did not reach its tolerance.
    #[error("quadrature did not converge: estimate {value:e}, abs_err {abs_err:e}")]
    Quadrature { value: f64, abs_err: f64 },

    /// A root bracket did not contain a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {flo:e}, f(hi) = {fhi:e}")]
    Bracket {
        lo: f64,
        hi: f64,
        flo: f64,
        fhi: f64,
    },

    /// The result does not fit in a double.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A probability vector failed validation.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
