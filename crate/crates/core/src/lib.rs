//! Wright and Mittag-Leffler functions, the distributions `M_{alpha,beta}`
//! built from them, and numerical checks of their shape properties.
//!
//! ```
//! use wrightml::{ml_eval, MlParams};
//!
//! let r = ml_eval(MlParams::new(0.5, 1.0).unwrap(), -1.0).unwrap();
//! assert!((r.value - 0.427_583_576_155_807).abs() < 1e-14);
//! ```

pub mod analysis;
pub mod critical;
pub mod dd;
pub mod distribution;
pub mod entropy;
pub mod error;
pub mod eval;
pub mod gamma;
pub mod mittag_leffler;
pub mod quad;
pub mod report;
pub mod roots;
pub mod series;
pub mod wright;

pub use analysis::{
    count_inflections, count_mode_changes, count_zeros, logconcavity_scan, msu_classify,
    reciprocal_convexity_grid, reciprocal_convexity_un, turan_check, HalfLine,
};
pub use critical::{
    rho_curve, rho_of_alpha, rho_of_alpha_beta, solve_alpha_star, solve_alpha_star_beta,
    CriticalResult,
};
pub use distribution::{mellin_factor_x, mellin_moment, AdmissiblePair, DensityModel};
pub use entropy::EntropyGen;
pub use error::{Error, Result};
pub use eval::{EvalResult, Method};
pub use gamma::{gamma, log_abs_gamma, pochhammer, recip_gamma};
pub use mittag_leffler::{ml_asymptotic_negative, ml_derivative, ml_eval, MlParams};
pub use report::{GridSpec, Property, ScanReport, Spacing, Verdict, ZeroReport};
pub use series::Scaled;
pub use wright::{wright_deriv_shift, wright_eval, wright_eval_scaled, WrightParams};
