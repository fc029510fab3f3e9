//! Special functions and the analytic gadgets behind the approximate
//! functional equation.

pub mod afe_coeffs;
pub mod conductor;
pub mod gamma;
mod mellin;
pub mod quadrature;
pub mod smoothing;

use thiserror::Error;

pub use afe_coeffs::{afe_coefficients, AfeCoefficients};
pub use conductor::{c0, ln_x_d, t_of, x_d, x_d_bound_ratio, T_MIN};
pub use gamma::{digamma, ln_gamma, GammaEngine, EULER_GAMMA};
pub use smoothing::{phi, Smoothing, SmoothingConfig, WEtaFamily};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("pole at {re}+{im}i")]
    Pole { re: f64, im: f64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(&'static str),
    #[error("Mellin transform has a pole at z = 0")]
    PoleAtZero,
    #[error("invalid smoothing configuration: {0}")]
    Config(String),
    #[error("derivative order {0} exceeds the closed-form table")]
    DerivativeOrder(usize),
}
