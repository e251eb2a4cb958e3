//! Scalar special functions: gamma and multiple gamma, Riemann zeta and its
//! derivative, the completed xi, Dirichlet L-functions through Kronecker
//! characters, Dedekind eta, modified Bessel K, and divisor sums.
//!
//! Every function reports poles by a structured error instead of returning
//! infinities.

mod bessel;
mod dedekind;
mod divisor;
pub(crate) mod gamma;
mod lfunc;
mod zeta;

pub use bessel::bessel_k;
pub use dedekind::dedekind_eta;
pub use divisor::{divisors, sigma0, sigma_power};
pub use gamma::{digamma, gamma, gamma_m, gamma_real, ln_gamma, log_deriv_gamma_m};
pub use lfunc::{dirichlet_l, kronecker_symbol};
pub use zeta::{hurwitz_zeta, riemann_zeta, riemann_zeta_deriv, v_constant, xi_completed, xi_real};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.57721566490153286061;
