//! Confluent hypergeometric functions of matrix argument: the cone integral
//! `η_m`, its normalizations `η*_m`, `ξ_m`, `ω_m`, the closed form at
//! vanishing second argument, and the rank-1 reduction to Bessel K.

mod eta;
mod omega;
pub mod quad;

pub use eta::{
    eta1_closed_bessel, eta1_quadrature, eta_quadrature, eta_rank1_residue_point, eta_star,
    kappa, xi_from_eta, xi_zero_closed, ConeIntegralSpec,
};
pub use omega::{omega, SignatureData};
