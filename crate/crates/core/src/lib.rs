//! Numerical evaluation of residues of degree-m real-analytic Siegel
//! Eisenstein series, together with the special-function stack that feeds
//! them: confluent hypergeometric functions of matrix argument, Siegel
//! singular series, Epstein and Koecher-Maass zeta functions, and a set of
//! independent brute-force oracles used for verification.
//!
//! The crate is organized bottom-up:
//!
//! - [`symcore`] — exact/float linear algebra, half-integral forms, lattice
//!   enumeration;
//! - [`specfun`] — scalar special functions (gamma and multiple gamma,
//!   Riemann zeta and derivative, Dirichlet L, Dedekind eta, Bessel K,
//!   divisor sums);
//! - [`hypergeom`] — cone integrals of matrix argument and their closed
//!   forms;
//! - [`siegelseries`] — the singular series through local densities;
//! - [`zetalattice`] — Epstein zeta with analytic continuation, the first
//!   Kronecker limit formula, Koecher-Maass zeta functions and residues;
//! - [`residue`] — the Laurent data and residue assembly for the Eisenstein
//!   series, including the Fourier-expansion evaluator;
//! - [`oracle`] — independent direct-sum and brute-force verification paths;
//! - [`verify`] — the named check suites exposed by the CLI.

pub mod error;
pub mod hypergeom;
pub mod oracle;
pub mod precision;
pub mod residue;
pub mod siegelseries;
pub mod specfun;
pub mod symcore;
pub mod verify;
pub mod zetalattice;

pub use error::{Error, Result};
pub use precision::PrecisionConfig;

use std::sync::OnceLock;

static THREAD_POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();

/// Thread pool for data-parallel summations, capped by `RESIDUE_THREADS`.
pub fn thread_pool() -> &'static rayon::ThreadPool {
    THREAD_POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Ok(v) = std::env::var("RESIDUE_THREADS") {
            if let Ok(n) = v.trim().parse::<usize>() {
                if n >= 1 {
                    builder = builder.num_threads(n);
                }
            }
        }
        builder.build().expect("thread pool")
    })
}
