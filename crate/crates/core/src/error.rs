use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the numerical and arithmetic layers.
///
/// Poles are reported structurally (never as infinities) so that Laurent
/// assembly can tell which factor carries a singularity.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix not positive definite (leading minor {index} = {value:e})")]
    NotPositiveDefinite { index: usize, value: f64 },

    #[error("pole in {function} at argument {argument}: singular factor {factor}")]
    Pole {
        function: &'static str,
        argument: Complex64,
        factor: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("outside convergence region: {0}")]
    Convergence(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("missing input: {0}")]
    MissingInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("truncation too small: {0}")]
    Truncation(String),

    #[error("cost guard exceeded: {0}")]
    CostGuard(String),

    #[error("signature ambiguous: eigenvalue {eigenvalue:e} within 10x of tolerance {tol:e}")]
    SignatureAmbiguous { eigenvalue: f64, tol: f64 },

    #[error("extrapolation unstable: {0}")]
    Extrapolation(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    /// 0 ok, 1 internal, 2 domain/region, 3 missing input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MissingInput(_) => 3,
            Error::Dimension(_)
            | Error::NotPositiveDefinite { .. }
            | Error::Domain(_)
            | Error::Convergence(_)
            | Error::Unsupported(_)
            | Error::Parse(_)
            | Error::Pole { .. } => 2,
            _ => 1,
        }
    }
}
