use serde::{Deserialize, Serialize};

/// Numerical targets shared by series, quadrature and lattice summation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct PrecisionConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
    pub quadrature_depth: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_terms: 2_000_000,
            quadrature_depth: 9,
        }
    }
}

impl PrecisionConfig {
    /// A cheaper configuration for inner loops of multi-dimensional cubature.
    pub fn relaxed(&self, factor: f64) -> Self {
        PrecisionConfig {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let p = PrecisionConfig {
            abs_tol: 1e-9,
            rel_tol: 1e-8,
            max_terms: 500,
            quadrature_depth: 7,
        };
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"abs_tol\""));
        assert!(s.contains("\"quadrature_depth\""));
        let q: PrecisionConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
