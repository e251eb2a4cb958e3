use num_complex::Complex64;
use siegel_residue::hypergeom::{eta_quadrature, ConeIntegralSpec};
use siegel_residue::symcore::{PosDefMatrix, SymMatrix};
use siegel_residue::PrecisionConfig;
use std::time::Instant;

fn main() {
    let g = PosDefMatrix::new(SymMatrix::from_rows(&[vec![1.2, 0.2], vec![0.2, 1.0]]).unwrap())
        .unwrap();
    let h = SymMatrix::from_rows(&[vec![0.9, 0.1], vec![0.1, 0.7]]).unwrap();
    for tol in [1e-6, 1e-7, 1e-8, 1e-9] {
        let prec = PrecisionConfig {
            abs_tol: tol,
            rel_tol: tol,
            quadrature_depth: 8,
            ..Default::default()
        };
        let spec = ConeIntegralSpec::new(
            g.clone(),
            h.clone(),
            Complex64::new(1.9, 0.0),
            Complex64::new(2.1, 0.0),
        )
        .unwrap();
        let t0 = Instant::now();
        let r = eta_quadrature(&spec, &prec).unwrap();
        println!(
            "tol={tol:e}: value={:+.12e} err_est={:.2e} evals={} time={:?}",
            r.value.re,
            r.abs_err,
            r.evals,
            t0.elapsed()
        );
    }
    // rank-1 h case (the kind used in the residue series checks)
    let h = SymMatrix::from_rows(&[vec![std::f64::consts::PI, 0.0], vec![0.0, 0.0]]).unwrap();
    let spec = ConeIntegralSpec::new(
        PosDefMatrix::new(g.as_sym().scale(2.0)).unwrap(),
        h,
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.0),
    )
    .unwrap();
    let prec = PrecisionConfig {
        abs_tol: 1e-8,
        rel_tol: 1e-8,
        quadrature_depth: 8,
        ..Default::default()
    };
    let t0 = Instant::now();
    let r = eta_quadrature(&spec, &prec).unwrap();
    println!(
        "rank1: value={:+.12e} err={:.2e} evals={} time={:?}",
        r.value.re,
        r.abs_err,
        r.evals,
        t0.elapsed()
    );
}
