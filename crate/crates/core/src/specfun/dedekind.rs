use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Dedekind eta `η(z) = e(z/24) ∏ (1 − e(nz))` on the upper half-plane.
///
/// The argument is first moved into the fundamental domain by integer shifts
/// and inversions (the inversion is the convergence accelerator for small
/// imaginary part), tracking the transformation multipliers exactly.
pub fn dedekind_eta(z: Complex64) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(Error::Domain(format!(
            "dedekind_eta needs Im z > 0, got {}",
            z.im
        )));
    }
    let mut z = z;
    let mut factor = Complex64::new(1.0, 0.0);
    for _ in 0..200 {
        let n = z.re.round();
        if n != 0.0 {
            // η(w + n) = e^{iπn/12} η(w) with w = z − n
            z -= n;
            factor *= Complex64::new(0.0, PI * n / 12.0).exp();
        }
        if z.im >= 0.5 {
            break;
        }
        // η(z) = √(−i z') η(z') with z' = −1/z
        let zp = -1.0 / z;
        factor *= (Complex64::new(0.0, -1.0) * zp).sqrt();
        z = zp;
    }
    if z.im < 0.5 {
        return Err(Error::Internal("eta reduction did not converge".into()));
    }
    let q24 = (Complex64::new(0.0, 2.0 * PI) * z / 24.0).exp();
    let q = (Complex64::new(0.0, 2.0 * PI) * z).exp();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 1..200 {
        qn *= q;
        if qn.norm() < 1e-18 {
            break;
        }
        prod *= Complex64::new(1.0, 0.0) - qn;
    }
    Ok(factor * q24 * prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma_real;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eta_at_i() {
        // η(i) = Γ(1/4) / (2 π^{3/4})
        let expect = gamma_real(0.25) / (2.0 * PI.powf(0.75));
        let v = dedekind_eta(c(0.0, 1.0)).unwrap();
        assert!((v.re - expect).abs() < 1e-13 && v.im.abs() < 1e-13);
        assert!((v.re - 0.7682254223260566).abs() < 1e-13);
    }

    #[test]
    fn eta_at_2i_and_scaling() {
        // η(2i) = Γ(1/4) / (2^{11/8} π^{3/4})
        let v = dedekind_eta(c(0.0, 2.0)).unwrap();
        let expect = gamma_real(0.25) / (2f64.powf(11.0 / 8.0) * PI.powf(0.75));
        assert!((v.re - expect).abs() < 1e-13, "{} vs {expect}", v.re);
        let eta_i = dedekind_eta(c(0.0, 1.0)).unwrap();
        // η(2i) = η(i) / 2^{3/8}
        assert!((v.re - eta_i.re / 2f64.powf(0.375)).abs() < 1e-13);
    }

    #[test]
    fn eta_shift_preserves_modulus() {
        let a = dedekind_eta(c(0.0, 1.0)).unwrap();
        let b = dedekind_eta(c(1.0, 1.0)).unwrap();
        assert!((a.norm() - b.norm()).abs() < 1e-13);
    }

    #[test]
    fn eta_inversion_consistency_small_im() {
        // compare the accelerated value at small Im against the raw product
        let z = c(0.3, 0.08);
        let fast = dedekind_eta(z).unwrap();
        let q24 = (Complex64::new(0.0, 2.0 * PI) * z / 24.0).exp();
        let q = (Complex64::new(0.0, 2.0 * PI) * z).exp();
        let mut prod = Complex64::new(1.0, 0.0);
        let mut qn = Complex64::new(1.0, 0.0);
        for _ in 1..4000 {
            qn *= q;
            prod *= Complex64::new(1.0, 0.0) - qn;
            if qn.norm() < 1e-17 {
                break;
            }
        }
        let slow = q24 * prod;
        assert!((fast - slow).norm() < 1e-10 * slow.norm());
    }

    #[test]
    fn eta_rejects_lower_half_plane() {
        assert!(dedekind_eta(c(0.0, -1.0)).is_err());
        assert!(dedekind_eta(c(1.0, 0.0)).is_err());
    }
}
