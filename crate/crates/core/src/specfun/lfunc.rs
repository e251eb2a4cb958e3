use super::zeta::{hurwitz_zeta_deficient, riemann_zeta};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Kronecker symbol (d/n), the full extension of the Jacobi symbol.
pub fn kronecker_symbol(d: i64, n: i64) -> i64 {
    if d == 0 && n == 0 {
        return 0;
    }
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut a = d;
    let mut n = n;
    let mut result: i64 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // factor out 2s from n
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            0 | 2 | 4 | 6 => return 0,
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => unreachable!(),
        }
    }
    // now n odd positive: Jacobi symbol with reciprocity
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Dirichlet L-function `L(s, χ_d)` for the Kronecker character `(d/·)`,
/// computed through Hurwitz zeta on residue classes. Supported for
/// `Re(s) > 0` away from a pole of the principal part.
pub fn dirichlet_l(s: Complex64, d: i64) -> Result<Complex64> {
    if d == 0 {
        return Err(Error::Domain("dirichlet_l needs d != 0".into()));
    }
    if s.re <= 0.0 {
        return Err(Error::Unsupported(
            "dirichlet_l: continuation to Re(s) <= 0 not implemented".into(),
        ));
    }
    if d == 1 {
        return riemann_zeta(s);
    }
    // period of n -> (d/n): |d| when d ≡ 0,1 (mod 4), else 4|d|
    let q = if d.rem_euclid(4) <= 1 {
        d.unsigned_abs()
    } else {
        4 * d.unsigned_abs()
    } as i64;
    let chi: Vec<i64> = (1..=q).map(|a| kronecker_symbol(d, a)).collect();
    let chi_sum: i64 = chi.iter().sum();
    if chi_sum != 0 && (s - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::Pole {
            function: "dirichlet_l",
            argument: s,
            factor: "principal-part pole at s = 1".into(),
        });
    }
    // pole-subtracted Hurwitz zetas: the subtractions cancel against the
    // zero-mean coefficients, keeping everything regular through s = 1
    let qf = q as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    if chi_sum == 0 {
        for (idx, &x) in chi.iter().enumerate() {
            if x != 0 {
                let a = (idx + 1) as f64;
                sum += x as f64 * hurwitz_zeta_deficient(s, a / qf)?;
            }
        }
    } else {
        let mean = chi_sum as f64 / qf;
        for (idx, &x) in chi.iter().enumerate() {
            let a = (idx + 1) as f64;
            sum += (x as f64 - mean) * hurwitz_zeta_deficient(s, a / qf)?;
        }
        sum += chi_sum as f64 * riemann_zeta(s)? * Complex64::new(qf, 0.0).powc(s) / qf;
    }
    Ok(Complex64::new(qf, 0.0).powc(-s) * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn kronecker_basics() {
        for n in 1..=20 {
            assert_eq!(kronecker_symbol(1, n), 1);
        }
        assert_eq!(kronecker_symbol(-4, 3), -1);
        assert_eq!(kronecker_symbol(-4, 5), 1);
        // quadratic residue tables mod 3 and 5 for the character (.|p)
        let qr3: Vec<i64> = vec![1, -1]; // 1,2 mod 3
        for (i, &v) in qr3.iter().enumerate() {
            assert_eq!(kronecker_symbol((i + 1) as i64, 3), v);
        }
        let qr5: Vec<i64> = vec![1, -1, -1, 1];
        for (i, &v) in qr5.iter().enumerate() {
            assert_eq!(kronecker_symbol((i + 1) as i64, 5), v);
        }
        // (2/n) pattern mod 8
        assert_eq!(kronecker_symbol(2, 7), 1);
        assert_eq!(kronecker_symbol(2, 3), -1);
        // even entries give 0 against even d
        assert_eq!(kronecker_symbol(-4, 2), 0);
        assert_eq!(kronecker_symbol(12, 0), 0);
        assert_eq!(kronecker_symbol(-1, 0), 1);
    }

    #[test]
    fn kronecker_multiplicative() {
        for d in [-8i64, -4, -3, 5, 12, 21] {
            for a in 1i64..=15 {
                for b in 1i64..=15 {
                    assert_eq!(
                        kronecker_symbol(d, a * b),
                        kronecker_symbol(d, a) * kronecker_symbol(d, b),
                        "d={d} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn dirichlet_l_values() {
        // Catalan's constant
        let l = dirichlet_l(Complex64::new(2.0, 0.0), -4).unwrap();
        assert!((l.re - 0.915965594177219015).abs() < 1e-12, "{l}");
        // Leibniz
        let l = dirichlet_l(Complex64::new(1.0, 0.0), -4).unwrap();
        assert!((l.re - PI / 4.0).abs() < 1e-12);
        // principal character d = 1 is zeta
        let s = Complex64::new(3.0, 0.5);
        let l = dirichlet_l(s, 1).unwrap();
        let z = riemann_zeta(s).unwrap();
        assert!((l - z).norm() < 1e-13);
        // L(2, chi_{-3}) from the series directly
        let mut direct = 0.0;
        for n in 1..200000u64 {
            direct += kronecker_symbol(-3, n as i64) as f64 / (n * n) as f64;
        }
        let l = dirichlet_l(Complex64::new(2.0, 0.0), -3).unwrap();
        assert!((l.re - direct).abs() < 1e-9);
    }

    #[test]
    fn dirichlet_l_imprimitive_square_discriminant() {
        // d = 4: (4/n) = 1 for odd n, 0 for even: L(s) = (1 − 2^{−s}) ζ(s)
        let s = Complex64::new(2.5, 0.0);
        let l = dirichlet_l(s, 4).unwrap();
        let expect = riemann_zeta(s).unwrap() * (1.0 - 2f64.powf(-2.5));
        assert!((l - expect).norm() < 1e-12, "{l} vs {expect}");
    }

    #[test]
    fn dirichlet_l_region_guard() {
        assert!(dirichlet_l(Complex64::new(-0.5, 0.0), -4).is_err());
        assert!(dirichlet_l(Complex64::new(2.0, 0.0), 0).is_err());
    }
}
