use super::gamma::ln_gamma;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

// B_{2k} for k = 1..12
const BERNOULLI_2K: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

fn em_n(s: Complex64) -> usize {
    (18.0 + 0.8 * s.im.abs()).ceil() as usize
}

/// Riemann zeta by Euler-Maclaurin summation. Accurate to near machine
/// precision for Re(s) > -6 and moderate |Im(s)|, which covers every
/// evaluation point in this crate.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::Pole {
            function: "riemann_zeta",
            argument: s,
            factor: "zeta(s) at s = 1".into(),
        });
    }
    let n = em_n(s);
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += Complex64::new(k as f64, 0.0).powc(-s);
    }
    let npow = Complex64::new(nf, 0.0).powc(-s);
    sum += npow * nf / (s - 1.0); // N^{1−s}/(s−1)
    sum += 0.5 * npow;
    // Bernoulli tail: Σ B_{2k}/(2k)! · (s)_{2k−1} · N^{−s−2k+1}
    let mut poch = s; // (s)_1
    let mut fact = 2.0; // (2k)! at k=1
    let mut npow_k = npow / nf; // N^{−s−1}
    for (k, &b2k) in BERNOULLI_2K.iter().enumerate() {
        let k1 = k + 1;
        if k1 > 1 {
            poch *= (s + (2 * k1 - 3) as f64) * (s + (2 * k1 - 2) as f64);
            fact *= ((2 * k1 - 1) * (2 * k1)) as f64;
            npow_k /= nf * nf;
        }
        // term is B_{2k}/(2k)! (s)_{2k−1} N^{−s−2k+1}
        sum += (b2k / fact) * poch * npow_k;
    }
    Ok(sum)
}

/// Derivative of Riemann zeta, by term-wise differentiated Euler-Maclaurin.
pub fn riemann_zeta_deriv(s: Complex64) -> Result<Complex64> {
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::Pole {
            function: "riemann_zeta_deriv",
            argument: s,
            factor: "zeta'(s) at s = 1".into(),
        });
    }
    let n = em_n(s);
    let nf = n as f64;
    let ln_n = nf.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let kf = k as f64;
        sum -= kf.ln() * Complex64::new(kf, 0.0).powc(-s);
    }
    let npow = Complex64::new(nf, 0.0).powc(-s);
    // d/ds [N^{1−s}/(s−1)] = −ln N · N^{1−s}/(s−1) − N^{1−s}/(s−1)²
    let sm1 = s - 1.0;
    sum += npow * nf * (-ln_n / sm1 - 1.0 / (sm1 * sm1));
    sum += -0.5 * ln_n * npow;
    // d/ds of Bernoulli terms, tracking the Pochhammer derivative by the
    // product rule (no logarithmic form: (s)_{2k−1} may vanish)
    let mut poch = s;
    let mut dpoch = Complex64::new(1.0, 0.0);
    let mut fact = 2.0;
    let mut npow_k = npow / nf;
    for (k, &b2k) in BERNOULLI_2K.iter().enumerate() {
        let k1 = k + 1;
        if k1 > 1 {
            let a = s + (2 * k1 - 3) as f64;
            let b = s + (2 * k1 - 2) as f64;
            dpoch = dpoch * a * b + poch * (a + b);
            poch *= a * b;
            fact *= ((2 * k1 - 1) * (2 * k1)) as f64;
            npow_k /= nf * nf;
        }
        sum += (b2k / fact) * npow_k * (dpoch - poch * ln_n);
    }
    Ok(sum)
}

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n+a)^{−s}` for `a > 0`, Euler-Maclaurin.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if a <= 0.0 {
        return Err(Error::Domain("hurwitz_zeta needs a > 0".into()));
    }
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            argument: s,
            factor: "zeta(s,a) at s = 1".into(),
        });
    }
    let n = em_n(s) + 4;
    let base = n as f64 + a;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        sum += Complex64::new(k as f64 + a, 0.0).powc(-s);
    }
    let bpow = Complex64::new(base, 0.0).powc(-s);
    sum += bpow * base / (s - 1.0);
    sum += 0.5 * bpow;
    let mut poch = s;
    let mut fact = 2.0;
    let mut bpow_k = bpow / base;
    for (k, &b2k) in BERNOULLI_2K.iter().enumerate() {
        let k1 = k + 1;
        if k1 > 1 {
            poch *= (s + (2 * k1 - 3) as f64) * (s + (2 * k1 - 2) as f64);
            fact *= ((2 * k1 - 1) * (2 * k1)) as f64;
            bpow_k /= base * base;
        }
        sum += (b2k / fact) * poch * bpow_k;
    }
    Ok(sum)
}

/// `ζ(s, a) − 1/(s−1)`: the Hurwitz zeta with its pole removed, regular
/// through `s = 1` (where it equals `−ψ(a)`).
pub fn hurwitz_zeta_deficient(s: Complex64, a: f64) -> Result<Complex64> {
    if a <= 0.0 {
        return Err(Error::Domain("hurwitz_zeta_deficient needs a > 0".into()));
    }
    let n = em_n(s) + 4;
    let base = n as f64 + a;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        sum += Complex64::new(k as f64 + a, 0.0).powc(-s);
    }
    // (N+a)^{1−s}/(s−1) − 1/(s−1) = −L φ((1−s) L), L = ln(N+a)
    let l = base.ln();
    let z = (Complex64::new(1.0, 0.0) - s) * l;
    let phi = if z.norm() < 1e-4 {
        1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0
    } else {
        (z.exp() - 1.0) / z
    };
    sum -= l * phi;
    let bpow = Complex64::new(base, 0.0).powc(-s);
    sum += 0.5 * bpow;
    let mut poch = s;
    let mut fact = 2.0;
    let mut bpow_k = bpow / base;
    for (k, &b2k) in BERNOULLI_2K.iter().enumerate() {
        let k1 = k + 1;
        if k1 > 1 {
            poch *= (s + (2 * k1 - 3) as f64) * (s + (2 * k1 - 2) as f64);
            fact *= ((2 * k1 - 1) * (2 * k1)) as f64;
            bpow_k /= base * base;
        }
        sum += (b2k / fact) * poch * bpow_k;
    }
    Ok(sum)
}

/// Completed zeta `ξ(s) = π^{−s/2} Γ(s/2) ζ(s)`; poles at 0 and 1.
pub fn xi_completed(s: Complex64) -> Result<Complex64> {
    for pole in [0.0, 1.0] {
        if (s - Complex64::new(pole, 0.0)).norm() < 1e-12 {
            return Err(Error::Pole {
                function: "xi_completed",
                argument: s,
                factor: format!("xi(s) at s = {pole}"),
            });
        }
    }
    let z = riemann_zeta(s)?;
    let ln = -s / 2.0 * PI.ln() + ln_gamma(s / 2.0);
    Ok(ln.exp() * z)
}

/// Real-argument completed zeta, for the product constants.
pub fn xi_real(x: f64) -> Result<f64> {
    Ok(xi_completed(Complex64::new(x, 0.0))?.re)
}

/// `v(ν) = ∏_{i=2}^{ν} ξ(i)`, with `v(1) = 1`.
pub fn v_constant(nu: usize) -> Result<f64> {
    if nu == 0 {
        return Err(Error::Domain("v_constant needs nu >= 1".into()));
    }
    let mut p = 1.0;
    for i in 2..=nu {
        p *= xi_real(i as f64)?;
    }
    Ok(p)
}
