use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

// Lanczos approximation, g = 607/128, 15 coefficients.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_C: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

const LN_SQRT_2PI: f64 = 0.918938533204672741780329736406;

/// Principal branch of log Gamma for complex argument.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: log Γ(z) = log(π / sin(πz)) − log Γ(1−z)
        let lnsin = ln_sin_pi(z);
        return Complex64::new(PI.ln(), 0.0) - lnsin - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let mut s = Complex64::new(LANCZOS_C[0], 0.0);
    for (k, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        s += c / (z + (k as f64 - 1.0));
    }
    let t = z + (LANCZOS_G - 0.5);
    LN_SQRT_2PI + (z - 0.5) * t.ln() - t + s.ln()
}

// log(sin(πz)) stable for large |Im z|, branch consistent with ln_gamma's use.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let iz = Complex64::new(0.0, 1.0) * z * PI;
    if z.im > 0.0 {
        // sin(πz) = (e^{iπz} − e^{−iπz}) / 2i = −e^{−iπz}(1 − e^{2iπz})/(2i)
        let w = (Complex64::new(0.0, 2.0) * PI * z).exp();
        (-iz) + ((Complex64::new(1.0, 0.0) - w) * Complex64::new(0.0, 0.5)).ln()
    } else {
        let w = (Complex64::new(0.0, -2.0) * PI * z).exp();
        iz + ((Complex64::new(1.0, 0.0) - w) * Complex64::new(0.0, -0.5)).ln()
    }
}

/// Gamma function for complex argument.
pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// Gamma for real argument.
pub fn gamma_real(x: f64) -> f64 {
    if x > 0.5 {
        ln_gamma(Complex64::new(x, 0.0)).re.exp()
    } else {
        gamma(Complex64::new(x, 0.0)).re
    }
}

const BERNOULLI_OVER_2K: [f64; 7] = [
    // B_{2k} / 2k for k = 1..7
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Digamma ψ(z) for complex argument, by recurrence into the asymptotic
/// region.
pub fn digamma(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < 12.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for &b in BERNOULLI_OVER_2K.iter() {
        series += b * p;
        p *= inv2;
    }
    acc + z.ln() - 0.5 * inv - series
}

fn near_nonpositive_integer(z: Complex64, tol: f64) -> bool {
    if z.im.abs() > tol {
        return false;
    }
    let r = z.re.round();
    r <= 0.0 && (z.re - r).abs() <= tol
}

/// Multiple gamma function of degree `m`:
/// `Γ_m(s) = π^{m(m−1)/4} ∏_{ν=0}^{m−1} Γ(s − ν/2)`, with `Γ_0 = 1`.
///
/// A pole in any factor is reported as a structured error.
pub fn gamma_m(m: usize, s: Complex64) -> Result<Complex64> {
    if m == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut ln = Complex64::new((m * (m - 1)) as f64 / 4.0 * PI.ln(), 0.0);
    for nu in 0..m {
        let arg = s - nu as f64 / 2.0;
        if near_nonpositive_integer(arg, 1e-12) {
            return Err(Error::Pole {
                function: "gamma_m",
                argument: s,
                factor: format!("Gamma(s - {nu}/2)"),
            });
        }
        ln += ln_gamma(arg);
    }
    Ok(ln.exp())
}

/// `d/ds log Γ_m(s) = Σ_{ν=0}^{m−1} ψ(s − ν/2)`.
pub fn log_deriv_gamma_m(m: usize, s: Complex64) -> Result<Complex64> {
    let mut out = Complex64::new(0.0, 0.0);
    for nu in 0..m {
        let arg = s - nu as f64 / 2.0;
        if near_nonpositive_integer(arg, 1e-12) {
            return Err(Error::Pole {
                function: "log_deriv_gamma_m",
                argument: s,
                factor: format!("psi(s - {nu}/2)"),
            });
        }
        out += digamma(arg);
    }
    Ok(out)
}
