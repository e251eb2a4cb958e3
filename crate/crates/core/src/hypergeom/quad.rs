//! Double-exponential quadrature rules used by the cone integrals and the
//! incomplete-gamma evaluations. Deterministic: fixed node ladders, refined
//! by halving until the estimated error meets the tolerance.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_err: f64,
    pub evals: usize,
}

const T_MAX: f64 = 5.0;

/// tanh-sinh rule on a finite interval; tolerates integrable endpoint
/// singularities. `f` receives `(x, dist)` with `dist` the exact distance to
/// the nearer endpoint, so that algebraic singularities can be evaluated
/// without endpoint cancellation.
pub fn tanh_sinh_endpoint<F: FnMut(f64, f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_level: usize,
) -> QuadResult {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    if r <= 0.0 {
        return QuadResult {
            value: Complex64::new(0.0, 0.0),
            abs_err: 0.0,
            evals: 0,
        };
    }
    let mut evals = 0usize;
    let center = {
        evals += 1;
        let v = f(c, r);
        if v.is_finite() {
            v * FRAC_PI_2 * r
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    // node at parameter t > 0: offset d = r(1 − tanh(u)) from the endpoint,
    // weight w = r (π/2) cosh(t) sech²(u), u = (π/2) sinh t
    let mut pair = |t: f64| -> Complex64 {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u).exp(); // in (0, 1] for t >= 0
        let dfrac = 2.0 * e / (1.0 + e); // 1 − tanh(u)
        let sech2 = dfrac * (2.0 - dfrac);
        let w = FRAC_PI_2 * t.cosh() * sech2 * r;
        if !(w > 1e-320) {
            return Complex64::new(0.0, 0.0);
        }
        let d = r * dfrac;
        evals += 2;
        let hi = f(b - d, d);
        let lo = f(a + d, d);
        let hi = if hi.is_finite() { hi } else { Complex64::new(0.0, 0.0) };
        let lo = if lo.is_finite() { lo } else { Complex64::new(0.0, 0.0) };
        (hi + lo) * w
    };

    let mut h = 1.0;
    let mut sum = center;
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        sum += pair(k as f64 * h);
        k += 1;
    }
    let mut value = sum * h;
    let mut abs_err = f64::INFINITY;
    for _level in 1..=max_level {
        h *= 0.5;
        let mut add = Complex64::new(0.0, 0.0);
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            add += pair(k as f64 * h);
            k += 2;
        }
        let new_value = (value / (2.0 * h) + add) * h;
        abs_err = (new_value - value).norm();
        value = new_value;
        if abs_err <= tol * value.norm() + 1e-305 {
            break;
        }
    }
    QuadResult {
        value,
        abs_err,
        evals,
    }
}

/// tanh-sinh with a plain integrand.
pub fn tanh_sinh<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_level: usize,
) -> QuadResult {
    tanh_sinh_endpoint(|x, _| f(x), a, b, tol, max_level)
}

/// exp-sinh rule on `(a, ∞)`; `f` receives `(x, x − a)` with the offset
/// computed exactly.
pub fn exp_sinh_offset<F: FnMut(f64, f64) -> Complex64>(
    mut f: F,
    a: f64,
    tol: f64,
    max_level: usize,
) -> QuadResult {
    let mut evals = 0usize;
    let mut node = |t: f64| -> Complex64 {
        let u = FRAC_PI_2 * t.sinh();
        let d = u.exp();
        let w = FRAC_PI_2 * t.cosh() * d;
        if !w.is_finite() || w < 1e-320 || !d.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        evals += 1;
        let v = f(a + d, d);
        if v.is_finite() {
            v * w
        } else {
            Complex64::new(0.0, 0.0)
        }
    };

    let mut h = 1.0;
    let mut sum = node(0.0);
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        let t = k as f64 * h;
        sum += node(t) + node(-t);
        k += 1;
    }
    let mut value = sum * h;
    let mut abs_err = f64::INFINITY;
    for _level in 1..=max_level {
        h *= 0.5;
        let mut add = Complex64::new(0.0, 0.0);
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            let t = k as f64 * h;
            add += node(t) + node(-t);
            k += 2;
        }
        let new_value = (value / (2.0 * h) + add) * h;
        abs_err = (new_value - value).norm();
        value = new_value;
        if abs_err <= tol * value.norm() + 1e-305 {
            break;
        }
    }
    QuadResult {
        value,
        abs_err,
        evals,
    }
}

/// exp-sinh with a plain integrand.
pub fn exp_sinh<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    tol: f64,
    max_level: usize,
) -> QuadResult {
    exp_sinh_offset(|x, _| f(x), a, tol, max_level)
}

/// Refined trapezoid rule over the whole line for analytic integrands with
/// fast two-sided decay (Gaussian-like bumps); nodes `center ± k·h`.
pub fn trapezoid_line<F: FnMut(f64) -> Complex64>(
    mut f: F,
    center: f64,
    half_width: f64,
    tol: f64,
    max_level: usize,
) -> QuadResult {
    let mut evals = 0usize;
    let center_val = {
        evals += 1;
        let v = f(center);
        if v.is_finite() {
            v
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    let mut sum_at = |h: f64, odd_only: bool| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        let kmax = (half_width / h).ceil() as i64;
        let mut k = 1;
        while k <= kmax {
            let x = k as f64 * h;
            evals += 2;
            let va = f(center + x);
            let vb = f(center - x);
            if va.is_finite() {
                s += va;
            }
            if vb.is_finite() {
                s += vb;
            }
            k += if odd_only { 2 } else { 1 };
        }
        s
    };
    let mut h = half_width / 8.0;
    let mut value = (center_val + sum_at(h, false)) * h;
    let mut abs_err = f64::INFINITY;
    for _level in 1..=max_level {
        h *= 0.5;
        let add = sum_at(h, true);
        let new_value = (value / (2.0 * h) + add) * h;
        abs_err = (new_value - value).norm();
        value = new_value;
        if abs_err <= tol * value.norm() + 1e-305 {
            break;
        }
    }
    QuadResult {
        value,
        abs_err,
        evals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tanh_sinh_smooth() {
        let r = tanh_sinh(|x| Complex64::new(x.sin(), 0.0), 0.0, PI, 1e-13, 10);
        assert!((r.value.re - 2.0).abs() < 1e-12, "{}", r.value.re);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2, using the exact endpoint offset
        let r = tanh_sinh_endpoint(
            |x, d| {
                let u = if x < 0.5 { d } else { x };
                Complex64::new(1.0 / u.sqrt(), 0.0)
            },
            0.0,
            1.0,
            1e-13,
            10,
        );
        assert!((r.value.re - 2.0).abs() < 1e-12, "{:.15}", r.value.re);
        // ∫_0^1 ln(x) dx = −1
        let r = tanh_sinh_endpoint(
            |x, d| {
                let u = if x < 0.5 { d } else { x };
                Complex64::new(u.ln(), 0.0)
            },
            0.0,
            1.0,
            1e-13,
            10,
        );
        assert!((r.value.re + 1.0).abs() < 1e-12, "{:.15}", r.value.re);
    }

    #[test]
    fn exp_sinh_exponential() {
        let r = exp_sinh(|x| Complex64::new((-x).exp(), 0.0), 0.0, 1e-13, 10);
        assert!((r.value.re - 1.0).abs() < 1e-12);
        let r = exp_sinh(|x| Complex64::new(x * (-x).exp(), 0.0), 2.0, 1e-13, 10);
        assert!((r.value.re - 3.0 * (-2.0f64).exp()).abs() < 1e-12);
        // ∫_0^∞ x^{-1/2} e^{-x} dx = √π
        let r = exp_sinh_offset(
            |_, d| Complex64::new((-d).exp() / d.sqrt(), 0.0),
            0.0,
            1e-13,
            10,
        );
        assert!((r.value.re - PI.sqrt()).abs() < 1e-12, "{:.15}", r.value.re);
    }

    #[test]
    fn trapezoid_gaussian() {
        // ∫ e^{-(x-3)²} dx = √π
        let r = trapezoid_line(
            |x| Complex64::new((-(x - 3.0) * (x - 3.0)).exp(), 0.0),
            3.0,
            9.0,
            1e-13,
            10,
        );
        assert!((r.value.re - PI.sqrt()).abs() < 1e-12, "{:.15}", r.value.re);
    }

    #[test]
    fn complex_integrand() {
        let r = exp_sinh(|x| (Complex64::new(-1.0, -1.0) * x).exp(), 0.0, 1e-13, 10);
        let expect = 1.0 / Complex64::new(1.0, 1.0);
        assert!((r.value - expect).norm() < 1e-12);
    }
}
