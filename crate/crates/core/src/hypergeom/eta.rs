use super::quad::{exp_sinh_offset, trapezoid_line, QuadResult};
use crate::error::{Error, Result};
use crate::precision::PrecisionConfig;
use crate::specfun::{bessel_k, gamma, gamma_m, gamma_real};
use crate::symcore::{PosDefMatrix, Rank1Form, SymMatrix};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `κ(ν) = (ν+1)/2`.
pub fn kappa(nu: usize) -> f64 {
    (nu as f64 + 1.0) / 2.0
}

/// Specification of a cone integral: positive-definite `g`, symmetric `h` of
/// the same size, complex exponent pair.
#[derive(Debug, Clone)]
pub struct ConeIntegralSpec {
    pub g: PosDefMatrix,
    pub h: SymMatrix,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl ConeIntegralSpec {
    pub fn new(g: PosDefMatrix, h: SymMatrix, alpha: Complex64, beta: Complex64) -> Result<Self> {
        if g.size() != h.size() {
            return Err(Error::Dimension("g and h must have equal size".into()));
        }
        Ok(ConeIntegralSpec { g, h, alpha, beta })
    }

    pub fn size(&self) -> usize {
        self.g.size()
    }

    pub fn kappa(&self) -> f64 {
        kappa(self.size())
    }
}

fn h_rank(h: &SymMatrix) -> usize {
    let (vals, _) = h.eigen();
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    vals.iter().filter(|v| v.abs() > 1e-10 * scale).count()
}

fn check_convergence(spec: &ConeIntegralSpec) -> Result<()> {
    let m = spec.size();
    let k = kappa(m);
    let (a, b) = (spec.alpha.re, spec.beta.re);
    if a <= k - 1.0 + 1e-12 || b <= k - 1.0 + 1e-12 {
        return Err(Error::Convergence(format!(
            "eta integral needs Re(alpha), Re(beta) > {}, got {a}, {b}",
            k - 1.0
        )));
    }
    let rank = h_rank(&spec.h);
    if rank < m {
        // degenerate h: the boundary strata sharpen the condition on Re(α+β)
        let need = match (m, rank) {
            (1, 0) => 1.0,
            (2, 0) => 2.0,
            (2, 1) => 1.5,
            _ => 2.0 * k - 1.0,
        };
        if a + b <= need + 1e-12 {
            return Err(Error::Convergence(format!(
                "eta integral with rank-{rank} h of size {m} needs Re(alpha+beta) > {need}, got {}",
                a + b
            )));
        }
    }
    Ok(())
}

/// Cone integral of matrix argument over `{x : x ± h > 0}`:
/// `η_m(g,h;α,β) = ∫ e^{−σ(gx)} det(x+h)^{α−κ} det(x−h)^{β−κ} dx`,
/// by nested double-exponential quadrature. Supported sizes m ∈ {1, 2}.
pub fn eta_quadrature(spec: &ConeIntegralSpec, prec: &PrecisionConfig) -> Result<QuadResult> {
    check_convergence(spec)?;
    match spec.size() {
        1 => Ok(eta1_quadrature(
            spec.g.get(0, 0),
            spec.h.get(0, 0),
            spec.alpha,
            spec.beta,
            prec,
        )),
        2 => Ok(eta2_quadrature(spec, prec)),
        m => Err(Error::Unsupported(format!(
            "eta quadrature supports m in {{1,2}}, got {m}"
        ))),
    }
}

/// One-dimensional case: `∫_{|h|}^∞ e^{−gx}(x+h)^{α−1}(x−h)^{β−1} dx`.
///
/// The endpoint `x = |h|` carries an algebraic singularity in one factor;
/// both DE rules receive the exact distance to it.
pub fn eta1_quadrature(
    g: f64,
    h: f64,
    alpha: Complex64,
    beta: Complex64,
    prec: &PrecisionConfig,
) -> QuadResult {
    let x0 = h.abs();
    let ea = alpha - 1.0;
    let eb = beta - 1.0;
    let tol = prec.abs_tol.min(prec.rel_tol) * 1e-2;
    let depth = prec.quadrature_depth;
    // offsets of the two factors from the left endpoint: x ± h = d + (x0 ± h)
    let p_base = x0 + h; // 0 when h < 0
    let q_base = x0 - h; // 0 when h > 0
    let eval = |x: f64, d: f64| -> Complex64 {
        let p = p_base + d;
        let q = q_base + d;
        if p <= 0.0 || q <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let mut v = Complex64::new(-g * x, 0.0).exp();
        v *= Complex64::new(p, 0.0).powc(ea);
        v *= Complex64::new(q, 0.0).powc(eb);
        v
    };
    // one exp-sinh ladder handles both the endpoint singularity and the
    // exponential tail
    exp_sinh_offset(eval, x0, tol, depth)
}

/// Two-dimensional cone integral in coordinates
/// `x = [[a, b], [b, c]]`, innermost in `c` (DE rules with exact boundary
/// offsets), then `b` (refined trapezoid centered on the bump), then `a`.
fn eta2_quadrature(spec: &ConeIntegralSpec, prec: &PrecisionConfig) -> QuadResult {
    let (g, h) = (&spec.g, &spec.h);
    let (g11, g12, g22) = (g.get(0, 0), g.get(0, 1), g.get(1, 1));
    let (h11, h12, h22) = (h.get(0, 0), h.get(0, 1), h.get(1, 1));
    let ea = spec.alpha - spec.kappa();
    let eb = spec.beta - spec.kappa();
    // per-axis relative targets; inner noise must sit below the stopping
    // thresholds of the enclosing axes
    let tol_outer = prec.abs_tol.min(prec.rel_tol);
    let tol_mid = tol_outer * 0.3;
    let tol_inner = tol_outer * 0.03;
    let depth = prec.quadrature_depth.min(8);
    let depth_inner = depth.min(6);
    let evals = std::cell::Cell::new(0usize);
    let err_acc = std::cell::Cell::new(0.0f64);

    // exponent of the inner value as a function of b at fixed a (up to the
    // algebraic factors): φ(b) = g22·c0(a,b) + 2 g12 b
    let c_floor = |sp: f64, sm: f64, b: f64| -> f64 {
        let bp = b + h12;
        let bm = b - h12;
        (bp * bp / sp - h22).max(bm * bm / sm + h22)
    };

    // slopes of P± in c at the point a = a0 + da, kept exact near the edge
    let a0 = h11.abs();
    let sp_base = a0 + h11; // 0 when h11 < 0
    let sm_base = a0 - h11; // 0 when h11 > 0

    // P±(c) = (a ± h11)(c ± h22) − (b ± h12)² are linear in c; evaluate them
    // from the exact offset d = c − c0 to kill boundary cancellation.
    let inner = |da: f64, b: f64| -> Complex64 {
        let sp = sp_base + da;
        let sm = sm_base + da;
        if sp <= 0.0 || sm <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let bp = b + h12;
        let bm = b - h12;
        let c0 = c_floor(sp, sm, b);
        let pref = (-(g11 * (a0 + da) + 2.0 * g12 * b + g22 * c0)).exp();
        if pref < 1e-280 {
            return Complex64::new(0.0, 0.0);
        }
        let pp0 = (sp * (c0 + h22) - bp * bp).max(0.0);
        let pm0 = (sm * (c0 - h22) - bm * bm).max(0.0);
        let f = |d: f64| -> Complex64 {
            let pp = pp0 + sp * d;
            let pm = pm0 + sm * d;
            if pp <= 0.0 || pm <= 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let mut v = Complex64::new(-g22 * d, 0.0).exp();
            v *= Complex64::new(pp, 0.0).powc(ea);
            v *= Complex64::new(pm, 0.0).powc(eb);
            v
        };
        let r = exp_sinh_offset(|_, d| f(d), 0.0, tol_inner, depth_inner);
        evals.set(evals.get() + r.evals);
        err_acc.set(err_acc.get().max(r.abs_err * pref));
        r.value * pref
    };

    let middle = |da: f64| -> Complex64 {
        let sp = sp_base + da;
        let sm = sm_base + da;
        if sp <= 1e-300 || sm <= 1e-300 {
            return Complex64::new(0.0, 0.0);
        }
        let phi = |b: f64| g22 * c_floor(sp, sm, b) + 2.0 * g12 * b;
        // convex in b: locate the minimizer by ternary search
        let smax = sp.max(sm);
        let smin = sp.min(sm);
        let scale = (smax / g22).sqrt().max(1.0) * 8.0 + 2.0 * h12.abs();
        let (mut lo, mut hi) = (-scale, scale);
        for _ in 0..70 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if phi(m1) < phi(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let b_min = 0.5 * (lo + hi);
        let phi_min = phi(b_min);
        let drop = 45.0;
        // width of the bump from the steeper parabola, grown until the
        // integrand is negligible at both ends
        let mut half = (drop * smin / g22).sqrt().max(1e-3 * (smin / g22).sqrt());
        while (phi(b_min + half) - phi_min < drop || phi(b_min - half) - phi_min < drop)
            && half < 1e9
        {
            half *= 2.0;
        }
        trapezoid_line(|b| inner(da, b), b_min, half, tol_mid, depth).value
    };

    let outer = exp_sinh_offset(|_, da| middle(da), a0, tol_outer, depth);
    QuadResult {
        value: outer.value,
        abs_err: outer.abs_err + err_acc.get(),
        evals: evals.get(),
    }
}

/// `η*_m(g,h;α,β) = det(g)^{α+β−κ(m)} η_m(g,h;α,β)`; invariant under
/// `(g,h) → (g[a], h[ᵗa⁻¹])` for real invertible `a`.
pub fn eta_star(spec: &ConeIntegralSpec, prec: &PrecisionConfig) -> Result<Complex64> {
    let base = eta_quadrature(spec, prec)?;
    let d = spec.g.det();
    let pow = Complex64::new(d, 0.0).powc(spec.alpha + spec.beta - spec.kappa());
    Ok(base.value * pow)
}

/// Fourier-transform normalization
/// `ξ_m(g,h;α,β) = i^{m(β−α)} 2^m π^{mκ(m)} Γ_m(α)^{-1} Γ_m(β)^{-1} η_m(2g, πh; α, β)`.
pub fn xi_from_eta(
    g: &PosDefMatrix,
    h: &SymMatrix,
    alpha: Complex64,
    beta: Complex64,
    prec: &PrecisionConfig,
) -> Result<Complex64> {
    let m = g.size();
    let spec = ConeIntegralSpec::new(
        PosDefMatrix::new(g.as_sym().scale(2.0))?,
        h.scale(PI),
        alpha,
        beta,
    )?;
    let eta = eta_quadrature(&spec, prec)?;
    let i_pow = (Complex64::new(0.0, 1.0).ln() * (m as f64) * (beta - alpha)).exp();
    let ga = gamma_m(m, alpha)?;
    let gb = gamma_m(m, beta)?;
    Ok(i_pow * 2f64.powi(m as i32) * PI.powf(m as f64 * kappa(m)) / (ga * gb) * eta.value)
}

/// Closed form at `h = 0`:
/// `ξ_m(g,0;α,β) = i^{m(β−α)} 2^{m(1−κ)} (2π)^{mκ} Γ_m(α)^{-1} Γ_m(β)^{-1}
///                 Γ_m(α+β−κ) det(2g)^{κ−α−β}`.
pub fn xi_zero_closed(
    m: usize,
    g: &PosDefMatrix,
    alpha: Complex64,
    beta: Complex64,
) -> Result<Complex64> {
    if g.size() != m {
        return Err(Error::Dimension("size mismatch".into()));
    }
    let k = kappa(m);
    if (alpha + beta).re <= 2.0 * k - 1.0 {
        return Err(Error::Convergence(format!(
            "xi_zero_closed needs Re(alpha+beta) > {}",
            2.0 * k - 1.0
        )));
    }
    let i_pow = (Complex64::new(0.0, 1.0).ln() * (m as f64) * (beta - alpha)).exp();
    let ga = gamma_m(m, alpha)?;
    let gb = gamma_m(m, beta)?;
    let gs = gamma_m(m, alpha + beta - k)?;
    let det2g = 2f64.powi(m as i32) * g.det();
    let det_pow = Complex64::new(det2g, 0.0).powc(Complex64::new(k, 0.0) - alpha - beta);
    Ok(i_pow
        * 2f64.powf(m as f64 * (1.0 - k))
        * (2.0 * PI).powf(m as f64 * k)
        / (ga * gb)
        * gs
        * det_pow)
}

/// Closed Bessel form of the one-dimensional integral at equal exponents:
/// `η_1(g,h;s,s) = Γ(s) π^{−1/2} 2^{s−1/2} g^{1/2−s} |h|^{s−1/2} K_{s−1/2}(g|h|)`
/// for real `s` and `h ≠ 0`.
pub fn eta1_closed_bessel(g: f64, h: f64, s: f64) -> Result<f64> {
    if g <= 0.0 || h == 0.0 {
        return Err(Error::Domain("eta1_closed_bessel needs g > 0, h != 0".into()));
    }
    let habs = h.abs();
    let k = bessel_k(s - 0.5, g * habs)?;
    Ok(gamma(Complex64::new(s, 0.0)).re / PI.sqrt()
        * 2f64.powf(s - 0.5)
        * g.powf(0.5 - s)
        * habs.powf(s - 0.5)
        * k)
}

/// Value of `η_m(2y, π t·wᵗw; m/2, m/2)` for a rank-1 form, through the
/// one-dimensional reduction:
/// `π^{(m−1)/2} Γ_{m−1}((m−1)/2) det(2y)^{−(m−1)/2} K_0(2π |t| y[w])`.
pub fn eta_rank1_residue_point(y: &PosDefMatrix, h1: &Rank1Form) -> Result<f64> {
    let m = y.size();
    if h1.size() != m {
        return Err(Error::Dimension("rank-1 form size mismatch".into()));
    }
    let yw = y.form_value(&h1.w);
    let k0 = bessel_k(0.0, 2.0 * PI * h1.t.unsigned_abs() as f64 * yw)?;
    let gm1 = if m >= 2 {
        gamma_m(m - 1, Complex64::new((m as f64 - 1.0) / 2.0, 0.0))?.re
    } else {
        1.0
    };
    let det2y = 2f64.powi(m as i32) * y.det();
    Ok(PI.powf((m as f64 - 1.0) / 2.0) * gm1 * det2y.powf(-(m as f64 - 1.0) / 2.0) * k0)
}

#[allow(dead_code)]
fn gamma_real_unused(x: f64) -> f64 {
    gamma_real(x)
}
