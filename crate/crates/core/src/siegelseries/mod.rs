//! The Siegel singular series `S_ν(h, s)` through closed formulas:
//! degenerate-rank reduction, the rank-0 and rank-1 evaluations, and the
//! full rank-2 evaluation via local densities.

use crate::error::{Error, Result};
use crate::specfun::{dirichlet_l, kronecker_symbol, riemann_zeta, sigma_power};
use crate::symcore::{gcd_i64, HalfIntegralForm, IntMat};
use num_complex::Complex64;

/// Exact discriminant data of a full-rank half-integral form:
/// `d(h) = (−1)^{[λ/2]} 2^{−δ((λ−1)/2)} det(2h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantData {
    pub rank: usize,
    pub d: i64,
}

impl DiscriminantData {
    pub fn new(h: &HalfIntegralForm) -> Result<Self> {
        let lam = h.size();
        if h.rank() != lam {
            return Err(Error::Domain(format!(
                "discriminant needs a full-rank form; rank {} of size {lam}",
                h.rank()
            )));
        }
        let det2h = h.det_doubled();
        // δ((λ−1)/2) = 1 exactly when λ is odd
        let two_pow = if lam % 2 == 1 { 2 } else { 1 };
        let sign = if (lam / 2) % 2 == 1 { -1 } else { 1 };
        if det2h % two_pow != 0 {
            return Err(Error::Internal("det(2h) parity violation".into()));
        }
        let d = sign as i128 * det2h / two_pow as i128;
        let d = i64::try_from(d).map_err(|_| Error::Domain("discriminant overflow".into()))?;
        Ok(DiscriminantData { rank: lam, d })
    }
}

/// The zeta-factor list of the degenerate-rank reduction: numerator and
/// denominator arguments of
/// `ζ(s+λ−ν) ζ(s)^{−1} ∏_{j=1}^{ν−λ} ζ(2s−ν−j) ζ(2s−2j)^{−1}`.
///
/// Shared by the rank-0 formula and the general reduction so the two stay
/// identical by construction.
pub fn reduction_factor_args(
    nu: usize,
    lam: usize,
    s: Complex64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut num = vec![s + lam as f64 - nu as f64];
    let mut den = vec![s];
    for j in 1..=(nu - lam) {
        num.push(2.0 * s - nu as f64 - j as f64);
        den.push(2.0 * s - 2.0 * j as f64);
    }
    (num, den)
}

fn eval_factor_lists(
    function: &'static str,
    s: Complex64,
    num: &[Complex64],
    den: &[Complex64],
) -> Result<Complex64> {
    let mut v = Complex64::new(1.0, 0.0);
    for &a in num {
        let z = riemann_zeta(a).map_err(|_| Error::Pole {
            function,
            argument: s,
            factor: format!("zeta({a})"),
        })?;
        v *= z;
    }
    for &a in den {
        let z = riemann_zeta(a).map_err(|_| Error::Pole {
            function,
            argument: s,
            factor: format!("zeta({a}) in denominator"),
        })?;
        if z.norm() < 1e-14 {
            return Err(Error::Pole {
                function,
                argument: s,
                factor: format!("zero denominator zeta({a})"),
            });
        }
        v /= z;
    }
    Ok(v)
}

/// `S_ν(0_ν, s) = ζ(s−ν) ζ(s)^{−1} ∏_{j=1}^{ν} ζ(2s−ν−j) ζ(2s−2j)^{−1}`,
/// with `S_0(·, s) = 1`.
pub fn siegel_rank0(nu: usize, s: Complex64) -> Result<Complex64> {
    if nu == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let (num, den) = reduction_factor_args(nu, 0, s);
    eval_factor_lists("siegel_rank0", s, &num, &den)
}

/// `S_1(h, s) = ζ(s)^{−1} σ_{1−s}(|h|)`; the dependence on `|h|` only is
/// checked against the defining-sum oracle in the test suite.
pub fn siegel_rank1(h: i64, s: Complex64) -> Result<Complex64> {
    if h == 0 {
        return Err(Error::Domain("siegel_rank1 needs h != 0".into()));
    }
    let z = riemann_zeta(s)?;
    Ok(sigma_power(h.unsigned_abs(), Complex64::new(1.0, 0.0) - s) / z)
}

/// Local factor data: `r(p)` and the character value `λ_p(h) = (d(h*)/p)`,
/// computed by exhaustive reduction mod p. Supports rank 1 and 2.
pub fn local_r_and_lambda(h: &HalfIntegralForm, p: i64) -> Result<(usize, i64)> {
    let lam = h.size();
    match lam {
        1 => {
            let val = h.diag(0);
            if val % p == 0 {
                // zero block of size 1; h* is empty, d(h*) = 1
                Ok((1, 1))
            } else {
                Ok((0, kronecker_symbol(val, p)))
            }
        }
        2 => {
            let d = h.doubled_mat();
            // r = 2 iff h/p is still half-integral
            let all_div =
                (0..2).all(|i| (0..2).all(|j| d.get(i, j) % p == 0) && h.diag(i) % p == 0);
            if all_div {
                return Ok((2, 1));
            }
            // r = 1 iff some primitive v mod p has Dv ≡ 0 (mod p) and
            // ᵗvDv ≡ 0 (mod 2p)
            let reps: Vec<(i64, i64)> = if p == 2 {
                vec![(1, 0), (0, 1), (1, 1)]
            } else {
                let mut v = vec![(1i64, 0i64)];
                for k in 0..p {
                    v.push((k, 1));
                }
                v
            };
            for &(v0, v1) in &reps {
                let dv0 = d.get(0, 0) * v0 + d.get(0, 1) * v1;
                let dv1 = d.get(1, 0) * v0 + d.get(1, 1) * v1;
                if dv0.rem_euclid(p) != 0 || dv1.rem_euclid(p) != 0 {
                    continue;
                }
                let vdv = v0 * dv0 + v1 * dv1;
                if vdv.rem_euclid(2 * p) != 0 {
                    continue;
                }
                // complete v to a unimodular matrix; h* = h[u1]
                let g = gcd_i64(v0, v1);
                let (w0, w1) = (v0 / g, v1 / g);
                let (u0, u1) = bezout_complement(w0, w1);
                let a_star = (u0 * (d.get(0, 0) * u0 + d.get(0, 1) * u1)
                    + u1 * (d.get(1, 0) * u0 + d.get(1, 1) * u1))
                    / 2;
                return Ok((1, kronecker_symbol(a_star, p)));
            }
            // nondegenerate mod p: h* = h, and p | d(h) makes the symbol 0
            let disc = DiscriminantData::new(h)?;
            Ok((0, kronecker_symbol(disc.d, p)))
        }
        _ => Err(Error::Unsupported(format!(
            "local densities support rank <= 2, got {lam}"
        ))),
    }
}

/// integer pair (u0, u1) completing a primitive column (w0, w1) to det ±1
fn bezout_complement(w0: i64, w1: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (w0, w1);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert!(r0.abs() == 1);
    let (x, y) = (s0 * r0.signum(), t0 * r0.signum());
    // x w0 + y w1 = 1, so det [[−y, w0], [x, w1]] = −y w1 − x w0 = −1
    (-y, x)
}

/// Böcherer's local density `a_p(h, s)` for a full-rank form of rank 1 or 2
/// and a prime `p | d(h)`.
pub fn local_density_ap(h: &HalfIntegralForm, p: i64, s: Complex64) -> Result<Complex64> {
    let lam = h.size();
    if h.rank() != lam || lam == 0 || lam > 2 {
        return Err(Error::Unsupported(
            "local_density_ap needs a full-rank form of rank 1 or 2".into(),
        ));
    }
    let (r, lambda_p) = local_r_and_lambda(h, p)?;
    let pf = p as f64;
    let pc = Complex64::new(pf, 0.0);
    let mut out = Complex64::new(1.0, 0.0);
    let char_factor = |out: &mut Complex64| {
        let expo = Complex64::new((lam + r) as f64 / 2.0, 0.0) - s;
        *out *= 1.0 + lambda_p as f64 * pc.powc(expo);
    };
    match (lam % 2, r % 2) {
        (1, 0) => {
            for j in 1..=(r / 2) {
                out *= 1.0 - pc.powc(Complex64::new((2 * j - 1 + lam) as f64, 0.0) - 2.0 * s);
            }
        }
        (1, 1) => {
            char_factor(&mut out);
            for j in 1..=((r - 1) / 2) {
                out *= 1.0 - pc.powc(Complex64::new((2 * j - 1 + lam) as f64, 0.0) - 2.0 * s);
            }
        }
        (0, 1) => {
            for j in 1..=((r - 1) / 2) {
                out *= 1.0 - pc.powc(Complex64::new((2 * j + lam) as f64, 0.0) - 2.0 * s);
            }
        }
        (0, 0) => {
            char_factor(&mut out);
            if r >= 2 {
                for j in 1..=(r / 2 - 1) {
                    out *= 1.0 - pc.powc(Complex64::new((2 * j + lam) as f64, 0.0) - 2.0 * s);
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(out)
}

fn prime_divisors(n: i64) -> Vec<i64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Divisor classes `A(h)` for a full-rank binary form: Hermite
/// representatives `d` with `h[d^{−1}]` still half-integral (and the
/// transformed form).
pub fn divisor_classes(h: &HalfIntegralForm) -> Result<Vec<(IntMat, HalfIntegralForm)>> {
    if h.size() != 2 || h.rank() != 2 {
        return Err(Error::Unsupported(
            "divisor_classes needs full rank 2".into(),
        ));
    }
    let det2h = h.det_doubled().unsigned_abs();
    let mut out = Vec::new();
    let mut n = 1u128;
    while n * n <= det2h {
        if det2h % (n * n) == 0 {
            let n64 = n as i64;
            for a in 1..=n64 {
                if n64 % a != 0 {
                    continue;
                }
                let c = n64 / a;
                for b in 0..c {
                    if let Some(hd) = transform_by_inverse(h, a, b, c) {
                        out.push((IntMat::from_rows(&[vec![a, b], vec![0, c]]), hd));
                    }
                }
            }
        }
        n += 1;
    }
    Ok(out)
}

/// `h[d^{−1}]` for `d = [[a,b],[0,c]]` when it lands in the half-integral
/// lattice; exact integer arithmetic on the doubled matrices.
fn transform_by_inverse(h: &HalfIntegralForm, a: i64, b: i64, c: i64) -> Option<HalfIntegralForm> {
    let det = a * c;
    // adj(d) = [[c, −b], [0, a]]; d^{-1} = adj/det
    let adj = IntMat::from_rows(&[vec![c, -b], vec![0, a]]);
    let dmat = h.doubled_mat();
    let mut m = [[0i128; 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut s: i128 = 0;
            for k in 0..2 {
                for l in 0..2 {
                    s += adj.get(k, i) as i128 * dmat.get(k, l) as i128 * adj.get(l, j) as i128;
                }
            }
            *cell = s;
        }
    }
    let den = (det * det) as i128;
    let mut doubled = vec![0i64; 4];
    for i in 0..2 {
        for j in 0..2 {
            if m[i][j] % den != 0 {
                return None;
            }
            doubled[i * 2 + j] = i64::try_from(m[i][j] / den).ok()?;
        }
    }
    HalfIntegralForm::from_doubled(2, doubled).ok()
}

/// `Ŝ_2(h, s) = ζ(s)^{−1} ζ(2s−2)^{−1} L(s−1, (d(h)/·)) ∏_{p | d(h)} a_p(h,s)`.
pub fn siegel_rank2_hat(h: &HalfIntegralForm, s: Complex64) -> Result<Complex64> {
    let disc = DiscriminantData::new(h)?;
    if disc.rank != 2 {
        return Err(Error::Unsupported("siegel_rank2_hat needs rank 2".into()));
    }
    let z1 = riemann_zeta(s)?;
    let z2 = riemann_zeta(2.0 * s - 2.0)?;
    let l = dirichlet_l(s - 1.0, disc.d)?;
    let mut v = l / (z1 * z2);
    for p in prime_divisors(disc.d) {
        v *= local_density_ap(h, p, s)?;
    }
    Ok(v)
}

/// `S_2(h, s) = Σ_{d ∈ A(h)} det(d)^{3−2s} Ŝ_2(h[d^{−1}], s)`.
pub fn siegel_rank2(h: &HalfIntegralForm, s: Complex64) -> Result<Complex64> {
    if s.re <= 2.0 {
        return Err(Error::Convergence(
            "siegel_rank2 needs Re(s) > 2 for the L and zeta factors".into(),
        ));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for (d, hd) in divisor_classes(h)? {
        let det = (d.get(0, 0) * d.get(1, 1)) as f64;
        total += Complex64::new(det, 0.0).powc(Complex64::new(3.0, 0.0) - 2.0 * s)
            * siegel_rank2_hat(&hd, s)?;
    }
    Ok(total)
}

/// Degenerate-rank reduction
/// `S_ν(diag(h, 0_{ν−λ}), s) = ζ(s+λ−ν) ζ(s)^{−1}
///   ∏_{j=1}^{ν−λ} (ζ(2s−ν−j) ζ(2s−2j)^{−1}) · S_λ(h, s−ν+λ)`
/// for a full-rank `h` of rank λ ∈ {1, 2}; λ = ν is the identity reduction.
pub fn siegel_reduce(h: &HalfIntegralForm, nu: usize, s: Complex64) -> Result<Complex64> {
    let lam = h.size();
    if h.rank() != lam {
        return Err(Error::Domain("siegel_reduce needs a full-rank block".into()));
    }
    if lam > nu {
        return Err(Error::Dimension("siegel_reduce needs nu >= rank".into()));
    }
    if lam >= 3 {
        return Err(Error::Unsupported(
            "Siegel series for rank >= 3 blocks is not implemented".into(),
        ));
    }
    let (num, den) = reduction_factor_args(nu, lam, s);
    let prefactor = eval_factor_lists("siegel_reduce", s, &num, &den)?;
    let inner_s = s - nu as f64 + lam as f64;
    let inner = match lam {
        0 => Complex64::new(1.0, 0.0),
        1 => siegel_rank1(h.diag(0), inner_s)?,
        2 => siegel_rank2(h, inner_s)?,
        _ => unreachable!(),
    };
    Ok(prefactor * inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn form(doubled: Vec<i64>) -> HalfIntegralForm {
        let m = (doubled.len() as f64).sqrt() as usize;
        HalfIntegralForm::from_doubled(m, doubled).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(DiscriminantData::new(&form(vec![6])).unwrap().d, 3);
        assert_eq!(DiscriminantData::new(&form(vec![-4])).unwrap().d, -2);
        assert_eq!(DiscriminantData::new(&form(vec![2, 0, 0, 2])).unwrap().d, -4);
        assert_eq!(DiscriminantData::new(&form(vec![2, 1, 1, 2])).unwrap().d, -3);
        assert!(DiscriminantData::new(&form(vec![2, 2, 2, 2])).is_err());
    }

    #[test]
    fn rank0_examples() {
        assert_eq!(siegel_rank0(0, c(3.0)).unwrap(), c(1.0));
        let s = c(4.0);
        let v = siegel_rank0(1, s).unwrap();
        let expect = riemann_zeta(c(3.0)).unwrap() / riemann_zeta(c(4.0)).unwrap();
        assert!((v - expect).norm() < 1e-13);
        let v = siegel_rank0(2, c(5.0)).unwrap();
        let expect = riemann_zeta(c(3.0)).unwrap() / riemann_zeta(c(5.0)).unwrap()
            * (riemann_zeta(c(7.0)).unwrap() / riemann_zeta(c(8.0)).unwrap());
        assert!((v - expect).norm() < 1e-12, "{v} vs {expect}");
    }

    #[test]
    fn reduce_factor_list_identity_with_rank0() {
        for nu in 1..=4usize {
            let s = c(4.7);
            let (n0, d0) = reduction_factor_args(nu, 0, s);
            let via_rank0 = siegel_rank0(nu, s).unwrap();
            let via_lists = eval_factor_lists("test", s, &n0, &d0).unwrap();
            assert_eq!(via_rank0, via_lists);
        }
    }

    #[test]
    fn rank1_examples() {
        let v = siegel_rank1(1, c(2.0)).unwrap();
        assert!((v.re - 6.0 / (PI * PI)).abs() < 1e-13);
        let v = siegel_rank1(4, c(2.0)).unwrap();
        assert!((v.re - 1.75 * 6.0 / (PI * PI)).abs() < 1e-12);
        assert_eq!(
            siegel_rank1(-4, c(2.0)).unwrap(),
            siegel_rank1(4, c(2.0)).unwrap()
        );
        assert!(siegel_rank1(0, c(2.0)).is_err());
    }

    #[test]
    fn local_r_values() {
        let h = form(vec![2, 0, 0, 2]);
        let (r, _) = local_r_and_lambda(&h, 2).unwrap();
        assert_eq!(r, 1);
        for p in [3i64, 5, 7] {
            let h = form(vec![2, 0, 0, 2 * p]);
            let (r, _) = local_r_and_lambda(&h, p).unwrap();
            assert_eq!(r, 1, "p={p}");
            let ap = local_density_ap(&h, p, c(4.0)).unwrap();
            assert!((ap - c(1.0)).norm() < 1e-15);
        }
        let h = form(vec![6, 0, 0, 6]);
        let (r, lp) = local_r_and_lambda(&h, 3).unwrap();
        assert_eq!((r, lp), (2, 1));
        let ap = local_density_ap(&h, 3, c(4.0)).unwrap();
        let expect = 1.0 + 3f64.powf(2.0 - 4.0);
        assert!((ap.re - expect).abs() < 1e-13);
        let h = form(vec![2 * 5]);
        let (r, lp) = local_r_and_lambda(&h, 5).unwrap();
        assert_eq!((r, lp), (1, 1));
        let ap = local_density_ap(&h, 5, c(3.0)).unwrap();
        assert!((ap.re - (1.0 + 5f64.powf(-2.0))).abs() < 1e-14);
    }

    #[test]
    fn rank1_square_scaling_consistency() {
        // S_1(p², s) = ζ(s)^{-1}(1 + p^{1−s} + p^{2−2s})
        let s = c(3.0);
        for p in [2i64, 3] {
            let direct = siegel_rank1(p * p, s).unwrap();
            let z = riemann_zeta(s).unwrap();
            let pf = p as f64;
            let expect = (1.0 + pf.powf(-2.0) + pf.powf(-4.0)) / z.re;
            assert!((direct.re - expect).abs() < 1e-13, "p={p}");
        }
    }

    #[test]
    fn divisor_classes_identity() {
        let h = form(vec![2, 0, 0, 2]);
        let a = divisor_classes(&h).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].0, IntMat::identity(2));
    }

    #[test]
    fn siegel_rank2_identity_form() {
        // S_2(1₂, s) = ζ(s)^{-1} ζ(2s−2)^{-1} L(s−1, χ₋₄), the a_2 factor
        // degenerating to 1
        let h = form(vec![2, 0, 0, 2]);
        let s = c(4.0);
        let v = siegel_rank2(&h, s).unwrap();
        let expect = dirichlet_l(c(3.0), -4).unwrap()
            / (riemann_zeta(c(4.0)).unwrap() * riemann_zeta(c(6.0)).unwrap());
        assert!((v - expect).norm() < 1e-12, "{v} vs {expect}");
        assert!(v.re > 0.0 && v.re.is_finite());
    }

    #[test]
    fn siegel_rank2_unimodular_invariance() {
        let s = c(4.0);
        let base = form(vec![2, 1, 1, 4]);
        let v0 = siegel_rank2(&base, s).unwrap();
        let transforms = [
            vec![vec![1i64, 1], vec![0, 1]],
            vec![vec![1, 0], vec![1, 1]],
            vec![vec![0, 1], vec![-1, 0]],
            vec![vec![2, 1], vec![1, 1]],
            vec![vec![1, -2], vec![0, 1]],
        ];
        for t in &transforms {
            let u = IntMat::from_rows(t);
            let hu = base.bracket(&u).unwrap();
            let v = siegel_rank2(&hu, s).unwrap();
            assert!(
                (v - v0).norm() < 1e-10 * v0.norm(),
                "transform {t:?}: {v} vs {v0}"
            );
        }
    }

    #[test]
    fn siegel_reduce_cases() {
        let s = c(4.0);
        let h = form(vec![2]);
        let direct = siegel_rank1(1, s).unwrap();
        let reduced = siegel_reduce(&h, 1, s).unwrap();
        assert!((direct - reduced).norm() < 1e-14);
        let v = siegel_reduce(&h, 2, s).unwrap();
        let expect = riemann_zeta(c(3.0)).unwrap() / riemann_zeta(c(4.0)).unwrap()
            * riemann_zeta(c(5.0)).unwrap()
            / riemann_zeta(c(6.0)).unwrap()
            * (1.0 / riemann_zeta(c(3.0)).unwrap());
        assert!((v - expect).norm() < 1e-13, "{v} vs {expect}");
        let h3 = form(vec![2, 0, 0, 0, 2, 0, 0, 0, 2]);
        assert!(matches!(
            siegel_reduce(&h3, 3, s),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn siegel_reduce_reproduces_sigma_formula() {
        // S_m(diag(h,0_{m-1}), 2s) = σ_{m−2s}(h) ζ(2s)^{-1}
        //     ∏_{j=1}^{m-1} ζ(4s−m−j) ζ(4s−2j)^{-1}
        let m = 2usize;
        let s = c(2.5);
        for hval in [1i64, 2, 3, 4, 6] {
            let h = form(vec![2 * hval]);
            let lhs = siegel_reduce(&h, m, 2.0 * s).unwrap();
            let mut rhs = sigma_power(hval as u64, Complex64::new(m as f64, 0.0) - 2.0 * s)
                / riemann_zeta(2.0 * s).unwrap();
            for j in 1..=(m - 1) {
                rhs *= riemann_zeta(4.0 * s - m as f64 - j as f64).unwrap()
                    / riemann_zeta(4.0 * s - 2.0 * j as f64).unwrap();
            }
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm(), "h={hval}");
        }
    }
}
