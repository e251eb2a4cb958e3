use super::eta::{eta_star, kappa, ConeIntegralSpec};
use crate::error::{Error, Result};
use crate::precision::PrecisionConfig;
use crate::specfun::gamma_m;
use crate::symcore::{PosDefMatrix, SymMatrix};
use num_complex::Complex64;

/// Inertia data of `g^{1/2} h g^{1/2}`: counts of positive, negative and
/// (numerically) zero eigenvalues, and the products of the positive and of
/// the absolute negative ones (empty products are 1).
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureData {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub delta_plus: f64,
    pub delta_minus: f64,
}

impl SignatureData {
    pub fn new(g: &PosDefMatrix, h: &SymMatrix) -> Result<Self> {
        if g.size() != h.size() {
            return Err(Error::Dimension("signature: size mismatch".into()));
        }
        let m = g.size();
        let s = g.sqrt();
        // s h s
        let mut shs = SymMatrix::zero(m);
        for i in 0..m {
            for j in i..m {
                let mut v = 0.0;
                for k in 0..m {
                    for l in 0..m {
                        v += s.get(i, k) * h.get(k, l) * s.get(l, j);
                    }
                }
                shs.set(i, j, v);
            }
        }
        let (vals, _) = shs.eigen();
        let scale = vals.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let tol = 1e-9 * scale.max(1e-300);
        let (mut p, mut q, mut r) = (0usize, 0usize, 0usize);
        let (mut dp, mut dm) = (1.0f64, 1.0f64);
        for &v in &vals {
            if v.abs() <= tol {
                r += 1;
            } else {
                if v.abs() <= 10.0 * tol {
                    return Err(Error::SignatureAmbiguous {
                        eigenvalue: v,
                        tol,
                    });
                }
                if v > 0.0 {
                    p += 1;
                    dp *= v;
                } else {
                    q += 1;
                    dm *= -v;
                }
            }
        }
        Ok(SignatureData {
            p,
            q,
            r,
            delta_plus: dp,
            delta_minus: dm,
        })
    }
}

/// Normalized cone integral
/// `ω_m(g,h;α,β) = 2^{−pα−qβ} Γ_p(β−(m−p)/2)^{-1} Γ_q(α−(m−q)/2)^{-1}
///                Γ_r(α+β−κ(m))^{-1} δ₊^{κ−α−q/4} δ₋^{κ−β−p/4} η*_m(g,h;α,β)`,
/// evaluated where the quadrature converges. It satisfies
/// `ω_m(g,h;α,β) = ω_m(g,h;κ+r/2−β, κ+r/2−α)`.
pub fn omega(
    g: &PosDefMatrix,
    h: &SymMatrix,
    alpha: Complex64,
    beta: Complex64,
    prec: &PrecisionConfig,
) -> Result<Complex64> {
    let m = g.size();
    let k = kappa(m);
    let sig = SignatureData::new(g, h)?;
    let spec = ConeIntegralSpec::new(g.clone(), h.clone(), alpha, beta)?;
    let star = eta_star(&spec, prec)?;
    let (p, q, r) = (sig.p, sig.q, sig.r);
    let two_pow = (-(p as f64) * alpha - (q as f64) * beta) * 2f64.ln();
    let gp = gamma_m(p, beta - (m - p) as f64 / 2.0)?;
    let gq = gamma_m(q, alpha - (m - q) as f64 / 2.0)?;
    let gr = gamma_m(r, alpha + beta - k)?;
    let dp_pow = Complex64::new(sig.delta_plus.ln(), 0.0)
        * (Complex64::new(k, 0.0) - alpha - Complex64::new(q as f64 / 4.0, 0.0));
    let dm_pow = Complex64::new(sig.delta_minus.ln(), 0.0)
        * (Complex64::new(k, 0.0) - beta - Complex64::new(p as f64 / 4.0, 0.0));
    Ok((two_pow + dp_pow + dm_pow).exp() / (gp * gq * gr) * star)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_basic() {
        let g = PosDefMatrix::identity(2);
        let h = SymMatrix::diagonal(&[2.0, -3.0]);
        let s = SignatureData::new(&g, &h).unwrap();
        assert_eq!((s.p, s.q, s.r), (1, 1, 0));
        assert!((s.delta_plus - 2.0).abs() < 1e-12);
        assert!((s.delta_minus - 3.0).abs() < 1e-12);

        let h = SymMatrix::diagonal(&[1.0, 0.0]);
        let s = SignatureData::new(&g, &h).unwrap();
        assert_eq!((s.p, s.q, s.r), (1, 0, 1));
        assert_eq!(s.delta_minus, 1.0);
    }

    #[test]
    fn signature_respects_g_conjugation() {
        // eigenvalues of g^{1/2} h g^{1/2} equal those of g h up to similarity
        let g = PosDefMatrix::new(
            SymMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap(),
        )
        .unwrap();
        let h = SymMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, -2.0]]).unwrap();
        let s = SignatureData::new(&g, &h).unwrap();
        assert_eq!((s.p, s.q, s.r), (1, 1, 0));
        // δ+·δ− = |det(g h)| = det(g)·|det(h)|
        let expect = g.det() * 2.0;
        assert!((s.delta_plus * s.delta_minus - expect).abs() < 1e-10);
    }
}
