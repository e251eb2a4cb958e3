//! Exact and floating-point linear algebra for the symmetric, positive
//! definite and half-integral matrices used throughout the crate, plus the
//! lattice enumerations every other module consumes.

mod enumerate;
mod forms;
mod intmat;

pub use enumerate::{primitive_vectors, primitive_vectors_euclidean, rank1_enumerate};
pub use forms::{HalfIntegralForm, Rank1Form};
pub use intmat::{
    det_i128, gcd_i64, gcd_of_maximal_minors, int_mat_mul, int_mat_transpose, is_primitive,
    unimodular_complete, IntMat,
};

use crate::error::{Error, Result};

/// Real symmetric matrix with upper-triangular storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    m: usize,
    upper: Vec<f64>,
}

impl SymMatrix {
    pub fn zero(m: usize) -> Self {
        assert!(m >= 1, "matrix size must be at least 1");
        SymMatrix {
            m,
            upper: vec![0.0; m * (m + 1) / 2],
        }
    }

    pub fn identity(m: usize) -> Self {
        let mut a = SymMatrix::zero(m);
        for i in 0..m {
            a.set(i, i, 1.0);
        }
        a
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut a = SymMatrix::zero(d.len());
        for (i, &v) in d.iter().enumerate() {
            a.set(i, i, v);
        }
        a
    }

    /// Build from dense rows; the input must be square and symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("expected a nonempty square matrix".into()));
        }
        let mut scale: f64 = 0.0;
        for r in rows {
            for &v in r {
                scale = scale.max(v.abs());
            }
        }
        let tol = 1e-12 * scale.max(1.0);
        let mut a = SymMatrix::zero(m);
        for i in 0..m {
            for j in i..m {
                if (rows[i][j] - rows[j][i]).abs() > tol {
                    return Err(Error::Domain(format!(
                        "matrix not symmetric at ({i},{j}): {} vs {}",
                        rows[i][j], rows[j][i]
                    )));
                }
                a.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
            }
        }
        Ok(a)
    }

    /// Parse the row-major `"a,b;c,d"` format.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Result<Vec<Vec<f64>>> = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<f64>()
                            .map_err(|e| Error::Parse(format!("bad matrix entry {t:?}: {e}")))
                    })
                    .collect()
            })
            .collect();
        SymMatrix::from_rows(&rows?)
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * self.m - i * (i + 1) / 2 + j
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[self.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.upper[k] = v;
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn trace(&self) -> f64 {
        (0..self.m).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix {
            m: self.m,
            upper: self.upper.iter().map(|v| c * v).collect(),
        }
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.m != other.m {
            return Err(Error::Dimension("size mismatch in add".into()));
        }
        Ok(SymMatrix {
            m: self.m,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// trace of `self * other`
    pub fn trace_product(&self, other: &SymMatrix) -> Result<f64> {
        if self.m != other.m {
            return Err(Error::Dimension("size mismatch in trace_product".into()));
        }
        let mut t = 0.0;
        for i in 0..self.m {
            for j in 0..self.m {
                t += self.get(i, j) * other.get(j, i);
            }
        }
        Ok(t)
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let m = self.m;
        let mut a = self.to_rows();
        let mut det = 1.0;
        for k in 0..m {
            let mut piv = k;
            for i in k + 1..m {
                if a[i][k].abs() > a[piv][k].abs() {
                    piv = i;
                }
            }
            if a[piv][k] == 0.0 {
                return 0.0;
            }
            if piv != k {
                a.swap(piv, k);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..m {
                let f = a[i][k] / a[k][k];
                for j in k..m {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        det
    }

    /// Shimura's bracket `self[a] = ᵗa · self · a` for an integer matrix `a`
    /// with `self.size()` rows; the result has `a.ncols()` rows.
    pub fn bracket_int(&self, a: &IntMat) -> Result<SymMatrix> {
        if a.nrows() != self.m {
            return Err(Error::Dimension(format!(
                "bracket: matrix is {}x{} but transform has {} rows",
                self.m,
                self.m,
                a.nrows()
            )));
        }
        let nu = a.ncols();
        let mut out = SymMatrix::zero(nu);
        for p in 0..nu {
            for q in p..nu {
                let mut v = 0.0;
                for i in 0..self.m {
                    for j in 0..self.m {
                        v += a.get(i, p) as f64 * self.get(i, j) * a.get(j, q) as f64;
                    }
                }
                out.set(p, q, v);
            }
        }
        Ok(out)
    }

    /// Quadratic form value `ᵗw · self · w` for an integer column.
    pub fn form_value(&self, w: &[i64]) -> f64 {
        let mut v = 0.0;
        for i in 0..self.m {
            for j in 0..self.m {
                v += w[i] as f64 * self.get(i, j) * w[j] as f64;
            }
        }
        v
    }

    /// Eigenvalues and orthonormal eigenvectors by cyclic Jacobi rotations.
    /// Intended for the small sizes used here.
    pub fn eigen(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        let m = self.m;
        let mut a = self.to_rows();
        let mut v = vec![vec![0.0; m]; m];
        for (i, row) in v.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for _sweep in 0..100 {
            let mut off = 0.0;
            for i in 0..m {
                for j in i + 1..m {
                    off += a[i][j] * a[i][j];
                }
            }
            if off < 1e-30 {
                break;
            }
            for p in 0..m {
                for q in p + 1..m {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..m {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..m {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                    for k in 0..m {
                        let vkp = v[k][p];
                        let vkq = v[k][q];
                        v[k][p] = c * vkp - s * vkq;
                        v[k][q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        let vals: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
        // columns of v are the eigenvectors
        let vecs: Vec<Vec<f64>> = (0..m).map(|j| (0..m).map(|i| v[i][j]).collect()).collect();
        (vals, vecs)
    }
}

impl std::fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = (0..self.m)
            .map(|i| {
                (0..self.m)
                    .map(|j| format!("{}", self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Positive-definite symmetric matrix, validated by Cholesky at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PosDefMatrix {
    inner: SymMatrix,
    /// Lower-triangular Cholesky factor, row-major dense.
    chol: Vec<Vec<f64>>,
}

impl PosDefMatrix {
    pub fn new(a: SymMatrix) -> Result<Self> {
        let m = a.size();
        let mut l = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in 0..=i {
                let mut s = a.get(i, j);
                for k in 0..j {
                    s -= l[i][k] * l[j][k];
                }
                if i == j {
                    if s <= 0.0 {
                        return Err(Error::NotPositiveDefinite { index: i, value: s });
                    }
                    l[i][j] = s.sqrt();
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        Ok(PosDefMatrix { inner: a, chol: l })
    }

    pub fn identity(m: usize) -> Self {
        PosDefMatrix::new(SymMatrix::identity(m)).unwrap()
    }

    pub fn parse(text: &str) -> Result<Self> {
        PosDefMatrix::new(SymMatrix::parse(text)?)
    }

    pub fn size(&self) -> usize {
        self.inner.size()
    }

    pub fn as_sym(&self) -> &SymMatrix {
        &self.inner
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner.get(i, j)
    }

    pub fn det(&self) -> f64 {
        let mut d = 1.0;
        for i in 0..self.size() {
            d *= self.chol[i][i] * self.chol[i][i];
        }
        d
    }

    pub fn scale(&self, c: f64) -> Result<PosDefMatrix> {
        PosDefMatrix::new(self.inner.scale(c))
    }

    /// Solve `self * x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let m = self.size();
        let mut y = vec![0.0; m];
        for i in 0..m {
            let mut s = b[i];
            for k in 0..i {
                s -= self.chol[i][k] * y[k];
            }
            y[i] = s / self.chol[i][i];
        }
        let mut x = vec![0.0; m];
        for i in (0..m).rev() {
            let mut s = y[i];
            for k in i + 1..m {
                s -= self.chol[k][i] * x[k];
            }
            x[i] = s / self.chol[i][i];
        }
        x
    }

    pub fn inverse(&self) -> PosDefMatrix {
        let m = self.size();
        let mut inv = SymMatrix::zero(m);
        for j in 0..m {
            let mut e = vec![0.0; m];
            e[j] = 1.0;
            let col = self.solve(&e);
            for i in 0..m {
                if i <= j {
                    inv.set(i, j, col[i]);
                }
            }
        }
        PosDefMatrix::new(inv).expect("inverse of positive definite is positive definite")
    }

    /// Symmetric square root via the spectral decomposition.
    pub fn sqrt(&self) -> SymMatrix {
        let (vals, vecs) = self.inner.eigen();
        let m = self.size();
        let mut out = SymMatrix::zero(m);
        for i in 0..m {
            for j in i..m {
                let mut v = 0.0;
                for (k, lam) in vals.iter().enumerate() {
                    v += lam.max(0.0).sqrt() * vecs[k][i] * vecs[k][j];
                }
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn form_value(&self, w: &[i64]) -> f64 {
        self.inner.form_value(w)
    }

    pub fn bracket_int(&self, a: &IntMat) -> Result<SymMatrix> {
        self.inner.bracket_int(a)
    }
}

/// Primitive `m x lambda` integer matrix together with a completion to a
/// unimodular matrix `u = (r | r1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetRep {
    pub r: IntMat,
    pub r1: IntMat,
}

impl CosetRep {
    /// Complete a primitive `r` to a unimodular matrix.
    pub fn from_primitive(r: IntMat) -> Result<Self> {
        let r1 = unimodular_complete(&r)?;
        Ok(CosetRep { r, r1 })
    }

    pub fn unimodular(&self) -> IntMat {
        let m = self.r.nrows();
        let lam = self.r.ncols();
        let mut u = IntMat::zero(m, m);
        for i in 0..m {
            for j in 0..lam {
                u.set(i, j, self.r.get(i, j));
            }
            for j in 0..m - lam {
                u.set(i, lam + j, self.r1.get(i, j));
            }
        }
        u
    }
}

/// Lower-right block of the Jacobi decomposition of `y[u_r]`:
/// `g(y, u_r) = y[r1] - (y[r])^{-1}[ᵗr y r1]`.
///
/// Satisfies `det(y) = det(y[r]) * det(g(y,u_r))` for unimodular `u_r`.
pub fn jacobi_complement(y: &PosDefMatrix, rep: &CosetRep) -> Result<SymMatrix> {
    let m = y.size();
    let lam = rep.r.ncols();
    if lam >= m {
        return Err(Error::Dimension(
            "jacobi_complement needs lambda < m".into(),
        ));
    }
    let y_r = y.bracket_int(&rep.r)?;
    let y_r = PosDefMatrix::new(y_r)
        .map_err(|_| Error::Internal("y[r] singular for positive definite y".into()))?;
    let y_r1 = y.bracket_int(&rep.r1)?;
    // cross block ᵗr y r1 (lambda x (m - lambda))
    let k = m - lam;
    let mut cross = vec![vec![0.0; k]; lam];
    for p in 0..lam {
        for q in 0..k {
            let mut v = 0.0;
            for i in 0..m {
                for j in 0..m {
                    v += rep.r.get(i, p) as f64 * y.get(i, j) * rep.r1.get(j, q) as f64;
                }
            }
            cross[p][q] = v;
        }
    }
    // correction ᵗcross * (y[r])^{-1} * cross
    let mut out = SymMatrix::zero(k);
    let mut solved = vec![vec![0.0; k]; lam];
    for q in 0..k {
        let col: Vec<f64> = (0..lam).map(|p| cross[p][q]).collect();
        let s = y_r.solve(&col);
        for p in 0..lam {
            solved[p][q] = s[p];
        }
    }
    for p in 0..k {
        for q in p..k {
            let mut corr = 0.0;
            for t in 0..lam {
                corr += cross[t][p] * solved[t][q];
            }
            out.set(p, q, y_r1.get(p, q) - corr);
        }
    }
    Ok(out)
}

/// Shimura's bracket for an integer transform: `g[a] = ᵗa g a`.
pub fn quadratic_transform(g: &SymMatrix, a: &IntMat) -> Result<SymMatrix> {
    g.bracket_int(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn random_spd(m: usize, rng: &mut impl Rng) -> PosDefMatrix {
        loop {
            let mut b = vec![vec![0.0; m]; m];
            for row in b.iter_mut() {
                for v in row.iter_mut() {
                    *v = rng.gen_range(-1.0..1.0);
                }
            }
            let mut rows = vec![vec![0.0; m]; m];
            for i in 0..m {
                for j in 0..m {
                    let mut s = 0.0;
                    for (k, bk) in b.iter().enumerate() {
                        s += bk[i] * b[k][j];
                        let _ = k;
                    }
                    rows[i][j] = s + if i == j { 0.3 } else { 0.0 };
                }
            }
            if let Ok(p) = PosDefMatrix::new(SymMatrix::from_rows(&rows).unwrap()) {
                return p;
            }
        }
    }

    #[test]
    fn determinant_small_cases() {
        assert!((SymMatrix::identity(2).determinant() - 1.0).abs() < 1e-15);
        assert!((SymMatrix::diagonal(&[2.0, 2.0]).determinant() - 4.0).abs() < 1e-15);
        let y = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!((y.determinant() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn bracket_examples() {
        let g = SymMatrix::identity(2);
        let a = IntMat::from_rows(&[vec![1], vec![0]]);
        let r = g.bracket_int(&a).unwrap();
        assert_eq!(r.size(), 1);
        assert!((r.get(0, 0) - 1.0).abs() < 1e-15);
        let a = IntMat::from_rows(&[vec![1], vec![1]]);
        assert!((g.bracket_int(&a).unwrap().get(0, 0) - 2.0).abs() < 1e-15);
        let g = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let a = IntMat::from_rows(&[vec![1], vec![-1]]);
        assert!((g.bracket_int(&a).unwrap().get(0, 0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let g = SymMatrix::identity(2);
        let a = IntMat::from_rows(&[vec![1], vec![0], vec![0]]);
        assert!(g.bracket_int(&a).is_err());
    }

    #[test]
    fn jacobi_complement_examples() {
        let y = PosDefMatrix::identity(2);
        let rep = CosetRep::from_primitive(IntMat::from_rows(&[vec![1], vec![0]])).unwrap();
        let g = jacobi_complement(&y, &rep).unwrap();
        assert!((g.get(0, 0) - 1.0).abs() < 1e-14);

        let y =
            PosDefMatrix::new(SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap())
                .unwrap();
        let rep = CosetRep::from_primitive(IntMat::from_rows(&[vec![1], vec![0]])).unwrap();
        let g = jacobi_complement(&y, &rep).unwrap();
        assert!((g.get(0, 0) - 1.5).abs() < 1e-14, "expected 3/2");
    }

    #[test]
    fn jacobi_determinant_identity_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for m in 2..=4usize {
            for _ in 0..20 {
                let y = random_spd(m, &mut rng);
                let lam = 1 + (rng.gen_range(0..m.min(2)) % (m - 1).max(1));
                let lam = lam.min(m - 1);
                // random primitive r
                let r = loop {
                    let mut cand = IntMat::zero(m, lam);
                    for i in 0..m {
                        for j in 0..lam {
                            cand.set(i, j, rng.gen_range(-2..=2));
                        }
                    }
                    if is_primitive(&cand) {
                        break cand;
                    }
                };
                let rep = CosetRep::from_primitive(r).unwrap();
                let u = rep.unimodular();
                assert_eq!(det_i128(&u).abs(), 1);
                let g = jacobi_complement(&y, &rep).unwrap();
                let lhs = y.det();
                let rhs = y.bracket_int(&rep.r).unwrap().determinant() * g.determinant();
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0),
                    "det identity failed: {lhs} vs {rhs} (m={m}, lam={lam})"
                );
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        let a = SymMatrix::parse("2,1;1,2").unwrap();
        assert_eq!(a.to_rows(), vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert!(SymMatrix::parse("1,2;3,4").is_err(), "not symmetric");
        assert!(SymMatrix::parse("1,x;x,1").is_err());
    }

    #[test]
    fn eigen_and_sqrt() {
        let y =
            PosDefMatrix::new(SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap())
                .unwrap();
        let (mut vals, _) = y.as_sym().eigen();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] - 1.0).abs() < 1e-12 && (vals[1] - 3.0).abs() < 1e-12);
        let s = y.sqrt();
        // s*s == y
        let mut err: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let mut v = 0.0;
                for k in 0..2 {
                    v += s.get(i, k) * s.get(k, j);
                }
                err = err.max((v - y.get(i, j)).abs());
            }
        }
        assert!(err < 1e-12);
    }

    #[test]
    fn solve_and_inverse() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let y = random_spd(3, &mut rng);
        let b = vec![1.0, -2.0, 0.5];
        let x = y.solve(&b);
        for i in 0..3 {
            let mut s = 0.0;
            for j in 0..3 {
                s += y.get(i, j) * x[j];
            }
            assert!((s - b[i]).abs() < 1e-10);
        }
        let inv = y.inverse();
        assert!((inv.det() * y.det() - 1.0).abs() < 1e-10);
    }
}
