use super::intmat::{gcd_i64, rank_int, IntMat};
use super::SymMatrix;
use crate::error::{Error, Result};

/// Symmetric half-integral form: integer diagonal, half-integer off-diagonal.
///
/// Stored exactly through the doubled matrix `2h`, which has even diagonal
/// and integer entries; all arithmetic on forms stays in integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfIntegralForm {
    m: usize,
    /// Row-major dense `2h`.
    doubled: Vec<i64>,
}

impl HalfIntegralForm {
    pub fn from_doubled(m: usize, doubled: Vec<i64>) -> Result<Self> {
        if doubled.len() != m * m {
            return Err(Error::Dimension("doubled matrix has wrong length".into()));
        }
        for i in 0..m {
            if doubled[i * m + i] % 2 != 0 {
                return Err(Error::Domain(format!(
                    "doubled diagonal entry ({i},{i}) = {} must be even",
                    doubled[i * m + i]
                )));
            }
            for j in 0..m {
                if doubled[i * m + j] != doubled[j * m + i] {
                    return Err(Error::Domain("doubled matrix must be symmetric".into()));
                }
            }
        }
        Ok(HalfIntegralForm { m, doubled })
    }

    pub fn zero(m: usize) -> Self {
        HalfIntegralForm {
            m,
            doubled: vec![0; m * m],
        }
    }

    /// Scalar form (size 1) with integer value `t`.
    pub fn scalar(t: i64) -> Self {
        HalfIntegralForm {
            m: 1,
            doubled: vec![2 * t],
        }
    }

    /// Parse the `"2h:"`-prefixed doubled representation, e.g. `2h:2,1;1,2`.
    pub fn parse(text: &str) -> Result<Self> {
        let body = text
            .strip_prefix("2h:")
            .ok_or_else(|| Error::Parse("half-integral form must start with \"2h:\"".into()))?;
        let rows: Vec<Vec<i64>> = body
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<i64>()
                            .map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}")))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("expected a square matrix".into()));
        }
        let mut doubled = vec![0i64; m * m];
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                doubled[i * m + j] = v;
            }
        }
        HalfIntegralForm::from_doubled(m, doubled)
    }

    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn doubled(&self, i: usize, j: usize) -> i64 {
        self.doubled[i * self.m + j]
    }

    /// Diagonal entry of `h` itself (an integer).
    pub fn diag(&self, i: usize) -> i64 {
        self.doubled(i, i) / 2
    }

    pub fn is_zero(&self) -> bool {
        self.doubled.iter().all(|&v| v == 0)
    }

    pub fn doubled_mat(&self) -> IntMat {
        let rows: Vec<Vec<i64>> = (0..self.m)
            .map(|i| (0..self.m).map(|j| self.doubled(i, j)).collect())
            .collect();
        IntMat::from_rows(&rows)
    }

    pub fn rank(&self) -> usize {
        rank_int(&self.doubled_mat())
    }

    /// `det(2h)` computed exactly.
    pub fn det_doubled(&self) -> i128 {
        super::intmat::det_i128(&self.doubled_mat())
    }

    /// Trace of `h` (always an integer).
    pub fn trace(&self) -> i64 {
        (0..self.m).map(|i| self.diag(i)).sum()
    }

    /// Largest `l` with `h/l` still half-integral: the gcd of the diagonal
    /// entries of `h` and the doubled off-diagonal entries.
    pub fn content(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::Domain("content of the zero form".into()));
        }
        let mut g: i64 = 0;
        for i in 0..self.m {
            g = gcd_i64(g, self.diag(i));
            for j in i + 1..self.m {
                g = gcd_i64(g, self.doubled(i, j));
            }
        }
        Ok(g)
    }

    pub fn scale(&self, k: i64) -> Self {
        HalfIntegralForm {
            m: self.m,
            doubled: self.doubled.iter().map(|v| k * v).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// Exact `h[a] = ᵗa h a` for an integer transform (result stays in the
    /// half-integral lattice).
    pub fn bracket(&self, a: &IntMat) -> Result<HalfIntegralForm> {
        if a.nrows() != self.m {
            return Err(Error::Dimension("bracket: row mismatch".into()));
        }
        let nu = a.ncols();
        let mut doubled = vec![0i64; nu * nu];
        for p in 0..nu {
            for q in 0..nu {
                let mut s: i64 = 0;
                for i in 0..self.m {
                    for j in 0..self.m {
                        s += a.get(i, p) * self.doubled(i, j) * a.get(j, q);
                    }
                }
                doubled[p * nu + q] = s;
            }
        }
        HalfIntegralForm::from_doubled(nu, doubled)
    }

    /// Floating-point image of `h`.
    pub fn to_sym(&self) -> SymMatrix {
        let mut a = SymMatrix::zero(self.m);
        for i in 0..self.m {
            for j in i..self.m {
                a.set(i, j, self.doubled(i, j) as f64 / 2.0);
            }
        }
        a
    }

    /// Decompose a rank-1 form as `t · w · ᵗw` with `w` primitive and
    /// sign-normalized.
    pub fn rank1_decompose(&self) -> Result<Rank1Form> {
        if self.rank() != 1 {
            return Err(Error::Domain(format!(
                "rank1_decompose needs rank 1, got {}",
                self.rank()
            )));
        }
        // a nonzero column of 2h is proportional to w
        let j0 = (0..self.m)
            .find(|&j| (0..self.m).any(|i| self.doubled(i, j) != 0))
            .expect("nonzero form");
        let col: Vec<i64> = (0..self.m).map(|i| self.doubled(i, j0)).collect();
        let mut g = 0i64;
        for &v in &col {
            g = gcd_i64(g, v);
        }
        let mut w: Vec<i64> = col.iter().map(|v| v / g).collect();
        if let Some(first) = w.iter().find(|&&v| v != 0) {
            if *first < 0 {
                for v in w.iter_mut() {
                    *v = -*v;
                }
            }
        }
        let i0 = w.iter().position(|&v| v != 0).unwrap();
        let denom = 2 * w[i0] * w[i0];
        let num = self.doubled(i0, i0);
        if num % denom != 0 {
            return Err(Error::Domain("form is not t * w * ᵗw".into()));
        }
        let t = num / denom;
        let out = Rank1Form::new(t, w.clone())?;
        if out.reconstruct() != *self {
            return Err(Error::Domain("rank-1 reconstruction mismatch".into()));
        }
        Ok(out)
    }
}

impl std::fmt::Display for HalfIntegralForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = (0..self.m)
            .map(|i| {
                (0..self.m)
                    .map(|j| format!("{}", self.doubled(i, j)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "2h:{}", rows.join(";"))
    }
}

/// Rank-1 half-integral form `t · w · ᵗw` with nonzero integer `t` and
/// primitive `w` whose first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank1Form {
    pub t: i64,
    pub w: Vec<i64>,
}

impl Rank1Form {
    pub fn new(t: i64, w: Vec<i64>) -> Result<Self> {
        if t == 0 {
            return Err(Error::Domain("t must be nonzero".into()));
        }
        let mut g = 0i64;
        for &v in &w {
            g = gcd_i64(g, v);
        }
        if g != 1 {
            return Err(Error::Domain("w must be primitive".into()));
        }
        let first = w.iter().find(|&&v| v != 0).copied().unwrap_or(0);
        if first <= 0 {
            return Err(Error::Domain(
                "w must have positive first nonzero entry".into(),
            ));
        }
        Ok(Rank1Form { t, w })
    }

    pub fn size(&self) -> usize {
        self.w.len()
    }

    /// `ᵗw w`, the Euclidean norm of the primitive column.
    pub fn w_norm2(&self) -> i64 {
        self.w.iter().map(|v| v * v).sum()
    }

    /// Trace of the form, `t · ᵗw w`.
    pub fn trace(&self) -> i64 {
        self.t * self.w_norm2()
    }

    pub fn reconstruct(&self) -> HalfIntegralForm {
        let m = self.w.len();
        let mut doubled = vec![0i64; m * m];
        for i in 0..m {
            for j in 0..m {
                doubled[i * m + j] = 2 * self.t * self.w[i] * self.w[j];
            }
        }
        HalfIntegralForm::from_doubled(m, doubled).expect("rank-1 form is half-integral")
    }
}
