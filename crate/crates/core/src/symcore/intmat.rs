use crate::error::{Error, Result};

/// Dense integer matrix with i64 entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat {
    nrows: usize,
    ncols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        IntMat {
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = IntMat::zero(n, n);
        for i in 0..n {
            a.set(i, i, 1);
        }
        a
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = if nrows > 0 { rows[0].len() } else { 0 };
        assert!(rows.iter().all(|r| r.len() == ncols));
        let mut a = IntMat::zero(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                a.set(i, j, v);
            }
        }
        a
    }

    pub fn column(v: &[i64]) -> Self {
        IntMat::from_rows(&v.iter().map(|&x| vec![x]).collect::<Vec<_>>())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        (0..self.ncols).map(|j| self.get(i, j)).collect()
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }
}

pub fn int_mat_transpose(a: &IntMat) -> IntMat {
    let mut t = IntMat::zero(a.ncols(), a.nrows());
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            t.set(j, i, a.get(i, j));
        }
    }
    t
}

pub fn int_mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    assert_eq!(a.ncols(), b.nrows());
    let mut c = IntMat::zero(a.nrows(), b.ncols());
    for i in 0..a.nrows() {
        for j in 0..b.ncols() {
            let mut s: i64 = 0;
            for k in 0..a.ncols() {
                s = s
                    .checked_add(a.get(i, k).checked_mul(b.get(k, j)).expect("overflow"))
                    .expect("overflow");
            }
            c.set(i, j, s);
        }
    }
    c
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination in i128.
pub fn det_i128(a: &IntMat) -> i128 {
    assert_eq!(a.nrows(), a.ncols());
    let n = a.nrows();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j) as i128).collect())
        .collect();
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j]
                    .checked_mul(m[k][k])
                    .expect("bareiss overflow")
                    - m[i][k].checked_mul(m[k][j]).expect("bareiss overflow"))
                    / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank_int(a: &IntMat) -> usize {
    let (nr, nc) = (a.nrows(), a.ncols());
    let mut m: Vec<Vec<i128>> = (0..nr)
        .map(|i| (0..nc).map(|j| a.get(i, j) as i128).collect())
        .collect();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..nc {
        if row >= nr {
            break;
        }
        let piv = (row..nr).find(|&i| m[i][col] != 0);
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        m.swap(piv, row);
        for i in row + 1..nr {
            let (f, g) = (m[i][col], m[row][col]);
            if f == 0 {
                continue;
            }
            for j in 0..nc {
                m[i][j] = m[i][j] * g - m[row][j] * f;
            }
            // keep entries small
            let mut d: i128 = 0;
            for j in 0..nc {
                d = gcd_i128(d, m[i][j]);
            }
            if d > 1 {
                for j in 0..nc {
                    m[i][j] /= d;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// gcd of all maximal minors of an `m x lambda` matrix (lambda <= m).
pub fn gcd_of_maximal_minors(a: &IntMat) -> i128 {
    let m = a.nrows();
    let lam = a.ncols();
    assert!(lam <= m);
    let mut g: i128 = 0;
    for rows in combinations(m, lam) {
        let mut sub = IntMat::zero(lam, lam);
        for (ii, &ri) in rows.iter().enumerate() {
            for j in 0..lam {
                sub.set(ii, j, a.get(ri, j));
            }
        }
        g = gcd_i128(g, det_i128(&sub));
        if g == 1 {
            return 1;
        }
    }
    g
}

/// A matrix is primitive when the gcd of its maximal minors is 1.
pub fn is_primitive(a: &IntMat) -> bool {
    gcd_of_maximal_minors(a) == 1
}

/// Complete a primitive `m x lambda` matrix `r` to a unimodular
/// `u = (r | r1)`, returning `r1`.
///
/// Row-reduces `r` by unimodular operations to `(T; 0)` while tracking the
/// inverse transform; the completion columns are the trailing columns of the
/// inverse.
pub fn unimodular_complete(r: &IntMat) -> Result<IntMat> {
    let m = r.nrows();
    let lam = r.ncols();
    if lam > m {
        return Err(Error::Dimension("completion needs lambda <= m".into()));
    }
    if !is_primitive(r) {
        return Err(Error::Domain("matrix is not primitive".into()));
    }
    let mut w = r.clone();
    // v tracks U^{-1}: row op "row_i -= k*row_j" on w pairs with
    // column op "col_j += k*col_i" on v.
    let mut v = IntMat::identity(m);
    for col in 0..lam {
        // clear below the diagonal of column `col` by gcd steps
        loop {
            let mut nonzero: Vec<usize> = (col..m).filter(|&i| w.get(i, col) != 0).collect();
            if nonzero.is_empty() {
                return Err(Error::Domain("matrix is not primitive".into()));
            }
            // move the smallest nonzero to the pivot row
            nonzero.sort_by_key(|&i| w.get(i, col).abs());
            let piv = nonzero[0];
            if piv != col {
                swap_rows(&mut w, &mut v, piv, col);
            }
            let p = w.get(col, col);
            let mut done = true;
            for i in col + 1..m {
                let q = w.get(i, col).div_euclid(p);
                if q != 0 {
                    row_sub(&mut w, &mut v, i, col, q);
                }
                if w.get(i, col) != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if w.get(col, col) < 0 {
            negate_row(&mut w, &mut v, col);
        }
    }
    let r1 = (0..m)
        .map(|i| (lam..m).map(|j| v.get(i, j)).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    let r1 = IntMat::from_rows(&r1);
    // sanity: (r | r1) must be unimodular
    let mut u = IntMat::zero(m, m);
    for i in 0..m {
        for j in 0..lam {
            u.set(i, j, r.get(i, j));
        }
        for j in 0..m - lam {
            u.set(i, lam + j, r1.get(i, j));
        }
    }
    if det_i128(&u).abs() != 1 {
        return Err(Error::Internal("unimodular completion failed".into()));
    }
    Ok(r1)
}

fn swap_rows(w: &mut IntMat, v: &mut IntMat, a: usize, b: usize) {
    for j in 0..w.ncols() {
        let t = w.get(a, j);
        w.set(a, j, w.get(b, j));
        w.set(b, j, t);
    }
    // inverse of a row swap is the same column swap on v
    for i in 0..v.nrows() {
        let t = v.get(i, a);
        v.set(i, a, v.get(i, b));
        v.set(i, b, t);
    }
}

fn row_sub(w: &mut IntMat, v: &mut IntMat, i: usize, j: usize, k: i64) {
    for c in 0..w.ncols() {
        w.set(i, c, w.get(i, c) - k * w.get(j, c));
    }
    for r in 0..v.nrows() {
        v.set(r, j, v.get(r, j) + k * v.get(r, i));
    }
}

fn negate_row(w: &mut IntMat, v: &mut IntMat, i: usize) {
    for c in 0..w.ncols() {
        w.set(i, c, -w.get(i, c));
    }
    for r in 0..v.nrows() {
        v.set(r, i, -v.get(r, i));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_rank() {
        let a = IntMat::from_rows(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(det_i128(&a), 3);
        assert_eq!(rank_int(&a), 2);
        let b = IntMat::from_rows(&[vec![2, 4], vec![1, 2]]);
        assert_eq!(det_i128(&b), 0);
        assert_eq!(rank_int(&b), 1);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&IntMat::column(&[2, 3])));
        assert!(!is_primitive(&IntMat::column(&[2, 4])));
        let r = IntMat::from_rows(&[vec![1, 0], vec![0, 1], vec![5, 7]]);
        assert!(is_primitive(&r));
    }

    #[test]
    fn completion_small() {
        for w in [vec![1i64, 0], vec![2, 3], vec![-3, 5], vec![0, 1]] {
            let r = IntMat::column(&w);
            let r1 = unimodular_complete(&r).unwrap();
            let u = IntMat::from_rows(&[
                vec![r.get(0, 0), r1.get(0, 0)],
                vec![r.get(1, 0), r1.get(1, 0)],
            ]);
            assert_eq!(det_i128(&u).abs(), 1);
        }
        // 3x2 case
        let r = IntMat::from_rows(&[vec![1, 0], vec![2, 3], vec![4, 5]]);
        assert!(is_primitive(&r));
        let r1 = unimodular_complete(&r).unwrap();
        assert_eq!(r1.ncols(), 1);
    }

    #[test]
    fn completion_rejects_imprimitive() {
        assert!(unimodular_complete(&IntMat::column(&[2, 4])).is_err());
    }
}
