use super::forms::Rank1Form;
use super::intmat::gcd_i64;
use super::PosDefMatrix;

/// All primitive columns `w` modulo sign with `ᵗw y w <= bound`, each exactly
/// once with the first nonzero entry positive, ordered by form value then
/// lexicographically.
pub fn primitive_vectors(m: usize, bound: f64, y: &PosDefMatrix) -> Vec<Vec<i64>> {
    assert!(m >= 1 && y.size() == m);
    let inv = y.inverse();
    let box_bound: Vec<i64> = (0..m)
        .map(|i| (bound.max(0.0) * inv.get(i, i)).sqrt().floor() as i64 + 1)
        .collect();
    let mut out = Vec::new();
    let mut w = vec![0i64; m];
    enumerate_box(&mut w, 0, &box_bound, &mut |w| {
        if w.iter().all(|&v| v == 0) {
            return;
        }
        // canonical sign: first nonzero entry positive
        if *w.iter().find(|&&v| v != 0).unwrap() < 0 {
            return;
        }
        let mut g = 0i64;
        for &v in w {
            g = gcd_i64(g, v);
        }
        if g != 1 {
            return;
        }
        if y.form_value(w) <= bound * (1.0 + 1e-12) + 1e-12 {
            out.push(w.to_vec());
        }
    });
    out.sort_by(|a, b| {
        let fa = y.form_value(a);
        let fb = y.form_value(b);
        fa.partial_cmp(&fb).unwrap().then_with(|| a.cmp(b))
    });
    out
}

/// Primitive columns modulo sign with Euclidean norm bound.
pub fn primitive_vectors_euclidean(m: usize, bound: f64) -> Vec<Vec<i64>> {
    primitive_vectors(m, bound, &PosDefMatrix::identity(m))
}

fn enumerate_box(w: &mut Vec<i64>, i: usize, bounds: &[i64], f: &mut impl FnMut(&[i64])) {
    if i == bounds.len() {
        f(w);
        return;
    }
    for v in -bounds[i]..=bounds[i] {
        w[i] = v;
        enumerate_box(w, i + 1, bounds, f);
    }
    w[i] = 0;
}

/// All rank-1 half-integral forms `t · w · ᵗw` with `|t| · ᵗw w <= trace_bound`,
/// each exactly once, ordered by |trace|, then t, then w.
pub fn rank1_enumerate(m: usize, trace_bound: f64) -> Vec<Rank1Form> {
    assert!(trace_bound > 0.0);
    let mut out = Vec::new();
    let ws = primitive_vectors_euclidean(m, trace_bound);
    for w in ws {
        let n2: i64 = w.iter().map(|v| v * v).sum();
        let tmax = (trace_bound / n2 as f64).floor() as i64;
        for t in 1..=tmax {
            out.push(Rank1Form::new(t, w.clone()).unwrap());
            out.push(Rank1Form::new(-t, w.clone()).unwrap());
        }
    }
    out.sort_by(|a, b| {
        a.trace()
            .abs()
            .cmp(&b.trace().abs())
            .then_with(|| a.t.cmp(&b.t))
            .then_with(|| a.w.cmp(&b.w))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn primitive_vector_examples() {
        assert_eq!(primitive_vectors_euclidean(1, 1.0), vec![vec![1]]);
        assert_eq!(
            primitive_vectors_euclidean(2, 1.0),
            vec![vec![0, 1], vec![1, 0]]
        );
        let v5 = primitive_vectors_euclidean(2, 5.0);
        assert_eq!(v5.len(), 8);
        let set: BTreeSet<_> = v5.into_iter().collect();
        for w in [
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![1, -1],
            vec![1, 2],
            vec![2, 1],
            vec![1, -2],
            vec![2, -1],
        ] {
            assert!(set.contains(&w), "missing {w:?}");
        }
    }

    #[test]
    fn rank1_enumerate_scalar_case() {
        let forms = rank1_enumerate(1, 2.0);
        let set: BTreeSet<(i64, Vec<i64>)> = forms.iter().map(|f| (f.t, f.w.clone())).collect();
        assert_eq!(set.len(), 4);
        for t in [-2i64, -1, 1, 2] {
            assert!(set.contains(&(t, vec![1])));
        }
    }

    #[test]
    fn rank1_enumerate_counts() {
        assert_eq!(rank1_enumerate(2, 1.0).len(), 4);
        assert_eq!(rank1_enumerate(2, 2.0).len(), 12);
    }

    #[test]
    fn rank1_round_trip() {
        for m in 1..=4usize {
            for f in rank1_enumerate(m, 10.0) {
                let h = f.reconstruct();
                assert_eq!(h.rank(), 1);
                let g = h.rank1_decompose().unwrap();
                assert_eq!(f, g, "round trip failed for {f:?}");
            }
        }
    }

    #[test]
    fn no_duplicates() {
        let forms = rank1_enumerate(3, 8.0);
        let set: BTreeSet<_> = forms.iter().map(|f| f.reconstruct()).collect();
        assert_eq!(set.len(), forms.len());
    }
}
