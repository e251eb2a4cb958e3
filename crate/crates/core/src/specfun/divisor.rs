use num_complex::Complex64;

/// Divisors of `a >= 1` in increasing order.
pub fn divisors(a: u64) -> Vec<u64> {
    assert!(a >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= a {
        if a % d == 0 {
            small.push(d);
            if d * d != a {
                large.push(a / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Divisor power sum `σ_s(a) = Σ_{0<d|a} d^s` with complex exponent.
pub fn sigma_power(a: u64, s: Complex64) -> Complex64 {
    divisors(a)
        .into_iter()
        .map(|d| Complex64::new(d as f64, 0.0).powc(s))
        .sum()
}

/// Number-of-divisors function `σ_0`.
pub fn sigma0(a: u64) -> u64 {
    divisors(a).len() as u64
}
