use crate::poly::Monomial;

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d as u16);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// `H(d)` for `d = 0..=max_degree`: monomials of degree `d` outside the leading
/// ideal generated by `heads`.
pub fn hilbert_function(nvars: usize, heads: &[Monomial], max_degree: u32) -> Vec<u64> {
    (0..=max_degree)
        .map(|d| {
            monomials_of_degree(nvars, d)
                .iter()
                .filter(|t| !heads.iter().any(|h| t.is_divisible_by(h)))
                .count() as u64
        })
        .collect()
}

/// Coefficients of `Π(1 - t^{d_i}) / (1 - t)^n` up to `max_degree`: the Hilbert
/// series of a complete intersection with generator degrees `degrees`.
pub fn complete_intersection_series(nvars: usize, degrees: &[u32], max_degree: u32) -> Vec<i64> {
    let len = max_degree as usize + 1;
    let mut num = vec![0i64; len];
    num[0] = 1;
    for &d in degrees {
        let d = d as usize;
        for k in (d..len).rev() {
            num[k] -= num[k - d];
        }
    }
    // divide by (1 - t) n times: prefix sums
    for _ in 0..nvars {
        for k in 1..len {
            num[k] += num[k - 1];
        }
    }
    num
}
