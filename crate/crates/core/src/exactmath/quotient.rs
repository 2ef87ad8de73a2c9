//! Arithmetic modulo a univariate polynomial and characteristic polynomials
//! of multiplication maps.

use super::poly::Poly;
use crate::scalar::Field;

/// `a * b mod m`.
pub fn mulmod<T: Field>(a: &Poly<T>, b: &Poly<T>, m: &Poly<T>) -> Poly<T> {
    (a * b).rem(m).expect("nonzero modulus")
}

/// Power sums `s_k = sum of root^k` over the roots of `m`, for `k < deg m`.
fn power_sums<T: Field>(m: &Poly<T>) -> Vec<T> {
    let m = m.monic();
    let n = m.deg();
    let c = |i: usize| m.coeff(i);
    let mut s = vec![T::from_int(n as i64)];
    for k in 1..n {
        let mut acc = c(n - k).mul_ref(&T::from_int(k as i64));
        for i in 1..k {
            acc += c(n - i).mul_ref(&s[k - i]);
        }
        s.push(-acc);
    }
    s
}

/// Trace of multiplication by `h` on `Q[w]/(m)`.
fn trace_with<T: Field>(h: &Poly<T>, sums: &[T]) -> T {
    let mut acc = T::zero();
    for (j, c) in h.coeffs().iter().enumerate() {
        acc += c.mul_ref(&sums[j]);
    }
    acc
}

/// Characteristic polynomial of multiplication by `r` on `Q[w]/(m)`: its
/// roots are the values `r(w0)` over the roots `w0` of `m`, with multiplicity.
pub fn char_poly_mod<T: Field>(r: &Poly<T>, m: &Poly<T>) -> Poly<T> {
    let n = m.deg();
    if n == 0 {
        return Poly::one();
    }
    let sums = power_sums(m);
    let r = r.rem(m).expect("nonzero modulus");
    let mut traces = Vec::with_capacity(n);
    let mut h = Poly::one();
    for _ in 0..n {
        h = mulmod(&h, &r, m);
        traces.push(trace_with(&h, &sums));
    }
    // Newton's identities: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i.
    let mut e = vec![T::one()];
    for k in 1..=n {
        let mut acc = T::zero();
        for i in 1..=k {
            let t = e[k - i].mul_ref(&traces[i - 1]);
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        e.push(acc.div_ref(&T::from_int(k as i64)));
    }
    let mut coeffs = vec![T::zero(); n + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[n - k] = if k % 2 == 0 { ek } else { -ek };
    }
    Poly::from_coeffs(coeffs)
}
