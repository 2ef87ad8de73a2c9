//! Detection of the forms `f(u_1(x_1) + ... + u_d(x_d))` and
//! `f(u_1(x_1) * ... * u_d(x_d))`.
//!
//! Candidates are built from line restrictions of the partial derivatives
//! and returned only after the identity has been checked by exact expansion.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{precondition, Error, Result};
use crate::exactmath::matrix::solve_linear;
use crate::exactmath::{compose_outer, MPoly, Monomial};
use crate::scalar::{primitive_integer_scale, probe_sequence, Rational};
use crate::{MultiPoly, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecompositionKind {
    Additive,
    Multiplicative,
}

impl DecompositionKind {
    pub fn name(self) -> &'static str {
        match self {
            DecompositionKind::Additive => "additive",
            DecompositionKind::Multiplicative => "multiplicative",
        }
    }
}

/// `P = f(u_1(x_1) + ... + u_d(x_d))` or `P = f(u_1(x_1) * ... * u_d(x_d))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub outer: UniPoly,
    pub inner: Vec<UniPoly>,
    pub normalized: bool,
}

impl Decomposition {
    /// The inner combination `sum u_i(x_i)` or `prod u_i(x_i)`.
    pub fn inner_poly(&self) -> MultiPoly {
        let d = self.inner.len();
        let parts = self.inner.iter().enumerate().map(|(i, u)| MPoly::from_uni(u, d, i));
        match self.kind {
            DecompositionKind::Additive => parts.fold(MPoly::zero(d), |a, b| &a + &b),
            DecompositionKind::Multiplicative => parts.fold(MPoly::one(d), |a, b| &a * &b),
        }
    }

    /// Expands `f(inner)`. Multiplicative forms expand as
    /// `sum_k f_k prod_i u_i(x_i)^k`, each product a tensor of univariate
    /// coefficient lists.
    pub fn expand(&self) -> MultiPoly {
        match self.kind {
            DecompositionKind::Additive => compose_outer(&self.outer, &self.inner_poly()),
            DecompositionKind::Multiplicative => {
                let d = self.inner.len();
                let mut out = MPoly::zero(d);
                let mut pows = vec![UniPoly::one(); d];
                for (k, fk) in self.outer.coeffs().iter().enumerate() {
                    if k > 0 {
                        for (pw, u) in pows.iter_mut().zip(&self.inner) {
                            *pw = &*pw * u;
                        }
                    }
                    if !fk.is_zero() {
                        add_tensor(&mut out, fk.clone(), &pows, &mut Vec::with_capacity(d));
                    }
                }
                out
            }
        }
    }

    pub fn verifies(&self, p: &MultiPoly) -> bool {
        self.inner.len() == p.arity() && self.expand() == *p
    }
}

fn add_tensor(out: &mut MultiPoly, coef: Rational, factors: &[UniPoly], exps: &mut Vec<u32>) {
    let Some((first, rest)) = factors.split_first() else {
        out.add_term(Monomial::new(exps.clone()), coef);
        return;
    };
    for (e, c) in first.coeffs().iter().enumerate() {
        if !c.is_zero() {
            exps.push(e as u32);
            add_tensor(out, &coef * c, rest, exps);
            exps.pop();
        }
    }
}

/// Canonical representative: additive inner parts vanish at 0 with `u_1`
/// primitive and positive-leading; multiplicative inner parts are monic.
/// The identity with `p` is re-verified.
pub fn normalize(dec: &Decomposition, p: &MultiPoly) -> Result<Decomposition> {
    if !dec.verifies(p) {
        return precondition("decomposition does not expand to the polynomial");
    }
    let out = normalized(dec);
    if !out.verifies(p) {
        return Err(Error::Internal("normalized decomposition no longer expands to the polynomial".into()));
    }
    Ok(out)
}

fn normalized(dec: &Decomposition) -> Decomposition {
    match dec.kind {
        DecompositionKind::Additive => {
            let mut shift = Rational::zero();
            let mut inner: Vec<UniPoly> = dec
                .inner
                .iter()
                .map(|u| {
                    let c = u.constant_term();
                    shift += &c;
                    u - &UniPoly::constant(c)
                })
                .collect();
            let mut outer = dec.outer.shift(&shift);
            let mut mu = primitive_integer_scale(inner[0].coeffs());
            if inner[0].lc().is_negative() {
                mu = -mu;
            }
            inner = inner.iter().map(|u| u.scale(&mu)).collect();
            outer = outer.scale_arg(&mu.recip());
            Decomposition { kind: dec.kind, outer, inner, normalized: true }
        }
        DecompositionKind::Multiplicative => {
            let mut k = Rational::one();
            let inner = dec
                .inner
                .iter()
                .map(|u| {
                    k *= u.lc();
                    u.monic()
                })
                .collect();
            let outer = dec.outer.scale_arg(&k);
            Decomposition { kind: dec.kind, outer, inner, normalized: true }
        }
    }
}

/// Digits of `h` in base `g`, lowest first, when every digit is constant.
pub fn g_adic_constant_digits(h: &UniPoly, g: &UniPoly) -> Option<Vec<Rational>> {
    if g.is_constant() {
        return None;
    }
    let mut digits = Vec::new();
    let mut rest = h.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(g).ok()?;
        if !r.is_constant() {
            return None;
        }
        digits.push(r.constant_term());
        rest = q;
    }
    Some(digits)
}

/// Finds `f`, `g` with `f(g(x)) = h`, `deg g = k`, `g` monic with `g(0) = 0`.
pub fn uni_decompose(h: &UniPoly, k: usize) -> Result<Option<(UniPoly, UniPoly)>> {
    if k < 2 || h.is_zero() || !h.deg().is_multiple_of(k) {
        return precondition("inner degree must be at least 2 and divide deg h");
    }
    let n = h.deg();
    let r = n / k;
    let hm = h.monic();
    // Top coefficients of g^r must agree with those of h / lc(h).
    let mut g = UniPoly::monomial(Rational::one(), k);
    let rr = Rational::from_integer((r as i64).into());
    for j in 1..k {
        let have = g.pow(r).coeff(n - j);
        let bj = (hm.coeff(n - j) - have) / &rr;
        g = &g + &UniPoly::monomial(bj, k - j);
    }
    let Some(digits) = g_adic_constant_digits(h, &g) else {
        return Ok(None);
    };
    let f = UniPoly::from_coeffs(digits);
    Ok((f.compose(&g) == *h).then_some((f, g)))
}

fn check_detect_pre(p: &MultiPoly) -> Result<()> {
    let d = p.arity();
    if d < 2 {
        return precondition("structure detection needs at least two variables");
    }
    if let Some(i) = (0..d).find(|&i| p.degree_in(i) == 0) {
        return precondition(format!("polynomial does not depend on x{}", i + 1));
    }
    Ok(())
}

/// First probe value `v` (within `8 delta` attempts) with `ok(v)`.
fn probe(delta: usize, var: usize, what: &str, ok: impl Fn(&Rational) -> bool) -> Result<Rational> {
    let attempts = 8 * delta.max(1);
    probe_sequence().take(attempts).find(|v| ok(v)).ok_or_else(|| Error::SpecializationExhausted {
        attempts,
        context: format!("{what} for x{}", var + 1),
    })
}

/// Detects `P = f(u_1(x_1) + ... + u_d(x_d))` and returns the normalized
/// decomposition.
pub fn detect_additive(p: &MultiPoly) -> Result<Option<Decomposition>> {
    check_detect_pre(p)?;
    let d = p.arity();
    let delta = p.tdeg();
    let ds: Vec<MultiPoly> = (0..d).map(|i| p.derivative(i)).collect::<Result<_>>()?;
    // u_j'(c_j) != 0 exactly when D_j does not vanish on x_j = c_j.
    let mut c = Vec::with_capacity(d);
    for j in 0..d {
        c.push(probe(delta, j, "nonvanishing derivative slice", |v| !ds[j].substitute(j, v).is_zero())?);
    }
    // On the line through c along x_i: D_i / D_k = u_i'(x_i) / u_k'(c_k).
    let ratio = |i: usize, k: usize| -> Option<UniPoly> {
        let num = ds[i].restrict_to_line(i, &c);
        let den = ds[k].restrict_to_line(i, &c);
        if den.is_zero() {
            return None;
        }
        num.exact_div(&den)
    };
    let mut derivs = vec![UniPoly::zero(); d];
    for (i, slot) in derivs.iter_mut().enumerate().skip(1) {
        let Some(r) = ratio(i, 0) else { return Ok(None) };
        *slot = r;
    }
    let Some(r1) = ratio(0, 1) else { return Ok(None) };
    derivs[0] = r1.scale(&derivs[1].eval(&c[1]));
    if derivs.iter().any(|u| u.is_zero()) {
        return Ok(None);
    }
    let inner: Vec<UniPoly> = derivs.iter().map(|u| u.integral()).collect();
    // P(x_1, c_2, ..., c_d) = f(u_1(x_1) + K).
    let kconst: Rational = (1..d).map(|j| inner[j].eval(&c[j])).sum();
    let base = &inner[0] + &UniPoly::constant(kconst);
    let h = p.restrict_to_line(0, &c);
    let Some(digits) = g_adic_constant_digits(&h, &base) else {
        return Ok(None);
    };
    let outer = UniPoly::from_coeffs(digits);
    if outer.is_constant() {
        return Ok(None);
    }
    let dec = normalized(&Decomposition { kind: DecompositionKind::Additive, outer, inner, normalized: false });
    Ok(dec.verifies(p).then_some(dec))
}

/// Monic `u` of degree `m` with `u' Dn = k N u`, `k = m lc(Dn) / lc(N)`.
fn log_derivative_solution(n: &UniPoly, dn: &UniPoly, m: usize) -> Option<UniPoly> {
    if n.is_zero() || dn.is_zero() || n.deg() + 1 != dn.deg() {
        return None;
    }
    let k = Rational::from_integer((m as i64).into()) * dn.lc() / n.lc();
    let kn = n.scale(&k);
    // Unknowns a_0..a_{m-1}; u = x^m + sum a_j x^j.
    let eqs = m + dn.deg();
    let column = |j: usize| -> UniPoly {
        let e = UniPoly::monomial(Rational::one(), j);
        &(&e.derivative() * dn) - &(&kn * &e)
    };
    let cols: Vec<UniPoly> = (0..m).map(column).collect();
    let rhs_poly = -&column(m);
    let a: Vec<Vec<Rational>> = (0..eqs).map(|row| cols.iter().map(|c| c.coeff(row)).collect()).collect();
    let b: Vec<Rational> = (0..eqs).map(|row| rhs_poly.coeff(row)).collect();
    if rhs_poly.deg() >= eqs && !rhs_poly.is_zero() {
        return None;
    }
    let sol = solve_linear(&a, &b)?;
    let mut coeffs = sol;
    coeffs.push(Rational::one());
    let u = UniPoly::from_coeffs(coeffs);
    (&(&u.derivative() * dn) - &(&kn * &u)).is_zero().then_some(u)
}

fn common_divisors(values: &[usize]) -> Vec<usize> {
    let g = values.iter().fold(0usize, |g, v| g.gcd(v));
    (1..=g).filter(|k| g % k == 0).collect()
}

/// Detects `P = f(u_1(x_1) * ... * u_d(x_d))`, trying outer degrees in
/// increasing order, and returns the normalized decomposition.
pub fn detect_multiplicative(p: &MultiPoly) -> Result<Option<Decomposition>> {
    check_detect_pre(p)?;
    let d = p.arity();
    let delta = p.tdeg();
    let ds: Vec<MultiPoly> = (0..d).map(|i| p.derivative(i)).collect::<Result<_>>()?;
    // u_j(c_j) != 0 exactly when P is nonconstant on x_j = c_j, and then
    // u_j'(c_j) != 0 exactly when D_j does not vanish there.
    let mut c = Vec::with_capacity(d);
    for j in 0..d {
        c.push(probe(delta, j, "nondegenerate slice", |v| {
            !p.substitute(j, v).is_constant() && !ds[j].substitute(j, v).is_zero()
        })?);
    }
    // On the line along x_i: D_i / D_k = (u_k(c_k) / u_k'(c_k)) u_i'/u_i.
    let mut ratios = Vec::with_capacity(d);
    for i in 0..d {
        let k = if i == 0 { 1 } else { 0 };
        let num = ds[i].restrict_to_line(i, &c);
        let den = ds[k].restrict_to_line(i, &c);
        if num.is_zero() || den.is_zero() {
            return Ok(None);
        }
        let g = num.gcd(&den)?;
        ratios.push((num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides")));
    }
    let degs: Vec<usize> = (0..d).map(|i| p.degree_in(i)).collect();
    let h = p.restrict_to_line(0, &c);
    for fdeg in common_divisors(&degs) {
        let mut inner = Vec::with_capacity(d);
        for (i, (n, dn)) in ratios.iter().enumerate() {
            match log_derivative_solution(n, dn, degs[i] / fdeg) {
                Some(u) => inner.push(u),
                None => break,
            }
        }
        if inner.len() != d {
            continue;
        }
        // P(x_1, c_2, ..., c_d) = f(K u_1(x_1)).
        let kconst: Rational = (1..d).map(|j| inner[j].eval(&c[j])).product();
        if kconst.is_zero() {
            continue;
        }
        let Some(digits) = g_adic_constant_digits(&h, &inner[0]) else {
            continue;
        };
        let outer = UniPoly::from_coeffs(digits).scale_arg(&kconst.recip());
        if outer.is_constant() {
            continue;
        }
        let dec =
            normalized(&Decomposition { kind: DecompositionKind::Multiplicative, outer, inner, normalized: false });
        if dec.verifies(p) {
            return Ok(Some(dec));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse_mpoly, parse_upoly};
    use crate::scalar::int;

    fn mp(s: &str) -> MultiPoly {
        parse_mpoly(s).unwrap()
    }
    fn up(s: &str) -> UniPoly {
        parse_upoly(s).unwrap()
    }

    #[test]
    fn additive_examples() {
        let d = detect_additive(&mp("(x1+x2^2)^2+3")).unwrap().unwrap();
        assert_eq!(d.outer, up("z^2+3"));
        assert_eq!(d.inner, vec![up("x"), up("x^2")]);
        assert_eq!(detect_additive(&mp("x1*x2+x1+x2")).unwrap(), None);
        let d = detect_additive(&mp("x1+x2^2+x3^3")).unwrap().unwrap();
        assert_eq!(d.outer, up("z"));
        assert_eq!(d.inner, vec![up("x"), up("x^2"), up("x^3")]);
    }

    #[test]
    fn additive_with_scaling_and_shift() {
        let p = mp("(2x1 + 4x2^3 - 6 + 2x2)^3 - (2x1 + 4x2^3 - 6 + 2x2)");
        let d = detect_additive(&p).unwrap().unwrap();
        assert!(d.verifies(&p));
        assert_eq!(d.inner[0], up("x"));
        assert_eq!(d.inner[1], up("2x^3 + x"));
    }

    #[test]
    fn multiplicative_examples() {
        let d = detect_multiplicative(&mp("x1*x2*x3")).unwrap().unwrap();
        assert_eq!(d.outer, up("z"));
        assert_eq!(d.inner, vec![up("x"), up("x"), up("x")]);
        let d = detect_multiplicative(&mp("x1^2*x2^2 + x1*x2")).unwrap().unwrap();
        assert_eq!(d.outer, up("z^2+z"));
        assert_eq!(d.inner, vec![up("x"), up("x")]);
        assert_eq!(detect_multiplicative(&mp("x1+x2")).unwrap(), None);
    }

    #[test]
    fn multiplicative_with_repeated_roots() {
        let p = mp("3((x1+1)^2 (x1-2) * (x2^2+1))^2 - 5");
        let d = detect_multiplicative(&p).unwrap().unwrap();
        assert!(d.verifies(&p));
        // The smallest outer degree wins, so the square moves inside.
        assert_eq!(d.outer, up("3z - 5"));
        assert_eq!(d.inner[0], up("((x+1)^2 (x-2))^2"));
        assert_eq!(d.inner[1], up("(x^2+1)^2"));
    }

    #[test]
    fn normalize_examples() {
        let p = mp("(x1+1+x2)^2");
        let dec = Decomposition {
            kind: DecompositionKind::Additive,
            outer: up("z^2"),
            inner: vec![up("x+1"), up("x")],
            normalized: false,
        };
        let n = normalize(&dec, &p).unwrap();
        assert_eq!(n.inner, vec![up("x"), up("x")]);
        assert_eq!(n.outer, up("(z+1)^2"));
        assert_eq!(normalize(&n, &p).unwrap(), n);
        let q = mp("2x1*x2");
        let dec = Decomposition {
            kind: DecompositionKind::Multiplicative,
            outer: up("z"),
            inner: vec![up("2x"), up("x")],
            normalized: false,
        };
        let n = normalize(&dec, &q).unwrap();
        assert_eq!(n.inner, vec![up("x"), up("x")]);
        assert_eq!(n.outer, up("2z"));
    }

    #[test]
    fn uni_decompose_examples() {
        let (f, g) = uni_decompose(&up("(x^2+1)^2"), 2).unwrap().unwrap();
        assert_eq!((f, g), (up("(z+1)^2"), up("x^2")));
        let (f, g) = uni_decompose(&up("x^6"), 3).unwrap().unwrap();
        assert_eq!((f, g), (up("z^2"), up("x^3")));
        assert_eq!(uni_decompose(&up("x^4+x"), 2).unwrap(), None);
        assert!(uni_decompose(&up("x^5"), 2).is_err());
        let h = up("3(x^2 - 4x)^3 + 7(x^2-4x) - 1");
        let (f, g) = uni_decompose(&h, 2).unwrap().unwrap();
        assert_eq!(f.compose(&g), h);
        assert_eq!(g.constant_term(), int(0));
    }

    #[test]
    fn preconditions() {
        assert!(detect_additive(&mp("x1^2")).is_err());
        assert!(detect_additive(&mp("x1 + x3")).is_err());
    }
}
