//! Greatest common divisors of bivariate polynomials.

use num_traits::Signed;

use super::mpoly::MPoly;
use super::poly::Poly;
use crate::error::{precondition, Result};
use crate::scalar::{primitive_integer_scale, Rational};

/// Bivariate polynomial as a polynomial in `y` with coefficients in `Q[x]`,
/// lowest power of `y` first, trimmed.
type Rec = Vec<Poly<Rational>>;

fn to_rec(f: &MPoly<Rational>) -> Rec {
    let mut out = vec![Poly::zero(); f.degree_in(1) + 1];
    for (m, c) in f.terms() {
        let e = m.exps();
        out[e[1] as usize] = &out[e[1] as usize] + &Poly::monomial(c.clone(), e[0] as usize);
    }
    trim(out)
}

fn from_rec(r: &Rec) -> MPoly<Rational> {
    let mut out = MPoly::zero(2);
    for (j, c) in r.iter().enumerate() {
        for (i, a) in c.coeffs().iter().enumerate() {
            out.add_term(super::mpoly::Monomial::new(vec![i as u32, j as u32]), a.clone());
        }
    }
    out
}

fn trim(mut r: Rec) -> Rec {
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

fn content(r: &Rec) -> Poly<Rational> {
    let mut g = Poly::zero();
    for c in r {
        if !c.is_zero() {
            g = g.gcd(c).expect("not both zero");
            if g.is_constant() {
                return g;
            }
        }
    }
    g
}

fn primitive(r: &Rec) -> Rec {
    let c = content(r);
    r.iter().map(|a| a.exact_div(&c).expect("content divides")).collect()
}

/// Pseudo-remainder of `a` by `b` in `Q[x][y]`.
fn prem(a: &Rec, b: &Rec) -> Rec {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * bc);
        }
        r = trim(r);
    }
    r
}

/// Scales by a rational so the integer coefficients are coprime and the
/// graded-lex leading coefficient is positive.
pub fn normalize_primitive(f: &MPoly<Rational>) -> MPoly<Rational> {
    if f.is_zero() {
        return f.clone();
    }
    let coeffs: Vec<Rational> = f.terms().map(|(_, c)| c.clone()).collect();
    let mut s = primitive_integer_scale(&coeffs);
    if f.lc().is_negative() {
        s = -s;
    }
    f.scale(&s)
}

/// Greatest common divisor in `Q[x, y]`, normalized by [`normalize_primitive`].
pub fn bivariate_gcd(f: &MPoly<Rational>, g: &MPoly<Rational>) -> Result<MPoly<Rational>> {
    if f.arity() != 2 || g.arity() != 2 {
        return precondition("bivariate gcd needs two-variable polynomials");
    }
    if f.is_zero() && g.is_zero() {
        return precondition("gcd of two zero polynomials");
    }
    if f.is_zero() {
        return Ok(normalize_primitive(g));
    }
    if g.is_zero() {
        return Ok(normalize_primitive(f));
    }
    let (a, b) = (to_rec(f), to_rec(g));
    let cont = content(&a).gcd(&content(&b)).expect("both nonzero");
    let (mut a, mut b) = (primitive(&a), primitive(&b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let pp = loop {
        if b.len() == 1 {
            break vec![Poly::one()];
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            break b;
        }
        a = b;
        b = primitive(&r);
    };
    let out: Rec = pp.iter().map(|c| c * &cont).collect();
    Ok(normalize_primitive(&from_rec(&out)))
}

/// Product of the distinct irreducible factors of a nonzero bivariate
/// polynomial, normalized by [`normalize_primitive`].
pub fn bivariate_square_free(f: &MPoly<Rational>) -> Result<MPoly<Rational>> {
    if f.is_zero() {
        return precondition("square-free part of the zero polynomial");
    }
    let g = bivariate_gcd(f, &f.derivative(0)?)?;
    let g = bivariate_gcd(&g, &f.derivative(1)?)?;
    let q = f.exact_div(&g).expect("gcd divides");
    Ok(normalize_primitive(&q))
}

/// True for a nonzero constant.
pub fn is_unit(f: &MPoly<Rational>) -> bool {
    !f.is_zero() && f.is_constant()
}

/// Rational content-free representative of a constant-or-not polynomial:
/// `1` for nonzero constants.
pub fn unit_normal(f: &MPoly<Rational>) -> MPoly<Rational> {
    if is_unit(f) {
        MPoly::one(f.arity())
    } else {
        normalize_primitive(f)
    }
}
