//! Seeded random inputs for the acceptance checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algcurves::{line_containment, ParamCurve, Shift, Transform};
use crate::exactmath::{compose_outer, MPoly, Monomial};
use crate::expansion::FiniteSet;
use crate::scalar::Rational;
use crate::{MultiPoly, UniPoly};

pub fn small_rational(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=max_den).into())
}

fn nonzero_int(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// Integer coefficients in `[-3, 3]`, exact degree `deg`.
pub fn uni(rng: &mut ChaCha8Rng, deg: usize) -> UniPoly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-3..=3)).collect();
    c.push(nonzero_int(rng, 3));
    UniPoly::from_ints(&c)
}

pub fn monic_uni(rng: &mut ChaCha8Rng, deg: usize) -> UniPoly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-3..=3)).collect();
    c.push(1);
    UniPoly::from_ints(&c)
}

/// A constructed `f(sum u_i)` or `f(prod u_i)` with its parts.
#[derive(Debug, Clone)]
pub struct Composed {
    pub p: MultiPoly,
    pub outer: UniPoly,
    pub inner: Vec<UniPoly>,
}

/// `d` in `2..=4`, `deg f <= 3`, `deg u_i <= 4`. Multiplicative inner parts
/// are monic.
pub fn composed(rng: &mut ChaCha8Rng, multiplicative: bool) -> Composed {
    let d = rng.gen_range(2..=4);
    let fdeg = rng.gen_range(1..=3);
    let outer = uni(rng, fdeg);
    let inner: Vec<UniPoly> = (0..d)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            if multiplicative {
                monic_uni(rng, k)
            } else {
                uni(rng, k)
            }
        })
        .collect();
    let parts = inner.iter().enumerate().map(|(i, u)| MPoly::from_uni(u, d, i));
    let combined = if multiplicative {
        parts.fold(MPoly::one(d), |a, b| &a * &b)
    } else {
        parts.fold(MPoly::zero(d), |a, b| &a + &b)
    };
    Composed { p: compose_outer(&outer, &combined), outer, inner }
}

/// Sparse random polynomial in `2..=4` variables, nonconstant in each.
pub fn unstructured(rng: &mut ChaCha8Rng) -> MultiPoly {
    let d = rng.gen_range(2..=4);
    let mut p = MPoly::zero(d);
    for _ in 0..rng.gen_range(2..=6) {
        let e: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=3)).collect();
        p.add_term(Monomial::new(e), Rational::from_integer(nonzero_int(rng, 5).into()));
    }
    for i in 0..d {
        if p.degree_in(i) == 0 {
            let mut e = vec![0; d];
            e[i] = rng.gen_range(1..=3);
            p.add_term(Monomial::new(e), Rational::from_integer(nonzero_int(rng, 5).into()));
        }
    }
    p
}

/// Dense random polynomial in two variables of total degree exactly `deg`.
pub fn bivariate(rng: &mut ChaCha8Rng, deg: usize) -> MultiPoly {
    let mut p = MPoly::zero(2);
    for total in 0..=deg {
        for i in 0..=total {
            if total == deg || rng.gen_bool(0.6) {
                let c = rng.gen_range(-4..=4);
                if c != 0 {
                    p.add_term(Monomial::new(vec![i as u32, (total - i) as u32]), Rational::from_integer(c.into()));
                }
            }
        }
    }
    if p.tdeg() < deg || p.is_zero() {
        p.add_term(Monomial::new(vec![0, deg as u32]), Rational::from_integer(1.into()));
    }
    p
}

/// [`bivariate`] with the degree drawn from `degrees`.
pub fn bivariate_in(rng: &mut ChaCha8Rng, degrees: std::ops::RangeInclusive<usize>) -> MultiPoly {
    let deg = rng.gen_range(degrees);
    bivariate(rng, deg)
}

/// Random set of `n` distinct small rationals.
pub fn rational_set(rng: &mut ChaCha8Rng, n: usize) -> FiniteSet {
    let mut v = std::collections::BTreeSet::new();
    while v.len() < n {
        v.insert(small_rational(rng, 40, 4));
    }
    FiniteSet::new(v)
}

/// Fixed curves covering every transform combination, none contained in a line.
pub fn curve_corpus() -> Vec<ParamCurve> {
    use crate::exactmath::parse_upoly;
    let id = Transform::Identity;
    let lg = Transform::LogAbs;
    let rows: &[(&str, &str, Transform, Transform)] = &[
        ("t", "t^2", id, id),
        ("t^2", "t^3", id, id),
        ("t", "t^3 - t", id, id),
        ("t^2 + t", "t^3", id, id),
        ("t^2", "t^4 + t", id, id),
        ("t^3", "t^2 - 1", id, id),
        ("t - 1", "t^3 + 2t", id, id),
        ("t^2 - 2", "t^3 - 3t", id, id),
        ("t + 1", "t^2 + 1", lg, lg),
        ("t", "t + 2", lg, lg),
        ("t^2 + 1", "t - 3", lg, lg),
        ("t - 1", "t^2 + t + 1", lg, lg),
        ("t + 2", "t^3 + 1", lg, lg),
        ("t^2 - 2", "t + 1", lg, lg),
        ("t", "t + 1", id, lg),
        ("t^2", "t + 3", id, lg),
        ("t", "t^2 + 1", id, lg),
        ("t^3", "t - 2", id, lg),
        ("t + 1", "t", lg, id),
        ("t^2 + 2", "t", lg, id),
        ("t - 1", "t^2", lg, id),
        ("t", "t^3 - t", lg, id),
    ];
    rows.iter()
        .map(|(p, q, fx, fy)| {
            ParamCurve::new(parse_upoly(p).expect("corpus"), parse_upoly(q).expect("corpus"), *fx, *fy)
                .expect("corpus")
        })
        .filter(|c| !line_containment(c).is_line())
        .collect()
}

/// Nonzero translation in the curve's encoding.
pub fn shift_for(rng: &mut ChaCha8Rng, c: &ParamCurve) -> Shift {
    let pick = |rng: &mut ChaCha8Rng, f: Transform| match f {
        Transform::Identity => small_rational(rng, 6, 3),
        Transform::LogAbs => {
            let choices = [1, 2, 3, 4, 6];
            let num = *choices.choose(rng).expect("nonempty");
            let den = *choices.choose(rng).expect("nonempty");
            Rational::new(num.into(), den.into())
        }
    };
    loop {
        let s = Shift::new(pick(rng, c.fx()), pick(rng, c.fy()));
        if s.ax != c.fx().zero_shift() || s.ay != c.fy().zero_shift() {
            return s;
        }
    }
}
