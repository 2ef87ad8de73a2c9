//! Invariance of implicit curves under affine maps and monomial level sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{precondition, Error, Result};
use crate::exactmath::MPoly;
use crate::scalar::Rational;
use crate::{MultiPoly, UniPoly};

/// Affine maps of the plane used by the invariance tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineMapKind {
    /// `(x, y) -> (x + a_x, y + a_y)`.
    Translation(Rational, Rational),
    /// `(x, y) -> (alpha x, beta y)`.
    DiagonalScaling(Rational, Rational),
    /// `(x, y) -> (x + l, lambda y)`.
    Skew(Rational, Rational),
}

impl AffineMapKind {
    pub fn translation(ax: Rational, ay: Rational) -> Result<Self> {
        if ax.is_zero() && ay.is_zero() {
            return precondition("translation vector must be nonzero");
        }
        Ok(AffineMapKind::Translation(ax, ay))
    }

    pub fn diagonal_scaling(alpha: Rational, beta: Rational) -> Result<Self> {
        if alpha.is_zero() || beta.is_zero() {
            return precondition("scaling factors must be nonzero");
        }
        Ok(AffineMapKind::DiagonalScaling(alpha, beta))
    }

    pub fn skew(l: Rational, lambda: Rational) -> Result<Self> {
        if l.is_zero() || lambda.is_zero() {
            return precondition("skew map needs l != 0 and lambda != 0");
        }
        Ok(AffineMapKind::Skew(l, lambda))
    }

    fn images(&self) -> [MultiPoly; 2] {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let c = |v: &Rational| MPoly::constant(2, v.clone());
        match self {
            AffineMapKind::Translation(a, b) => [&x + &c(a), &y + &c(b)],
            AffineMapKind::DiagonalScaling(a, b) => [x.scale(a), y.scale(b)],
            AffineMapKind::Skew(l, lam) => [&x + &c(l), y.scale(lam)],
        }
    }
}

/// The constant `c` with `F(T(x, y)) = c F(x, y)`, if one exists.
pub fn affine_associate(f: &MultiPoly, map: &AffineMapKind) -> Result<Option<Rational>> {
    if f.arity() != 2 {
        return precondition("affine invariance needs a two-variable polynomial");
    }
    let Some((lead, lc)) = f.leading_term() else {
        return precondition("affine invariance of the zero polynomial");
    };
    let g = f.compose(&map.images());
    let c = g.coeff(lead.exps()) / lc;
    if c.is_zero() || g != f.scale(&c) {
        return Ok(None);
    }
    Ok(Some(c))
}

/// The curve lies in `x^m y^n = r` on the torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialInvariance {
    pub m: i64,
    pub n: i64,
    #[serde(serialize_with = "crate::scalar::ser_rational")]
    pub r: Rational,
}

/// Pairwise coprime integers `> 1` whose products generate every input.
pub fn coprime_basis(values: &[BigInt]) -> Vec<BigInt> {
    let mut basis: Vec<BigInt> = values.iter().filter(|v| **v > BigInt::one()).cloned().collect();
    loop {
        basis.sort();
        basis.dedup();
        let mut split = None;
        'outer: for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let g = basis[i].gcd(&basis[j]);
                if !g.is_one() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else {
            return basis;
        };
        let (a, b) = (&basis[i] / &g, &basis[j] / &g);
        basis.remove(j);
        basis.remove(i);
        for v in [g, a, b] {
            if v > BigInt::one() {
                basis.push(v);
            }
        }
    }
}

fn valuation(mut n: BigInt, b: &BigInt) -> i64 {
    let mut k = 0;
    while (&n % b).is_zero() {
        n /= b;
        k += 1;
    }
    k
}

/// Generator of `{(u, v) : alpha^u beta^v = 1}` when that lattice has rank 1.
fn relation_lattice(alpha: &Rational, beta: &Rational) -> Option<(i64, i64)> {
    let nums = [alpha.numer().abs(), alpha.denom().clone(), beta.numer().abs(), beta.denom().clone()];
    let basis = coprime_basis(&nums);
    let exps = |r: &Rational| -> Vec<i64> {
        basis
            .iter()
            .map(|b| valuation(r.numer().abs(), b) - valuation(r.denom().clone(), b))
            .collect()
    };
    let (ea, eb) = (exps(alpha), exps(beta));
    let (sa, sb) = (i64::from(alpha.is_negative()), i64::from(beta.is_negative()));
    let k = (0..basis.len()).find(|&k| ea[k] != 0 || eb[k] != 0)?;
    let (e, f) = (ea[k], eb[k]);
    if (0..basis.len()).any(|i| ea[i] * f - eb[i] * e != 0) {
        return None;
    }
    let g = e.gcd(&f);
    let (mut u, mut v) = (f / g, -e / g);
    if (u * sa + v * sb) % 2 != 0 {
        u *= 2;
        v *= 2;
    }
    Some((u, v))
}

/// Decides whether the zero set of `F` on the torus is invariant under
/// `(x, y) -> (alpha x, beta y)` and, if so, returns the monomial level set
/// containing it. The returned `(m, n)` is sign-normalized (first nonzero
/// entry positive). It is the lattice generator scaled by the gcd of the
/// level-set exponents of `F`, so it is not primitive when `F` factors
/// through a power of `x^m y^n`.
pub fn monomial_invariance(
    f: &MultiPoly,
    alpha: &Rational,
    beta: &Rational,
) -> Result<Option<MonomialInvariance>> {
    if f.arity() != 2 || f.is_constant() {
        return precondition("monomial invariance needs a nonconstant two-variable polynomial");
    }
    if f.terms().all(|(m, _)| m.exps()[0] > 0) || f.terms().all(|(m, _)| m.exps()[1] > 0) {
        return precondition("polynomial must not be divisible by x or y");
    }
    if alpha.abs().is_one() && beta.abs().is_one() {
        return precondition("(alpha, beta) has finite multiplicative order");
    }
    let map = AffineMapKind::diagonal_scaling(alpha.clone(), beta.clone())?;
    if affine_associate(f, &map)?.is_none() {
        return Ok(None);
    }
    let Some((mut m, mut n)) = relation_lattice(alpha, beta) else {
        return Err(Error::Internal("invariant curve under a rank-0 relation lattice".into()));
    };
    if m < 0 || (m == 0 && n < 0) {
        m = -m;
        n = -n;
    }
    // Write every support point as base + k (m, n).
    let support: Vec<(i64, i64, Rational)> =
        f.terms().map(|(e, c)| (e.exps()[0] as i64, e.exps()[1] as i64, c.clone())).collect();
    let (i0, j0, _) = support[0].clone();
    let mut ks = Vec::with_capacity(support.len());
    for (i, j, c) in &support {
        let (di, dj) = (i - i0, j - j0);
        let k = if m != 0 { di / m } else { dj / n };
        if di != k * m || dj != k * n {
            return Err(Error::Internal("support of an invariant curve is not on one coset".into()));
        }
        ks.push((k, c.clone()));
    }
    let kmin = ks.iter().map(|(k, _)| *k).min().expect("nonempty");
    let steps: Vec<(usize, Rational)> = ks.into_iter().map(|(k, c)| ((k - kmin) as usize, c)).collect();
    let g = steps.iter().fold(0usize, |g, (k, _)| g.gcd(k));
    let mut coeffs = vec![Rational::zero(); steps.iter().map(|(k, _)| k / g).max().unwrap_or(0) + 1];
    for (k, c) in steps {
        coeffs[k / g] = c;
    }
    let level = UniPoly::from_coeffs(coeffs);
    if level.deg() != 1 {
        return Err(Error::Precondition(format!(
            "curve is a union of {} monomial level sets; each component is invariant separately",
            level.deg()
        )));
    }
    let r = -level.coeff(0) / level.coeff(1);
    let g = g as i64;
    Ok(Some(MonomialInvariance { m: g * m, n: g * n, r }))
}

/// `alpha^m beta^n`, used to check a returned lattice vector.
pub fn monomial_value(alpha: &Rational, beta: &Rational, m: i64, n: i64) -> Rational {
    crate::scalar::pow_i64(alpha, m) * crate::scalar::pow_i64(beta, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_mpoly;
    use crate::scalar::{int, rat};

    fn mp(s: &str) -> MultiPoly {
        parse_mpoly(s).unwrap().with_arity(2)
    }

    #[test]
    fn associate_examples() {
        let t = AffineMapKind::translation(int(1), int(1)).unwrap();
        assert_eq!(affine_associate(&mp("x - y"), &t).unwrap(), Some(int(1)));
        let t = AffineMapKind::translation(int(0), int(1)).unwrap();
        assert_eq!(affine_associate(&mp("y - x^2"), &t).unwrap(), None);
        let s = AffineMapKind::diagonal_scaling(int(2), rat(1, 2)).unwrap();
        assert_eq!(affine_associate(&mp("x*y - 1"), &s).unwrap(), Some(int(1)));
        assert!(AffineMapKind::translation(int(0), int(0)).is_err());
        assert!(AffineMapKind::skew(int(0), int(2)).is_err());
    }

    #[test]
    fn monomial_examples() {
        let r = monomial_invariance(&mp("x*y - 1"), &int(2), &rat(1, 2)).unwrap().unwrap();
        assert_eq!((r.m, r.n, r.r), (1, 1, int(1)));
        let r = monomial_invariance(&mp("x^2*y - 3"), &int(3), &rat(1, 9)).unwrap().unwrap();
        assert_eq!((r.m, r.n, r.r), (2, 1, int(3)));
        assert_eq!(monomial_invariance(&mp("x + y"), &int(2), &int(3)).unwrap(), None);
        assert!(monomial_invariance(&mp("x*y - 1"), &int(-1), &int(1)).is_err());
    }

    #[test]
    fn negative_exponent_level_set() {
        // x - 3y is invariant under (2, 2): x y^-1 = 3.
        let r = monomial_invariance(&mp("x - 3y"), &int(2), &int(2)).unwrap().unwrap();
        assert_eq!((r.m, r.n, r.r), (1, -1, int(3)));
    }

    #[test]
    fn sign_bit_doubles_the_generator() {
        // (-2, 1/2): alpha^u beta^v = 1 needs u = v even.
        let r = monomial_invariance(&mp("x^2*y^2 - 5"), &int(-2), &rat(1, 2)).unwrap().unwrap();
        assert_eq!((r.m, r.n, r.r), (2, 2, int(5)));
        assert_eq!(monomial_value(&int(-2), &rat(1, 2), r.m, r.n), int(1));
    }

    #[test]
    fn coprime_basis_refines() {
        let b = coprime_basis(&[BigInt::from(12), BigInt::from(18)]);
        assert_eq!(b, vec![BigInt::from(2), BigInt::from(3)]);
        let b = coprime_basis(&[BigInt::from(6), BigInt::from(10), BigInt::from(1)]);
        assert_eq!(b, vec![BigInt::from(2), BigInt::from(3), BigInt::from(5)]);
    }
}
