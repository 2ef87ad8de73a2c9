//! Scalar field abstraction.
//!
//! Polynomial arithmetic, gcds, Sturm sequences and linear algebra are written
//! against [`Field`], so they work for any exact ordered field provided by
//! `num-rational` (`BigRational`, `Ratio<i64>`, `Ratio<i128>`). Floating-point
//! types are deliberately not fields here: every algorithm in this crate
//! decides identities by exact comparison with zero.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssign, One, Signed, ToPrimitive, Zero};

/// An exact ordered field.
pub trait Field:
    Clone + Ord + fmt::Debug + fmt::Display + Signed + NumAssign + FromPrimitive + Send + Sync
{
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_ref(&self, other: &Self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every integer embeds in the field")
    }

    /// Closest binary64 value, used only for diagnostics and reporting.
    fn to_f64_lossy(&self) -> f64;
}

impl<T> Field for T
where
    T: Clone + Ord + fmt::Debug + fmt::Display + Signed + NumAssign + FromPrimitive + ToPrimitive,
    T: Send + Sync,
    for<'a> &'a T: Add<&'a T, Output = T>
        + Sub<&'a T, Output = T>
        + Mul<&'a T, Output = T>
        + Div<&'a T, Output = T>,
{
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// Rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let r: Rational = s.parse().ok()?;
    Some(r)
}

/// Least common multiple of the denominators, as a rational.
pub fn common_denominator<'a, I>(values: I) -> Rational
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut den_lcm = BigInt::one();
    for v in values {
        if !v.is_zero() {
            den_lcm = den_lcm.lcm(v.denom());
        }
    }
    Rational::from_integer(den_lcm)
}

/// Scale that makes the given rational vector a primitive integer vector.
pub fn primitive_integer_scale(values: &[Rational]) -> Rational {
    let den = common_denominator(values.iter());
    let mut g = BigInt::zero();
    for v in values {
        let w = v * &den;
        debug_assert!(w.is_integer());
        g = g.gcd(&w.to_integer());
    }
    if g.is_zero() {
        Rational::one()
    } else {
        den / Rational::from_integer(g)
    }
}

/// `base^exp` for a possibly negative exponent. Panics on `0^negative`.
pub fn pow_i64(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    let b = if exp < 0 { base.recip() } else { base.clone() };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// The deterministic specialization sequence `0, 1, -1, 2, -2, ...`.
pub fn probe_sequence() -> impl Iterator<Item = Rational> {
    (0i64..).map(|k| {
        let v = (k + 1) / 2;
        int(if k % 2 == 1 { v } else { -v })
    })
}

/// Serializes a rational as its `a/b` string.
pub fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Serializes a list of rationals as `a/b` strings.
pub fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Midpoint of two rationals.
pub fn midpoint<T: Field>(a: &T, b: &T) -> T {
    a.add_ref(b).div_ref(&T::from_int(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(parse_rational(" -3/2 "), Some(rat(-3, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn primitive_integer_scaling() {
        let v = vec![rat(1, 2), rat(3, 4), int(0)];
        let c = primitive_integer_scale(&v);
        let w: Vec<_> = v.iter().map(|x| x * &c).collect();
        assert_eq!(w, vec![int(2), int(3), int(0)]);
        let v = vec![int(6), int(-9)];
        assert_eq!(primitive_integer_scale(&v), rat(1, 3));
    }

    #[test]
    fn probe_order() {
        let v: Vec<Rational> = probe_sequence().take(5).collect();
        assert_eq!(v, vec![int(0), int(1), int(-1), int(2), int(-2)]);
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_i64(&int(2), -3), rat(1, 8));
        assert_eq!(pow_i64(&rat(2, 3), 2), rat(4, 9));
    }
}
