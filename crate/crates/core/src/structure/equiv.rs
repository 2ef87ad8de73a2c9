//! Additive and multiplicative equivalence of univariate polynomials.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{precondition, Result};
use crate::scalar::{rat, Rational};
use crate::UniPoly;

/// `p = lambda q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivWitnessA {
    pub lambda: Rational,
}

/// `|p| = |q|^kappa` pointwise, with `kappa = r/s` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivWitnessM {
    pub kappa: Rational,
}

/// Decides `p = lambda q` for some nonzero rational `lambda`.
pub fn equiv_a(p: &UniPoly, q: &UniPoly) -> Result<Option<EquivWitnessA>> {
    if p.is_zero() || q.is_zero() {
        return precondition("additive equivalence of the zero polynomial");
    }
    if p.deg() != q.deg() {
        return Ok(None);
    }
    let lambda = p.lc() / q.lc();
    Ok((q.scale(&lambda) == *p).then_some(EquivWitnessA { lambda }))
}

/// Decides `|p| = |q|^kappa` for some positive rational `kappa`. The only
/// possible exponent is `deg p / deg q`, and `|p| = |q|^(r/s)` is checked as
/// `p^(2s) = q^(2r)`.
pub fn equiv_m(p: &UniPoly, q: &UniPoly) -> Result<Option<EquivWitnessM>> {
    if p.is_constant() || q.is_constant() {
        return precondition("multiplicative equivalence needs nonconstant polynomials");
    }
    let (a, b) = (p.deg() as i64, q.deg() as i64);
    let g = a.gcd(&b);
    let (r, s) = (a / g, b / g);
    let holds = p.pow(2 * s as usize) == q.pow(2 * r as usize);
    Ok(holds.then(|| EquivWitnessM { kappa: rat(r, s) }))
}

/// Constant-free part `p - p(0)`.
pub fn without_constant(p: &UniPoly) -> UniPoly {
    let mut c = p.coeffs().to_vec();
    if let Some(c0) = c.first_mut() {
        *c0 = Rational::zero();
    }
    UniPoly::from_coeffs(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_upoly;
    use crate::scalar::int;

    fn up(s: &str) -> UniPoly {
        parse_upoly(s).unwrap()
    }

    #[test]
    fn additive_examples() {
        assert_eq!(equiv_a(&up("2x^2+6x"), &up("x^2+3x")).unwrap(), Some(EquivWitnessA { lambda: int(2) }));
        assert_eq!(equiv_a(&up("x^2"), &up("x^3")).unwrap(), None);
        assert_eq!(equiv_a(&up("x"), &up("x")).unwrap(), Some(EquivWitnessA { lambda: int(1) }));
        assert!(equiv_a(&up("0"), &up("x")).is_err());
    }

    #[test]
    fn multiplicative_examples() {
        assert_eq!(equiv_m(&up("x^2"), &up("x^3")).unwrap(), Some(EquivWitnessM { kappa: rat(2, 3) }));
        assert_eq!(equiv_m(&up("(x+1)^4"), &up("(x+1)^2")).unwrap(), Some(EquivWitnessM { kappa: int(2) }));
        assert_eq!(equiv_m(&up("2x"), &up("x")).unwrap(), None);
        assert_eq!(equiv_m(&up("-x"), &up("x")).unwrap(), Some(EquivWitnessM { kappa: int(1) }));
        assert!(equiv_m(&up("3"), &up("x")).is_err());
    }
}
