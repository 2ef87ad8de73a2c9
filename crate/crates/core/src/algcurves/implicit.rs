//! Implicit equations of polynomial parametrizations.

use crate::error::{precondition, Error, Result};
use crate::exactmath::{bivariate_square_free, normalize_primitive, MPoly};
use crate::{MultiPoly, UniPoly};

use super::resultant::sylvester_resultant;

/// Implicit equation `F(x, y) = 0` with a bound on its total degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitCurve {
    pub f: MultiPoly,
    pub degree_bound: usize,
}

/// Square-free primitive implicit equation of the curve `(p(t), q(t))`,
/// certified by the exact identity `F(p(t), q(t)) = 0`.
pub fn implicitize(p: &UniPoly, q: &UniPoly) -> Result<ImplicitCurve> {
    if p.is_constant() && q.is_constant() {
        return precondition("implicitization needs a nonconstant coordinate");
    }
    let delta = p.deg().max(q.deg());
    let degree_bound = 2 * delta;
    let f = if p.is_constant() {
        &MPoly::var(2, 0) - &MPoly::constant(2, p.constant_term())
    } else if q.is_constant() {
        &MPoly::var(2, 1) - &MPoly::constant(2, q.constant_term())
    } else {
        // x1 = x, x2 = y, x3 = u
        let x_minus_p = &MPoly::var(3, 0) - &MPoly::from_uni(p, 3, 2);
        let y_minus_q = &MPoly::var(3, 1) - &MPoly::from_uni(q, 3, 2);
        let r = sylvester_resultant(&x_minus_p, &y_minus_q, 2)?;
        let r2 = MPoly::from_terms(
            2,
            r.terms().map(|(m, c)| (m.exps()[..2].to_vec(), c.clone())),
        );
        bivariate_square_free(&r2)?
    };
    let f = normalize_primitive(&f);
    if !f.eval_uni(&[p.clone(), q.clone()]).is_zero() {
        return Err(Error::Internal("implicit equation does not vanish on the parametrization".into()));
    }
    if f.tdeg() > p.deg() + q.deg() {
        return Err(Error::Internal("implicit equation exceeds the degree bound".into()));
    }
    Ok(ImplicitCurve { f, degree_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse_mpoly, parse_upoly};

    fn up(s: &str) -> UniPoly {
        parse_upoly(s).unwrap()
    }

    fn same_up_to_sign(a: &MultiPoly, b: &MultiPoly) -> bool {
        a == b || *a == -b
    }

    #[test]
    fn examples() {
        let c = implicitize(&up("t"), &up("t^2")).unwrap();
        assert!(same_up_to_sign(&c.f, &parse_mpoly("y - x^2").unwrap()));
        let c = implicitize(&up("t^2"), &up("t^3")).unwrap();
        assert!(same_up_to_sign(&c.f, &parse_mpoly("y^2 - x^3").unwrap()));
        assert_eq!(c.degree_bound, 6);
        let c = implicitize(&up("t"), &up("t")).unwrap();
        assert_eq!(c.f, parse_mpoly("x - y").unwrap());
        assert!(implicitize(&up("3"), &up("1/2")).is_err());
    }

    #[test]
    fn non_injective_parametrization_is_reduced() {
        let c = implicitize(&up("t^2"), &up("t^4")).unwrap();
        assert!(same_up_to_sign(&c.f, &parse_mpoly("y - x^2").unwrap()));
    }

    #[test]
    fn constant_coordinate_gives_a_line() {
        let c = implicitize(&up("5"), &up("t^3 + t")).unwrap();
        assert_eq!(c.f, parse_mpoly("x - 5").unwrap().with_arity(2));
    }
}
