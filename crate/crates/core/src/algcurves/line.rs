//! Whether a (transformed) parametrized curve lies in an affine line.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::curve::{ParamCurve, Transform};
use crate::scalar::{primitive_integer_scale, Rational};
use crate::structure::equiv::{equiv_a, without_constant};

/// Right-hand side of a line equation `alpha X + beta Y = gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineConstant {
    Rational(Rational),
    /// `log(v)` for a positive rational `v != 1`.
    LogOf(Rational),
}

impl LineConstant {
    fn log_of(v: Rational) -> Self {
        if v.is_one() {
            LineConstant::Rational(Rational::zero())
        } else {
            LineConstant::LogOf(v)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineVerdict {
    Line { alpha: Rational, beta: Rational, gamma: LineConstant },
    NotLine,
}

impl LineVerdict {
    pub fn is_line(&self) -> bool {
        matches!(self, LineVerdict::Line { .. })
    }

    /// Scales `(alpha, beta[, gamma])` to coprime integers with the first
    /// nonzero of `alpha, beta` positive.
    fn line(alpha: Rational, beta: Rational, gamma: LineConstant) -> Self {
        let mut vals = vec![alpha.clone(), beta.clone()];
        if let LineConstant::Rational(g) = &gamma {
            vals.push(g.clone());
        }
        let mut s = primitive_integer_scale(&vals);
        if alpha.is_negative() || (alpha.is_zero() && beta.is_negative()) {
            s = -s;
        }
        let gamma = match gamma {
            LineConstant::Rational(g) => LineConstant::Rational(g * &s),
            // Log constants only arise with coprime integer (alpha, beta),
            // so the scale is a sign.
            LineConstant::LogOf(v) => LineConstant::log_of(if s.is_negative() { v.recip() } else { v }),
        };
        LineVerdict::Line { alpha: alpha * &s, beta: beta * &s, gamma }
    }
}

/// Decides whether the curve lies in a line `alpha X + beta Y = gamma`.
pub fn line_containment(c: &ParamCurve) -> LineVerdict {
    let (p, q) = (c.p(), c.q());
    let one = Rational::one;
    let zero = Rational::zero;
    let abs_lc = |u: &crate::UniPoly| u.lc().abs();
    match (c.fx(), c.fy()) {
        (Transform::Identity, Transform::Identity) => {
            if p.is_constant() {
                return LineVerdict::line(one(), zero(), LineConstant::Rational(p.constant_term()));
            }
            if q.is_constant() {
                return LineVerdict::line(zero(), one(), LineConstant::Rational(q.constant_term()));
            }
            match equiv_a(&without_constant(p), &without_constant(q)).expect("nonconstant") {
                Some(w) => {
                    let gamma = p.constant_term() - &w.lambda * q.constant_term();
                    LineVerdict::line(one(), -w.lambda, LineConstant::Rational(gamma))
                }
                None => LineVerdict::NotLine,
            }
        }
        (Transform::LogAbs, Transform::LogAbs) => {
            if p.is_constant() {
                return LineVerdict::line(one(), zero(), LineConstant::log_of(abs_lc(p)));
            }
            if q.is_constant() {
                return LineVerdict::line(zero(), one(), LineConstant::log_of(abs_lc(q)));
            }
            let (a, b) = (p.deg(), q.deg());
            let g = a.gcd(&b);
            let (m, n) = (b / g, a / g);
            let k = num_traits::pow(p.lc(), 2 * m) / num_traits::pow(q.lc(), 2 * n);
            if p.pow(2 * m) != q.pow(2 * n).scale(&k) {
                return LineVerdict::NotLine;
            }
            let v = num_traits::pow(abs_lc(p), m) / num_traits::pow(abs_lc(q), n);
            LineVerdict::line(
                Rational::from_integer((m as i64).into()),
                Rational::from_integer((-(n as i64)).into()),
                LineConstant::log_of(v),
            )
        }
        (fx, _) => {
            let (id_poly, log_poly) = if fx == Transform::Identity { (p, q) } else { (q, p) };
            let id_first = fx == Transform::Identity;
            if id_poly.is_constant() {
                let (al, be) = if id_first { (one(), zero()) } else { (zero(), one()) };
                return LineVerdict::line(al, be, LineConstant::Rational(id_poly.constant_term()));
            }
            if log_poly.is_constant() {
                let (al, be) = if id_first { (zero(), one()) } else { (one(), zero()) };
                return LineVerdict::line(al, be, LineConstant::log_of(abs_lc(log_poly)));
            }
            LineVerdict::NotLine
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_upoly;
    use crate::scalar::int;

    fn curve(p: &str, q: &str, fx: Transform, fy: Transform) -> ParamCurve {
        ParamCurve::new(parse_upoly(p).unwrap(), parse_upoly(q).unwrap(), fx, fy).unwrap()
    }

    const ID: Transform = Transform::Identity;
    const LOG: Transform = Transform::LogAbs;

    #[test]
    fn spec_examples() {
        assert_eq!(
            line_containment(&curve("t", "3t+1", ID, ID)),
            LineVerdict::Line { alpha: int(3), beta: int(-1), gamma: LineConstant::Rational(int(-1)) }
        );
        assert_eq!(
            line_containment(&curve("t^2", "t^3", LOG, LOG)),
            LineVerdict::Line { alpha: int(3), beta: int(-2), gamma: LineConstant::Rational(int(0)) }
        );
        assert_eq!(line_containment(&curve("t+1", "t^2", ID, LOG)), LineVerdict::NotLine);
    }

    #[test]
    fn log_log_with_constant() {
        // |2t^2| = 2 |t|^2 and |t| = |t|: 1 log|p| - 2 log|q| = log 2.
        assert_eq!(
            line_containment(&curve("2t^2", "t", LOG, LOG)),
            LineVerdict::Line { alpha: int(1), beta: int(-2), gamma: LineConstant::LogOf(int(2)) }
        );
        assert_eq!(line_containment(&curve("t^2+1", "t", LOG, LOG)), LineVerdict::NotLine);
    }

    #[test]
    fn degenerate_cases() {
        assert!(line_containment(&curve("5", "t^2", ID, ID)).is_line());
        assert!(line_containment(&curve("t^2", "3", ID, LOG)).is_line());
        assert!(line_containment(&curve("t", "t^2", ID, ID)) == LineVerdict::NotLine);
        assert!(line_containment(&curve("t^2+t", "t^2+t+1", ID, ID)).is_line());
    }
}
