//! Exact counting of real intersection points.

use num_traits::{One, Zero};

use super::curve::{ParamCurve, Shift, Transform};
use super::line::{line_containment, LineVerdict};
use super::resultant::{resultant_coeffs, subresultant_coeffs};
use crate::error::{precondition, Error, Result};
use crate::exactmath::quotient::{char_poly_mod, mulmod};
use crate::exactmath::sturm::RootInterval;
use crate::exactmath::{bivariate_gcd, isolate_real_roots, MPoly, RealAlgebraic};
use crate::scalar::{probe_sequence, Rational};
use crate::{MultiPoly, UniPoly};

/// Real solutions of a zero-dimensional system `A(x, y) = B(x, y) = 0`,
/// parametrized by the roots of one univariate polynomial.
#[derive(Debug, Clone)]
pub struct PlanarSolutions {
    /// Square-free eliminant in `w = x + c y`; its real roots correspond one
    /// to one with the real solutions.
    pub chi: UniPoly,
    /// `x` as a polynomial in `w` modulo `chi`.
    pub x: UniPoly,
    /// `y` as a polynomial in `w` modulo `chi`.
    pub y: UniPoly,
    pub shear: Rational,
    pub roots: Vec<RealAlgebraic<Rational>>,
}

#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Finite(PlanarSolutions),
    /// The two polynomials share a factor of positive degree.
    Infinite,
}

fn empty_solutions() -> SolveOutcome {
    SolveOutcome::Finite(PlanarSolutions {
        chi: UniPoly::one(),
        x: UniPoly::zero(),
        y: UniPoly::zero(),
        shear: Rational::zero(),
        roots: Vec::new(),
    })
}

/// Coefficients in `y` (lowest first) of `a(w - c y, y)`, each a polynomial
/// in `w`.
fn sheared(a: &MultiPoly, c: &Rational) -> Vec<UniPoly> {
    let w = MPoly::var(2, 0);
    let y = MPoly::var(2, 1);
    let sub = &w - &y.scale(c);
    a.compose(&[sub, y]).coeffs_in(1).iter().map(|p| p.to_uni(0).expect("only w remains")).collect()
}

/// Solves the system by a shear `x = w - c y` that makes both leading
/// coefficients in `y` constant and separates the solutions, trying
/// `c = 0, 1, -1, 2, ...` for at most `8 delta` candidates.
pub fn solve_real_2d(a: &MultiPoly, b: &MultiPoly) -> Result<SolveOutcome> {
    if a.arity() != 2 || b.arity() != 2 {
        return precondition("planar systems need two-variable polynomials");
    }
    if a.is_zero() || b.is_zero() {
        return precondition("planar system with a zero equation");
    }
    if a.is_constant() || b.is_constant() {
        return Ok(empty_solutions());
    }
    let (da, db) = (a.tdeg(), b.tdeg());
    let attempts = 8 * da.max(db);
    for c in probe_sequence().take(attempts) {
        let ac = sheared(a, &c);
        let bc = sheared(b, &c);
        if ac.len() != da + 1 || bc.len() != db + 1 || !ac[da].is_constant() || !bc[db].is_constant() {
            continue;
        }
        let res = resultant_coeffs(&ac, &bc, &UniPoly::zero());
        if res.is_zero() {
            return Ok(SolveOutcome::Infinite);
        }
        let chi = res.square_free()?;
        if chi.is_constant() {
            return Ok(empty_solutions());
        }
        let (s0, s1) = if da == 1 {
            (ac[0].clone(), ac[1].clone())
        } else if db == 1 {
            (bc[0].clone(), bc[1].clone())
        } else {
            let s = subresultant_coeffs(&ac, &bc, 1, &UniPoly::zero());
            (s[0].clone(), s[1].clone())
        };
        let Some(inv) = s1.inverse_mod(&chi) else {
            continue;
        };
        let y = mulmod(&(-&s0), &inv, &chi);
        let x = (&UniPoly::x() - &y.scale(&c)).rem(&chi)?;
        let roots = isolate_real_roots(&chi)?.into_algebraic();
        return Ok(SolveOutcome::Finite(PlanarSolutions { chi, x, y, shear: c, roots }));
    }
    Err(Error::SpecializationExhausted {
        attempts,
        context: "no shear makes the planar system generic".into(),
    })
}

/// `p(r)` modulo `m`.
fn compose_mod(p: &UniPoly, r: &UniPoly, m: &UniPoly) -> UniPoly {
    let mut acc = UniPoly::zero();
    for c in p.coeffs().iter().rev() {
        acc = &mulmod(&acc, r, m) + &UniPoly::constant(c.clone());
    }
    acc.rem(m).expect("nonzero modulus")
}

/// A real point given by coordinate polynomials evaluated at a real root of
/// its system's eliminant.
struct Candidate {
    system: usize,
    root: RealAlgebraic<Rational>,
    coords: [UniPoly; 2],
}

fn intervals_disjoint(a: &(Rational, Rational), b: &(Rational, Rational)) -> bool {
    a.1 < b.0 || b.1 < a.0
}

/// Bisects touching neighbours until consecutive closures are strictly
/// separated.
fn separate(poly: &UniPoly, roots: &mut [RootInterval<Rational>]) {
    for j in 1..roots.len() {
        while roots[j - 1].hi() >= roots[j].lo() {
            if matches!(roots[j - 1], RootInterval::Open { .. }) {
                roots[j - 1].bisect(poly);
            }
            if roots[j - 1].hi() >= roots[j].lo() && matches!(roots[j], RootInterval::Open { .. }) {
                roots[j].bisect(poly);
            }
        }
    }
}

/// Number of distinct points among the candidates.
fn count_distinct(chis: &[UniPoly], mut cands: Vec<Candidate>) -> Result<usize> {
    let n = cands.len();
    if n <= 1 {
        return Ok(n);
    }
    // Cheap path: interval enclosures that already tell every pair apart.
    for bits in [16u32, 48] {
        let width = Rational::new(1.into(), num_bigint::BigInt::from(2u8).pow(bits));
        let encl: Vec<[(Rational, Rational); 2]> = cands
            .iter_mut()
            .map(|c| {
                let e0 = c.root.enclose(&c.coords[0], &width);
                let e1 = c.root.enclose(&c.coords[1], &width);
                [e0, e1]
            })
            .collect();
        let all_apart = (0..n).all(|i| {
            (i + 1..n).all(|j| {
                intervals_disjoint(&encl[i][0], &encl[j][0]) || intervals_disjoint(&encl[i][1], &encl[j][1])
            })
        });
        if all_apart {
            return Ok(n);
        }
    }
    // Exact path: identify each coordinate value with a root of the product
    // of characteristic polynomials.
    let mut keys: Vec<[usize; 2]> = vec![[0, 0]; n];
    for coord in 0..2 {
        let mut z = UniPoly::one();
        let mut seen = vec![false; chis.len()];
        for c in &cands {
            if !seen[c.system] {
                seen[c.system] = true;
                z = &z * &char_poly_mod(&c.coords[coord], &chis[c.system]);
            }
        }
        let iso = isolate_real_roots(&z)?;
        let mut roots = iso.roots;
        separate(&iso.poly, &mut roots);
        let gap = roots
            .windows(2)
            .map(|w| w[1].lo() - w[0].hi())
            .min()
            .unwrap_or_else(Rational::one);
        let width = gap / Rational::from_integer(2.into());
        for (k, c) in cands.iter_mut().enumerate() {
            let e = c.root.enclose(&c.coords[coord], &width);
            let hit: Vec<usize> = (0..roots.len())
                .filter(|&j| !intervals_disjoint(&e, &(roots[j].lo().clone(), roots[j].hi().clone())))
                .collect();
            if hit.len() != 1 {
                return Err(Error::Internal("coordinate value not matched to a unique root".into()));
            }
            keys[k][coord] = hit[0];
        }
    }
    keys.sort();
    keys.dedup();
    Ok(keys.len())
}

/// Result of [`translate_intersection_count`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslateCount {
    /// Distinct points of `(C + a) ∩ C`.
    pub count: usize,
    /// Real parameter solutions before identifying equal points.
    pub solutions: usize,
    /// `16 delta^2`, or `4 delta^2` when both coordinates are identity.
    pub bound: usize,
}

/// Exact number of points in `(C + a) ∩ C` for a curve not contained in a
/// line.
pub fn translate_intersection_count(curve: &ParamCurve, shift: &Shift) -> Result<TranslateCount> {
    shift.validate(curve)?;
    if line_containment(curve) != LineVerdict::NotLine {
        return precondition("curve is contained in a line");
    }
    let delta = curve.delta();
    let both_id = curve.fx() == Transform::Identity && curve.fy() == Transform::Identity;
    let bound = if both_id { 4 * delta * delta } else { 16 * delta * delta };
    // Each coordinate contributes equations u(t) - alpha u(s) - beta = 0.
    let options = |f: Transform, a: &Rational| -> Vec<(Rational, Rational)> {
        match f {
            Transform::Identity => vec![(Rational::one(), a.clone())],
            Transform::LogAbs => vec![(a.clone(), Rational::zero()), (-a.clone(), Rational::zero())],
        }
    };
    let eqn = |u: &UniPoly, (alpha, beta): &(Rational, Rational)| -> MultiPoly {
        let ut = MPoly::from_uni(u, 2, 0);
        let us = MPoly::from_uni(u, 2, 1);
        &(&ut - &us.scale(alpha)) - &MPoly::constant(2, beta.clone())
    };
    let mut chis = Vec::new();
    let mut cands = Vec::new();
    for ox in options(curve.fx(), &shift.ax) {
        for oy in options(curve.fy(), &shift.ay) {
            let a = eqn(curve.p(), &ox);
            let b = eqn(curve.q(), &oy);
            let sol = match solve_real_2d(&a, &b)? {
                SolveOutcome::Finite(s) => s,
                SolveOutcome::Infinite => {
                    return Err(Error::Internal("translate shares a component with a non-line curve".into()))
                }
            };
            let system = chis.len();
            let coord = |u: &UniPoly, f: Transform| {
                let v = compose_mod(u, &sol.x, &sol.chi);
                match f {
                    Transform::Identity => v,
                    Transform::LogAbs => mulmod(&v, &v, &sol.chi),
                }
            };
            let cx = coord(curve.p(), curve.fx());
            let cy = coord(curve.q(), curve.fy());
            for root in sol.roots {
                let in_domain = [(curve.fx(), &cx), (curve.fy(), &cy)]
                    .iter()
                    .all(|(f, v)| *f == Transform::Identity || !root.is_root_of(v));
                if in_domain {
                    cands.push(Candidate { system, root, coords: [cx.clone(), cy.clone()] });
                }
            }
            chis.push(sol.chi);
        }
    }
    let solutions = cands.len();
    let count = count_distinct(&chis, cands)?;
    if count > bound {
        return Err(Error::Internal(format!("intersection count {count} exceeds the bound {bound}")));
    }
    Ok(TranslateCount { count, solutions, bound })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImplicitIntersection {
    Finite(usize),
    CommonFactor(MultiPoly),
}

/// Common real zeros of two coprime curves, or their common factor.
pub fn implicit_intersection(f: &MultiPoly, g: &MultiPoly) -> Result<ImplicitIntersection> {
    if f.arity() != 2 || g.arity() != 2 {
        return precondition("curve intersection needs two-variable polynomials");
    }
    if f.is_zero() || g.is_zero() {
        return precondition("curve intersection with the zero polynomial");
    }
    let h = bivariate_gcd(f, g)?;
    if !h.is_constant() {
        return Ok(ImplicitIntersection::CommonFactor(h));
    }
    let count = match solve_real_2d(f, g)? {
        SolveOutcome::Finite(s) => s.roots.len(),
        SolveOutcome::Infinite => return Err(Error::Internal("coprime curves share a component".into())),
    };
    if count > f.tdeg() * g.tdeg() {
        return Err(Error::Internal(format!("{count} intersections exceed the Bezout bound")));
    }
    Ok(ImplicitIntersection::Finite(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse_mpoly, parse_upoly};
    use crate::scalar::int;

    fn curve(p: &str, q: &str, fx: Transform, fy: Transform) -> ParamCurve {
        ParamCurve::new(parse_upoly(p).unwrap(), parse_upoly(q).unwrap(), fx, fy).unwrap()
    }

    const ID: Transform = Transform::Identity;
    const LOG: Transform = Transform::LogAbs;

    fn count(c: &ParamCurve, ax: Rational, ay: Rational) -> usize {
        translate_intersection_count(c, &Shift::new(ax, ay)).unwrap().count
    }

    #[test]
    fn translate_examples() {
        let parabola = curve("t", "t^2", ID, ID);
        assert_eq!(count(&parabola, int(1), int(0)), 1);
        assert_eq!(count(&parabola, int(0), int(1)), 0);
        let cubic = curve("t", "t^3", ID, ID);
        assert_eq!(count(&cubic, int(1), int(1)), 2);
    }

    #[test]
    fn line_curves_rejected() {
        let c = curve("t", "t", ID, ID);
        assert!(translate_intersection_count(&c, &Shift::new(int(1), int(1))).is_err());
        let p = curve("t", "t^2", ID, ID);
        assert!(translate_intersection_count(&p, &Shift::new(int(0), int(0))).is_err());
    }

    #[test]
    fn non_injective_parametrization_counts_points() {
        // (t^2, t^4) traces the half parabola y = x^2, x >= 0.
        let c = curve("t^2", "t^4", ID, ID);
        assert_eq!(count(&c, int(1), int(0)), 0);
        assert_eq!(count(&c, int(-1), int(0)), 0);
        // Only (1, 1) = (0, 0) + (1, 1), reached from t = 1 and t = -1.
        let r = translate_intersection_count(&c, &Shift::new(int(1), int(1))).unwrap();
        assert_eq!((r.count, r.solutions), (1, 2));
    }

    #[test]
    fn log_coordinates() {
        // (log|t|, log|t+1|) shifted by (log 2, log 2):
        // |t| = 2|s|, |t+1| = 2|s+1| ⇒ t = ±2s, t + 1 = ±2(s+1).
        let c = curve("t", "t+1", LOG, LOG);
        let r = translate_intersection_count(&c, &Shift::new(int(2), int(2))).unwrap();
        // (+,+): t=2s, t+1=2s+2 impossible. (+,-): 2s+1 = -2s-2, s=-3/4, t=-3/2.
        // (-,+): -2s+1 = 2s+2, s=-1/4, t=1/2. (-,-): -2s+1=-2s-2 impossible.
        assert_eq!(r.count, 2);
        assert!(r.count <= r.bound);
    }

    #[test]
    fn mixed_coordinates() {
        // (t, log|t^2+1|) shifted by (1, log 2): t = s+1, t^2+1 = ±2(s^2+1).
        // Plus sign: (s+1)^2 + 1 = 2 s^2 + 2  =>  s^2 - 2 s = 0, two points.
        let c = curve("t", "t^2+1", ID, LOG);
        assert_eq!(count(&c, int(1), int(2)), 2);
    }

    #[test]
    fn implicit_examples() {
        let f = parse_mpoly("y - x^2").unwrap();
        let g = parse_mpoly("y - x").unwrap();
        assert_eq!(implicit_intersection(&f, &g).unwrap(), ImplicitIntersection::Finite(2));
        let f = parse_mpoly("(x-y)(x+y)").unwrap();
        let g = parse_mpoly("x - y").unwrap();
        assert_eq!(
            implicit_intersection(&f, &g).unwrap(),
            ImplicitIntersection::CommonFactor(parse_mpoly("x - y").unwrap())
        );
        let f = parse_mpoly("x^2 + y^2 - 1").unwrap();
        let g = parse_mpoly("x^2 + y^2 - 4").unwrap();
        assert_eq!(implicit_intersection(&f, &g).unwrap(), ImplicitIntersection::Finite(0));
        let f = parse_mpoly("x^2 + y^2 - 1").unwrap();
        let g = parse_mpoly("x^2 - y").unwrap();
        assert_eq!(implicit_intersection(&f, &g).unwrap(), ImplicitIntersection::Finite(2));
    }
}
