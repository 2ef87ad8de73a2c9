//! Desk-scale measurements of sumset, product-set and incidence bounds.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::fit::{fit_exponent, Fit};
use super::sets::{fold_sets, image_set, set_algebra, FiniteSet, PlanarSet, SetOp};
use crate::algcurves::{line_containment, ParamCurve, Shift, Transform};
use crate::error::{precondition, Result};
use crate::exactmath::{sturm_count, Bound};
use crate::scalar::Rational;
use crate::structure::{equiv_a, equiv_m};
use crate::{MultiPoly, UniPoly};

/// `size >= n^e`, decided exactly.
pub fn meets_power(size: u64, n: u64, e: &Rational) -> bool {
    let (a, b) = (e.numer().to_u32().unwrap_or(u32::MAX), e.denom().to_u32().unwrap_or(u32::MAX));
    BigInt::from(size).pow(b) >= BigInt::from(n).pow(a)
}

fn powf(n: u64, e: &Rational) -> f64 {
    (n as f64).powf(e.to_f64().unwrap_or(f64::NAN))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub n: u64,
    pub size: u64,
    /// `n^target`.
    pub bound: f64,
    pub ratio: f64,
    /// `size >= n^target`, decided exactly.
    pub meets_bound: bool,
}

impl Sample {
    pub fn new(n: u64, size: u64, target: &Rational) -> Self {
        let bound = powf(n, target);
        Sample { n, size, bound, ratio: size as f64 / bound, meets_bound: meets_power(size, n, target) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub target_exponent: Rational,
    pub samples: Vec<Sample>,
    /// Present when there are at least three samples.
    pub fit: Option<Fit>,
}

impl ExpansionReport {
    pub fn new(target_exponent: Rational, samples: Vec<Sample>) -> Result<Self> {
        if samples.windows(2).any(|w| w[0].n >= w[1].n) {
            return precondition("samples must have strictly increasing n");
        }
        let fit = if samples.len() >= 3 {
            Some(fit_exponent(&samples.iter().map(|s| (s.n, s.size)).collect::<Vec<_>>())?)
        } else {
            None
        };
        Ok(ExpansionReport { target_exponent, samples, fit })
    }
}

/// Growth of `|P(A_1, ..., A_d)|` over a sequence of inputs.
pub fn image_growth(p: &MultiPoly, inputs: &[Vec<FiniteSet>], target: &Rational) -> Result<ExpansionReport> {
    let mut samples = Vec::with_capacity(inputs.len());
    for sets in inputs {
        let n = common_size(sets)?;
        samples.push(Sample::new(n, image_set(p, sets)?.len() as u64, target));
    }
    ExpansionReport::new(target.clone(), samples)
}

fn common_size(sets: &[FiniteSet]) -> Result<u64> {
    let n = sets.first().map_or(0, FiniteSet::len);
    if n == 0 || sets.iter().any(|s| s.len() != n) {
        return precondition("experiment sets must be nonempty and of equal size");
    }
    Ok(n as u64)
}

/// `|S + T|` against `min{|A||T|, |A|^(3/2) |T|^(1/2)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnrResult {
    pub size: u64,
    pub bound: f64,
    pub ratio: f64,
}

/// Builds `S` from the curve over `A` and measures `|S + T|`. Points of `T`
/// use the curve's coordinate encoding: log coordinates are positive
/// multipliers.
pub fn enr_experiment(curve: &ParamCurve, a: &FiniteSet, t: &PlanarSet) -> Result<EnrResult> {
    if line_containment(curve).is_line() {
        return precondition("curve lies in an affine line");
    }
    if a.is_empty() || t.is_empty() {
        return precondition("A and T must be nonempty");
    }
    check_encoding(curve, t)?;
    let s: Vec<_> = a.elements().iter().filter_map(|x| curve.point(x)).collect();
    let sum = PlanarSet::new(
        s.iter().flat_map(|p| t.points().iter().map(move |(x, y)| Shift::new(x.clone(), y.clone()).apply(curve, p))),
    );
    let (na, nt) = (a.len() as f64, t.len() as f64);
    let bound = (na * nt).min(na.powf(1.5) * nt.sqrt());
    let size = sum.len() as u64;
    Ok(EnrResult { size, bound, ratio: size as f64 / bound })
}

fn check_encoding(curve: &ParamCurve, t: &PlanarSet) -> Result<()> {
    for (x, y) in t.points() {
        if (curve.fx() == Transform::LogAbs && !x.is_positive()) || (curve.fy() == Transform::LogAbs && !y.is_positive())
        {
            return precondition("log coordinates of translations must be positive multipliers");
        }
    }
    Ok(())
}

/// Number of point/curve incidences and `|P|^(2/3) |G|^(2/3) + |P| + |G|`.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceResult {
    pub incidences: u64,
    pub st_bound: f64,
}

/// Equation in the parameter for one coordinate of `curve + shift` to equal `v`.
fn coordinate_equation(f: Transform, p: &UniPoly, shift: &Rational, v: &Rational) -> Option<UniPoly> {
    match f {
        Transform::Identity => Some(p - &UniPoly::constant(v - shift)),
        Transform::LogAbs => {
            if !v.is_positive() {
                return None;
            }
            let target = v / shift;
            Some(&(p * p) - &UniPoly::constant(&target * &target))
        }
    }
}

/// Whether the encoded point lies on the translate `curve + shift`.
pub fn on_translate(curve: &ParamCurve, shift: &Shift, pt: &(Rational, Rational)) -> Result<bool> {
    let (Some(a), Some(b)) = (
        coordinate_equation(curve.fx(), curve.p(), &shift.ax, &pt.0),
        coordinate_equation(curve.fy(), curve.q(), &shift.ay, &pt.1),
    ) else {
        return Ok(false);
    };
    let g = match (a.is_zero(), b.is_zero()) {
        (true, true) => return Ok(true),
        (true, false) => b,
        (false, true) => a,
        (false, false) => a.gcd(&b)?,
    };
    Ok(sturm_count(&g, &Bound::NegInf, &Bound::PosInf)? > 0)
}

pub fn incidence_count(points: &PlanarSet, curves: &[(ParamCurve, Shift)]) -> Result<IncidenceResult> {
    let mut total = 0u64;
    for (c, s) in curves {
        if line_containment(c).is_line() {
            return precondition("incidence curves must not lie in a line");
        }
        check_encoding(c, &PlanarSet::new([(s.ax.clone(), s.ay.clone())]))?;
        for pt in points.points() {
            if on_translate(c, s, pt)? {
                total += 1;
            }
        }
    }
    let (np, ng) = (points.len() as f64, curves.len() as f64);
    let st_bound = np.powf(2.0 / 3.0) * ng.powf(2.0 / 3.0) + np + ng;
    Ok(IncidenceResult { incidences: total, st_bound })
}

/// `|A|`, `|p(A)|` and the size of the log-abs set of `p(A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImageChain {
    pub set: usize,
    pub image: usize,
    pub log_abs: usize,
    pub delta: usize,
}

impl ImageChain {
    pub fn new(p: &UniPoly, a: &FiniteSet) -> Self {
        let image = a.image(p);
        ImageChain { set: a.len(), image: image.len(), log_abs: image.log_abs().len(), delta: p.deg() }
    }

    /// `|A|/delta <= |p(A)| <= |A|` and `(|p(A)|-1)/2 <= |log|p(A)|| <= |p(A)|`.
    pub fn holds(&self) -> bool {
        self.set <= self.delta * self.image
            && self.image <= self.set
            && self.image <= 2 * self.log_abs + 1
            && self.log_abs <= self.image
    }
}

/// Product-bound experiments and their structural hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductSpec {
    /// `|p1(A)+p2(B)| |q1(A)+q2(B)|`; constant-free inputs with `p1, q1` not additively equivalent.
    SumSum { p1: UniPoly, p2: UniPoly, q1: UniPoly, q2: UniPoly },
    /// `|p1(A) p2(B)| |q1(A) q2(B)|`; monic inputs with `p1, q1` not multiplicatively equivalent.
    ProdProd { p1: UniPoly, p2: UniPoly, q1: UniPoly, q2: UniPoly },
    /// `|p1(A)+p2(B)| |q1(A) q2(B)|`.
    SumProd { p1: UniPoly, p2: UniPoly, q1: UniPoly, q2: UniPoly },
    /// `|sum u_i(A_i)| |sum v_i(A_i)|` with at least `t` additive mismatches.
    AdditivePair { u: Vec<UniPoly>, v: Vec<UniPoly>, t: usize },
    /// Log-abs sums of `u_i` and `v_i` with at least `t` multiplicative mismatches.
    MultiplicativePair { u: Vec<UniPoly>, v: Vec<UniPoly>, t: usize },
    /// `|sum u_i(A_i)|` times the log-abs sum of `v_i`.
    Mixed { u: Vec<UniPoly>, v: Vec<UniPoly> },
}

fn nonconstant(polys: &[&UniPoly]) -> Result<()> {
    if polys.iter().any(|p| p.is_constant()) {
        return precondition("experiment polynomials must be nonconstant");
    }
    Ok(())
}

fn constant_free(polys: &[&UniPoly]) -> Result<()> {
    if polys.iter().any(|p| !p.constant_term().is_zero()) {
        return precondition("experiment polynomials must have no constant term");
    }
    Ok(())
}

fn pair_shape(u: &[UniPoly], v: &[UniPoly]) -> Result<usize> {
    let d = u.len();
    if d < 2 || v.len() != d {
        return precondition("need at least two coordinates and equally many u and v");
    }
    nonconstant(&u.iter().chain(v).collect::<Vec<_>>())?;
    Ok(d)
}

impl ProductSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ProductSpec::SumSum { .. } => "sum-sum",
            ProductSpec::ProdProd { .. } => "prod-prod",
            ProductSpec::SumProd { .. } => "sum-prod",
            ProductSpec::AdditivePair { .. } => "additive-pair",
            ProductSpec::MultiplicativePair { .. } => "multiplicative-pair",
            ProductSpec::Mixed { .. } => "mixed",
        }
    }

    /// Number of input sets per sample.
    pub fn arity(&self) -> usize {
        match self {
            ProductSpec::SumSum { .. } | ProductSpec::ProdProd { .. } | ProductSpec::SumProd { .. } => 2,
            ProductSpec::AdditivePair { u, .. } | ProductSpec::MultiplicativePair { u, .. } | ProductSpec::Mixed { u, .. } => {
                u.len()
            }
        }
    }

    /// `5/2`, `3 - 1/2^t`, or `3 - 1/2^(d-1)`.
    pub fn target_exponent(&self) -> Rational {
        let three_minus = |k: usize| {
            Rational::from_integer(3.into()) - Rational::new(1.into(), BigInt::from(2).pow(k as u32))
        };
        match self {
            ProductSpec::SumSum { .. } | ProductSpec::ProdProd { .. } | ProductSpec::SumProd { .. } => {
                Rational::new(5.into(), 2.into())
            }
            ProductSpec::AdditivePair { t, .. } | ProductSpec::MultiplicativePair { t, .. } => three_minus(*t),
            ProductSpec::Mixed { u, .. } => three_minus(u.len() - 1),
        }
    }

    /// Checks the structural hypotheses, naming the failing witness.
    pub fn check_hypotheses(&self) -> Result<()> {
        match self {
            ProductSpec::SumSum { p1, p2, q1, q2 } => {
                nonconstant(&[p1, p2, q1, q2])?;
                constant_free(&[p1, p2, q1, q2])?;
                if let Some(w) = equiv_a(p1, q1)? {
                    return precondition(format!("p1 = lambda q1 with lambda = {}", w.lambda));
                }
            }
            ProductSpec::ProdProd { p1, p2, q1, q2 } => {
                nonconstant(&[p1, p2, q1, q2])?;
                if [p1, p2, q1, q2].iter().any(|p| !num_traits::One::is_one(&p.lc())) {
                    return precondition("experiment polynomials must be monic");
                }
                if let Some(w) = equiv_m(p1, q1)? {
                    return precondition(format!("|p1| = |q1|^kappa with kappa = {}", w.kappa));
                }
            }
            ProductSpec::SumProd { p1, p2, q1, q2 } => nonconstant(&[p1, p2, q1, q2])?,
            ProductSpec::AdditivePair { u, v, t } => {
                let d = pair_shape(u, v)?;
                constant_free(&u.iter().chain(v).collect::<Vec<_>>())?;
                check_mismatch(d, *t, u, v, |a, b| Ok(equiv_a(a, b)?.is_some()))?;
            }
            ProductSpec::MultiplicativePair { u, v, t } => {
                let d = pair_shape(u, v)?;
                check_mismatch(d, *t, u, v, |a, b| Ok(equiv_m(a, b)?.is_some()))?;
            }
            ProductSpec::Mixed { u, v } => {
                pair_shape(u, v)?;
            }
        }
        Ok(())
    }

    /// The measured left-hand side on one tuple of sets.
    pub fn measure(&self, sets: &[FiniteSet]) -> Result<u64> {
        if sets.len() != self.arity() {
            return precondition(format!("{} needs {} sets", self.name(), self.arity()));
        }
        let two = |p1: &UniPoly, p2: &UniPoly, op: SetOp| set_algebra(&sets[0].image(p1), &sets[1].image(p2), op);
        let size = match self {
            ProductSpec::SumSum { p1, p2, q1, q2 } => {
                two(p1, p2, SetOp::Sum)?.len() * two(q1, q2, SetOp::Sum)?.len()
            }
            ProductSpec::ProdProd { p1, p2, q1, q2 } => {
                two(p1, p2, SetOp::Product)?.len() * two(q1, q2, SetOp::Product)?.len()
            }
            ProductSpec::SumProd { p1, p2, q1, q2 } => {
                two(p1, p2, SetOp::Sum)?.len() * two(q1, q2, SetOp::Product)?.len()
            }
            ProductSpec::AdditivePair { u, v, .. } => {
                let us: Vec<_> = sets.iter().zip(u).map(|(a, p)| a.image(p)).collect();
                let vs: Vec<_> = sets.iter().zip(v).map(|(a, p)| a.image(p)).collect();
                fold_sets(&us, SetOp::Sum)?.len() * fold_sets(&vs, SetOp::Sum)?.len()
            }
            ProductSpec::MultiplicativePair { u, v, .. } => {
                let kept: Vec<_> =
                    sets.iter().zip(u.iter().zip(v)).map(|(a, (p, q))| a.avoiding_roots_of(&(p * q))).collect();
                let us: Vec<_> = kept.iter().zip(u).map(|(a, p)| a.image(p)).collect();
                let vs: Vec<_> = kept.iter().zip(v).map(|(a, p)| a.image(p)).collect();
                fold_sets(&us, SetOp::LogAbsSum)?.len() * fold_sets(&vs, SetOp::LogAbsSum)?.len()
            }
            ProductSpec::Mixed { u, v } => {
                let kept: Vec<_> = sets.iter().zip(v).map(|(a, q)| a.avoiding_roots_of(q)).collect();
                let us: Vec<_> = kept.iter().zip(u).map(|(a, p)| a.image(p)).collect();
                let vs: Vec<_> = kept.iter().zip(v).map(|(a, p)| a.image(p)).collect();
                fold_sets(&us, SetOp::Sum)?.len() * fold_sets(&vs, SetOp::LogAbsSum)?.len()
            }
        };
        Ok(size as u64)
    }
}

fn check_mismatch(
    d: usize,
    t: usize,
    u: &[UniPoly],
    v: &[UniPoly],
    eq: impl Fn(&UniPoly, &UniPoly) -> Result<bool>,
) -> Result<()> {
    if t < 1 || t >= d {
        return precondition(format!("need 1 <= t <= d-1, got t={t}, d={d}"));
    }
    let mut mismatches = 0;
    for (a, b) in u.iter().zip(v) {
        if !eq(a, b)? {
            mismatches += 1;
        }
    }
    if mismatches < t {
        return precondition(format!("only {mismatches} inequivalent coordinates, need {t}"));
    }
    Ok(())
}

/// Checks the hypotheses, then measures each tuple of equal-size sets.
pub fn product_bound_experiment(spec: &ProductSpec, inputs: &[Vec<FiniteSet>]) -> Result<ExpansionReport> {
    spec.check_hypotheses()?;
    let target = spec.target_exponent();
    let mut samples = Vec::with_capacity(inputs.len());
    for sets in inputs {
        let n = common_size(sets)?;
        samples.push(Sample::new(n, spec.measure(sets)?, &target));
    }
    ExpansionReport::new(target, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_upoly;
    use crate::scalar::{int, rat};

    fn up(s: &str) -> UniPoly {
        parse_upoly(s).unwrap()
    }

    fn range(n: i64) -> FiniteSet {
        FiniteSet::from_ints(1..=n)
    }

    #[test]
    fn enr_examples() {
        let c = ParamCurve::identity(up("t"), up("t^2")).unwrap();
        let r = enr_experiment(&c, &range(2), &PlanarSet::new([(int(0), int(0))])).unwrap();
        assert_eq!(r.size, 2);
        assert!((r.bound - 2.0).abs() < 1e-12 && (r.ratio - 1.0).abs() < 1e-12);
        let t = PlanarSet::grid(&FiniteSet::from_ints([0, 1]), &FiniteSet::from_ints([0, 1]));
        let r = enr_experiment(&c, &range(3), &t).unwrap();
        let mut brute = std::collections::BTreeSet::new();
        for a in 1..=3i64 {
            for dx in 0..=1 {
                for dy in 0..=1 {
                    brute.insert((a + dx, a * a + dy));
                }
            }
        }
        assert_eq!(r.size as usize, brute.len());
        assert!((r.bound - 12f64.min(27f64.sqrt() * 2.0)).abs() < 1e-9);
        let line = ParamCurve::identity(up("t"), up("t")).unwrap();
        assert!(enr_experiment(&line, &range(2), &t).is_err());
    }

    #[test]
    fn enr_log_coordinates_multiply() {
        let c = ParamCurve::new(up("t"), up("t^2+1"), Transform::Identity, Transform::LogAbs).unwrap();
        let t = PlanarSet::new([(int(0), int(1)), (int(0), int(2))]);
        let r = enr_experiment(&c, &FiniteSet::from_ints([-1, 1]), &t).unwrap();
        assert_eq!(r.size, 4);
        assert!(enr_experiment(&c, &range(2), &PlanarSet::new([(int(0), int(-1))])).is_err());
    }

    #[test]
    fn incidence_examples() {
        let c = ParamCurve::identity(up("t"), up("t^2")).unwrap();
        let grid = PlanarSet::grid(&FiniteSet::from_ints(0..3), &FiniteSet::from_ints(0..3));
        let curves: Vec<_> = (0..3).map(|b| (c.clone(), Shift::new(int(0), int(b)))).collect();
        let r = incidence_count(&grid, &curves).unwrap();
        let mut brute = 0;
        for x in 0..3i64 {
            for y in 0..3i64 {
                for b in 0..3i64 {
                    if y == x * x + b {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(r.incidences, brute);
        assert_eq!(incidence_count(&PlanarSet::default(), &curves).unwrap().incidences, 0);
        let one = PlanarSet::new([(int(2), int(5))]);
        assert_eq!(incidence_count(&one, &[(c.clone(), Shift::new(int(0), int(1)))]).unwrap().incidences, 1);
        assert!(incidence_count(&one, &[(ParamCurve::identity(up("t"), up("2t")).unwrap(), Shift::new(int(0), int(0)))])
            .is_err());
    }

    #[test]
    fn incidences_need_real_parameters() {
        // (t^2, t^4) only reaches x >= 0.
        let c = ParamCurve::identity(up("t^2"), up("t^4")).unwrap();
        let s = Shift::new(int(0), int(0));
        assert!(on_translate(&c, &s, &(int(4), int(16))).unwrap());
        assert!(!on_translate(&c, &s, &(int(-1), int(1))).unwrap());
        let l = ParamCurve::new(up("t"), up("t^2-2"), Transform::LogAbs, Transform::Identity).unwrap();
        let s = Shift::new(int(3), int(0));
        // |t| * 3 = 6 at t = -2, where t^2 - 2 = 2.
        assert!(on_translate(&l, &s, &(int(6), int(2))).unwrap());
        assert!(!on_translate(&l, &s, &(int(6), int(3))).unwrap());
        assert!(!on_translate(&l, &s, &(int(-6), int(2))).unwrap());
    }

    #[test]
    fn image_chain() {
        let ch = ImageChain::new(&up("x^2"), &FiniteSet::from_ints(-3..=3));
        assert_eq!((ch.set, ch.image, ch.log_abs), (7, 4, 3));
        assert!(ch.holds());
        let ch = ImageChain::new(&up("x"), &FiniteSet::from_ints(-3..=3));
        assert_eq!((ch.image, ch.log_abs), (7, 3));
        assert!(ch.holds());
    }

    #[test]
    fn sum_sum_example() {
        let spec = ProductSpec::SumSum { p1: up("x"), p2: up("x"), q1: up("x^2"), q2: up("x") };
        let inputs: Vec<_> = [4, 8, 16, 32].iter().map(|&n| vec![range(n), range(n)]).collect();
        let rep = product_bound_experiment(&spec, &inputs).unwrap();
        assert_eq!(rep.target_exponent, rat(5, 2));
        for (s, &n) in rep.samples.iter().zip(&[4i64, 8, 16, 32]) {
            let mut q = std::collections::BTreeSet::new();
            for a in 1..=n {
                for b in 1..=n {
                    q.insert(a * a + b);
                }
            }
            assert_eq!(s.size as usize, (2 * n as usize - 1) * q.len());
        }
        assert!(rep.fit.is_some());
        let bad = ProductSpec::SumSum { p1: up("x"), p2: up("x"), q1: up("3x"), q2: up("x") };
        let err = product_bound_experiment(&bad, &inputs).unwrap_err();
        assert!(err.to_string().contains("lambda = 1/3"), "{err}");
    }

    #[test]
    fn additive_pair_example() {
        let spec = ProductSpec::AdditivePair { u: vec![up("x"), up("x^2")], v: vec![up("x^2"), up("x")], t: 1 };
        let rep = product_bound_experiment(&spec, &[vec![range(6), range(6)]]).unwrap();
        assert_eq!(rep.target_exponent, rat(5, 2));
        let mut s = std::collections::BTreeSet::new();
        for a in 1..=6i64 {
            for b in 1..=6i64 {
                s.insert(a + b * b);
            }
        }
        assert_eq!(rep.samples[0].size as usize, s.len() * s.len());
        let same = ProductSpec::AdditivePair { u: vec![up("x"), up("x")], v: vec![up("2x"), up("x")], t: 1 };
        assert!(product_bound_experiment(&same, &[]).is_err());
    }

    #[test]
    fn meets_power_is_exact() {
        assert!(meets_power(32, 4, &rat(5, 2)));
        assert!(!meets_power(31, 4, &rat(5, 2)));
        assert!(meets_power(182, 8, &rat(5, 2)));
        assert!(!meets_power(181, 8, &rat(5, 2)));
    }
}
