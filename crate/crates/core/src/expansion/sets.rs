//! Finite rational sets, planar point sets and their exact arithmetic.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{precondition, Error, Result};
use crate::exactmath::Monomial;
use crate::scalar::{parse_rational, Rational};
use crate::{MultiPoly, UniPoly};

/// Default cap on the number of tuples enumerated by [`image_set`].
pub const DEFAULT_TUPLE_BUDGET: u64 = 10_000_000;
/// Environment variable overriding [`DEFAULT_TUPLE_BUDGET`].
pub const TUPLE_BUDGET_ENV: &str = "POLYEXPAND_TUPLE_BUDGET";
/// Largest set size produced by [`gen_set`].
pub const MAX_SET_SIZE: usize = 1 << 12;
/// Random sets draw numerators from `[-RAND_NUMERATOR, RAND_NUMERATOR]`.
pub const RAND_NUMERATOR: i64 = 1000;
/// Random sets draw denominators from `[1, RAND_DENOMINATOR]`.
pub const RAND_DENOMINATOR: i64 = 8;

pub fn tuple_budget() -> u64 {
    std::env::var(TUPLE_BUDGET_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_TUPLE_BUDGET)
}

/// Sorted, duplicate-free set of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteSet(Vec<Rational>);

impl FiniteSet {
    pub fn new(values: impl IntoIterator<Item = Rational>) -> Self {
        let set: BTreeSet<Rational> = values.into_iter().collect();
        FiniteSet(set.into_iter().collect())
    }

    pub fn from_ints(values: impl IntoIterator<Item = i64>) -> Self {
        Self::new(values.into_iter().map(|v| Rational::from_integer(v.into())))
    }

    pub fn elements(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.0.binary_search(v).is_ok()
    }

    /// `{p(a) : a in self}`.
    pub fn image(&self, p: &UniPoly) -> FiniteSet {
        FiniteSet::new(self.0.iter().map(|a| p.eval(a)))
    }

    pub fn without_zero(&self) -> FiniteSet {
        FiniteSet(self.0.iter().filter(|v| !v.is_zero()).cloned().collect())
    }

    /// Elements where `p` does not vanish.
    pub fn avoiding_roots_of(&self, p: &UniPoly) -> FiniteSet {
        FiniteSet(self.0.iter().filter(|a| !p.eval(a).is_zero()).cloned().collect())
    }

    /// `{|a| : a != 0}`, in bijection with `{log|a| : a != 0}`.
    pub fn log_abs(&self) -> FiniteSet {
        FiniteSet::new(self.0.iter().filter(|v| !v.is_zero()).map(|v| v.abs()))
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Duplicate-free set of points, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlanarSet(Vec<(Rational, Rational)>);

impl PlanarSet {
    pub fn new(points: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let set: BTreeSet<_> = points.into_iter().collect();
        PlanarSet(set.into_iter().collect())
    }

    pub fn grid(xs: &FiniteSet, ys: &FiniteSet) -> Self {
        let mut pts = Vec::with_capacity(xs.len() * ys.len());
        for x in xs.elements() {
            for y in ys.elements() {
                pts.push((x.clone(), y.clone()));
            }
        }
        PlanarSet(pts)
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Sum,
    Product,
    /// `log|A| + log|B|`, represented by `|A| * |B|` over nonzero elements.
    LogAbsSum,
}

/// `A + B`, `A * B`, or the log-abs sumset realized as a product set of
/// absolute values.
pub fn set_algebra(a: &FiniteSet, b: &FiniteSet, op: SetOp) -> Result<FiniteSet> {
    let (a, b) = match op {
        SetOp::LogAbsSum => (a.log_abs(), b.log_abs()),
        _ => (a.clone(), b.clone()),
    };
    if a.is_empty() || b.is_empty() {
        return precondition("set arithmetic on an empty set");
    }
    let combine = |x: &Rational, y: &Rational| match op {
        SetOp::Sum => x + y,
        SetOp::Product | SetOp::LogAbsSum => x * y,
    };
    let out: BTreeSet<Rational> = a
        .elements()
        .par_iter()
        .fold(BTreeSet::new, |mut acc, x| {
            acc.extend(b.elements().iter().map(|y| combine(x, y)));
            acc
        })
        .reduce(BTreeSet::new, |mut l, r| {
            l.extend(r);
            l
        });
    Ok(FiniteSet(out.into_iter().collect()))
}

/// Iterated `op` over a nonempty list of sets.
pub fn fold_sets(sets: &[FiniteSet], op: SetOp) -> Result<FiniteSet> {
    let Some(first) = sets.first() else {
        return precondition("no sets to combine");
    };
    let mut acc = match op {
        SetOp::LogAbsSum => first.log_abs(),
        _ => first.clone(),
    };
    for s in &sets[1..] {
        acc = set_algebra(&acc, s, op)?;
    }
    if acc.is_empty() {
        return precondition("set arithmetic on an empty set");
    }
    Ok(acc)
}

/// Precomputed powers of each coordinate value, for fast evaluation.
struct PowerTable {
    terms: Vec<(Vec<u32>, Rational)>,
    powers: Vec<Vec<Vec<Rational>>>,
}

impl PowerTable {
    fn new(p: &MultiPoly, sets: &[FiniteSet]) -> Self {
        let terms: Vec<(Vec<u32>, Rational)> =
            p.terms().map(|(m, c): (&Monomial, &Rational)| (m.exps().to_vec(), c.clone())).collect();
        let powers = sets
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let top = p.degree_in(i);
                s.elements()
                    .iter()
                    .map(|a| {
                        let mut pw = vec![Rational::from_integer(1.into())];
                        for k in 0..top {
                            let next = &pw[k] * a;
                            pw.push(next);
                        }
                        pw
                    })
                    .collect()
            })
            .collect();
        PowerTable { terms, powers }
    }

    fn eval(&self, idx: &[usize]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &self.powers[i][idx[i]][k as usize];
                }
            }
            acc += t;
        }
        acc
    }
}

/// `P(A_1, ..., A_d)` over the full Cartesian product.
pub fn image_set(p: &MultiPoly, sets: &[FiniteSet]) -> Result<FiniteSet> {
    image_set_with_budget(p, sets, tuple_budget())
}

pub fn image_set_with_budget(p: &MultiPoly, sets: &[FiniteSet], budget: u64) -> Result<FiniteSet> {
    if sets.len() != p.arity() {
        return precondition(format!("polynomial has {} variables but {} sets were given", p.arity(), sets.len()));
    }
    if sets.iter().any(FiniteSet::is_empty) {
        return precondition("image of an empty set");
    }
    let tuples = sets.iter().try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64));
    match tuples {
        Some(n) if n <= budget => {}
        _ => return Err(Error::Budget(format!("image set needs more than {budget} tuples"))),
    }
    let table = PowerTable::new(p, sets);
    let sizes: Vec<usize> = sets.iter().map(FiniteSet::len).collect();
    let d = sizes.len();
    let out: BTreeSet<Rational> = (0..sizes[0])
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, first| {
            let mut idx = vec![0usize; d];
            idx[0] = first;
            loop {
                acc.insert(table.eval(&idx));
                // Odometer over coordinates 1..d.
                let mut k = d;
                loop {
                    k -= 1;
                    if k == 0 {
                        return acc;
                    }
                    idx[k] += 1;
                    if idx[k] < sizes[k] {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        })
        .reduce(BTreeSet::new, |mut l, r| {
            l.extend(r);
            l
        });
    Ok(FiniteSet(out.into_iter().collect()))
}

/// Set generator `kind:params:n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    /// `{start, start+step, ...}`.
    Ap { start: Rational, step: Rational, n: usize },
    /// `{start, start*ratio, ...}`.
    Gp { start: Rational, ratio: Rational, n: usize },
    /// `n` distinct rationals drawn from a seeded generator.
    Rand { seed: u64, n: usize },
}

impl SetSpec {
    /// Parses `ap:start:step:n`, `gp:start:ratio:n` or `rand:seed:n`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse { offset: 0, message: format!("set spec {s:?}: {m}") };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let rat = |t: &str| parse_rational(t).ok_or_else(|| bad(&format!("bad number {t:?}")));
        let size = |t: &str| t.parse::<usize>().map_err(|_| bad(&format!("bad size {t:?}")));
        match parts.as_slice() {
            ["ap", a, b, n] => Ok(SetSpec::Ap { start: rat(a)?, step: rat(b)?, n: size(n)? }),
            ["gp", a, r, n] => Ok(SetSpec::Gp { start: rat(a)?, ratio: rat(r)?, n: size(n)? }),
            ["rand", seed, n] => Ok(SetSpec::Rand {
                seed: seed.parse().map_err(|_| bad(&format!("bad seed {seed:?}")))?,
                n: size(n)?,
            }),
            _ => Err(bad("expected ap:start:step:n, gp:start:ratio:n or rand:seed:n")),
        }
    }

    pub fn with_size(&self, n: usize) -> Self {
        let mut s = self.clone();
        match &mut s {
            SetSpec::Ap { n: m, .. } | SetSpec::Gp { n: m, .. } | SetSpec::Rand { n: m, .. } => *m = n,
        }
        s
    }

    pub fn generate(&self) -> Result<FiniteSet> {
        match self {
            SetSpec::Ap { start, step, n } => gen_set(SetKind::Ap, *n, start, step, 0),
            SetSpec::Gp { start, ratio, n } => gen_set(SetKind::Gp, *n, start, ratio, 0),
            SetSpec::Rand { seed, n } => {
                gen_set(SetKind::Random, *n, &Rational::zero(), &Rational::zero(), *seed)
            }
        }
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSpec::Ap { start, step, n } => write!(f, "ap:{start}:{step}:{n}"),
            SetSpec::Gp { start, ratio, n } => write!(f, "gp:{start}:{ratio}:{n}"),
            SetSpec::Rand { seed, n } => write!(f, "rand:{seed}:{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    Ap,
    Gp,
    Random,
}

/// Arithmetic progression, geometric progression, or seeded random set.
/// `a` and `b` are start and step/ratio; the seed is used only for random
/// sets.
pub fn gen_set(kind: SetKind, n: usize, a: &Rational, b: &Rational, seed: u64) -> Result<FiniteSet> {
    if n == 0 {
        return precondition("set size must be positive");
    }
    if n > MAX_SET_SIZE {
        return Err(Error::Budget(format!("set size {n} exceeds {MAX_SET_SIZE}")));
    }
    let one = Rational::from_integer(1.into());
    match kind {
        SetKind::Ap => {
            if b.is_zero() {
                return precondition("progression step must be nonzero");
            }
            let mut v = a.clone();
            let mut out = Vec::with_capacity(n);
            for _ in 0..n {
                out.push(v.clone());
                v += b;
            }
            Ok(FiniteSet::new(out))
        }
        SetKind::Gp => {
            if a.is_zero() || b.is_zero() || b.abs() == one {
                return precondition("geometric progression needs start != 0 and ratio not in {0, 1, -1}");
            }
            let mut v = a.clone();
            let mut out = Vec::with_capacity(n);
            for _ in 0..n {
                out.push(v.clone());
                v *= b;
            }
            Ok(FiniteSet::new(out))
        }
        SetKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut set = BTreeSet::new();
            while set.len() < n {
                let num = rng.gen_range(-RAND_NUMERATOR..=RAND_NUMERATOR);
                let den = rng.gen_range(1..=RAND_DENOMINATOR);
                set.insert(Rational::new(num.into(), den.into()));
            }
            Ok(FiniteSet(set.into_iter().collect()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_mpoly;
    use crate::scalar::{int, rat};

    #[test]
    fn image_examples() {
        let a = FiniteSet::from_ints([1, 2, 3]);
        let s = image_set(&parse_mpoly("x+y").unwrap(), &[a.clone(), a.clone()]).unwrap();
        assert_eq!(s, FiniteSet::from_ints(2..=6));
        let g = FiniteSet::from_ints([1, 2, 4]);
        let s = image_set(&parse_mpoly("x*y").unwrap(), &[g.clone(), g]).unwrap();
        assert_eq!(s, FiniteSet::from_ints([1, 2, 4, 8, 16]));
        let s = image_set(&parse_mpoly("x+y^2").unwrap(), &[a.clone(), a.clone()]).unwrap();
        assert_eq!(s, FiniteSet::from_ints([2, 3, 4, 5, 6, 7, 10, 11, 12]));
        assert!(image_set(&parse_mpoly("x+y").unwrap(), std::slice::from_ref(&a)).is_err());
        assert!(matches!(
            image_set_with_budget(&parse_mpoly("x+y").unwrap(), &[a.clone(), a], 8),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn image_of_three_sets_matches_nested_loops() {
        let p = parse_mpoly("x1*x2 - x3^2 + 1/2").unwrap();
        let sets = [FiniteSet::from_ints([-1, 0, 2]), FiniteSet::from_ints([1, 3]), FiniteSet::from_ints([0, 1, 5, 7])];
        let mut brute = Vec::new();
        for a in sets[0].elements() {
            for b in sets[1].elements() {
                for c in sets[2].elements() {
                    brute.push(p.eval(&[a.clone(), b.clone(), c.clone()]));
                }
            }
        }
        assert_eq!(image_set(&p, &sets).unwrap(), FiniteSet::new(brute));
    }

    #[test]
    fn set_algebra_examples() {
        let s = set_algebra(&FiniteSet::from_ints([1, 2]), &FiniteSet::from_ints([10, 20]), SetOp::Sum).unwrap();
        assert_eq!(s, FiniteSet::from_ints([11, 12, 21, 22]));
        let a = FiniteSet::from_ints([-2, 2]);
        let b = FiniteSet::from_ints([3]);
        assert_eq!(set_algebra(&a, &b, SetOp::Product).unwrap(), FiniteSet::from_ints([-6, 6]));
        assert_eq!(set_algebra(&a, &b, SetOp::LogAbsSum).unwrap().len(), 1);
        assert!(set_algebra(&FiniteSet::from_ints([0]), &b, SetOp::LogAbsSum).is_err());
    }

    #[test]
    fn generators() {
        assert_eq!(gen_set(SetKind::Ap, 4, &int(1), &int(1), 0).unwrap(), FiniteSet::from_ints([1, 2, 3, 4]));
        assert_eq!(gen_set(SetKind::Gp, 3, &int(1), &int(2), 0).unwrap(), FiniteSet::from_ints([1, 2, 4]));
        let r = gen_set(SetKind::Random, 3, &int(0), &int(0), 7).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r, gen_set(SetKind::Random, 3, &int(0), &int(0), 7).unwrap());
        assert!(gen_set(SetKind::Gp, 3, &int(1), &int(-1), 0).is_err());
        assert!(gen_set(SetKind::Ap, 3, &int(1), &int(0), 0).is_err());
        assert_eq!(SetSpec::parse("ap:1:1:5").unwrap().generate().unwrap().len(), 5);
        assert_eq!(
            SetSpec::parse("gp:1/2:3:2").unwrap().generate().unwrap(),
            FiniteSet::new([rat(1, 2), rat(3, 2)])
        );
        assert!(SetSpec::parse("ap:1:1").is_err());
        assert_eq!(SetSpec::parse("rand:9:4").unwrap().to_string(), "rand:9:4");
    }
}
