//! Sturm sequences, real root isolation and real algebraic numbers.

use std::cmp::Ordering;

use super::poly::Poly;
use crate::error::{precondition, Result};
use crate::scalar::{midpoint, Field};

/// An endpoint of a counting interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound<T> {
    NegInf,
    Finite(T),
    PosInf,
}

fn sign<T: Field>(v: &T) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm sequence of `p` (assumed square-free): `p, p', -rem(...)...`, each
/// term rescaled by a positive constant to keep coefficients small.
pub fn sturm_sequence<T: Field>(p: &Poly<T>) -> Vec<Poly<T>> {
    let normalize = |q: Poly<T>| {
        let lc = q.lc().abs();
        if lc.is_zero() {
            q
        } else {
            q.scale(&T::one().div_ref(&lc))
        }
    };
    let mut seq = vec![normalize(p.clone())];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(normalize(d));
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(normalize(-r));
    }
    seq
}

fn sign_at<T: Field>(q: &Poly<T>, at: &Bound<T>) -> i8 {
    match at {
        Bound::Finite(x) => sign(&q.eval(x)),
        Bound::PosInf => sign(&q.lc()),
        Bound::NegInf => {
            let s = sign(&q.lc());
            if q.deg().is_multiple_of(2) {
                s
            } else {
                -s
            }
        }
    }
}

/// Number of sign changes in the sequence evaluated at `at`, zeros skipped.
pub fn sign_variations<T: Field>(seq: &[Poly<T>], at: &Bound<T>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for q in seq {
        let s = sign_at(q, at);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn bound_lt<T: Field>(a: &Bound<T>, b: &Bound<T>) -> bool {
    match (a, b) {
        (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        (Bound::NegInf, _) | (_, Bound::PosInf) => true,
        (Bound::Finite(x), Bound::Finite(y)) => x < y,
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count<T: Field>(p: &Poly<T>, lo: &Bound<T>, hi: &Bound<T>) -> Result<usize> {
    if p.is_zero() {
        return precondition("root count of the zero polynomial");
    }
    if !bound_lt(lo, hi) {
        return precondition("root count needs lo < hi");
    }
    let seq = sturm_sequence(&p.square_free()?);
    Ok(count_with(&seq, lo, hi))
}

fn count_with<T: Field>(seq: &[Poly<T>], lo: &Bound<T>, hi: &Bound<T>) -> usize {
    sign_variations(seq, lo).saturating_sub(sign_variations(seq, hi))
}

/// Interval isolating one real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootInterval<T> {
    /// The root is exactly this rational.
    Exact(T),
    /// The root is the unique root in `(lo, hi)`; the polynomial changes sign
    /// strictly between `lo` and `hi`, neither of which is a root.
    Open { lo: T, hi: T },
}

impl<T: Field> RootInterval<T> {
    pub fn lo(&self) -> &T {
        match self {
            RootInterval::Exact(r) => r,
            RootInterval::Open { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &T {
        match self {
            RootInterval::Exact(r) => r,
            RootInterval::Open { hi, .. } => hi,
        }
    }

    pub fn width(&self) -> T {
        self.hi().sub_ref(self.lo())
    }

    /// Bisects once; `p` must be the square-free polynomial the interval
    /// was isolated for.
    pub fn bisect(&mut self, p: &Poly<T>) {
        if let RootInterval::Open { lo, hi } = self {
            let mid = midpoint(lo, hi);
            let sm = sign(&p.eval(&mid));
            if sm == 0 {
                *self = RootInterval::Exact(mid);
            } else if sign(&p.eval(lo)) != sm {
                *hi = mid;
            } else {
                *lo = mid;
            }
        }
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&mut self, p: &Poly<T>, width: &T) {
        while self.width() > *width {
            self.bisect(p);
        }
    }
}

/// Disjoint isolating intervals for the distinct real roots of a polynomial,
/// in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingIntervals<T> {
    /// Square-free part of the input; every interval isolates one of its roots.
    pub poly: Poly<T>,
    pub roots: Vec<RootInterval<T>>,
}

impl<T: Field> IsolatingIntervals<T> {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Refines every interval to width at most `width`.
    pub fn refine(&mut self, width: &T) {
        for r in &mut self.roots {
            r.refine(&self.poly, width);
        }
    }

    pub fn into_algebraic(self) -> Vec<RealAlgebraic<T>> {
        let poly = self.poly;
        self.roots
            .into_iter()
            .map(|iv| RealAlgebraic { poly: poly.clone(), iv })
            .collect()
    }
}

/// Strict bound on the absolute value of every root (Cauchy).
pub fn root_bound<T: Field>(p: &Poly<T>) -> T {
    let lc = p.lc().abs();
    let mut m = T::zero();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let r = c.abs().div_ref(&lc);
        if r > m {
            m = r;
        }
    }
    m + T::one()
}

/// Isolates every distinct real root of `p`.
pub fn isolate_real_roots<T: Field>(p: &Poly<T>) -> Result<IsolatingIntervals<T>> {
    if p.is_zero() {
        return precondition("root isolation of the zero polynomial");
    }
    let sf = p.square_free()?;
    let mut roots = Vec::new();
    if sf.is_constant() {
        return Ok(IsolatingIntervals { poly: sf, roots });
    }
    if sf.deg() == 1 {
        roots.push(RootInterval::Exact(-sf.coeff(0).div_ref(&sf.coeff(1))));
        return Ok(IsolatingIntervals { poly: sf, roots });
    }
    let seq = sturm_sequence(&sf);
    let b = root_bound(&sf);
    isolate_in(&sf, &seq, -b.clone(), b, &mut roots);
    Ok(IsolatingIntervals { poly: sf, roots })
}

/// Roots in the open interval `(a, b)`, appended in increasing order.
fn isolate_in<T: Field>(p: &Poly<T>, seq: &[Poly<T>], a: T, b: T, out: &mut Vec<RootInterval<T>>) {
    let b_root = p.eval(&b).is_zero();
    let a_root = p.eval(&a).is_zero();
    let n = count_with(seq, &Bound::Finite(a.clone()), &Bound::Finite(b.clone())) - usize::from(b_root);
    if n == 0 {
        return;
    }
    if n == 1 && !a_root && !b_root {
        out.push(RootInterval::Open { lo: a, hi: b });
        return;
    }
    let mid = midpoint(&a, &b);
    isolate_in(p, seq, a, mid.clone(), out);
    if p.eval(&mid).is_zero() {
        out.push(RootInterval::Exact(mid.clone()));
    }
    isolate_in(p, seq, mid, b, out);
}

/// Closed interval containing `q(x)` for every `x` in `[lo, hi]`.
pub fn eval_interval<T: Field>(q: &Poly<T>, lo: &T, hi: &T) -> (T, T) {
    let mut a = T::zero();
    let mut b = T::zero();
    for c in q.coeffs().iter().rev() {
        let prods = [a.mul_ref(lo), a.mul_ref(hi), b.mul_ref(lo), b.mul_ref(hi)];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        a = mn.add_ref(c);
        b = mx.add_ref(c);
    }
    (a, b)
}

/// A real root of a square-free rational polynomial, pinned by an isolating
/// interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealAlgebraic<T> {
    pub poly: Poly<T>,
    pub iv: RootInterval<T>,
}

impl<T: Field> RealAlgebraic<T> {
    pub fn rational(r: T) -> Self {
        RealAlgebraic { poly: Poly::linear_root(r.clone()), iv: RootInterval::Exact(r) }
    }

    pub fn refine(&mut self, width: &T) {
        self.iv.refine(&self.poly, width);
    }

    /// Whether `q` vanishes at this number.
    pub fn is_root_of(&self, q: &Poly<T>) -> bool {
        match &self.iv {
            RootInterval::Exact(r) => q.eval(r).is_zero(),
            RootInterval::Open { lo, hi } => {
                if q.is_zero() {
                    return true;
                }
                let g = self.poly.gcd(q).expect("poly is nonzero");
                if g.is_constant() {
                    return false;
                }
                let seq = sturm_sequence(&g);
                count_with(&seq, &Bound::Finite(lo.clone()), &Bound::Finite(hi.clone())) > 0
            }
        }
    }

    /// Exact sign of `q` at this number.
    pub fn sign_of(&mut self, q: &Poly<T>) -> Ordering {
        if self.is_root_of(q) {
            return Ordering::Equal;
        }
        loop {
            let (a, b) = eval_interval(q, self.iv.lo(), self.iv.hi());
            if a.is_positive() {
                return Ordering::Greater;
            }
            if b.is_negative() {
                return Ordering::Less;
            }
            self.iv.bisect(&self.poly);
        }
    }

    /// Interval of width at most `width` containing `q` at this number.
    pub fn enclose(&mut self, q: &Poly<T>, width: &T) -> (T, T) {
        loop {
            let (a, b) = eval_interval(q, self.iv.lo(), self.iv.hi());
            if b.sub_ref(&a) <= *width {
                return (a, b);
            }
            self.iv.bisect(&self.poly);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};
    use num_traits::Signed;

    type P = Poly<Rational>;

    fn fin(v: Rational) -> Bound<Rational> {
        Bound::Finite(v)
    }

    #[test]
    fn count_examples() {
        let p = P::from_ints(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &fin(int(-2)), &fin(int(2))).unwrap(), 2);
        let q = P::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_count(&q, &Bound::NegInf, &Bound::PosInf).unwrap(), 0);
        let r = P::from_ints(&[0, -1, 0, 1]);
        assert_eq!(sturm_count(&r, &fin(int(-2)), &fin(rat(1, 2))).unwrap(), 2);
        // half-open: the right endpoint counts, the left does not
        assert_eq!(sturm_count(&r, &fin(int(-1)), &fin(int(0))).unwrap(), 1);
        assert_eq!(sturm_count(&r, &fin(int(-2)), &fin(int(-1))).unwrap(), 1);
        assert!(sturm_count(&P::zero(), &Bound::NegInf, &Bound::PosInf).is_err());
        assert!(sturm_count(&r, &fin(int(1)), &fin(int(1))).is_err());
    }

    #[test]
    fn isolation_examples() {
        let iso = isolate_real_roots(&P::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(iso.len(), 2);
        let two = int(2);
        for r in &iso.roots {
            let (lo, hi) = (r.lo().abs().min(r.hi().abs()), r.lo().abs().max(r.hi().abs()));
            assert!(&lo * &lo < two && &hi * &hi > two);
        }
        let iso = isolate_real_roots(&P::from_ints(&[-3, 1])).unwrap();
        assert_eq!(iso.roots, vec![RootInterval::Exact(int(3))]);
        let p = &(&P::from_ints(&[-1, 1]) * &P::from_ints(&[-1, 1])) * &P::from_ints(&[4, 1]);
        let mut iso = isolate_real_roots(&p).unwrap();
        assert_eq!(iso.len(), 2);
        iso.refine(&rat(1, 1000));
        assert!(iso.roots[0].lo() <= &int(-4) && iso.roots[0].hi() >= &int(-4));
        assert!(iso.roots[1].lo() <= &int(1) && iso.roots[1].hi() >= &int(1));
    }

    #[test]
    fn algebraic_signs() {
        let mut roots = isolate_real_roots(&P::from_ints(&[-2, 0, 1])).unwrap().into_algebraic();
        // sqrt(2) - 1 > 0, sqrt(2) - 3/2 < 0, x^2 - 2 = 0
        let a = roots.pop().unwrap();
        let mut a2 = a.clone();
        assert_eq!(a2.sign_of(&P::from_ints(&[-1, 1])), Ordering::Greater);
        assert_eq!(a2.sign_of(&P::from_coeffs(vec![rat(-3, 2), int(1)])), Ordering::Less);
        assert_eq!(a2.sign_of(&P::from_ints(&[-2, 0, 1])), Ordering::Equal);
        let (lo, hi) = a2.enclose(&P::from_ints(&[0, 0, 1]), &rat(1, 100));
        assert!(lo <= int(2) && hi >= int(2));
    }
}
