//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::collections::hash_map::Entry as HashEntry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{Degree, Poly};
use crate::error::{precondition, Result};
use crate::scalar::Field;

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with `x1` most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Polynomial in `x1..xd`. Zero coefficients are never stored; the leading
/// term under graded-lex order is the last map entry.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly<T> {
    arity: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Field> MPoly<T> {
    pub fn zero(arity: usize) -> Self {
        MPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: T) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Monomial::one(arity), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, T::one())
    }

    /// The variable `x_{var+1}` (0-based index).
    pub fn var(arity: usize, var: usize) -> Self {
        assert!(var < arity, "variable index out of range");
        let mut e = vec![0; arity];
        e[var] = 1;
        Self::from_terms(arity, [(e, T::one())])
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, T)>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent length must equal arity");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Embeds a univariate polynomial as a polynomial in `x_{var+1}`.
    pub fn from_uni(poly: &Poly<T>, arity: usize, var: usize) -> Self {
        assert!(var < arity, "variable index out of range");
        let mut p = Self::zero(arity);
        for (k, c) in poly.coeffs().iter().enumerate() {
            let mut e = vec![0; arity];
            e[var] = k as u32;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Same polynomial viewed in more variables.
    pub fn with_arity(&self, arity: usize) -> Self {
        assert!(arity >= self.arity, "cannot drop variables");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(arity, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        MPoly { arity, terms }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> T {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total() == 0)
    }

    pub fn constant_term(&self) -> T {
        self.terms.get(&Monomial::one(self.arity)).cloned().unwrap_or_else(T::zero)
    }

    pub fn total_degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            None => Degree::Zero,
            Some(m) => Degree::Finite(m.total() as usize),
        }
    }

    /// Total degree, zero for the zero polynomial.
    pub fn tdeg(&self) -> usize {
        self.total_degree().finite().unwrap_or(0)
    }

    /// Degree in `x_{var+1}`, zero for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|m| m.0[var] as usize).max().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &T)> {
        self.terms.iter().next_back()
    }

    pub fn lc(&self) -> T {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(T::zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect();
        MPoly { arity: self.arity, terms }
    }

    fn mul_term(&self, m: &Monomial, c: &T) -> Self {
        let terms = self.terms.iter().map(|(n, a)| (n.mul(m), a.mul_ref(c))).collect();
        MPoly { arity: self.arity, terms }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.arity);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `x_{var+1}`.
    pub fn derivative(&self, var: usize) -> Result<Self> {
        if var >= self.arity {
            return precondition(format!(
                "variable index {} out of range for arity {}",
                var + 1,
                self.arity
            ));
        }
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let k = m.0[var];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[var] -= 1;
            out.add_term(Monomial(e), c.mul_ref(&T::from_int(k as i64)));
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.arity, "point dimension must equal arity");
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&m.0) {
                for _ in 0..k {
                    t = t.mul_ref(x);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes univariate polynomials (in one common variable) for every
    /// variable.
    pub fn eval_uni(&self, subs: &[Poly<T>]) -> Poly<T> {
        assert_eq!(subs.len(), self.arity, "substitution count must equal arity");
        let mut cache: Vec<Vec<Poly<T>>> = subs.iter().map(|s| vec![Poly::one(), s.clone()]).collect();
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, &k) in m.0.iter().enumerate() {
                let k = k as usize;
                while cache[v].len() <= k {
                    let next = &cache[v][cache[v].len() - 1] * &subs[v];
                    cache[v].push(next);
                }
                if k > 0 {
                    t = &t * &cache[v][k];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes multivariate polynomials (all of one common arity) for
    /// every variable.
    pub fn compose(&self, subs: &[MPoly<T>]) -> MPoly<T> {
        assert_eq!(subs.len(), self.arity, "substitution count must equal arity");
        let out_arity = subs.first().map(|s| s.arity).unwrap_or(0);
        let mut cache: Vec<Vec<MPoly<T>>> =
            subs.iter().map(|s| vec![MPoly::one(out_arity), s.clone()]).collect();
        let mut acc = MPoly::zero(out_arity);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(out_arity, c.clone());
            for (v, &k) in m.0.iter().enumerate() {
                let k = k as usize;
                while cache[v].len() <= k {
                    let next = &cache[v][cache[v].len() - 1] * &subs[v];
                    cache[v].push(next);
                }
                if k > 0 {
                    t = &t * &cache[v][k];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Sets `x_{var+1} = value`; the arity is kept and the variable no
    /// longer occurs.
    pub fn substitute(&self, var: usize, value: &T) -> Self {
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[var], 0);
            let mut t = c.clone();
            for _ in 0..k {
                t = t.mul_ref(value);
            }
            out.add_term(Monomial(e), t);
        }
        out
    }

    /// Restriction to the line where every variable other than `var` takes
    /// the given value; `point[var]` is ignored.
    pub fn restrict_to_line(&self, var: usize, point: &[T]) -> Poly<T> {
        let mut coeffs = vec![T::zero(); self.degree_in(var) + 1];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in m.0.iter().enumerate() {
                if v == var {
                    continue;
                }
                for _ in 0..k {
                    t = t.mul_ref(&point[v]);
                }
            }
            coeffs[m.0[var] as usize] += t;
        }
        Poly::from_coeffs(coeffs)
    }

    /// The polynomial as a univariate polynomial in `x_{var+1}`, if it
    /// involves no other variable.
    pub fn to_uni(&self, var: usize) -> Option<Poly<T>> {
        let mut coeffs = vec![T::zero(); self.degree_in(var) + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(v, &k)| v != var && k > 0) {
                return None;
            }
            coeffs[m.0[var] as usize] = c.clone();
        }
        Some(Poly::from_coeffs(coeffs))
    }

    /// Coefficients with respect to `x_{var+1}`, lowest power first; each
    /// coefficient keeps the full arity with that variable absent.
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(self.arity); self.degree_in(var) + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[var], 0) as usize;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Builds `sum_k coeffs[k] * x_{var+1}^k`.
    pub fn from_coeffs_in(var: usize, arity: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(arity);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.0.clone();
                e[var] += k as u32;
                out.add_term(Monomial(e), a.clone());
            }
        }
        out
    }

    /// Renames variables: `x_{i+1}` becomes `x_{perm[i]+1}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; self.arity];
                for (i, &k) in m.0.iter().enumerate() {
                    e[perm[i]] = k;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        MPoly { arity: self.arity, terms }
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (dm, dc) = divisor.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.arity);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&dm)?;
            let qc = c.div_ref(&dc);
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = T::one().div_ref(c);
                self.scale(&inv)
            }
        }
    }

    pub fn map_coeffs<U: Field>(&self, f: impl Fn(&T) -> U) -> MPoly<U> {
        let mut out = MPoly::zero(self.arity);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Human-readable form using `x1..xd`, highest term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { names[v].clone() } else { format!("{}^{k}", names[v]) })
                .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&format!("{a}*"));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    pub fn default_names(arity: usize) -> Vec<String> {
        (1..=arity).map(|i| format!("x{i}")).collect()
    }
}

impl<T: Field> fmt::Display for MPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&Self::default_names(self.arity)))
    }
}

impl<T: Field> Add for &MPoly<T> {
    type Output = MPoly<T>;
    fn add(self, rhs: &MPoly<T>) -> MPoly<T> {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<T: Field> Sub for &MPoly<T> {
    type Output = MPoly<T>;
    fn sub(self, rhs: &MPoly<T>) -> MPoly<T> {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<T: Field> Mul for &MPoly<T> {
    type Output = MPoly<T>;
    fn mul(self, rhs: &MPoly<T>) -> MPoly<T> {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut acc: HashMap<Monomial, T> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                let c = a.mul_ref(b);
                match acc.entry(m.mul(n)) {
                    HashEntry::Vacant(v) => {
                        v.insert(c);
                    }
                    HashEntry::Occupied(mut o) => *o.get_mut() += c,
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { arity: self.arity, terms }
    }
}

impl<T: Field> Neg for &MPoly<T> {
    type Output = MPoly<T>;
    fn neg(self) -> MPoly<T> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        MPoly { arity: self.arity, terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Field> $tr for MPoly<T> {
            type Output = MPoly<T>;
            fn $m(self, rhs: MPoly<T>) -> MPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Field> Neg for MPoly<T> {
    type Output = MPoly<T>;
    fn neg(self) -> MPoly<T> {
        -&self
    }
}

/// `f(inner)` for a univariate outer polynomial.
pub fn compose_outer<T: Field>(f: &Poly<T>, inner: &MPoly<T>) -> MPoly<T> {
    let mut acc = MPoly::zero(inner.arity());
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * inner) + &MPoly::constant(inner.arity(), c.clone());
    }
    acc
}
