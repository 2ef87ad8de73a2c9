//! Fraction-free determinants and exact linear solving.

use super::mpoly::MPoly;
use super::poly::Poly;
use crate::scalar::{Field, Rational};
use num_traits::{One, Zero};

/// Commutative integral domain with exact division, enough for Bareiss
/// elimination.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_r(&self, o: &Self) -> Self;
    fn sub_r(&self, o: &Self) -> Self;
    fn mul_r(&self, o: &Self) -> Self;
    fn neg_r(&self) -> Self;
    /// `self / o`, where `o` is known to divide `self`.
    fn div_exact(&self, o: &Self) -> Self;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl<T: Field> Ring for Poly<T> {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn one_like(&self) -> Self {
        Poly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.exact_div(o).expect("Bareiss pivot divides exactly")
    }
}

impl<T: Field> Ring for MPoly<T> {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.arity())
    }
    fn one_like(&self) -> Self {
        MPoly::one(self.arity())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.exact_div(o).expect("Bareiss pivot divides exactly")
    }
}

/// Determinant of a square matrix by Bareiss fraction-free elimination.
/// `zero` supplies the ring's zero (needed for the empty matrix).
pub fn determinant<R: Ring>(mut m: Vec<Vec<R>>, zero: &R) -> R {
    let n = m.len();
    if n == 0 {
        return zero.one_like();
    }
    debug_assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut sign_neg = false;
    let mut prev = zero.one_like();
    for k in 0..n {
        if m[k][k].is_zero_elem() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) else {
                return zero.zero_like();
            };
            m.swap(k, p);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].mul_r(&m[k][k]);
                let b = m[i][k].mul_r(&m[k][j]);
                m[i][j] = a.sub_r(&b).div_exact(&prev);
            }
            m[i][k] = zero.zero_like();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        det.neg_r()
    } else {
        det
    }
}

/// Solves `a x = b` over the rationals by Gauss-Jordan elimination. Returns
/// one solution (free variables set to zero) or `None` when inconsistent.
pub fn solve_linear(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=cols {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn cofactor(m: &[Vec<Rational>]) -> Rational {
        if m.is_empty() {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let t = &m[0][j] * cofactor(&minor);
            if j % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        acc
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m: Vec<Vec<Rational>> = [[0, 2, 1, 3], [4, 0, -1, 2], [1, 1, 1, 1], [2, -3, 0, 5]]
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        assert_eq!(determinant(m.clone(), &int(0)), cofactor(&m));
    }

    #[test]
    fn singular_matrix_has_zero_determinant() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(m, &int(0)), int(0));
    }

    #[test]
    fn polynomial_entries() {
        // det [[x, 1], [1, x]] = x^2 - 1
        let x = Poly::<Rational>::x();
        let m = vec![vec![x.clone(), Poly::one()], vec![Poly::one(), x.clone()]];
        assert_eq!(determinant(m, &Poly::zero()), Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn linear_solve() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let x = solve_linear(&a, &[int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve_linear(&a, &[int(1), int(3)]).is_none());
    }
}
