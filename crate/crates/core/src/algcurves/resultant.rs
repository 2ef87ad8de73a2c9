//! Sylvester resultants and subresultants.

use crate::error::{precondition, Result};
use crate::exactmath::matrix::{determinant, Ring};
use crate::exactmath::MPoly;
use crate::scalar::Rational;

/// Sylvester matrix of `a` and `b`, given by coefficients lowest power first
/// (both with nonzero top coefficient). Columns run from the highest power
/// down.
pub fn sylvester_matrix<R: Ring>(a: &[R], b: &[R], zero: &R) -> Vec<Vec<R>> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.zero_like(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.zero_like(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two polynomials over a ring, given by coefficient lists.
pub fn resultant_coeffs<R: Ring>(a: &[R], b: &[R], zero: &R) -> R {
    determinant(sylvester_matrix(a, b, zero), zero)
}

/// Coefficients (lowest power first) of the `j`-th subresultant of `a` and
/// `b`, as determinants of the reduced Sylvester matrices. Requires
/// `j < min(deg a, deg b)`.
pub fn subresultant_coeffs<R: Ring>(a: &[R], b: &[R], j: usize, zero: &R) -> Vec<R> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    assert!(j < m.min(n), "subresultant index out of range");
    let cols = m + n - j;
    let mut rows = Vec::with_capacity(m + n - 2 * j);
    for i in 0..n - j {
        let mut row = vec![zero.zero_like(); cols];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m - j {
        let mut row = vec![zero.zero_like(); cols];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    let lead = m + n - 2 * j - 1;
    (0..=j)
        .map(|i| {
            let col = cols - 1 - i;
            let sq: Vec<Vec<R>> = rows
                .iter()
                .map(|r| {
                    let mut v: Vec<R> = r[..lead].to_vec();
                    v.push(r[col].clone());
                    v
                })
                .collect();
            determinant(sq, zero)
        })
        .collect()
}

/// Resultant of `f` and `g` with respect to `x_{var+1}`, a polynomial in the
/// remaining variables (same arity, that variable absent).
pub fn sylvester_resultant(f: &MPoly<Rational>, g: &MPoly<Rational>, var: usize) -> Result<MPoly<Rational>> {
    if f.arity() != g.arity() {
        return precondition("resultant operands must have the same arity");
    }
    if var >= f.arity() {
        return precondition(format!("variable index {} out of range", var + 1));
    }
    if f.degree_in(var) == 0 || g.degree_in(var) == 0 {
        return precondition(format!("both operands need positive degree in x{}", var + 1));
    }
    let zero = MPoly::zero(f.arity());
    Ok(resultant_coeffs(&f.coeffs_in(var), &g.coeffs_in(var), &zero))
}
