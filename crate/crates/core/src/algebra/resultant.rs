//! Resultants with respect to y, by a fraction-free (Bareiss) determinant of
//! the Sylvester matrix over F[x].

use super::bipoly::BiPoly;
use super::field::Field;
use super::upoly::UniPoly;
use crate::error::{Error, Result};

/// Determinant of a square matrix with entries in F[x].
pub fn determinant<F: Field>(field: &F, mut m: Vec<Vec<UniPoly<F>>>) -> UniPoly<F> {
    let n = m.len();
    if n == 0 {
        return UniPoly::one(field.clone());
    }
    let mut negate = false;
    let mut prev = UniPoly::one(field.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return UniPoly::zero(field.clone()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero(field.clone());
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Sylvester matrix of `f`, `g` (coefficient lists, low degree first).
pub fn sylvester<F: Field>(field: &F, f: &[UniPoly<F>], g: &[UniPoly<F>]) -> Vec<Vec<UniPoly<F>>> {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    let zero = UniPoly::zero(field.clone());
    let mut rows = Vec::with_capacity(size);
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `res_y(F, G)` as a polynomial in x.
///
/// A zero argument gives the zero resultant. If both arguments have
/// y-degree zero the resultant is not defined.
pub fn resultant_y<F: Field>(f: &BiPoly<F>, g: &BiPoly<F>) -> Result<UniPoly<F>> {
    let field = f.ring().clone();
    let (df, dg) = (f.deg_y(), g.deg_y());
    if df.unwrap_or(0) == 0 && dg.unwrap_or(0) == 0 {
        return Err(Error::InvalidArgument(
            "resultant needs an argument of positive y-degree".into(),
        ));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(UniPoly::zero(field));
    }
    let a = f.coeffs_in_y();
    let b = g.coeffs_in_y();
    Ok(determinant(&field, sylvester(&field, &a, &b)))
}

/// Resultant of two univariate polynomials over a field.
pub fn resultant<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> F::Elem {
    let field = f.ring().clone();
    if f.is_zero() || g.is_zero() {
        return field.zero();
    }
    let lift = |p: &UniPoly<F>| -> Vec<UniPoly<F>> {
        p.coeffs()
            .iter()
            .map(|c| UniPoly::constant(field.clone(), c.clone()))
            .collect()
    };
    if f.degree() == Some(0) && g.degree() == Some(0) {
        return field.one();
    }
    determinant(&field, sylvester(&field, &lift(f), &lift(g))).coeff(0)
}
