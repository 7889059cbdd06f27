//! Sparse bivariate polynomials in x, y over a [`Ring`] context.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Ring;
use super::upoly::UniPoly;

/// Exponent pair `(i, j)` standing for x^i y^j.
pub type Exponent = (u32, u32);

/// Map from exponents to nonzero coefficients.
#[derive(Clone)]
pub struct BiPoly<R: Ring> {
    ring: R,
    terms: BTreeMap<Exponent, R::Elem>,
}

impl<R: Ring> fmt::Debug for BiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<R: Ring> PartialEq for BiPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<R: Ring> Eq for BiPoly<R> {}

impl<R: Ring> BiPoly<R> {
    pub fn zero(ring: R) -> Self {
        BiPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: R) -> Self {
        let c = ring.one();
        Self::from_terms(ring, [((0, 0), c)])
    }

    /// Builds a polynomial from terms; repeated exponents are summed and zero
    /// coefficients dropped.
    pub fn from_terms(ring: R, terms: impl IntoIterator<Item = (Exponent, R::Elem)>) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(ring: R, terms: &[(u32, u32, i64)]) -> Self {
        let t: Vec<_> = terms
            .iter()
            .map(|&(i, j, c)| ((i, j), ring.from_i64(c)))
            .collect();
        Self::from_terms(ring, t)
    }

    pub fn add_term(&mut self, e: Exponent, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        let r = &self.ring;
        let entry = self.terms.entry(e).or_insert_with(|| r.zero());
        *entry = r.add(entry, c);
        if r.is_zero(entry) {
            self.terms.remove(&e);
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &R::Elem)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Exponent> + '_ {
        self.terms.keys().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> R::Elem {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Lowest total degree of a term: the multiplicity at the origin.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let r = &self.ring;
        Self::from_terms(r.clone(), self.terms.iter().map(|(e, a)| (*e, r.mul(a, c))))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring.clone());
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

    pub fn partial_x(&self) -> Self {
        let r = &self.ring;
        Self::from_terms(
            r.clone(),
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), r.mul(&r.from_i64(i as i64), c))),
        )
    }

    pub fn partial_y(&self) -> Self {
        let r = &self.ring;
        Self::from_terms(
            r.clone(),
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), r.mul(&r.from_i64(j as i64), c))),
        )
    }

    pub fn map<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> BiPoly<S> {
        BiPoly::from_terms(target.clone(), self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn swap_xy(&self) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())),
        )
    }

    /// Coefficients a_0(x), ..., a_n(x) of the expansion in powers of y.
    pub fn coeffs_in_y(&self) -> Vec<UniPoly<R>> {
        let r = &self.ring;
        let n = match self.deg_y() {
            None => return vec![],
            Some(n) => n as usize,
        };
        let mut rows: Vec<Vec<R::Elem>> = vec![Vec::new(); n + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, r.zero());
            }
            row[i as usize] = c.clone();
        }
        rows.into_iter().map(|c| UniPoly::new(r.clone(), c)).collect()
    }

    /// Specializes x = a, leaving a polynomial in y.
    pub fn eval_x(&self, a: &R::Elem) -> UniPoly<R> {
        let r = &self.ring;
        let coeffs = self.coeffs_in_y().iter().map(|c| c.eval(a)).collect();
        UniPoly::new(r.clone(), coeffs)
    }

    /// Specializes y = b, leaving a polynomial in x.
    pub fn eval_y(&self, b: &R::Elem) -> UniPoly<R> {
        self.swap_xy().eval_x(b)
    }

    pub fn eval(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.eval_x(a).eval(b)
    }

    /// Homogeneous part of total degree k.
    pub fn form(&self, k: u32) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms
                .iter()
                .filter(|((i, j), _)| i + j == k)
                .map(|(e, c)| (*e, c.clone())),
        )
    }

    /// For a form of degree k in x, y, the univariate polynomial f(t, 1).
    pub fn dehomogenize_y(&self) -> UniPoly<R> {
        self.eval_y(&self.ring.one())
    }

    /// `F(x + a, y + b)`.
    pub fn translate(&self, a: &R::Elem, b: &R::Elem) -> Self {
        let r = &self.ring;
        let dx = self.deg_x().unwrap_or(0) as usize;
        let dy = self.deg_y().unwrap_or(0) as usize;
        let binom = pascal(r, dx.max(dy));
        let pa = powers(r, a, dx);
        let pb = powers(r, b, dy);
        let mut out = Self::zero(r.clone());
        for (&(i, j), c) in &self.terms {
            let (i, j) = (i as usize, j as usize);
            for k in 0..=i {
                let cx = r.mul(&binom[i][k], &pa[i - k]);
                if r.is_zero(&cx) {
                    continue;
                }
                let cx = r.mul(c, &cx);
                for l in 0..=j {
                    let cy = r.mul(&binom[j][l], &pb[j - l]);
                    out.add_term((k as u32, l as u32), &r.mul(&cx, &cy));
                }
            }
        }
        out
    }
}

fn powers<R: Ring>(r: &R, a: &R::Elem, n: usize) -> Vec<R::Elem> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = r.one();
    for _ in 0..=n {
        out.push(acc.clone());
        acc = r.mul(&acc, a);
    }
    out
}

fn pascal<R: Ring>(r: &R, n: usize) -> Vec<Vec<R::Elem>> {
    let mut rows: Vec<Vec<R::Elem>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = Vec::with_capacity(i + 1);
        for k in 0..=i {
            if k == 0 || k == i {
                row.push(r.one());
            } else {
                row.push(r.add(&rows[i - 1][k - 1], &rows[i - 1][k]));
            }
        }
        rows.push(row);
    }
    rows
}

impl<'a, R: Ring> Add for &'a BiPoly<R> {
    type Output = BiPoly<R>;
    fn add(self, rhs: Self) -> BiPoly<R> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'a, R: Ring> Neg for &'a BiPoly<R> {
    type Output = BiPoly<R>;
    fn neg(self) -> BiPoly<R> {
        let r = &self.ring;
        BiPoly::from_terms(r.clone(), self.terms.iter().map(|(e, c)| (*e, r.neg(c))))
    }
}

impl<'a, R: Ring> Sub for &'a BiPoly<R> {
    type Output = BiPoly<R>;
    fn sub(self, rhs: Self) -> BiPoly<R> {
        self + &(-rhs)
    }
}

impl<'a, R: Ring> Mul for &'a BiPoly<R> {
    type Output = BiPoly<R>;
    fn mul(self, rhs: Self) -> BiPoly<R> {
        let r = &self.ring;
        let mut out = BiPoly::zero(r.clone());
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), &r.mul(a, b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    #[test]
    fn translate_matches_evaluation() {
        let f = PrimeField::new(7).unwrap();
        let p = BiPoly::from_int_terms(f, &[(0, 2, 1), (3, 0, -1), (2, 0, -1), (1, 1, 3)]);
        let q = p.translate(&2, &5);
        for x in 0..7u64 {
            for y in 0..7u64 {
                assert_eq!(q.eval(&x, &y), p.eval(&f.add(&x, &2), &f.add(&y, &5)));
            }
        }
    }

    #[test]
    fn derivatives_in_small_characteristic() {
        let f = PrimeField::new(3).unwrap();
        let p = BiPoly::from_int_terms(f, &[(3, 0, 1), (0, 3, 1), (1, 2, 1)]);
        assert_eq!(p.partial_x(), BiPoly::from_int_terms(f, &[(0, 2, 1)]));
        assert_eq!(p.partial_y(), BiPoly::from_int_terms(f, &[(1, 1, 2)]));
    }

    #[test]
    fn coefficients_in_y() {
        let f = PrimeField::new(5).unwrap();
        let p = BiPoly::from_int_terms(f, &[(1, 2, 1), (0, 1, 1), (0, 0, 1)]);
        let a = p.coeffs_in_y();
        assert_eq!(a.len(), 3);
        assert_eq!(a[2], UniPoly::new(f, vec![0, 1]));
        assert_eq!(a[1], UniPoly::new(f, vec![1]));
        assert_eq!(p.form(3), BiPoly::from_int_terms(f, &[(1, 2, 1)]));
        assert_eq!(p.order_at_origin(), Some(0));
    }
}
