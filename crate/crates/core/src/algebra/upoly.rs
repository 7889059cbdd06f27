//! Dense univariate polynomials over a [`Ring`] context.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::field::{Field, Ring};
use crate::error::{Error, Result};

/// Coefficients are stored low degree first. The zero polynomial has an
/// empty coefficient vector and degree `None`.
#[derive(Clone)]
pub struct UniPoly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> Eq for UniPoly<R> {}

impl<R: Ring> PartialOrd for UniPoly<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl<R: Ring> Ord for UniPoly<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<R: Ring> UniPoly<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        let mut p = UniPoly { ring, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.ring.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn zero(ring: R) -> Self {
        UniPoly { ring, coeffs: vec![] }
    }

    pub fn one(ring: R) -> Self {
        let c = ring.one();
        Self::new(ring, vec![c])
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::new(ring, vec![c])
    }

    /// The polynomial `t`.
    pub fn var(ring: R) -> Self {
        Self::monomial(ring.clone(), ring.one(), 1)
    }

    pub fn monomial(ring: R, c: R::Elem, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = c;
        Self::new(ring, coeffs)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn eval(&self, a: &R::Elem) -> R::Elem {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, a), c))
    }

    pub fn derivative(&self) -> Self {
        let r = &self.ring;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| r.mul(&r.from_i64(i as i64), c))
            .collect();
        Self::new(r.clone(), coeffs)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let r = &self.ring;
        Self::new(r.clone(), self.coeffs.iter().map(|x| r.mul(x, c)).collect())
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

    /// Applies a coefficient map into another ring.
    pub fn map<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> UniPoly<S> {
        UniPoly::new(target.clone(), self.coeffs.iter().map(f).collect())
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(self.ring.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(self.ring.clone(), c.clone());
        }
        acc
    }
}

impl<F: Field> UniPoly<F> {
    /// Division with remainder. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = &self.ring;
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lc = f.inv(d.lc().unwrap()).expect("leading coefficient is a unit");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f.clone()), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if f.is_zero(&rem[k]) {
                continue;
            }
            let c = f.mul(&rem[k], &inv_lc);
            for (i, dc) in d.coeffs.iter().enumerate() {
                let t = f.mul(&c, dc);
                rem[k - dd + i] = f.sub(&rem[k - dd + i], &t);
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(f.clone(), quot), Self::new(f.clone(), rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; errors when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Invariant("inexact polynomial division".into()))
        }
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(c) => self.scale(&self.ring.inv(c).unwrap()),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lc().map_or(false, |c| self.ring.is_one(c))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub(crate) fn gcd_raw(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic greatest common divisor. `gcd(0, g)` is the monic normalization of
    /// `g`; both arguments zero is an error.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
        }
        Ok(self.gcd_raw(other))
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`
    /// (g not normalized).
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let ring = self.ring.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(ring.clone()), Self::zero(ring.clone()));
        let (mut t0, mut t1) = (Self::zero(ring.clone()), Self::one(ring));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.ring.clone()).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Self) -> Self {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// `self^q mod m` for q the size of the coefficient field.
    pub fn frobenius_mod(&self, m: &Self) -> Self {
        let p = self.ring.characteristic();
        let mut acc = self.rem(m);
        for _ in 0..self.ring.degree() {
            acc = acc.pow_mod_u64(p, m);
        }
        acc
    }

    /// For a polynomial in t^p, the unique g with g^p = self.
    pub fn pth_root(&self) -> Result<Self> {
        let p = self.ring.characteristic() as usize;
        let f = &self.ring;
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                coeffs.push(f.pth_root(c));
            } else if !f.is_zero(c) {
                return Err(Error::Invariant("polynomial is not a p-th power".into()));
            }
        }
        Ok(Self::new(f.clone(), coeffs))
    }
}

impl<'a, R: Ring> Add for &'a UniPoly<R> {
    type Output = UniPoly<R>;
    fn add(self, rhs: Self) -> UniPoly<R> {
        let r = &self.ring;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => r.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UniPoly::new(r.clone(), coeffs)
    }
}

impl<'a, R: Ring> Sub for &'a UniPoly<R> {
    type Output = UniPoly<R>;
    fn sub(self, rhs: Self) -> UniPoly<R> {
        self + &(-rhs)
    }
}

impl<'a, R: Ring> Neg for &'a UniPoly<R> {
    type Output = UniPoly<R>;
    fn neg(self) -> UniPoly<R> {
        let r = &self.ring;
        UniPoly::new(r.clone(), self.coeffs.iter().map(|c| r.neg(c)).collect())
    }
}

impl<'a, R: Ring> Mul for &'a UniPoly<R> {
    type Output = UniPoly<R>;
    fn mul(self, rhs: Self) -> UniPoly<R> {
        let r = &self.ring;
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(r.clone());
        }
        let mut out = vec![r.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        UniPoly::new(r.clone(), out)
    }
}
