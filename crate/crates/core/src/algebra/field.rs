//! Coefficient rings: prime fields, extension fields of prime fields given as
//! polynomial quotients, and the residue rings Z/p^λ.
//!
//! Contexts are immutable once built. Elements are plain canonical values
//! (`u64` residues, or fixed-length coefficient vectors for extensions), so
//! equality of elements is structural.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use rand::Rng;

use super::factor;
use super::upoly::UniPoly;
use crate::error::{Error, Result};

/// A commutative ring with identity, given by a context value.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of an integer under Z -> R.
    fn from_i64(&self, c: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A finite field F_{p^m}.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> usize;
    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    fn order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.degree() as u32)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The unique p-th root (inverse Frobenius).
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let p = self.characteristic();
        let mut r = a.clone();
        for _ in 1..self.degree() {
            r = self.pow(&r, p);
        }
        r
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        a * b % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const MAX_PRIME: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= Self::MAX_PRIME {
            return Err(Error::InvalidArgument(format!("prime {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, c: i64) -> u64 {
        self.from_i64(c)
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn from_i64(&self, c: i64) -> u64 {
        c.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

/// The residue ring Z/p^λ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModRing {
    p: u64,
    lambda: u32,
    modulus: u64,
}

impl ModRing {
    pub fn new(p: u64, lambda: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if lambda == 0 {
            return Err(Error::InvalidArgument("precision λ must be at least 1".into()));
        }
        let modulus = (p as u128)
            .checked_pow(lambda)
            .filter(|&m| m < (1u128 << 63))
            .ok_or_else(|| Error::Precision(format!("{p}^{lambda} exceeds 2^63")))?;
        Ok(ModRing {
            p,
            lambda,
            modulus: modulus as u64,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn from_i128(&self, c: i128) -> u64 {
        c.rem_euclid(self.modulus as i128) as u64
    }
}

impl Ring for ModRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.modulus)
    }
    fn from_i64(&self, c: i64) -> u64 {
        self.from_i128(c as i128)
    }
}

struct ExtInner {
    base: PrimeField,
    /// Monic defining polynomial, low degree first, length m + 1.
    modulus: Vec<u64>,
}

/// The extension F_p[t]/(h) for a monic irreducible h of degree m.
///
/// Elements are coefficient vectors of length exactly m (low degree first).
#[derive(Clone)]
pub struct ExtField(Arc<ExtInner>);

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.base.p, self.degree(), self.0.modulus)
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base && self.0.modulus == other.0.modulus)
    }
}

impl ExtField {
    /// Builds F_p[t]/(modulus). The modulus must be monic and irreducible;
    /// irreducibility is checked.
    pub fn with_modulus(base: PrimeField, modulus: Vec<u64>) -> Result<Self> {
        let poly = UniPoly::new(base, modulus.clone());
        match poly.degree() {
            Some(d) if d >= 1 && base.is_one(poly.lc().unwrap()) => {}
            _ => return Err(Error::InvalidArgument("modulus must be monic of positive degree".into())),
        }
        if !factor::is_irreducible(&poly) {
            return Err(Error::InvalidArgument("modulus is reducible".into()));
        }
        Ok(ExtField(Arc::new(ExtInner {
            base,
            modulus: poly.coeffs().to_vec(),
        })))
    }

    pub fn base(&self) -> PrimeField {
        self.0.base
    }

    pub fn p(&self) -> u64 {
        self.0.base.p
    }

    /// Monic defining polynomial, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn modulus_poly(&self) -> UniPoly<PrimeField> {
        UniPoly::new(self.0.base, self.0.modulus.clone())
    }

    fn m(&self) -> usize {
        self.0.modulus.len() - 1
    }

    /// Embeds a prime-field element.
    pub fn from_base(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.m()];
        v[0] = c % self.p();
        v
    }

    /// The class of t.
    pub fn generator(&self) -> Vec<u64> {
        let mut v = vec![0; self.m()];
        if self.m() == 1 {
            v[0] = self.p() - self.0.modulus[0] % self.p();
            v[0] %= self.p();
        } else {
            v[1] = 1;
        }
        v
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Vec<u64> {
        let poly = UniPoly::new(self.0.base, coeffs.iter().map(|c| c % self.p()).collect());
        let r = poly.rem(&self.modulus_poly());
        self.pad(r.coeffs())
    }

    fn pad(&self, c: &[u64]) -> Vec<u64> {
        let mut v = vec![0; self.m()];
        v[..c.len()].copy_from_slice(c);
        v
    }

    /// Number of elements, when it fits in a u64.
    pub fn size(&self) -> Option<u64> {
        self.p().checked_pow(self.m() as u32)
    }

    /// Element whose coefficient vector is the base-p expansion of `idx`.
    pub fn elem_from_index(&self, mut idx: u64) -> Vec<u64> {
        let p = self.p();
        let mut v = vec![0; self.m()];
        for c in v.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
        v
    }

    /// Returns `Some(c)` when the element lies in the prime field.
    pub fn as_base(&self, a: &[u64]) -> Option<u64> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }
}

impl Ring for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.m()]
    }
    fn one(&self) -> Vec<u64> {
        self.from_base(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = self.0.base;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = self.0.base;
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        let f = self.0.base;
        a.iter().map(|x| f.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.m();
        let p = self.p();
        if m == 1 {
            return vec![mul_mod(a[0], b[0], p)];
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        let h = &self.0.modulus;
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                let t = mul_mod(c, h[i], p);
                prod[k - m + i] = (prod[k - m + i] + p - t) % p;
            }
        }
        prod.truncate(m);
        prod
    }
    fn from_i64(&self, c: i64) -> Vec<u64> {
        self.from_base(self.0.base.from_i64(c))
    }
}

impl Field for ExtField {
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let f = self.0.base;
        let (g, s, _) = UniPoly::new(f, a.clone()).xgcd(&self.modulus_poly());
        // g is a nonzero constant because the modulus is irreducible
        let gi = f.inv(&g.coeff(0))?;
        Some(self.pad(s.scale(&gi).coeffs()))
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn degree(&self) -> usize {
        self.m()
    }
    fn random_elem<G: Rng + ?Sized>(&self, rng: &mut G) -> Vec<u64> {
        (0..self.m()).map(|_| rng.gen_range(0..self.p())).collect()
    }
}

fn ext_cache() -> &'static Mutex<HashMap<(u64, usize), ExtField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), ExtField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The field F_{p^m} with the deterministic modulus: monic degree-m
/// polynomials are enumerated with their low coefficients c_0..c_{m-1} read as
/// the base-p number c_0 + c_1 p + ..., and the first irreducible one is taken.
pub fn ext_field(p: u64, m: usize) -> Result<ExtField> {
    if m == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    let base = PrimeField::new(p)?;
    if let Some(k) = ext_cache().lock().unwrap().get(&(p, m)) {
        return Ok(k.clone());
    }
    let mut coeffs = vec![0u64; m + 1];
    coeffs[m] = 1;
    loop {
        let poly = UniPoly::new(base, coeffs.clone());
        if factor::is_irreducible(&poly) {
            break;
        }
        // increment c_0 + c_1 p + ... as a base-p counter
        let mut i = 0;
        loop {
            if i == m {
                return Err(Error::Invariant(format!("no irreducible of degree {m} over F_{p}")));
            }
            coeffs[i] += 1;
            if coeffs[i] == p {
                coeffs[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
    let field = ExtField(Arc::new(ExtInner { base, modulus: coeffs }));
    ext_cache().lock().unwrap().insert((p, m), field.clone());
    Ok(field)
}

/// A field embedding F_{p^k} -> F_{p^n} (k | n), fixed by the image of the
/// generator of the source.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: ExtField,
    dst: ExtField,
    /// Images of t^0, ..., t^{k-1}.
    powers: Vec<Vec<u64>>,
}

impl Embedding {
    pub fn new(src: &ExtField, dst: &ExtField) -> Result<Self> {
        if src.p() != dst.p() || dst.degree() % src.degree() != 0 {
            return Err(Error::InvalidArgument(format!(
                "cannot embed {:?} into {:?}",
                src, dst
            )));
        }
        let image = if src.degree() == 1 {
            let t = src.generator();
            dst.from_base(t[0])
        } else {
            let h = UniPoly::new(
                dst.clone(),
                src.modulus().iter().map(|&c| dst.from_base(c)).collect(),
            );
            factor::roots(&h)
                .into_iter()
                .next()
                .ok_or_else(|| Error::Invariant("defining polynomial has no root in target".into()))?
        };
        let mut powers = Vec::with_capacity(src.degree());
        let mut acc = dst.one();
        for _ in 0..src.degree() {
            powers.push(acc.clone());
            acc = dst.mul(&acc, &image);
        }
        Ok(Embedding {
            src: src.clone(),
            dst: dst.clone(),
            powers,
        })
    }

    pub fn source(&self) -> &ExtField {
        &self.src
    }

    pub fn target(&self) -> &ExtField {
        &self.dst
    }

    pub fn apply(&self, a: &[u64]) -> Vec<u64> {
        let mut out = self.dst.zero();
        for (c, pw) in a.iter().zip(&self.powers) {
            if *c != 0 {
                let term = self.dst.mul(&self.dst.from_base(*c), pw);
                out = self.dst.add(&out, &term);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn degree_one_extension_is_prime_field() {
        let k = ext_field(5, 1).unwrap();
        assert_eq!(k.degree(), 1);
        assert_eq!(k.modulus(), &[0, 1]);
        let a = k.from_base(3);
        let b = k.from_base(4);
        assert_eq!(k.mul(&a, &b), k.from_base(2));
        assert_eq!(k.inv(&a).unwrap(), k.from_base(2));
    }

    #[test]
    fn quadratic_modulus_has_no_root() {
        let k = ext_field(5, 2).unwrap();
        let h = k.modulus_poly();
        let f = PrimeField::new(5).unwrap();
        assert!((0..5).all(|c| !f.is_zero(&h.eval(&c))));
        // first candidate by the base-p ordering: t^2 + 2
        assert_eq!(k.modulus(), &[2, 0, 1]);
    }

    #[test]
    fn cubic_over_f2_divides_frobenius_polynomial() {
        let k = ext_field(2, 3).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let h = k.modulus_poly();
        // t^8 - t
        let mut c = vec![0u64; 9];
        c[8] = 1;
        c[1] = 1;
        let frob = UniPoly::new(f2, c);
        assert_eq!(frob.gcd(&h).unwrap(), h);
    }

    #[test]
    fn inverse_and_field_size() {
        let k = ext_field(3, 3).unwrap();
        let n = k.size().unwrap();
        assert_eq!(n, 27);
        for idx in 1..n {
            let a = k.elem_from_index(idx);
            let ai = k.inv(&a).unwrap();
            assert_eq!(k.mul(&a, &ai), k.one());
        }
    }

    #[test]
    fn frobenius_has_order_m() {
        let k = ext_field(7, 4).unwrap();
        let g = k.generator();
        let mut x = g.clone();
        for _ in 0..4 {
            x = k.pow(&x, 7);
        }
        assert_eq!(x, g);
        assert_eq!(k.pth_root(&k.pow(&g, 7)), g);
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let k = ext_field(3, 2).unwrap();
        let l = ext_field(3, 4).unwrap();
        let e = Embedding::new(&k, &l).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                let a = k.elem_from_index(i);
                let b = k.elem_from_index(j);
                assert_eq!(e.apply(&k.mul(&a, &b)), l.mul(&e.apply(&a), &e.apply(&b)));
                assert_eq!(e.apply(&k.add(&a, &b)), l.add(&e.apply(&a), &e.apply(&b)));
            }
        }
        assert!(Embedding::new(&l, &k).is_err());
    }

    #[test]
    fn modring_is_associative_and_distributive() {
        let r = ModRing::new(3, 3).unwrap();
        for a in 0..27 {
            for b in 0..27 {
                for c in 0..27 {
                    assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
                    assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
                }
            }
        }
        assert!(ModRing::new(3, 0).is_err());
        assert!(ModRing::new(13, 40).is_err());
    }
}
