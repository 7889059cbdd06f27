//! Factorization of univariate polynomials over finite fields: squarefree
//! decomposition, distinct-degree factorization, and Cantor-Zassenhaus
//! equal-degree splitting.
//!
//! Equal-degree splitting draws random elements from a ChaCha stream seeded
//! with [`FACTOR_SEED`], so factorizations (and the order of the emitted
//! factors) are reproducible. Factors are returned sorted.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::upoly::UniPoly;
use crate::error::{Error, Result};

/// Seed of the random stream used for equal-degree splitting.
pub const FACTOR_SEED: u64 = 0x5eed_cafe_f00d_0001;

/// `unit * prod(factor^multiplicity)`, with monic irreducible factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(UniPoly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    pub fn product(&self, field: &F) -> UniPoly<F> {
        self.factors.iter().fold(
            UniPoly::constant(field.clone(), self.unit.clone()),
            |acc, (h, e)| &acc * &h.pow(*e as u64),
        )
    }
}

/// Complete factorization into monic irreducibles times the leading unit.
pub fn factor<F: Field>(f: &UniPoly<F>) -> Result<Factorization<F>> {
    let unit = f
        .lc()
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("cannot factor the zero polynomial".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for (block, d) in distinct_degree_factorization(&part) {
            for h in equal_degree_factorization(&block, d, &mut rng) {
                factors.push((h, mult));
            }
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// The distinct monic irreducible factors of `f`, sorted.
pub fn distinct_irreducible_factors<F: Field>(f: &UniPoly<F>) -> Result<Vec<UniPoly<F>>> {
    Ok(factor(f)?.factors.into_iter().map(|(h, _)| h).collect())
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with their multiplicities.
pub fn squarefree_decomposition<F: Field>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.ring().characteristic() as usize;
    let df = f.derivative();
    let mut c = f.gcd_raw(&df);
    let mut w = f.exact_div(&c).expect("gcd divides f");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd_raw(&c);
        let z = w.exact_div(&y).expect("gcd divides w");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y).expect("gcd divides c");
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        for (g, j) in squarefree_decomposition(&root) {
            out.push((g, j * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: pairs `(product, degree)`.
pub fn distinct_degree_factorization<F: Field>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let ring = f.ring().clone();
    let t = UniPoly::var(ring.clone());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.frobenius_mod(&rest);
        let g = rest.gcd_raw(&(&h - &t));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(k) = rest.degree() {
        if k > 0 {
            out.push((rest, k));
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a squarefree monic product of degree-`d`
/// irreducibles.
pub fn equal_degree_factorization<F: Field>(
    f: &UniPoly<F>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<UniPoly<F>> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    if n == d {
        return vec![f.clone()];
    }
    let ring = f.ring().clone();
    let p = ring.characteristic();
    let q = ring.order();
    let qd = q.pow(d as u32);
    let odd_exp = if p == 2 {
        None
    } else {
        Some((&qd - BigUint::from(1u32)) >> 1)
    };
    loop {
        let coeffs = (0..n).map(|_| ring.random_elem(rng)).collect();
        let a = UniPoly::new(ring.clone(), coeffs);
        if a.is_constant() {
            continue;
        }
        let b = match &odd_exp {
            Some(e) => &a.pow_mod(e, f) - &UniPoly::one(ring.clone()),
            None => {
                // absolute trace a + a^2 + ... + a^{2^{md-1}} into F_2
                let steps = ring.degree() * d;
                let mut acc = a.rem(f);
                let mut cur = acc.clone();
                for _ in 1..steps {
                    cur = cur.mul_mod(&cur, f);
                    acc = &acc + &cur;
                }
                acc
            }
        };
        let g = f.gcd_raw(&b);
        let k = g.degree().unwrap_or(0);
        if k > 0 && k < n {
            let other = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree_factorization(&g, d, rng);
            out.extend(equal_degree_factorization(&other, d, rng));
            out.sort();
            return out;
        }
    }
}

/// Distinct roots of `f` in its coefficient field, sorted.
pub fn roots<F: Field>(f: &UniPoly<F>) -> Vec<F::Elem> {
    if f.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let ring = f.ring().clone();
    let monic = f.monic();
    let t = UniPoly::var(ring.clone());
    // product of the distinct linear factors: gcd(f, t^q - t)
    let lin = monic.gcd_raw(&(&t.frobenius_mod(&monic) - &t));
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut out: Vec<F::Elem> = equal_degree_factorization(&lin, 1, &mut rng)
        .into_iter()
        .map(|h| ring.neg(&h.coeff(0)))
        .collect();
    out.sort();
    out
}

/// Rabin's test: a polynomial of degree n is irreducible iff it divides
/// t^{q^n} - t and is coprime to t^{q^{n/l}} - t for each prime l | n.
pub fn is_irreducible<F: Field>(f: &UniPoly<F>) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let t = UniPoly::var(f.ring().clone());
    let mut powers = Vec::with_capacity(n + 1);
    let mut h = t.rem(&f);
    powers.push(h.clone());
    for _ in 0..n {
        h = h.frobenius_mod(&f);
        powers.push(h.clone());
    }
    if !(&powers[n] - &t).rem(&f).is_zero() {
        return false;
    }
    prime_divisors(n).into_iter().all(|l| {
        let g = f.gcd_raw(&(&powers[n / l] - &t));
        g.degree() == Some(0)
    })
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Number of distinct roots of `f` in F_{p^r}, where `f` has coefficients in
/// F_{p^m} and m | r: the sum of deg h over distinct irreducible factors h
/// with m * deg h dividing r.
pub fn distinct_point_count<F: Field>(f: &UniPoly<F>, r: usize) -> Result<u64> {
    let m = f.ring().degree();
    if r == 0 || r % m != 0 {
        return Err(Error::InvalidArgument(format!(
            "extension degree {r} is not a multiple of the base degree {m}"
        )));
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial has infinitely many roots".into()));
    }
    Ok(distinct_irreducible_factors(f)?
        .iter()
        .map(|h| h.degree().unwrap())
        .filter(|&k| r % (m * k) == 0)
        .map(|k| k as u64)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{ext_field, ExtField, PrimeField, Ring};
    use rand::Rng;

    fn poly(f: PrimeField, c: &[i64]) -> UniPoly<PrimeField> {
        UniPoly::new(f, c.iter().map(|&x| f.elem(x)).collect())
    }

    #[test]
    fn factor_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let fac = factor(&poly(f5, &[1, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(poly(f5, &[2, 1]), 1), (poly(f5, &[3, 1]), 1)]
        );
        let fac = factor(&poly(f5, &[0, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(poly(f5, &[0, 1]), 2)]);
        let f2 = PrimeField::new(2).unwrap();
        let fac = factor(&poly(f2, &[1, 1, 1])).unwrap();
        assert_eq!(fac.factors, vec![(poly(f2, &[1, 1, 1]), 1)]);
        assert!(factor(&UniPoly::zero(f5)).is_err());
    }

    #[test]
    fn point_count_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(distinct_point_count(&poly(f5, &[-1, 0, 1]), 1).unwrap(), 2);
        assert_eq!(distinct_point_count(&poly(f3, &[1, 0, 1]), 1).unwrap(), 0);
        assert_eq!(distinct_point_count(&poly(f3, &[1, 0, 1]), 2).unwrap(), 2);
        assert_eq!(distinct_point_count(&poly(f5, &[0, -1, 0, 1]), 1).unwrap(), 3);
        let k = ext_field(5, 2).unwrap();
        let g = UniPoly::new(k.clone(), vec![k.from_base(1), k.zero(), k.one()]);
        assert!(distinct_point_count(&g, 3).is_err());
        assert_eq!(distinct_point_count(&g, 2).unwrap(), 2);
    }

    #[test]
    fn inseparable_input() {
        // (t^3 - 2)^3 = t^9 - 2 over F_3, t^3 - 2 = (t - 2)^3
        let f3 = PrimeField::new(3).unwrap();
        let mut c = vec![0i64; 10];
        c[0] = -2;
        c[9] = 1;
        let fac = factor(&poly(f3, &c)).unwrap();
        assert_eq!(fac.factors, vec![(poly(f3, &[-2, 1]), 9)]);
    }

    fn frobenius_certifies<F: Field>(h: &UniPoly<F>) -> bool {
        let k = h.degree().unwrap();
        let t = UniPoly::var(h.ring().clone());
        let mut x = t.rem(h);
        for j in 1..=k {
            x = x.frobenius_mod(h);
            let g = h.gcd_raw(&(&x - &t));
            if j < k && g.degree() != Some(0) {
                return false;
            }
            if j == k && g != *h {
                return false;
            }
        }
        true
    }

    fn check_random<F: Field>(field: F, trials: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let deg = rng.gen_range(1..=8);
            let mut coeffs: Vec<F::Elem> = (0..=deg).map(|_| field.random_elem(&mut rng)).collect();
            // force repeated factors now and then
            if rng.gen_bool(0.3) {
                coeffs.truncate(3);
            }
            let f = UniPoly::new(field.clone(), coeffs);
            if f.is_zero() {
                continue;
            }
            let f = if rng.gen_bool(0.3) { f.pow(2) } else { f };
            let fac = factor(&f).unwrap();
            assert_eq!(fac.product(&field), f);
            for (h, _) in &fac.factors {
                assert!(h.is_monic());
                assert!(frobenius_certifies(h), "{:?} not irreducible", h);
            }
        }
    }

    #[test]
    fn random_factorizations_reconstruct_and_are_irreducible() {
        for p in [2u64, 3, 5, 7] {
            check_random(PrimeField::new(p).unwrap(), 200, p);
            let k: ExtField = ext_field(p, 2).unwrap();
            check_random(k, 200, 100 + p);
        }
    }

    #[test]
    fn factorization_is_deterministic() {
        let k = ext_field(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = UniPoly::new(k.clone(), (0..9).map(|_| k.random_elem(&mut rng)).collect());
        assert_eq!(factor(&f).unwrap(), factor(&f).unwrap());
    }

    #[test]
    fn roots_over_extension() {
        let k = ext_field(3, 2).unwrap();
        // t^2 + 1 has two roots in F_9
        let f = UniPoly::new(k.clone(), vec![k.one(), k.zero(), k.one()]);
        let rs = roots(&f);
        assert_eq!(rs.len(), 2);
        for r in rs {
            assert!(k.is_zero(&f.eval(&r)));
        }
    }
}
