//! Dense square matrices and dense coefficient grids over Z/p^λ.

use rayon::prelude::*;

use crate::algebra::{BiPoly, ModRing, Ring};

/// Sums of products of residues below 2^32 fit a u128 accumulator for any
/// realistic number of terms, so reduction can be deferred to the end.
fn lazy_reduction(ring: &ModRing) -> bool {
    ring.modulus() <= u32::MAX as u64
}

/// Row-major n x n matrix with entries in Z/p^λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    ring: ModRing,
    n: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(ring: ModRing, n: usize) -> Self {
        ModMatrix {
            ring,
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(ring: ModRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> u64 {
        (0..self.n).fold(0, |acc, i| self.ring.add(&acc, &self.get(i, i)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let ring = self.ring;
        let m = ring.modulus();
        let lazy = lazy_reduction(&ring);
        let mut data = vec![0u64; n * n];
        data.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, out)| {
            let row = &self.data[i * n..(i + 1) * n];
            if lazy {
                let mut acc = vec![0u128; n];
                for (k, &a) in row.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let brow = &other.data[k * n..(k + 1) * n];
                    for (s, &b) in acc.iter_mut().zip(brow) {
                        *s += (a * b) as u128;
                    }
                }
                for (o, s) in out.iter_mut().zip(acc) {
                    *o = (s % m as u128) as u64;
                }
            } else {
                for (k, a) in row.iter().enumerate() {
                    if *a == 0 {
                        continue;
                    }
                    let brow = &other.data[k * n..(k + 1) * n];
                    for (o, b) in out.iter_mut().zip(brow) {
                        *o = ring.add(o, &ring.mul(a, b));
                    }
                }
            }
        });
        ModMatrix { ring, n, data }
    }

    /// tr(self * other) without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> u64 {
        let n = self.n;
        let ring = self.ring;
        (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n).fold(0u64, |acc, k| {
                    ring.add(&acc, &ring.mul(&self.get(i, k), &other.get(k, i)))
                })
            })
            .reduce(|| 0, |a, b| ring.add(&a, &b))
    }

    /// tr(self^r) for r = 1..=d, by d - 1 successive products.
    pub fn power_traces(&self, d: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(d);
        if d == 0 {
            return out;
        }
        let mut power = self.clone();
        out.push(power.trace());
        for r in 2..=d {
            if r == d {
                out.push(power.trace_of_product(self));
            } else {
                power = power.mul(self);
                out.push(power.trace());
            }
        }
        out
    }
}

/// Dense coefficient array of a polynomial in x, y over Z/p^λ; entry
/// `(i, j)` lives at `i * ny + j`.
#[derive(Clone, Debug)]
pub struct DenseGrid {
    ring: ModRing,
    nx: usize,
    ny: usize,
    data: Vec<u64>,
}

impl DenseGrid {
    pub fn from_bipoly(f: &BiPoly<ModRing>) -> Self {
        let ring = *f.ring();
        let nx = f.deg_x().map_or(1, |d| d as usize + 1);
        let ny = f.deg_y().map_or(1, |d| d as usize + 1);
        let mut data = vec![0; nx * ny];
        for (&(i, j), c) in f.terms() {
            data[i as usize * ny + j as usize] = *c;
        }
        DenseGrid { ring, nx, ny, data }
    }

    pub fn one(ring: ModRing) -> Self {
        DenseGrid {
            ring,
            nx: 1,
            ny: 1,
            data: vec![ring.one()],
        }
    }

    /// Coefficient of x^i y^j; zero outside the stored box.
    pub fn coeff(&self, i: i64, j: i64) -> u64 {
        if i < 0 || j < 0 || i as usize >= self.nx || j as usize >= self.ny {
            0
        } else {
            self.data[i as usize * self.ny + j as usize]
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // iterate over the sparser factor's nonzero entries
        let (big, small) = if self.data.len() >= other.data.len() {
            (self, other)
        } else {
            (other, self)
        };
        let ring = self.ring;
        let m = ring.modulus();
        let nx = big.nx + small.nx - 1;
        let ny = big.ny + small.ny - 1;
        let taps: Vec<(usize, usize, u64)> = (0..small.nx)
            .flat_map(|a| (0..small.ny).map(move |b| (a, b)))
            .map(|(a, b)| (a, b, small.data[a * small.ny + b]))
            .filter(|t| t.2 != 0)
            .collect();
        let lazy = lazy_reduction(&ring);
        let mut data = vec![0u64; nx * ny];
        // output row i collects big row i - a shifted by b, for each tap (a, b)
        data.par_chunks_mut(ny).enumerate().for_each(|(i, out)| {
            if lazy {
                let mut acc = vec![0u128; ny];
                for &(a, b, c) in &taps {
                    if i < a || i - a >= big.nx {
                        continue;
                    }
                    let row = &big.data[(i - a) * big.ny..(i - a + 1) * big.ny];
                    for (s, &v) in acc[b..b + big.ny].iter_mut().zip(row) {
                        *s += (c * v) as u128;
                    }
                }
                for (o, s) in out.iter_mut().zip(acc) {
                    *o = (s % m as u128) as u64;
                }
            } else {
                for &(a, b, c) in &taps {
                    if i < a || i - a >= big.nx {
                        continue;
                    }
                    let row = &big.data[(i - a) * big.ny..(i - a + 1) * big.ny];
                    for (o, v) in out[b..b + big.ny].iter_mut().zip(row) {
                        *o = ring.add(o, &ring.mul(&c, v));
                    }
                }
            }
        });
        DenseGrid { ring, nx, ny, data }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn to_bipoly(&self) -> BiPoly<ModRing> {
        BiPoly::from_terms(
            self.ring,
            (0..self.nx).flat_map(|i| {
                (0..self.ny).map(move |j| ((i as u32, j as u32), self.data[i * self.ny + j]))
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_matrix(ring: ModRing, n: usize, seed: u64) -> ModMatrix {
        let mut m = ModMatrix::zeros(ring, n);
        let mut x = seed;
        for i in 0..n {
            for j in 0..n {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                m.set(i, j, (x >> 33) % ring.modulus());
            }
        }
        m
    }

    fn naive_mul(a: &ModMatrix, b: &ModMatrix, ring: ModRing) -> ModMatrix {
        let n = a.dim();
        let mut c = ModMatrix::zeros(ring, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = ring.add(&s, &ring.mul(&a.get(i, k), &b.get(k, j)));
                }
                c.set(i, j, s);
            }
        }
        c
    }

    #[test]
    fn products_agree_with_schoolbook_for_both_reduction_paths() {
        for ring in [ModRing::new(5, 3).unwrap(), ModRing::new(7, 20).unwrap()] {
            let a = small_matrix(ring, 9, 1);
            let b = small_matrix(ring, 9, 2);
            assert_eq!(a.mul(&b), naive_mul(&a, &b, ring));
            assert_eq!(a.trace_of_product(&b), naive_mul(&a, &b, ring).trace());
        }
    }

    #[test]
    fn power_traces_match_explicit_powers() {
        let ring = ModRing::new(3, 4).unwrap();
        let a = small_matrix(ring, 6, 7);
        let traces = a.power_traces(5);
        let mut p = ModMatrix::identity(ring, 6);
        for t in traces {
            p = naive_mul(&p, &a, ring);
            assert_eq!(t, p.trace());
        }
    }

    #[test]
    fn grid_power_matches_sparse_power() {
        for ring in [ModRing::new(5, 2).unwrap(), ModRing::new(3, 39).unwrap()] {
            let f = BiPoly::from_int_terms(ring, &[(0, 2, 1), (3, 0, -1), (1, 0, 7), (0, 0, -1), (1, 1, 2)]);
            let g = DenseGrid::from_bipoly(&f).pow(6);
            assert_eq!(g.to_bipoly(), f.pow(6));
        }
    }
}
