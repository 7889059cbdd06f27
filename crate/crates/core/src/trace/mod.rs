//! Point counts of the projective plane model modulo p^λ.
//!
//! Points on the torus xy ≠ 0 come from the trace formula
//!
//! ```text
//! |(X ∩ T²)(F_{p^r})| ≡ (p^r - 1)^2 Σ_{s=0}^{S} α_s tr(M_s^r)   (mod p^λ)
//! ```
//!
//! where `M_s` is indexed by the lattice points u, v of sΔ (Δ the Newton
//! polygon of F) and `(M_s)_{v,u}` is the coefficient of x^{pv-u} in
//! F^{(p-1)s}. Points off the torus are counted exactly from three
//! univariate restrictions of the homogenized polynomial.

mod matrix;
mod params;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use matrix::{DenseGrid, ModMatrix};
pub use params::{alpha_coefficients, precision_lambda, precision_params, TraceParams};

use crate::algebra::{distinct_point_count, BiPoly, ModRing, PrimeField, Ring, UniPoly};
use crate::error::{Error, Result};
use crate::polytope::{LatticeBasis, NewtonPolygon};

/// Residues of point counts modulo p^λ, for r = 1..=D (index r - 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountVectorMod {
    pub p: u64,
    pub lambda: u32,
    pub counts: Vec<u64>,
}

impl CountVectorMod {
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.lambda)
    }

    /// Reduction to a smaller precision.
    pub fn reduce_to(&self, lambda: u32) -> Self {
        let m = self.p.pow(lambda);
        CountVectorMod {
            p: self.p,
            lambda,
            counts: self.counts.iter().map(|c| c % m).collect(),
        }
    }
}

/// Wall-clock split of the trace computation: expanding the powers
/// F^{(p-1)s}, and building the matrices M_s with the traces of their powers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct TraceTimings {
    pub powers: Duration,
    pub traces: Duration,
}

/// The matrix M_s with its row and column basis.
#[derive(Clone, Debug)]
pub struct TraceMatrix {
    pub s: u32,
    pub basis: LatticeBasis,
    pub matrix: ModMatrix,
}

impl TraceMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Lifts each coefficient to its least nonnegative representative in
/// Z/p^λ; the support (hence the Newton polygon) is unchanged.
pub fn lift_polynomial(fbar: &BiPoly<PrimeField>, ring: &ModRing) -> BiPoly<ModRing> {
    fbar.map(ring, |c| *c)
}

fn matrix_from_power(power: &DenseGrid, ring: ModRing, s: u32, basis: LatticeBasis) -> TraceMatrix {
    let p = ring.p() as i64;
    let n = basis.len();
    let mut matrix = ModMatrix::zeros(ring, n);
    for (row, &v) in basis.points().iter().enumerate() {
        for (col, &u) in basis.points().iter().enumerate() {
            matrix.set(row, col, power.coeff(p * v.0 - u.0, p * v.1 - u.1));
        }
    }
    TraceMatrix { s, basis, matrix }
}

/// M_s for the lift `f` and the polygon `k ⊇ Δ(f)`, expanding F^{(p-1)s}
/// directly.
pub fn build_ms(f: &BiPoly<ModRing>, s: u32, k: &NewtonPolygon) -> TraceMatrix {
    let ring = *f.ring();
    let power = DenseGrid::from_bipoly(f).pow((ring.p() - 1) * s as u64);
    matrix_from_power(&power, ring, s, k.lattice_points(s))
}

/// Torus counts for an explicit lift `f` of F̄ with Δ(f) ⊆ `k`.
pub fn torus_counts_for_lift(
    f: &BiPoly<ModRing>,
    k: &NewtonPolygon,
    params: &TraceParams,
    d: usize,
) -> Result<(CountVectorMod, TraceTimings)> {
    let ring = *f.ring();
    if ring.lambda() != params.lambda || ring.p() != params.p {
        return Err(Error::InvalidArgument("lift ring does not match the trace parameters".into()));
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let mut timings = TraceTimings::default();
    // sums[r-1] = Σ_s α_s tr(M_s^r)
    let mut sums = vec![0u64; d];
    let alpha: Vec<u64> = params.alpha.iter().map(|&a| ring.from_i128(a)).collect();
    for acc in sums.iter_mut() {
        // s = 0: M_0 = [1]
        *acc = alpha[0];
    }

    let t0 = Instant::now();
    let base = DenseGrid::from_bipoly(f);
    let step = base.pow(ring.p() - 1);
    let mut power = DenseGrid::one(ring);
    timings.powers += t0.elapsed();

    for s in 1..=params.s_max {
        let t0 = Instant::now();
        power = power.mul(&step);
        timings.powers += t0.elapsed();

        let t0 = Instant::now();
        let ms = matrix_from_power(&power, ring, s, k.lattice_points(s));
        let traces = ms.matrix.power_traces(d);
        for (acc, tr) in sums.iter_mut().zip(traces) {
            *acc = ring.add(acc, &ring.mul(&alpha[s as usize], &tr));
        }
        timings.traces += t0.elapsed();
    }

    let counts = sums
        .iter()
        .enumerate()
        .map(|(i, acc)| {
            let pr = ring.pow(&(ring.p() % ring.modulus()), i as u64 + 1);
            let q1 = ring.sub(&pr, &ring.one());
            ring.mul(&ring.mul(&q1, &q1), acc)
        })
        .collect();
    Ok((
        CountVectorMod {
            p: ring.p(),
            lambda: ring.lambda(),
            counts,
        },
        timings,
    ))
}

/// |(X ∩ T²)(F_{p^r})| mod p^λ for r = 1..=D, using the canonical lift and
/// K = Δ(F̄).
pub fn torus_counts(fbar: &BiPoly<PrimeField>, params: &TraceParams, d: usize) -> Result<CountVectorMod> {
    torus_counts_timed(fbar, params, d).map(|(c, _)| c)
}

pub fn torus_counts_timed(
    fbar: &BiPoly<PrimeField>,
    params: &TraceParams,
    d: usize,
) -> Result<(CountVectorMod, TraceTimings)> {
    if fbar.ring().p() != params.p {
        return Err(Error::InvalidArgument("field and trace parameters disagree on p".into()));
    }
    let ring = ModRing::new(params.p, params.lambda)?;
    let k = NewtonPolygon::of(fbar)?;
    torus_counts_for_lift(&lift_polynomial(fbar, &ring), &k, params, d)
}

/// The restrictions F_h(t,1,0), F_h(0,t,1), F_h(1,0,t) of the homogenization
/// of F̄; their roots parametrize the points of X off the torus, in three
/// disjoint pieces.
pub fn off_torus_polynomials(fbar: &BiPoly<PrimeField>) -> Result<[UniPoly<PrimeField>; 3]> {
    let field = *fbar.ring();
    let d = fbar
        .total_degree()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
    let mut c0 = vec![0u64; d as usize + 1];
    let mut c1 = vec![0u64; d as usize + 1];
    let mut c2 = vec![0u64; d as usize + 1];
    for (&(i, j), c) in fbar.terms() {
        if i + j == d {
            c0[i as usize] = *c;
        }
        if i == 0 {
            c1[j as usize] = *c;
        }
        if j == 0 {
            c2[(d - i) as usize] = *c;
        }
    }
    let polys = [
        UniPoly::new(field, c0),
        UniPoly::new(field, c1),
        UniPoly::new(field, c2),
    ];
    if let Some(i) = polys.iter().position(|f| f.is_zero()) {
        let line = ["the line at infinity", "the line x = 0", "the line y = 0"][i];
        return Err(Error::Precondition(format!("{line} is a component of the curve")));
    }
    Ok(polys)
}

/// Exact |X(F_{p^r})| - |(X ∩ T²)(F_{p^r})| for r = 1..=D.
pub fn off_torus_counts(fbar: &BiPoly<PrimeField>, d: usize) -> Result<Vec<u64>> {
    let polys = off_torus_polynomials(fbar)?;
    (1..=d)
        .map(|r| {
            polys
                .iter()
                .map(|f| distinct_point_count(f, r))
                .sum::<Result<u64>>()
        })
        .collect()
}

/// |X(F_{p^r})| mod p^λ for r = 1..=D on the projective closure X of F̄ = 0.
pub fn count_plane_model(fbar: &BiPoly<PrimeField>, params: &TraceParams, d: usize) -> Result<CountVectorMod> {
    count_plane_model_timed(fbar, params, d).map(|(c, _)| c)
}

pub fn count_plane_model_timed(
    fbar: &BiPoly<PrimeField>,
    params: &TraceParams,
    d: usize,
) -> Result<(CountVectorMod, TraceTimings)> {
    let off = off_torus_counts(fbar, d)?;
    let (mut torus, timings) = torus_counts_timed(fbar, params, d)?;
    let m = torus.modulus();
    for (c, o) in torus.counts.iter_mut().zip(off) {
        *c = ((*c as u128 + o as u128) % m as u128) as u64;
    }
    Ok((torus, timings))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(p: u64, terms: &[(u32, u32, i64)]) -> BiPoly<PrimeField> {
        BiPoly::from_int_terms(PrimeField::new(p).unwrap(), terms)
    }

    fn elliptic() -> BiPoly<PrimeField> {
        curve(5, &[(0, 2, 1), (3, 0, -1), (1, 0, -1), (0, 0, -1)])
    }

    #[test]
    fn m0_is_one_by_one_identity() {
        let ring = ModRing::new(5, 2).unwrap();
        let f = lift_polynomial(&elliptic(), &ring);
        let k = NewtonPolygon::of(&f).unwrap();
        let m0 = build_ms(&f, 0, &k);
        assert_eq!(m0.dim(), 1);
        assert_eq!(m0.matrix.get(0, 0), 1);
        let m1 = build_ms(&f, 1, &k);
        assert_eq!(m1.dim(), 7);
    }

    #[test]
    fn entries_outside_the_power_support_vanish() {
        let ring = ModRing::new(5, 2).unwrap();
        let f = lift_polynomial(&elliptic(), &ring);
        let k = NewtonPolygon::of(&f).unwrap();
        let m = build_ms(&f, 1, &k);
        let power = f.pow(4);
        let hull = NewtonPolygon::of(&power).unwrap();
        for (r, &v) in m.basis.points().iter().enumerate() {
            for (c, &u) in m.basis.points().iter().enumerate() {
                let e = (5 * v.0 - u.0, 5 * v.1 - u.1);
                if !hull.contains(e) {
                    assert_eq!(m.matrix.get(r, c), 0);
                } else {
                    assert_eq!(m.matrix.get(r, c), power.coeff(e.0 as u32, e.1 as u32));
                }
            }
        }
    }

    #[test]
    fn lift_keeps_support() {
        let fbar = curve(5, &[(0, 2, 1), (3, 0, -1)]);
        let ring = ModRing::new(5, 2).unwrap();
        let f = lift_polynomial(&fbar, &ring);
        assert_eq!(f.coeff(3, 0), 4);
        assert_eq!(f.coeff(0, 2), 1);
        assert_eq!(f.support().collect::<Vec<_>>(), fbar.support().collect::<Vec<_>>());
    }

    #[test]
    fn torus_examples() {
        let params = TraceParams::with_lambda(5, 2).unwrap();
        assert_eq!(torus_counts(&elliptic(), &params, 1).unwrap().counts, vec![6]);
        let line = curve(3, &[(0, 1, 1), (1, 0, -1)]);
        let params = TraceParams::with_lambda(3, 1).unwrap();
        assert_eq!(torus_counts(&line, &params, 1).unwrap().counts, vec![2]);
    }

    #[test]
    fn off_torus_examples() {
        assert_eq!(off_torus_counts(&elliptic(), 1).unwrap(), vec![3]);
        let line = curve(3, &[(0, 1, 1), (1, 0, -1)]);
        assert_eq!(off_torus_counts(&line, 2).unwrap(), vec![2, 2]);
        let axis = curve(5, &[(1, 1, 1), (0, 0, 0)]);
        assert!(matches!(off_torus_counts(&axis, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn plane_model_examples() {
        let params = TraceParams::with_lambda(5, 2).unwrap();
        assert_eq!(count_plane_model(&elliptic(), &params, 1).unwrap().counts, vec![9]);
        let nodal = curve(5, &[(0, 2, 1), (3, 0, -1), (2, 0, -1)]);
        let params = TraceParams::with_lambda(5, 1).unwrap();
        assert_eq!(count_plane_model(&nodal, &params, 1).unwrap().counts, vec![0]);
        assert!(count_plane_model(&nodal, &params, 0).unwrap().counts.is_empty());
    }
}
