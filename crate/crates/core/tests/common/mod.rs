//! Shared test corpus.
//!
//! Generated curves have Newton polygon exactly conv{(0,0), (n,0), (0,m)}
//! with gcd(m, n) = 1. Such a triangle is integrally indecomposable, so
//! every polynomial with that Newton polygon is absolutely irreducible.

#![allow(dead_code)]

use curvezeta::algebra::{BiPoly, ModRing, PrimeField};
use curvezeta::cli::parse_poly;
use curvezeta::polytope::NewtonPolygon;
use curvezeta::trace::lift_polynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Curve {
    pub label: String,
    pub poly: BiPoly<PrimeField>,
}

impl Curve {
    pub fn p(&self) -> u64 {
        self.poly.ring().p()
    }
}

pub fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn poly(p: u64, text: &str) -> BiPoly<PrimeField> {
    parse_poly(text, field(p)).unwrap().poly
}

/// (y-degree m, x-degree n) of the generated triangles.
pub const SHAPES: [(u32, u32); 10] = [
    (2, 1),
    (1, 2),
    (2, 3),
    (3, 2),
    (3, 1),
    (1, 3),
    (4, 1),
    (1, 4),
    (3, 4),
    (4, 3),
];

pub const PRIMES: [u64; 3] = [3, 5, 7];

/// A random polynomial with Newton polygon conv{(0,0), (n,0), (0,m)}.
pub fn triangle_curve(p: u64, m: u32, n: u32, rng: &mut ChaCha8Rng) -> BiPoly<PrimeField> {
    let f = field(p);
    let mut terms = Vec::new();
    for i in 0..=n {
        for j in 0..=m {
            // inside the triangle: i/n + j/m <= 1
            if i * m + j * n > m * n {
                continue;
            }
            let vertex = (i, j) == (0, 0) || (i, j) == (n, 0) || (i, j) == (0, m);
            if vertex || rng.gen_bool(0.5) {
                terms.push((i, j, rng.gen_range(1..p) as i64));
            }
        }
    }
    BiPoly::from_int_terms(f, &terms)
}

pub fn generated() -> Vec<Curve> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    let mut out = Vec::new();
    for &p in &PRIMES {
        for (k, &(m, n)) in SHAPES.iter().enumerate() {
            let poly = triangle_curve(p, m, n, &mut rng);
            out.push(Curve {
                label: format!("p={p} triangle({m},{n})#{k}"),
                poly,
            });
        }
    }
    out
}

/// Hand-picked curves, including singular ones.
pub fn named() -> Vec<Curve> {
    [
        (5, "y^2 - x^3 - x - 1"),
        (5, "y^2 - x^3 - x^2"),
        (7, "y^2 - x^3"),
        (5, "y^2 - 2x^2 - x^3"),
        (7, "y^2 - x^4 - x^5"),
        (5, "y^2 - x^5 - x - 1"),
        (7, "y^2 - x^5 - x - 1"),
        (3, "x^4 + y^4 + 1"),
        (5, "x^4 + y^4 + 1"),
        (7, "x^4 + y^4 + 1"),
        (5, "x^3*y + y^3 + x"),
        (7, "x^3 + y^3 + 1"),
        (3, "x*y^2 + y + 1"),
        // (y^2 - 2x^2)^2 - x^5
        (5, "y^4 - 4x^2*y^2 + 4x^4 - x^5"),
    ]
    .iter()
    .map(|&(p, s)| Curve {
        label: format!("p={p} {s}"),
        poly: poly(p, s),
    })
    .collect()
}

pub fn corpus() -> Vec<Curve> {
    let mut all = named();
    all.extend(generated());
    all
}

/// Corpus curves of degree at most 4.
pub fn small_corpus() -> Vec<Curve> {
    corpus()
        .into_iter()
        .filter(|c| c.poly.total_degree().unwrap() <= 4)
        .collect()
}

/// A lift of F̄ with the same Newton polygon: canonical coefficients moved by
/// random multiples of p, plus p-divisible terms at lattice points of Δ.
pub fn random_lift(c: &Curve, ring: ModRing, k: &NewtonPolygon, rng: &mut ChaCha8Rng) -> BiPoly<ModRing> {
    let p = c.p();
    let m = ring.modulus();
    let mut f = lift_polynomial(&c.poly, &ring);
    let support: Vec<_> = f.support().collect();
    for e in support {
        f.add_term(e, &(p * rng.gen_range(0..m / p)));
    }
    for q in k.lattice_points(1).points() {
        if rng.gen_bool(0.3) {
            let extra = p * rng.gen_range(1..(m / p).max(2)) % m;
            f.add_term((q.0 as u32, q.1 as u32), &extra);
        }
    }
    assert_eq!(&NewtonPolygon::of(&f).unwrap(), k);
    f
}
