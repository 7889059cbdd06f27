mod common;

use common::{corpus, poly};
use curvezeta::corrections::SingularityAnalysis;
use curvezeta::naive::{naive_count, DEFAULT_NAIVE_BUDGET};
use curvezeta::zeta::{compute_zeta, zeta_numerator};

#[test]
fn smooth_plane_curves_agree_with_naive_counts() {
    let mut seen = 0;
    for c in corpus() {
        let a = SingularityAnalysis::new(&c.poly).unwrap();
        if a.points.iter().any(|p| p.singular) {
            continue;
        }
        let d = c.poly.total_degree().unwrap() as u64;
        let g = a.genus().unwrap();
        // smooth projective plane curve: genus is the arithmetic genus
        if g != (d - 1) * (d - 2) / 2 || c.p().pow(2 * g as u32) > DEFAULT_NAIVE_BUDGET as u64 {
            continue;
        }
        assert_eq!(a.corrections(g as usize + 1), vec![0; g as usize + 1]);
        let naive: Vec<i128> = (1..=g as usize)
            .map(|r| naive_count(&c.poly, r, DEFAULT_NAIVE_BUDGET).unwrap() as i128)
            .collect();
        let comp = compute_zeta(&c.poly).unwrap();
        assert_eq!(comp.zeta.numerator, zeta_numerator(&naive, c.p(), g).unwrap(), "{}", c.label);
        seen += 1;
    }
    assert!(seen >= 5, "only {seen} smooth curves in the corpus");
}

/// For y^2 = f(x) with f squarefree of odd degree, the smooth model has the
/// affine points plus one point at infinity.
#[test]
fn odd_degree_hyperelliptic_counts() {
    for (p, text, genus) in [
        (5, "y^2 - x^3 - x - 1", 1),
        (5, "y^2 - x^5 - x - 1", 2),
        (7, "y^2 - x^5 - 3x^2 - 1", 2),
        (3, "y^2 - x^5 - x^2 - 2", 2),
    ] {
        let f = poly(p, text);
        let comp = compute_zeta(&f).unwrap();
        assert_eq!(comp.zeta.genus, genus, "{text}");
        for r in 1..=2usize {
            let projective = naive_count(&f, r, DEFAULT_NAIVE_BUDGET).unwrap() as i128;
            // the plane closure of y^2 = f(x), deg f ≥ 3, meets infinity only at (0:1:0)
            assert_eq!(comp.zeta.predicted_count(r), projective, "{text} r = {r}");
        }
        assert_eq!(comp.zeta.numerator.len(), 2 * genus as usize + 1);
    }
}

#[test]
fn results_are_deterministic() {
    for c in corpus().iter().take(12) {
        let a = compute_zeta(&c.poly).unwrap();
        let b = compute_zeta(&c.poly).unwrap();
        assert_eq!(a.zeta, b.zeta);
        assert_eq!(a.counts, b.counts);
    }
}
