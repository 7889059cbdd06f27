//! Newton polygons in Z^2 and lattice points of their dilations.

use std::collections::HashMap;

use num_integer::Integer;

use crate::algebra::{BiPoly, Ring};
use crate::error::{Error, Result};

pub type Point = (i64, i64);

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// A convex lattice polygon, stored as its vertices in counterclockwise
/// order starting from the lexicographically smallest one. Segments (two
/// vertices) and single points are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    vertices: Vec<Point>,
}

impl NewtonPolygon {
    /// Convex hull of a nonempty point set.
    pub fn hull(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut pts: Vec<Point> = points.into_iter().collect();
        pts.sort_unstable();
        pts.dedup();
        if pts.is_empty() {
            return Err(Error::InvalidArgument("hull of an empty point set".into()));
        }
        if pts.len() <= 2 {
            return Ok(NewtonPolygon { vertices: pts });
        }
        let mut lower: Vec<Point> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Ok(NewtonPolygon { vertices: lower })
    }

    /// Newton polygon of a nonzero polynomial: the hull of its support.
    pub fn of<R: Ring>(f: &BiPoly<R>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidArgument("zero polynomial has no Newton polygon".into()));
        }
        Self::hull(f.support().map(|(i, j)| (i as i64, j as i64)))
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn dilate(&self, s: u32) -> Self {
        if s == 0 {
            return NewtonPolygon {
                vertices: vec![(0, 0)],
            };
        }
        let s = s as i64;
        NewtonPolygon {
            vertices: self.vertices.iter().map(|&(x, y)| (s * x, s * y)).collect(),
        }
    }

    fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn contains(&self, q: Point) -> bool {
        match self.vertices.len() {
            1 => q == self.vertices[0],
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                if cross(a, b, q) != 0 {
                    return false;
                }
                let dot = (q.0 - a.0) * (b.0 - a.0) + (q.1 - a.1) * (b.1 - a.1);
                let len = (b.0 - a.0).pow(2) + (b.1 - a.1).pow(2);
                (0..=len).contains(&dot)
            }
            _ => self.edges().all(|(a, b)| cross(a, b, q) >= 0),
        }
    }

    /// Strict interior membership; degenerate polygons have empty interior.
    pub fn contains_strictly(&self, q: Point) -> bool {
        !self.is_degenerate() && self.edges().all(|(a, b)| cross(a, b, q) > 0)
    }

    fn bounding_box(&self) -> (Point, Point) {
        let xs = self.vertices.iter().map(|v| v.0);
        let ys = self.vertices.iter().map(|v| v.1);
        (
            (xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            (xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// Integer points of the dilation sΔ in lexicographic order.
    pub fn lattice_points(&self, s: u32) -> LatticeBasis {
        let poly = self.dilate(s);
        let ((x0, y0), (x1, y1)) = poly.bounding_box();
        let mut points = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                if poly.contains((x, y)) {
                    points.push((x, y));
                }
            }
        }
        LatticeBasis::new(points)
    }

    pub fn interior_lattice_count(&self) -> u64 {
        if self.is_degenerate() {
            return 0;
        }
        let ((x0, y0), (x1, y1)) = self.bounding_box();
        let mut n = 0;
        for x in x0..=x1 {
            for y in y0..=y1 {
                if self.contains_strictly((x, y)) {
                    n += 1;
                }
            }
        }
        n
    }

    /// Twice the area (shoelace formula).
    pub fn double_area(&self) -> i64 {
        if self.is_degenerate() {
            return 0;
        }
        self.edges().map(|(a, b)| a.0 * b.1 - a.1 * b.0).sum()
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_lattice_count(&self) -> u64 {
        match self.vertices.len() {
            1 => 1,
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                (b.0 - a.0).abs().gcd(&(b.1 - a.1).abs()) as u64 + 1
            }
            _ => self
                .edges()
                .map(|(a, b)| (b.0 - a.0).abs().gcd(&(b.1 - a.1).abs()) as u64)
                .sum(),
        }
    }

    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let pts = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| (a.0 + b.0, a.1 + b.1)));
        Self::hull(pts).expect("nonempty")
    }
}

/// The integer points of a dilated polygon with their positions; the order
/// (lexicographic) fixes row and column indices of the trace matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    points: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl LatticeBasis {
    fn new(mut points: Vec<Point>) -> Self {
        points.sort_unstable();
        let index = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        LatticeBasis { points, index }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use proptest::prelude::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn newton_polygon_examples() {
        let f = f5();
        let e = BiPoly::from_int_terms(f, &[(0, 2, 1), (3, 0, -1), (1, 0, -1), (0, 0, -1)]);
        assert_eq!(NewtonPolygon::of(&e).unwrap().vertices(), &[(0, 0), (3, 0), (0, 2)]);
        let one = BiPoly::from_int_terms(f, &[(0, 0, 1)]);
        assert_eq!(NewtonPolygon::of(&one).unwrap().vertices(), &[(0, 0)]);
        let par = BiPoly::from_int_terms(f, &[(0, 1, 1), (2, 0, -1)]);
        assert_eq!(NewtonPolygon::of(&par).unwrap().vertices(), &[(0, 1), (2, 0)]);
        assert!(NewtonPolygon::of(&BiPoly::zero(f)).is_err());
    }

    #[test]
    fn lattice_point_examples() {
        let tri = NewtonPolygon::hull([(0, 0), (3, 0), (0, 2)]).unwrap();
        let pts = tri.lattice_points(1);
        assert_eq!(
            pts.points(),
            &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0), (3, 0)]
        );
        assert_eq!(tri.lattice_points(0).points(), &[(0, 0)]);
        let t2 = NewtonPolygon::hull([(0, 0), (2, 0), (0, 2)]).unwrap();
        assert_eq!(t2.lattice_points(1).len(), 6);
        let seg = NewtonPolygon::hull([(0, 1), (2, 0)]).unwrap();
        assert_eq!(seg.lattice_points(2).points(), &[(0, 2), (2, 1), (4, 0)]);
    }

    #[test]
    fn interior_examples() {
        let quartic = NewtonPolygon::hull([(0, 0), (4, 0), (0, 4)]).unwrap();
        assert_eq!(quartic.interior_lattice_count(), 3);
        let seg = NewtonPolygon::hull([(0, 1), (2, 0)]).unwrap();
        assert_eq!(seg.interior_lattice_count(), 0);
        let tri = NewtonPolygon::hull([(0, 0), (3, 0), (0, 2)]).unwrap();
        assert_eq!(tri.interior_lattice_count(), 1);
    }

    #[test]
    fn collinear_points_collapse_to_segment() {
        let p = NewtonPolygon::hull([(0, 0), (1, 1), (2, 2), (3, 3)]).unwrap();
        assert_eq!(p.vertices(), &[(0, 0), (3, 3)]);
        let q = NewtonPolygon::hull([(0, 0), (2, 0), (1, 0), (2, 2), (0, 2), (1, 1)]).unwrap();
        assert_eq!(q.vertices().len(), 4);
    }

    fn arb_points() -> impl Strategy<Value = Vec<Point>> {
        prop::collection::vec((0i64..=10, 0i64..=10), 3..8)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn picks_theorem(pts in arb_points()) {
            let poly = NewtonPolygon::hull(pts).unwrap();
            prop_assume!(!poly.is_degenerate());
            let total = poly.lattice_points(1).len() as i64;
            let b = poly.boundary_lattice_count() as i64;
            // |P ∩ Z^2| = A + B/2 + 1
            prop_assert_eq!(2 * total, poly.double_area() + b + 2);
            prop_assert_eq!(total, poly.interior_lattice_count() as i64 + b);
        }

        #[test]
        fn ehrhart_polynomial(pts in arb_points()) {
            let poly = NewtonPolygon::hull(pts).unwrap();
            let mut prev = 0;
            for s in 0..=5i64 {
                let n = poly.lattice_points(s as u32).len() as i64;
                prop_assert!(n >= prev);
                prev = n;
                if !poly.is_degenerate() {
                    let b = poly.boundary_lattice_count() as i64;
                    prop_assert_eq!(2 * n, poly.double_area() * s * s + b * s + 2);
                }
            }
        }

        #[test]
        fn minkowski_and_dilation(
            a in prop::collection::vec(((0u32..4, 0u32..4), 1i64..5), 1..5),
            b in prop::collection::vec(((0u32..4, 0u32..4), 1i64..5), 1..5),
        ) {
            let f = f5();
            let fa = BiPoly::from_terms(f, a.iter().map(|&(e, c)| (e, f.elem(c))));
            let fb = BiPoly::from_terms(f, b.iter().map(|&(e, c)| (e, f.elem(c))));
            prop_assume!(!fa.is_zero() && !fb.is_zero());
            let na = NewtonPolygon::of(&fa).unwrap();
            let nb = NewtonPolygon::of(&fb).unwrap();
            prop_assert_eq!(NewtonPolygon::of(&(&fa * &fb)).unwrap(), na.minkowski_sum(&nb));
            for s in 1..=4u32 {
                prop_assert_eq!(NewtonPolygon::of(&fa.pow(s as u64)).unwrap(), na.dilate(s));
            }
        }
    }
}
