//! The difference |X̃(F_{p^r})| - |X(F_{p^r})| between the nonsingular model
//! and the plane model, and the geometric genus.
//!
//! Z is the set of points of X lying over the finite set Y₀ of x-values
//! (bad fibres of the projection to the x-line) together with every point at
//! infinity. Z contains the singular locus, so the difference for X equals
//! the difference for Z, and Z̃ is found by resolving each singular point of
//! Z into its branches.

mod resolve;

use serde::Serialize;

use crate::algebra::{
    ext_field, factor, resultant_y, BiPoly, Embedding, ExtField, Field, PrimeField, Ring, UniPoly,
};
use crate::error::{Error, Result};

pub use resolve::{resolve_point, ResolutionReport};

/// Which standard chart of P² a point is stored in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// (x, y) with z = 1.
    Affine,
    /// (x, z) with y = 1; holds the points (t : 1 : 0).
    InfinityY,
    /// (y, z) with x = 1; holds the point (1 : 0 : 0).
    InfinityX,
}

/// A closed point of the plane model: one representative of its Frobenius
/// orbit, with coordinates in the residue field F_{p^degree}.
#[derive(Clone, Debug)]
pub struct ClosedPoint {
    pub chart: Chart,
    pub field: ExtField,
    pub coords: (Vec<u64>, Vec<u64>),
    pub singular: bool,
}

impl ClosedPoint {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

/// A closed point of the nonsingular model lying over `over` (an index into
/// the point list of Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceRecord {
    pub degree: usize,
    pub over: usize,
}

/// The polynomial of the projective closure of `fbar` in the given chart.
pub fn chart_polynomial(fbar: &BiPoly<PrimeField>, chart: Chart) -> BiPoly<PrimeField> {
    let d = fbar.total_degree().unwrap_or(0);
    let ring = *fbar.ring();
    match chart {
        Chart::Affine => fbar.clone(),
        Chart::InfinityY => {
            BiPoly::from_terms(ring, fbar.terms().map(|(&(i, j), c)| ((i, d - i - j), *c)))
        }
        Chart::InfinityX => {
            BiPoly::from_terms(ring, fbar.terms().map(|(&(i, j), c)| ((j, d - i - j), *c)))
        }
    }
}

fn require_curve(fbar: &BiPoly<PrimeField>) -> Result<()> {
    match fbar.deg_y() {
        None => Err(Error::Precondition("the zero polynomial does not define a curve".into())),
        Some(0) => Err(Error::Precondition(
            "polynomial does not involve y, so it is not a curve over F_p(x)".into(),
        )),
        Some(_) => Ok(()),
    }
}

fn gcd_or_other(a: &UniPoly<PrimeField>, b: &UniPoly<PrimeField>) -> UniPoly<PrimeField> {
    if a.is_zero() {
        b.clone()
    } else if b.is_zero() {
        a.clone()
    } else {
        a.gcd_raw(b)
    }
}

/// The finite part Y₀: distinct monic irreducible factors of
/// a_n(x) · gcd(res_y(F, F_y), res_y(F, F_x)).
pub fn compute_y(fbar: &BiPoly<PrimeField>) -> Result<Vec<UniPoly<PrimeField>>> {
    require_curve(fbar)?;
    let lead = fbar.coeffs_in_y().pop().unwrap();
    let ry = resultant_y(fbar, &fbar.partial_y())?;
    let rx = resultant_y(fbar, &fbar.partial_x())?;
    let g = gcd_or_other(&ry, &rx);
    if g.is_zero() {
        return Err(Error::Precondition(
            "both discriminant resultants vanish; the polynomial is not squarefree".into(),
        ));
    }
    factor::distinct_irreducible_factors(&(&lead * &g))
}

/// Closed points of Z: the points of X over Y₀ and all points at infinity.
pub fn closed_points_of_z(
    fbar: &BiPoly<PrimeField>,
    y0: &[UniPoly<PrimeField>],
) -> Result<Vec<ClosedPoint>> {
    require_curve(fbar)?;
    let p = fbar.ring().p();
    let mut points = Vec::new();

    for h in y0 {
        let k = ext_field(p, h.degree().unwrap_or(0).max(1))?;
        let hk = h.map(&k, |c| k.from_base(*c));
        let alpha = factor::roots(&hk)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Invariant("irreducible factor has no root in its field".into()))?;
        let fk = fbar.map(&k, |c| k.from_base(*c));
        let fibre = fk.eval_x(&alpha);
        if fibre.is_zero() {
            return Err(Error::Precondition(
                "a vertical line is a component, so the polynomial is reducible".into(),
            ));
        }
        for g in factor::distinct_irreducible_factors(&fibre)? {
            points.push(point_over_root(&fk, Chart::Affine, &alpha, &g)?);
        }
    }

    let d = fbar.total_degree().unwrap();
    let base = ext_field(p, 1)?;
    let top = fbar.form(d).map(&base, |c| base.from_base(*c));
    // F_d(t, 1): points (t : 1 : 0), stored as (x, z) = (t, 0) in the y = 1 chart
    let at_inf_y = chart_polynomial(fbar, Chart::InfinityY).map(&base, |c| base.from_base(*c));
    for g in factor::distinct_irreducible_factors(&top.dehomogenize_y())? {
        let swapped = at_inf_y.swap_xy();
        let pt = point_over_root(&swapped, Chart::InfinityY, &base.zero(), &g)?;
        points.push(ClosedPoint {
            coords: (pt.coords.1, pt.coords.0),
            ..pt
        });
    }
    if base.is_zero(&top.coeff(d, 0)) {
        let local = chart_polynomial(fbar, Chart::InfinityX).map(&base, |c| base.from_base(*c));
        points.push(ClosedPoint {
            chart: Chart::InfinityX,
            singular: local.order_at_origin().map_or(true, |m| m >= 2),
            field: base.clone(),
            coords: (base.zero(), base.zero()),
        });
    }
    Ok(points)
}

/// The closed point (a, β) of `f` (over K) where β is a root of the
/// irreducible factor `g` of f(a, y), with its residue field and singularity
/// flag.
fn point_over_root(
    f: &BiPoly<ExtField>,
    chart: Chart,
    a: &[u64],
    g: &UniPoly<ExtField>,
) -> Result<ClosedPoint> {
    let k = f.ring();
    let e = g.degree().unwrap();
    let l = ext_field(k.p(), k.degree() * e)?;
    let emb = Embedding::new(k, &l)?;
    let gl = g.map(&l, |c| emb.apply(c));
    let beta = factor::roots(&gl)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invariant("irreducible factor has no root in its splitting field".into()))?;
    let a = emb.apply(a);
    let local = f.map(&l, |c| emb.apply(c)).translate(&a, &beta);
    let singular = match local.order_at_origin() {
        Some(0) | None => return Err(Error::Invariant("enumerated point is not on the curve".into())),
        Some(m) => m >= 2,
    };
    Ok(ClosedPoint {
        chart,
        field: l,
        coords: (a, beta),
        singular,
    })
}

/// The local equation of the curve at `pt`, with the point at the origin.
pub fn local_equation(fbar: &BiPoly<PrimeField>, pt: &ClosedPoint) -> BiPoly<ExtField> {
    let l = &pt.field;
    chart_polynomial(fbar, pt.chart)
        .map(l, |c| l.from_base(*c))
        .translate(&pt.coords.0, &pt.coords.1)
}

/// |Z(F_{p^r})| for r = 1..=d: each closed point of degree k contributes k
/// whenever k divides r.
pub fn counts_from_degrees(degrees: impl IntoIterator<Item = usize> + Clone, d: usize) -> Vec<u64> {
    (1..=d)
        .map(|r| {
            degrees
                .clone()
                .into_iter()
                .filter(|&k| r % k == 0)
                .map(|k| k as u64)
                .sum()
        })
        .collect()
}

/// The closed points of Z and |Z(F_{p^r})| for r = 1..=d.
pub fn count_points_on_z(
    fbar: &BiPoly<PrimeField>,
    y0: &[UniPoly<PrimeField>],
    d: usize,
) -> Result<(Vec<ClosedPoint>, Vec<u64>)> {
    let points = closed_points_of_z(fbar, y0)?;
    let counts = counts_from_degrees(points.iter().map(ClosedPoint::degree).collect::<Vec<_>>(), d);
    Ok((points, counts))
}

/// Places of the nonsingular model over each point of Z, with the resolution
/// reports of the singular ones, and |Z̃(F_{p^r})| for r = 1..=d.
pub fn count_points_above_z(
    fbar: &BiPoly<PrimeField>,
    points: &[ClosedPoint],
    d: usize,
) -> Result<(Vec<PlaceRecord>, Vec<Option<ResolutionReport>>, Vec<u64>)> {
    let mut places = Vec::new();
    let mut reports = Vec::with_capacity(points.len());
    for (idx, pt) in points.iter().enumerate() {
        let k = pt.degree();
        if !pt.singular {
            places.push(PlaceRecord { degree: k, over: idx });
            reports.push(None);
            continue;
        }
        let report = resolve_point(&local_equation(fbar, pt))?;
        places.extend(report.branches.iter().map(|&b| PlaceRecord {
            degree: k * b,
            over: idx,
        }));
        reports.push(Some(report));
    }
    let counts = counts_from_degrees(places.iter().map(|pl| pl.degree).collect::<Vec<_>>(), d);
    Ok((places, reports, counts))
}

/// Everything the corrections and the genus are computed from.
#[derive(Clone, Debug)]
pub struct SingularityAnalysis {
    pub degree: u32,
    pub y0: Vec<UniPoly<PrimeField>>,
    pub points: Vec<ClosedPoint>,
    pub reports: Vec<Option<ResolutionReport>>,
    pub places: Vec<PlaceRecord>,
}

impl SingularityAnalysis {
    pub fn new(fbar: &BiPoly<PrimeField>) -> Result<Self> {
        require_curve(fbar)?;
        let y0 = compute_y(fbar)?;
        let points = closed_points_of_z(fbar, &y0)?;
        let (places, reports, _) = count_points_above_z(fbar, &points, 0)?;
        Ok(SingularityAnalysis {
            degree: fbar.total_degree().unwrap(),
            y0,
            points,
            reports,
            places,
        })
    }

    pub fn z_counts(&self, d: usize) -> Vec<u64> {
        counts_from_degrees(self.points.iter().map(ClosedPoint::degree).collect::<Vec<_>>(), d)
    }

    pub fn z_tilde_counts(&self, d: usize) -> Vec<u64> {
        counts_from_degrees(self.places.iter().map(|pl| pl.degree).collect::<Vec<_>>(), d)
    }

    pub fn corrections(&self, d: usize) -> Vec<i64> {
        self.z_tilde_counts(d)
            .into_iter()
            .zip(self.z_counts(d))
            .map(|(a, b)| a as i64 - b as i64)
            .collect()
    }

    /// Σ deg(P) δ_P over the singular points.
    pub fn total_delta(&self) -> u64 {
        self.points
            .iter()
            .zip(&self.reports)
            .filter_map(|(pt, r)| r.as_ref().map(|r| pt.degree() as u64 * r.delta))
            .sum()
    }

    pub fn genus(&self) -> Result<u64> {
        let d = self.degree as i64;
        let g = (d - 1) * (d - 2) / 2 - self.total_delta() as i64;
        if g < 0 {
            return Err(Error::Precondition(format!(
                "δ-invariants exceed the arithmetic genus (genus {g}); \
                 the polynomial is not absolutely irreducible"
            )));
        }
        Ok(g as u64)
    }
}

/// |X̃(F_{p^r})| - |X(F_{p^r})| for r = 1..=d.
pub fn corrections(fbar: &BiPoly<PrimeField>, d: usize) -> Result<Vec<i64>> {
    Ok(SingularityAnalysis::new(fbar)?.corrections(d))
}

/// Geometric genus (d-1)(d-2)/2 - Σ deg(P) δ_P.
pub fn geometric_genus(fbar: &BiPoly<PrimeField>) -> Result<u64> {
    SingularityAnalysis::new(fbar)?.genus()
}
