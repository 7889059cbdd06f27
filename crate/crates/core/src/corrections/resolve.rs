//! Branches and δ-invariants of plane curve singularities by iterated point
//! blow-ups.
//!
//! The input is a local equation with the point moved to the origin, over
//! the residue field K of the point. At a point of multiplicity m the
//! strict transform meets the exceptional line in the roots of the tangent
//! cone: in the chart y = x·y' at the roots of f_m(1, t), and in the chart
//! x = x'·y at the origin when y^m is missing from f_m. A root of degree e
//! over the current field is an infinitely near point with e geometric
//! conjugates; it is recentred over the degree-e extension and resolved
//! there. δ sums e·m(m-1)/2 over all infinitely near points, and each smooth
//! terminal point is a branch whose residue degree over K is the product of
//! the degrees along its path.

use serde::Serialize;

use crate::algebra::{ext_field, factor, BiPoly, Embedding, ExtField, Field, Ring, UniPoly};
use crate::error::{Error, Result};

/// δ-invariant, multiplicity, and branch residue degrees (relative to the
/// residue field of the point) of a curve point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub delta: u64,
    pub multiplicity: u32,
    pub branches: Vec<usize>,
}

impl ResolutionReport {
    pub fn is_smooth(&self) -> bool {
        self.delta == 0
    }
}

/// Resolves the point at the origin of `f`. Errors if the origin is not on
/// the curve, or if the local equation is not reduced (detected when δ
/// exceeds the bound d(d-1)/2 for a reduced plane curve of degree d).
pub fn resolve_point(f: &BiPoly<ExtField>) -> Result<ResolutionReport> {
    let multiplicity = match f.order_at_origin() {
        None => return Err(Error::InvalidArgument("zero local equation".into())),
        Some(0) => return Err(Error::InvalidArgument("the origin is not on the curve".into())),
        Some(m) => m,
    };
    let d = f.total_degree().unwrap() as u64;
    let mut state = Resolver {
        delta: 0,
        budget: d * (d - 1) / 2,
        branches: Vec::new(),
    };
    state.resolve(f, 1)?;
    state.branches.sort_unstable();
    Ok(ResolutionReport {
        delta: state.delta,
        multiplicity,
        branches: state.branches,
    })
}

struct Resolver {
    delta: u64,
    budget: u64,
    branches: Vec<usize>,
}

impl Resolver {
    fn resolve(&mut self, f: &BiPoly<ExtField>, weight: usize) -> Result<()> {
        let m = f.order_at_origin().unwrap_or(0);
        match m {
            0 => return Err(Error::Invariant("infinitely near point is off the strict transform".into())),
            1 => {
                self.branches.push(weight);
                return Ok(());
            }
            _ => {}
        }
        self.delta += weight as u64 * (m as u64 * (m as u64 - 1) / 2);
        if self.delta > self.budget {
            return Err(Error::Precondition(
                "local equation is not reduced (blow-ups do not terminate)".into(),
            ));
        }
        let field = f.ring().clone();
        let cone = f.form(m);

        // chart y = x y'
        let chart = BiPoly::from_terms(
            field.clone(),
            f.terms().map(|(&(i, j), c)| ((i + j - m, j), c.clone())),
        );
        let slope = cone.dehomogenize_y_in_x();
        for g in factor::distinct_irreducible_factors(&slope)? {
            let e = g.degree().unwrap();
            let (moved, _) = recentre_at_root(&chart, &g)?;
            self.resolve(&moved, weight * e)?;
        }

        // chart x = x' y, only the origin can be new
        if field.is_zero(&cone.coeff(0, m)) {
            let other = BiPoly::from_terms(
                field,
                f.terms().map(|(&(i, j), c)| ((i, i + j - m), c.clone())),
            );
            self.resolve(&other, weight)?;
        }
        Ok(())
    }
}

/// Moves `f` (over K) to the point (0, β) where β is a root of the irreducible
/// `g` over K, working over the extension of K of degree deg g. Returns the
/// recentred polynomial and the extension field.
fn recentre_at_root(f: &BiPoly<ExtField>, g: &UniPoly<ExtField>) -> Result<(BiPoly<ExtField>, ExtField)> {
    let k = f.ring().clone();
    let e = g.degree().unwrap();
    if e == 1 {
        let beta = k.neg(&g.monic().coeff(0));
        return Ok((f.translate(&k.zero(), &beta), k));
    }
    let l = ext_field(k.p(), k.degree() * e)?;
    let emb = Embedding::new(&k, &l)?;
    let gl = g.map(&l, |c| emb.apply(c));
    let beta = factor::roots(&gl)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invariant("irreducible factor has no root in its splitting field".into()))?;
    let fl = f.map(&l, |c| emb.apply(c));
    Ok((fl.translate(&l.zero(), &beta), l))
}

trait TangentCone {
    fn dehomogenize_y_in_x(&self) -> UniPoly<ExtField>;
}

impl TangentCone for BiPoly<ExtField> {
    /// For a form f_m(x, y), the polynomial f_m(1, t) in t.
    fn dehomogenize_y_in_x(&self) -> UniPoly<ExtField> {
        let one = self.ring().one();
        self.eval_x(&one)
    }
}
