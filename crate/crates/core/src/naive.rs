//! Point counts by exhaustive enumeration, used as an independent check.

use crate::algebra::{ext_field, BiPoly, ExtField, PrimeField, Ring, UniPoly};
use crate::error::{Error, Result};

/// Default cap on the number of candidate affine points p^{2r}.
pub const DEFAULT_NAIVE_BUDGET: u128 = 100_000_000;

/// |X(F_{p^r})| for the projective closure X of F̄ = 0, by evaluating F̄ at
/// every point of F_{p^r}² and the degree-d form at every point of the line at
/// infinity. Errors if p^{2r} exceeds `budget`.
pub fn naive_count(fbar: &BiPoly<PrimeField>, r: usize, budget: u128) -> Result<u64> {
    let d = fbar
        .total_degree()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
    let p = fbar.ring().p();
    let needed = (p as u128).checked_pow(2 * r as u32).unwrap_or(u128::MAX);
    if r == 0 || needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let k = ext_field(p, r)?;
    let elems: Vec<Vec<u64>> = (0..k.size().unwrap()).map(|i| k.elem_from_index(i)).collect();
    let f = fbar.map(&k, |c| k.from_base(*c));

    let mut count = 0u64;
    for x in &elems {
        let fibre = f.eval_x(x);
        if fibre.is_zero() {
            count += elems.len() as u64;
            continue;
        }
        count += elems.iter().filter(|y| k.is_zero(&fibre.eval(y))).count() as u64;
    }
    Ok(count + points_at_infinity(&f.form(d), &k, &elems))
}

fn points_at_infinity(top: &BiPoly<ExtField>, k: &ExtField, elems: &[Vec<u64>]) -> u64 {
    let one = k.one();
    let mut n = elems
        .iter()
        .filter(|t| k.is_zero(&top.eval(t, &one)))
        .count() as u64;
    if k.is_zero(&top.eval(&one, &k.zero())) {
        n += 1;
    }
    n
}

/// Exhaustive count of points of F̄ = 0 with x y ≠ 0 over F_{p^r}.
pub fn naive_torus_count(fbar: &BiPoly<PrimeField>, r: usize, budget: u128) -> Result<u64> {
    let p = fbar.ring().p();
    let needed = (p as u128).checked_pow(2 * r as u32).unwrap_or(u128::MAX);
    if r == 0 || needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let k = ext_field(p, r)?;
    let units: Vec<Vec<u64>> = (1..k.size().unwrap()).map(|i| k.elem_from_index(i)).collect();
    let f = fbar.map(&k, |c| k.from_base(*c));
    Ok(units
        .iter()
        .map(|x| {
            let fibre: UniPoly<ExtField> = f.eval_x(x);
            units.iter().filter(|y| k.is_zero(&fibre.eval(y))).count() as u64
        })
        .sum())
}
