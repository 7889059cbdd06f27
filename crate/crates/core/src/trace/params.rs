use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// Precision λ, tail parameter τ, the number of terms S = λ + τ - 1, and the
/// weights α_0, ..., α_S of the trace-formula sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceParams {
    pub p: u64,
    pub lambda: u32,
    pub tau: u32,
    pub s_max: u32,
    pub alpha: Vec<i128>,
}

impl TraceParams {
    /// Parameters for a given precision, with τ = ⌈λ / (p - 1)⌉, which is
    /// valid for every extension degree r.
    pub fn with_lambda(p: u64, lambda: u32) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::InvalidArgument("precision λ must be at least 1".into()));
        }
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let tau = (lambda as u64).div_ceil(p - 1) as u32;
        Ok(TraceParams {
            p,
            lambda,
            tau,
            s_max: lambda + tau - 1,
            alpha: alpha_coefficients(lambda, tau),
        })
    }
}

/// Smallest λ ≥ 1 with p^λ > 4 g p^{D/2}, decided by comparing squares
/// (p^{2λ} > 16 g^2 p^D) in exact integers.
pub fn precision_lambda(g: u64, p: u64, d: u32) -> u32 {
    let bound = BigUint::from(16u32) * BigUint::from(g) * BigUint::from(g) * BigUint::from(p).pow(d);
    let p2 = BigUint::from(p) * BigUint::from(p);
    let mut lambda = 1;
    let mut pw = p2.clone();
    while pw <= bound {
        pw *= &p2;
        lambda += 1;
    }
    lambda
}

/// Trace-formula parameters sufficient to recover |X(F_{p^r})| for r ≤ D in
/// a genus-g curve.
pub fn precision_params(g: u64, p: u64, d: u32) -> Result<TraceParams> {
    if d == 0 {
        return Err(Error::InvalidArgument("extension bound D must be at least 1".into()));
    }
    TraceParams::with_lambda(p, precision_lambda(g, p, d))
}

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// α_s = (-1)^s Σ_{t<τ} C(-λ, t) C(λ, s - t) for s = 0..=λ+τ-1, using
/// C(-λ, t) = (-1)^t C(λ + t - 1, t).
pub fn alpha_coefficients(lambda: u32, tau: u32) -> Vec<i128> {
    let l = lambda as i128;
    (0..(lambda + tau) as i128)
        .map(|s| {
            let sum: i128 = (0..tau as i128)
                .map(|t| {
                    let neg = if t % 2 == 0 { 1 } else { -1 };
                    neg * binomial(l + t - 1, t) * binomial(l, s - t)
                })
                .sum();
            if s % 2 == 0 {
                sum
            } else {
                -sum
            }
        })
        .collect()
}
