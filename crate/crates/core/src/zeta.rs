//! Assembly of the zeta function from point counts, and its self-checks.
//!
//! The numerator P(T) of Z(X̃, T) = P(T) / ((1 - T)(1 - qT)) has degree 2g
//! and is fixed by N_1, ..., N_g: a_0..a_g are read off the power series and
//! the rest follows from a_{g+i} = q^i a_{g-i}. Counts are known modulo p^λ
//! and pinned down exactly by the Hasse-Weil interval.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{BiPoly, PrimeField};
use crate::corrections::SingularityAnalysis;
use crate::error::{Error, Result};
use crate::naive::naive_count;
use crate::trace::{count_plane_model_timed, precision_params, CountVectorMod, TraceParams, TraceTimings};

/// P(T) = a_0 + a_1 T + ... + a_{2g} T^{2g} together with q and g.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaFunction {
    pub q: u64,
    pub genus: u64,
    pub numerator: Vec<i128>,
}

/// Exact point counts N_1, ..., N_D of the nonsingular model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactCounts {
    pub counts: Vec<i128>,
}

fn big_pow(q: u64, r: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), r as usize)
}

fn to_i128(x: &BigInt, what: &str) -> Result<i128> {
    x.to_i128()
        .ok_or_else(|| Error::Invariant(format!("{what} does not fit in 128 bits")))
}

/// The unique N ≡ c (mod p^λ) with |N - (q^r + 1)| ≤ 2g q^{r/2}.
pub fn recover_count(c: u64, p: u64, lambda: u32, g: u64, q: u64, r: u64) -> Result<i128> {
    let modulus = big_pow(p, lambda as u64);
    let qr = big_pow(q, r);
    let width2 = BigInt::from(4u64) * BigInt::from(g) * BigInt::from(g) * &qr;
    if &modulus * &modulus <= BigInt::from(4u64) * &width2 {
        return Err(Error::Precision(format!(
            "p^λ = {p}^{lambda} does not separate the Hasse-Weil interval at r = {r}"
        )));
    }
    let center = &qr + 1u32;
    let mut off = (BigInt::from(c) - &center).mod_floor(&modulus);
    if BigInt::from(2u32) * &off > modulus {
        off -= &modulus;
    }
    if &off * &off > width2 {
        return Err(Error::Precision(format!(
            "residue {c} mod {p}^{lambda} has no representative in the Hasse-Weil interval at r = {r}"
        )));
    }
    to_i128(&(center + off), "point count")
}

/// a_0..a_{2g} from N_1..N_g: exp(Σ N_r T^r / r)·(1 - T)(1 - qT) up to T^g,
/// completed by the functional equation.
pub fn zeta_numerator(counts: &[i128], q: u64, g: u64) -> Result<Vec<i128>> {
    let g = g as usize;
    if counts.len() != g {
        return Err(Error::InvalidArgument(format!(
            "need exactly {g} counts, got {}",
            counts.len()
        )));
    }
    // coefficients of Z(T) = exp(Σ N_r T^r / r): k e_k = Σ_{i=1}^k N_i e_{k-i}
    let mut e: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=g {
        let s = (1..=k).fold(BigRational::zero(), |acc, i| {
            acc + BigRational::from_integer(BigInt::from(counts[i - 1])) * &e[k - i]
        });
        let ek = s / BigRational::from_integer(BigInt::from(k));
        if !ek.is_integer() {
            return Err(Error::Invariant(format!(
                "series coefficient e_{k} = {ek} is not an integer; the counts are inconsistent"
            )));
        }
        e.push(ek);
    }
    let e: Vec<BigInt> = e.into_iter().map(|x| x.to_integer()).collect();
    let qb = BigInt::from(q);
    // multiply by 1 - (q + 1) T + q T^2
    let mut a: Vec<BigInt> = (0..=g)
        .map(|k| {
            let mut v = e[k].clone();
            if k >= 1 {
                v -= (&qb + 1u32) * &e[k - 1];
            }
            if k >= 2 {
                v += &qb * &e[k - 2];
            }
            v
        })
        .collect();
    for i in 1..=g {
        let v = big_pow(q, i as u64) * &a[g - i];
        a.push(v);
    }
    a.iter().map(|x| to_i128(x, "numerator coefficient")).collect()
}

/// Power sums s_1..s_n of the reciprocal roots of P, by Newton's identities
/// s_k = -k a_k - Σ_{i=1}^{k-1} a_i s_{k-i} (a_i = 0 for i > 2g).
fn power_sums(numerator: &[i128], n: usize) -> Vec<BigInt> {
    let a = |i: usize| BigInt::from(numerator.get(i).copied().unwrap_or(0));
    let mut s: Vec<BigInt> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut v = -BigInt::from(k) * a(k);
        for i in 1..k {
            v -= a(i) * &s[k - i - 1];
        }
        s.push(v);
    }
    s
}

impl ZetaFunction {
    /// N_r = q^r + 1 - Σ α_i^r.
    pub fn predicted_count(&self, r: usize) -> i128 {
        self.predicted_count_big(r).to_i128().unwrap_or(i128::MAX)
    }

    fn predicted_count_big(&self, r: usize) -> BigInt {
        let s = power_sums(&self.numerator, r);
        big_pow(self.q, r as u64) + 1u32 - &s[r - 1]
    }

    /// P(1), the number of degree-zero divisor classes.
    pub fn class_number(&self) -> BigInt {
        self.numerator.iter().map(|&a| BigInt::from(a)).sum()
    }

    /// Checks a_0 = 1, a_{2g} = q^g, the functional equation, P(1) ≥ 1 and
    /// the Hasse-Weil bound for r ≤ g + 2. Returns the violated properties.
    pub fn invariant_violations(&self) -> Vec<String> {
        let g = self.genus as usize;
        let q = self.q;
        let mut out = Vec::new();
        if self.numerator.len() != 2 * g + 1 {
            out.push(format!("numerator has {} coefficients, expected {}", self.numerator.len(), 2 * g + 1));
            return out;
        }
        let a: Vec<BigInt> = self.numerator.iter().map(|&x| BigInt::from(x)).collect();
        if !a[0].is_one() {
            out.push("a_0 != 1".into());
        }
        for i in 0..=g {
            if a[2 * g - i] != big_pow(q, (g - i) as u64) * &a[i] {
                out.push(format!("functional equation fails at a_{}", 2 * g - i));
            }
        }
        if self.class_number() < BigInt::one() {
            out.push("P(1) < 1".into());
        }
        let width = BigInt::from(4u64) * BigInt::from(self.genus).pow(2);
        for r in 1..=g + 2 {
            let dev = self.predicted_count_big(r) - big_pow(q, r as u64) - 1u32;
            if &dev * &dev > &width * big_pow(q, r as u64) {
                out.push(format!("Hasse-Weil bound fails at r = {r}"));
            }
            if dev.is_negative() && -&dev > big_pow(q, r as u64) + 1u32 {
                out.push(format!("negative point count at r = {r}"));
            }
        }
        out
    }

    /// Coefficients of P as text, lowest degree first, e.g. `1 + 3T + 5T^2`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, &a) in self.numerator.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mag = a.unsigned_abs();
            if s.is_empty() {
                if a < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if a < 0 { " - " } else { " + " });
            }
            match i {
                0 => s.push_str(&mag.to_string()),
                _ => {
                    if mag != 1 {
                        s.push_str(&mag.to_string());
                    }
                    s.push('T');
                    if i > 1 {
                        s.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        s
    }
}

/// Wall-clock time of the three phases: powers of F, matrices and traces,
/// and everything else (singularities, corrections, assembly).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseTimings {
    pub powers: Duration,
    pub traces: Duration,
    pub corrections: Duration,
}

impl Serialize for PhaseTimings {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("PhaseTimings", 3)?;
        st.serialize_field("powers", &self.powers.as_secs_f64())?;
        st.serialize_field("traces", &self.traces.as_secs_f64())?;
        st.serialize_field("corrections", &self.corrections.as_secs_f64())?;
        st.end()
    }
}

/// Result of the main computation, with the data the checks reuse.
#[derive(Clone, Debug)]
pub struct ZetaComputation {
    pub zeta: ZetaFunction,
    pub counts: ExactCounts,
    pub params: Option<TraceParams>,
    pub analysis: SingularityAnalysis,
    pub timings: PhaseTimings,
}

/// Exact N_1..N_d of the nonsingular model: plane-model counts mod p^λ
/// plus corrections, recovered through the Hasse-Weil interval.
pub fn exact_counts(
    fbar: &BiPoly<PrimeField>,
    analysis: &SingularityAnalysis,
    g: u64,
    params: &TraceParams,
    d: usize,
) -> Result<(ExactCounts, CountVectorMod, TraceTimings)> {
    let p = fbar.ring().p();
    let (plane, timings) = count_plane_model_timed(fbar, params, d)?;
    let m = plane.modulus() as i128;
    let corr = analysis.corrections(d);
    let counts = plane
        .counts
        .iter()
        .zip(&corr)
        .enumerate()
        .map(|(i, (&c, &k))| {
            let residue = (c as i128 + k as i128).rem_euclid(m) as u64;
            recover_count(residue, p, params.lambda, g, p, i as u64 + 1)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ExactCounts { counts }, plane, timings))
}

/// The zeta function of the nonsingular model of F̄ = 0, with precision
/// chosen for N_1..N_g (or the given λ, if it is at least that large).
pub fn compute_zeta_with(fbar: &BiPoly<PrimeField>, lambda: Option<u32>) -> Result<ZetaComputation> {
    let start = Instant::now();
    let analysis = SingularityAnalysis::new(fbar)?;
    let g = analysis.genus()?;
    let mut corrections_time = start.elapsed();
    let q = fbar.ring().p();
    if g == 0 {
        return Ok(ZetaComputation {
            zeta: ZetaFunction { q, genus: 0, numerator: vec![1] },
            counts: ExactCounts { counts: vec![] },
            params: None,
            analysis,
            timings: PhaseTimings {
                corrections: corrections_time,
                ..Default::default()
            },
        });
    }
    let mut params = precision_params(g, q, g as u32)?;
    if let Some(l) = lambda {
        if l < params.lambda {
            return Err(Error::InvalidArgument(format!(
                "λ = {l} is below the {} needed to pin down N_1..N_{g}",
                params.lambda
            )));
        }
        params = TraceParams::with_lambda(q, l)?;
    }
    let (counts, _, trace_timings) = exact_counts(fbar, &analysis, g, &params, g as usize)?;
    let t = Instant::now();
    let numerator = zeta_numerator(&counts.counts, q, g)?;
    corrections_time += t.elapsed();
    let zeta = ZetaFunction { q, genus: g, numerator };
    let bad = zeta.invariant_violations();
    if !bad.is_empty() {
        return Err(Error::Invariant(bad.join("; ")));
    }
    Ok(ZetaComputation {
        zeta,
        counts,
        params: Some(params),
        analysis,
        timings: PhaseTimings {
            powers: trace_timings.powers,
            traces: trace_timings.traces,
            corrections: corrections_time,
        },
    })
}

pub fn compute_zeta(fbar: &BiPoly<PrimeField>) -> Result<ZetaComputation> {
    compute_zeta_with(fbar, None)
}

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

/// One comparison between a predicted and an independently computed count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub r: usize,
    pub predicted: i128,
    pub observed: Option<i128>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    fn compare(name: &str, r: usize, predicted: i128, observed: i128) -> Self {
        CheckResult {
            name: name.into(),
            r,
            predicted,
            observed: Some(observed),
            status: if predicted == observed { CheckStatus::Passed } else { CheckStatus::Failed },
            note: None,
        }
    }

    fn without_observation(name: &str, r: usize, predicted: i128, status: CheckStatus, note: String) -> Self {
        CheckResult {
            name: name.into(),
            r,
            predicted,
            observed: None,
            status,
            note: Some(note),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    /// True when no check failed; skipped checks are not failures.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Failed)
    }
}

/// Check (1): N_{g+1} from a fresh pipeline run with precision for
/// D = g + 1 (r = 1 when g = 0) against the prediction of P. Check (2):
/// naive plane-model counts plus corrections at r = 1, 2 when p^{2r} is
/// within `naive_budget`.
pub fn validate(fbar: &BiPoly<PrimeField>, comp: &ZetaComputation, naive_budget: u128) -> ValidationReport {
    let zeta = &comp.zeta;
    let g = zeta.genus;
    let mut checks = Vec::new();

    let r = g as usize + 1;
    let predicted = zeta.predicted_count(r);
    let observed = precision_params(g, zeta.q, r as u32)
        .and_then(|params| exact_counts(fbar, &comp.analysis, g, &params, r))
        .map(|(c, _, _)| c.counts[r - 1]);
    checks.push(match observed {
        Ok(n) => CheckResult::compare("pipeline", r, predicted, n),
        Err(e) => CheckResult::without_observation("pipeline", r, predicted, CheckStatus::Failed, e.to_string()),
    });

    let corr = comp.analysis.corrections(2);
    for r in 1..=2usize {
        let predicted = zeta.predicted_count(r);
        checks.push(match naive_count(fbar, r, naive_budget) {
            Ok(n) => CheckResult::compare("naive", r, predicted, n as i128 + corr[r - 1] as i128),
            Err(e @ Error::BudgetExceeded { .. }) => {
                CheckResult::without_observation("naive", r, predicted, CheckStatus::Skipped, e.to_string())
            }
            Err(e) => CheckResult::without_observation("naive", r, predicted, CheckStatus::Failed, e.to_string()),
        });
    }
    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naive::DEFAULT_NAIVE_BUDGET;
    use proptest::prelude::*;

    fn curve(p: u64, terms: &[(u32, u32, i64)]) -> BiPoly<PrimeField> {
        BiPoly::from_int_terms(PrimeField::new(p).unwrap(), terms)
    }

    fn elliptic() -> BiPoly<PrimeField> {
        curve(5, &[(0, 2, 1), (3, 0, -1), (1, 0, -1), (0, 0, -1)])
    }

    #[test]
    fn recover_examples() {
        assert_eq!(recover_count(9, 5, 2, 1, 5, 1).unwrap(), 9);
        assert_eq!(recover_count(1, 5, 1, 0, 5, 1).unwrap(), 6);
        assert!(recover_count(0, 5, 1, 0, 5, 1).is_err());
        assert_eq!(recover_count(2, 3, 3, 2, 3, 1).unwrap(), 2);
        // 5^1 cannot separate an interval of width 2·2·sqrt(5)
        assert!(matches!(recover_count(0, 5, 1, 1, 5, 1), Err(Error::Precision(_))));
    }

    #[test]
    fn numerator_examples() {
        assert_eq!(zeta_numerator(&[9], 5, 1).unwrap(), vec![1, 3, 5]);
        assert_eq!(zeta_numerator(&[], 5, 0).unwrap(), vec![1]);
        let a = zeta_numerator(&[4, 10], 3, 2).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(a[1], 0);
        let z = ZetaFunction { q: 3, genus: 2, numerator: a };
        assert_eq!((z.predicted_count(1), z.predicted_count(2)), (4, 10));
        assert!(matches!(zeta_numerator(&[4, 11], 3, 2), Err(Error::Invariant(_))));
    }

    #[test]
    fn predicted_count_examples() {
        let z = ZetaFunction { q: 5, genus: 1, numerator: vec![1, 3, 5] };
        assert_eq!(z.predicted_count(1), 9);
        assert_eq!(z.predicted_count(2), 27);
        let z = ZetaFunction { q: 7, genus: 0, numerator: vec![1] };
        assert_eq!(z.predicted_count(3), 344);
        assert_eq!(z.render(), "1");
        assert_eq!(ZetaFunction { q: 5, genus: 1, numerator: vec![1, -3, 5] }.render(), "1 - 3T + 5T^2");
    }

    /// N_r read off T Z'(T) / Z(T) for Z = P / ((1 - T)(1 - qT)).
    fn counts_by_series(numerator: &[i128], q: i128, n: usize) -> Vec<i128> {
        let mut z = vec![0i128; n + 1];
        for (k, zk) in z.iter_mut().enumerate() {
            // 1 / ((1 - T)(1 - qT)) has coefficients (q^{k+1} - 1) / (q - 1)
            for (i, &a) in numerator.iter().enumerate().take(k + 1) {
                let j = (k - i) as u32;
                *zk += a * ((q.pow(j + 1) - 1) / (q - 1));
            }
        }
        // k z_k = Σ_{i=1}^k N_i z_{k-i}
        let mut out = Vec::new();
        for k in 1..=n {
            let known: i128 = (1..k).map(|i| out[i - 1] * z[k - i]).sum();
            out.push(k as i128 * z[k] - known);
        }
        out
    }

    proptest! {
        #[test]
        fn newton_identities_match_series(
            q in prop::sample::select(vec![2u64, 3, 5, 7]),
            a in prop::collection::vec(-6i128..=6, 1..=3),
        ) {
            let g = a.len();
            let mut numerator = vec![1i128];
            numerator.extend(a.iter().copied());
            for i in 1..=g {
                numerator.push((q as i128).pow(i as u32) * numerator[g - i]);
            }
            let z = ZetaFunction { q, genus: g as u64, numerator: numerator.clone() };
            let oracle = counts_by_series(&numerator, q as i128, g + 2);
            for r in 1..=g + 2 {
                prop_assert_eq!(z.predicted_count(r), oracle[r - 1]);
            }
            // the numerator is recovered from its own first g counts
            prop_assert_eq!(zeta_numerator(&oracle[..g], q, g as u64).unwrap(), numerator);
        }
    }

    #[test]
    fn elliptic_curve_end_to_end() {
        let f = elliptic();
        let comp = compute_zeta(&f).unwrap();
        assert_eq!(comp.zeta.numerator, vec![1, 3, 5]);
        assert_eq!(comp.counts.counts, vec![9]);
        let report = validate(&f, &comp, DEFAULT_NAIVE_BUDGET);
        assert!(report.passed(), "{report:?}");
        assert!(report.checks.iter().all(|c| c.status == CheckStatus::Passed));
    }

    #[test]
    fn rational_curves() {
        for f in [
            curve(5, &[(0, 2, 1), (3, 0, -1), (2, 0, -1)]),
            curve(7, &[(0, 2, 1), (3, 0, -1)]),
            curve(5, &[(0, 2, 1), (2, 0, -2), (3, 0, -1)]),
        ] {
            let comp = compute_zeta(&f).unwrap();
            assert_eq!(comp.zeta.numerator, vec![1]);
            let report = validate(&f, &comp, DEFAULT_NAIVE_BUDGET);
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.checks[0].r, 1);
        }
    }

    #[test]
    fn perturbed_numerator_fails_the_pipeline_check() {
        let f = elliptic();
        let mut comp = compute_zeta(&f).unwrap();
        comp.zeta.numerator[1] += 1;
        let report = validate(&f, &comp, DEFAULT_NAIVE_BUDGET);
        assert_eq!(report.checks[0].status, CheckStatus::Failed);
        assert!(!report.passed());
    }

    #[test]
    fn naive_checks_are_skipped_over_budget() {
        let f = elliptic();
        let comp = compute_zeta(&f).unwrap();
        let report = validate(&f, &comp, 30);
        assert!(report.passed());
        assert_eq!(report.checks[1].status, CheckStatus::Passed);
        assert_eq!(report.checks[2].status, CheckStatus::Skipped);
    }

    #[test]
    fn lambda_override_must_be_large_enough() {
        assert!(compute_zeta_with(&elliptic(), Some(1)).is_err());
        let comp = compute_zeta_with(&elliptic(), Some(4)).unwrap();
        assert_eq!(comp.zeta.numerator, vec![1, 3, 5]);
    }
}
