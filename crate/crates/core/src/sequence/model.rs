use serde::Serialize;

use super::tally::{congruence_sum, EnumerationConfig, SequenceTally};
use crate::arith::{factorize, gcd, iroot4, isqrt};
use crate::density::rho_pair_factored;
use crate::error::{LabError, Result};
use crate::rational::ExactRational;

/// `M_d(x; c) = Σ_{k | c} μ(k) (ckd)⁻¹ Σ_{0 < s² + t⁴ ≤ cx} ρ(t²; ckd)`,
/// summed over all `(s, t) ∈ ℤ²`; zero when `(d, c) > 1`.
pub fn model_count(x: u64, c: u64, d: u64) -> Result<ExactRational> {
    model_count_with(x, c, d, &EnumerationConfig::default())
}

pub fn model_count_with(x: u64, c: u64, d: u64, config: &EnumerationConfig) -> Result<ExactRational> {
    config.check(c, x)?;
    if d == 0 {
        return Err(LabError::ZeroInput);
    }
    if gcd(d, c) > 1 {
        return Ok(ExactRational::ZERO);
    }
    let cx = c * x;
    // #{s ∈ ℤ : 0 < s² + t⁴ ≤ cx}, weighted by the number of t ∈ {±t}
    let columns: Vec<(u64, i128)> = (0..=iroot4(cx))
        .map(|t| {
            let t4 = t * t * t * t;
            let s_count = 2 * isqrt(cx - t4) as i128 + 1 - i128::from(t == 0);
            let wt = if t == 0 { 1 } else { 2 };
            (t * t, wt * s_count)
        })
        .collect();

    let cf = factorize(c)?;
    let mut total = ExactRational::ZERO;
    for (k, mu) in cf.squarefree_divisors() {
        let modulus = c
            .checked_mul(k)
            .and_then(|v| v.checked_mul(d))
            .ok_or(LabError::Overflow("c·k·d"))?;
        let mf = factorize(modulus)?;
        let inner: i128 = columns
            .iter()
            .map(|&(b, weight)| weight * rho_pair_factored(b as i64, &mf) as i128)
            .sum();
        let term = ExactRational::new(inner, modulus as i128).expect("nonzero modulus");
        total = if mu > 0 { total + term } else { total - term };
    }
    Ok(total)
}

#[derive(Debug, Clone, Serialize)]
pub struct RemainderRow {
    pub d: u64,
    #[serde(rename = "A_d")]
    pub a_d: u64,
    #[serde(rename = "M_d")]
    pub m_d: ExactRational,
    pub r_d: f64,
}

/// Remainder sum over cubefree moduli and its ratio to `D^{1/4} x^{9/16}`.
#[derive(Debug, Clone, Serialize)]
pub struct RemainderProfile {
    pub x: u64,
    pub c: u64,
    #[serde(rename = "D")]
    pub big_d: u64,
    /// `Σ_{d ≤ D cubefree} |A_d(x; c) − M_d(x; c)|`
    pub total: f64,
    /// `D^{1/4} x^{9/16}`
    pub scale: f64,
    pub ratio: f64,
    /// One row per cubefree `d ≤ D` coprime to `c` (the others have
    /// `A_d = M_d = 0`).
    pub rows: Vec<RemainderRow>,
}

pub fn remainder_profile(x: u64, c: u64, big_d: u64) -> Result<RemainderProfile> {
    let t = super::tally(c, x)?;
    remainder_profile_from(&t, big_d)
}

pub fn remainder_profile_from(t: &SequenceTally, big_d: u64) -> Result<RemainderProfile> {
    let (x, c) = (t.x(), t.c());
    if big_d == 0 {
        return Err(LabError::ZeroInput);
    }
    if big_d > x {
        return Err(LabError::BoundExceeded {
            what: "D",
            value: big_d as u128,
            bound: x as u128,
        });
    }
    let mut rows = Vec::new();
    let mut total = super::NeumaierSum::default();
    for d in 1..=big_d {
        if gcd(d, c) > 1 || !factorize(d)?.is_cubefree() {
            continue;
        }
        let a_d = congruence_sum(t, d, x)?;
        let m_d = model_count(x, c, d)?;
        let r_d = (ExactRational::from(a_d) - m_d).to_f64();
        total.add(r_d.abs());
        rows.push(RemainderRow { d, a_d, m_d, r_d });
    }
    let scale = (big_d as f64).powf(0.25) * (x as f64).powf(9.0 / 16.0);
    let total = total.value();
    Ok(RemainderProfile {
        x,
        c,
        big_d,
        total,
        scale,
        ratio: total / scale,
        rows,
    })
}
