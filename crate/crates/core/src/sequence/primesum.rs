use serde::Serialize;

use super::tally::{EnumerationConfig, SequenceTally};
use super::NeumaierSum;
use crate::arith::{gcd, iroot4, isqrt, ArithTables};
use crate::error::{LabError, Result};

fn need_tables(tables: &ArithTables, x: u64) -> Result<()> {
    if tables.limit() < x {
        return Err(LabError::BoundExceeded {
            what: "x (table limit)",
            value: x as u128,
            bound: tables.limit() as u128,
        });
    }
    Ok(())
}

fn weighted_sum(counts: impl Iterator<Item = (u64, u64)>, tables: &ArithTables) -> f64 {
    let mut acc = NeumaierSum::default();
    for (n, a) in counts {
        if a > 0 {
            acc.add(a as f64 * tables.mangoldt(n));
        }
    }
    acc.value()
}

/// `Σ_{n ≤ x} a(c)_n Λ(n)`, summed in ascending `n`.
pub fn lambda_sum_weighted(t: &SequenceTally, tables: &ArithTables) -> Result<f64> {
    need_tables(tables, t.x())?;
    Ok(weighted_sum(t.rows().map(|(n, a)| (n, a as u64)), tables))
}

/// Multiplicity of `n = (a² + b⁴)/c` over `a, b ≥ 1`, no coprimality filter.
fn positive_counts(c: u64, x: u64) -> Vec<u32> {
    let cx = c * x;
    let mut counts = vec![0u32; x as usize + 1];
    for b in 1..=iroot4(cx) {
        let b4 = b * b * b * b;
        for a in 1..=isqrt(cx - b4) {
            let m = a * a + b4;
            if m % c == 0 {
                counts[(m / c) as usize] += 1;
            }
        }
    }
    counts
}

/// `Σ Λ((a² + b⁴)/c)` over positive `a, b` with `c | a² + b⁴ ≤ cx`.
pub fn lambda_sum_positive(c: u64, x: u64, tables: &ArithTables) -> Result<f64> {
    lambda_sum_positive_with(c, x, tables, &EnumerationConfig::default())
}

pub fn lambda_sum_positive_with(
    c: u64,
    x: u64,
    tables: &ArithTables,
    config: &EnumerationConfig,
) -> Result<f64> {
    config.check(c, x)?;
    need_tables(tables, x)?;
    let counts = positive_counts(c, x);
    Ok(weighted_sum(
        counts.iter().enumerate().map(|(n, &a)| (n as u64, a as u64)),
        tables,
    ))
}

/// Ties the symmetric weighted sum to the positive-pair sum.
///
/// Per `n`, the weighted count splits as `4 · P'_n + B_n` where `P'_n`
/// counts positive pairs with `(n, c) = 1` and `B_n` the points with
/// `s = 0` or `t = 0`. The check is exact on integers; the Λ-sums are
/// reported alongside.
#[derive(Debug, Clone, Serialize)]
pub struct ConventionBridge {
    pub c: u64,
    pub x: u64,
    pub weighted: f64,
    pub positive: f64,
    /// `Σ Λ(n)` over weighted boundary points (`s = 0` or `t = 0`).
    pub boundary: f64,
    /// `Σ Λ(n)` over positive pairs with `(n, c) > 1`.
    pub positive_not_coprime: f64,
    /// `Σ_rep 4Λ(n)` over boundary representations `(0, t)`, `(s, 0)` with
    /// `s, t > 0`.
    pub boundary_bound: f64,
    pub exact_per_n: bool,
    /// `|weighted − 4·positive| ≤ boundary_bound + 4·positive_not_coprime`
    pub within_bound: bool,
}

pub fn convention_bridge(t: &SequenceTally, tables: &ArithTables) -> Result<ConventionBridge> {
    let (c, x) = (t.c(), t.x());
    need_tables(tables, x)?;
    let positive = positive_counts(c, x);
    let cx = c * x;
    // boundary representations: s = 0 (t⁴ = cn) and t = 0 (s² = cn), s, t > 0
    let mut boundary = vec![0u32; x as usize + 1];
    for t4 in (1..=iroot4(cx)).map(|v| v * v * v * v) {
        if t4 % c == 0 && gcd(t4 / c, c) == 1 {
            boundary[(t4 / c) as usize] += 1;
        }
    }
    for s2 in (1..=isqrt(cx)).map(|v| v * v) {
        if s2 % c == 0 && gcd(s2 / c, c) == 1 {
            boundary[(s2 / c) as usize] += 1;
        }
    }

    let mut exact = true;
    let mut w = NeumaierSum::default();
    let mut p = NeumaierSum::default();
    let mut b = NeumaierSum::default();
    let mut pn = NeumaierSum::default();
    let mut bb = NeumaierSum::default();
    for n in 1..=x {
        let i = n as usize;
        let coprime = gcd(n, c) == 1;
        let p_coprime = if coprime { positive[i] } else { 0 };
        // each boundary representation is two lattice points (±)
        if t.counts()[i] != 4 * p_coprime + 2 * boundary[i] {
            exact = false;
        }
        let lam = tables.mangoldt(n);
        if lam == 0.0 {
            continue;
        }
        w.add(t.counts()[i] as f64 * lam);
        p.add(positive[i] as f64 * lam);
        b.add(2.0 * boundary[i] as f64 * lam);
        bb.add(4.0 * boundary[i] as f64 * lam);
        if !coprime {
            pn.add(positive[i] as f64 * lam);
        }
    }
    let (weighted, positive, boundary, positive_not_coprime, boundary_bound) =
        (w.value(), p.value(), b.value(), pn.value(), bb.value());
    let slack = 1e-9 * weighted.abs().max(1.0);
    Ok(ConventionBridge {
        c,
        x,
        weighted,
        positive,
        boundary,
        positive_not_coprime,
        boundary_bound,
        exact_per_n: exact,
        within_bound: (weighted - 4.0 * positive).abs()
            <= boundary_bound + 4.0 * positive_not_coprime + slack,
    })
}
