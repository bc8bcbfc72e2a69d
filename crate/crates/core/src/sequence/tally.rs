use serde::Serialize;

use crate::arith::{gcd, is_prime, isqrt};
use crate::error::{LabError, Result};

/// Default cap on `c · x` for lattice enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct EnumerationConfig {
    /// Largest accepted `c · x`.
    pub budget: u64,
    /// Width of the `n`-windows the enumeration is staged through.
    pub segment: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            budget: DEFAULT_ENUMERATION_BOUND,
            segment: 1 << 20,
        }
    }
}

impl EnumerationConfig {
    /// Rejects zero inputs and `c · x` above the budget.
    pub fn check(&self, c: u64, x: u64) -> Result<()> {
        if c == 0 || x == 0 {
            return Err(LabError::ZeroInput);
        }
        let cx = c as u128 * x as u128;
        if cx > self.budget as u128 {
            return Err(LabError::BoundExceeded {
                what: "c·x",
                value: cx,
                bound: self.budget as u128,
            });
        }
        Ok(())
    }
}

/// `a(c)_n = #{(s, t) ∈ ℤ² : s² + t⁴ = c n}` for `n ≤ x` coprime to `c`,
/// and `0` for `(n, c) > 1`.
///
/// `counts[0]` is unused and always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTally {
    c: u64,
    x: u64,
    counts: Vec<u32>,
}

impl SequenceTally {
    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    /// Counts indexed by `n`, `0..=x`.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, n: u64) -> u32 {
        self.counts.get(n as usize).copied().unwrap_or(0)
    }

    /// `A(y; c) = Σ_{n ≤ y} a(c)_n` for `y ≤ x`.
    pub fn total_up_to(&self, y: u64) -> u64 {
        let y = y.min(self.x) as usize;
        self.counts[..=y].iter().map(|&a| a as u64).sum()
    }

    /// `A(x; c)`.
    pub fn total(&self) -> u64 {
        self.total_up_to(self.x)
    }

    pub fn sum_of_squares(&self) -> u128 {
        self.counts.iter().map(|&a| (a as u128) * (a as u128)).sum()
    }

    /// `(n, a(c)_n)` for every `n ≤ x`.
    pub fn rows(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.counts.iter().enumerate().skip(1).map(|(n, &a)| (n as u64, a))
    }
}

/// Adds the weighted representations of every `n ∈ [lo, lo + out.len())`.
///
/// Only `s, t ≥ 0` are visited; a point with `s > 0` stands for `±s`,
/// and likewise for `t`.
fn fill_window(c: u64, lo: u64, out: &mut [u32]) {
    let hi = lo + out.len() as u64;
    let (lo_m, hi_m) = (c * lo, c * hi);
    let mut t = 0u64;
    loop {
        let t4 = t * t * t * t;
        if t4 >= hi_m {
            break;
        }
        let s_min = if lo_m > t4 { ceil_sqrt(lo_m - t4) } else { 0 };
        let s_max = isqrt(hi_m - 1 - t4);
        let wt = if t == 0 { 1 } else { 2 };
        for s in s_min..=s_max {
            let m = s * s + t4;
            if !m.is_multiple_of(c) {
                continue;
            }
            let n = m / c;
            if c > 1 && gcd(n, c) != 1 {
                continue;
            }
            let ws = if s == 0 { 1 } else { 2 };
            out[(n - lo) as usize] += ws * wt;
        }
        t += 1;
    }
}

fn ceil_sqrt(n: u64) -> u64 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

pub fn tally(c: u64, x: u64) -> Result<SequenceTally> {
    tally_with(c, x, &EnumerationConfig::default())
}

/// Builds the tally window by window; windows are filled in parallel
/// when the `parallel` feature is on. Every window owns a disjoint slice,
/// so the result does not depend on the thread count.
pub fn tally_with(c: u64, x: u64, config: &EnumerationConfig) -> Result<SequenceTally> {
    config.check(c, x)?;
    let len = x as usize + 1;
    let mut counts: Vec<u32> = Vec::new();
    counts
        .try_reserve_exact(len)
        .map_err(|_| LabError::Allocation {
            what: "sequence tally",
            bytes: len * 4,
        })?;
    counts.resize(len, 0);
    let seg = config.segment.max(1);

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        counts[1..]
            .par_chunks_mut(seg)
            .enumerate()
            .for_each(|(i, chunk)| fill_window(c, 1 + (i * seg) as u64, chunk));
    }
    #[cfg(not(feature = "parallel"))]
    for (i, chunk) in counts[1..].chunks_mut(seg).enumerate() {
        fill_window(c, 1 + (i * seg) as u64, chunk);
    }

    Ok(SequenceTally { c, x, counts })
}

/// Counts `a(c)_n` for `n ∈ [lo, hi)` without materialising `[1, lo)`.
pub fn tally_window(c: u64, lo: u64, hi: u64, config: &EnumerationConfig) -> Result<Vec<u32>> {
    if lo == 0 || hi <= lo {
        return Err(LabError::pre(format!("empty or invalid window [{lo}, {hi})")));
    }
    config.check(c, hi - 1)?;
    let mut out = vec![0u32; (hi - lo) as usize];
    fill_window(c, lo, &mut out);
    Ok(out)
}

/// Primes `n ≤ x` with `a(c)_n > 0`, ascending. Memory stays at one window.
pub fn sequence_primes(c: u64, x: u64, config: &EnumerationConfig) -> Result<Vec<u64>> {
    config.check(c, x)?;
    let seg = config.segment.max(1) as u64;
    let mut out = Vec::new();
    let mut lo = 1;
    while lo <= x {
        let hi = (lo + seg).min(x + 1);
        let window = tally_window(c, lo, hi, config)?;
        out.extend(
            window
                .iter()
                .enumerate()
                .filter(|&(_, &a)| a > 0)
                .map(|(i, _)| lo + i as u64)
                .filter(|&n| is_prime(n)),
        );
        lo = hi;
    }
    Ok(out)
}

/// `A_d(y; c) = Σ_{n ≤ y, d | n} a(c)_n`; zero when `(d, c) > 1`.
pub fn congruence_sum(t: &SequenceTally, d: u64, up_to: u64) -> Result<u64> {
    if d == 0 {
        return Err(LabError::ZeroInput);
    }
    if up_to > t.x {
        return Err(LabError::BoundExceeded {
            what: "up_to",
            value: up_to as u128,
            bound: t.x as u128,
        });
    }
    if gcd(d, t.c) > 1 {
        return Ok(0);
    }
    Ok((d..=up_to)
        .step_by(d as usize)
        .map(|n| t.counts[n as usize] as u64)
        .sum())
}
