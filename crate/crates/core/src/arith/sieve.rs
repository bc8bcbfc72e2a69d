use super::{isqrt, Factorization};
use crate::error::{LabError, Result};

/// Sieve tuning. Tables are filled one segment at a time so that the
/// marking loop stays inside cache.
#[derive(Debug, Clone, Copy)]
pub struct SieveConfig {
    pub segment_size: usize,
    /// Largest `limit` accepted by [`build_tables_with`].
    pub max_limit: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_size: 1 << 20,
            max_limit: 200_000_000,
        }
    }
}

/// Smallest-prime-factor, Möbius and prime-power tables for `1..=limit`.
///
/// `prime_power_base[n]` is `p` when `n = p^k` (k ≥ 1) and `0` otherwise,
/// so `Λ(n)` is only turned into `log p` when it is summed.
#[derive(Debug, Clone)]
pub struct ArithTables {
    limit: u64,
    spf: Vec<u32>,
    mobius: Vec<i8>,
    prime_power_base: Vec<u32>,
}

impl ArithTables {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn mobius(&self, n: u64) -> i8 {
        self.mobius[n as usize]
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// `(p, k)` when `n = p^k`.
    pub fn prime_power(&self, n: u64) -> Option<(u64, u32)> {
        let p = self.prime_power_base[n as usize] as u64;
        if p == 0 {
            return None;
        }
        Some((p, super::valuation(n, p)))
    }

    /// `Λ(n)`: `log p` if `n = p^k`, else 0.
    pub fn mangoldt(&self, n: u64) -> f64 {
        match self.prime_power_base[n as usize] {
            0 => 0.0,
            p => (p as f64).ln(),
        }
    }

    /// Factorization read off the smallest-prime-factor table.
    pub fn factor(&self, mut n: u64) -> Factorization {
        assert!(n >= 1 && n <= self.limit, "{n} outside table range");
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let original = n;
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        Factorization {
            n: original,
            factors,
        }
    }
}

pub fn build_tables(limit: u64) -> Result<ArithTables> {
    build_tables_with(limit, &SieveConfig::default())
}

fn alloc<T: Clone + Default>(what: &'static str, len: usize) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| LabError::Allocation {
        what,
        bytes: len * std::mem::size_of::<T>(),
    })?;
    v.resize(len, T::default());
    Ok(v)
}

pub fn build_tables_with(limit: u64, config: &SieveConfig) -> Result<ArithTables> {
    if limit == 0 {
        return Err(LabError::ZeroInput);
    }
    if limit > config.max_limit || limit >= u32::MAX as u64 {
        return Err(LabError::BoundExceeded {
            what: "table limit",
            value: limit as u128,
            bound: config.max_limit.min(u32::MAX as u64 - 1) as u128,
        });
    }
    let len = limit as usize + 1;
    let mut spf: Vec<u32> = alloc("smallest prime factor table", len)?;
    let base = primes_up_to(isqrt(limit));
    let seg = config.segment_size.max(1);

    let mut lo = 2usize;
    while lo < len {
        let hi = (lo + seg).min(len);
        for &p in &base {
            let p = p as usize;
            if p * p >= hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            while m < hi {
                if spf[m] == 0 {
                    spf[m] = p as u32;
                }
                m += p;
            }
        }
        for (m, slot) in spf[lo..hi].iter_mut().enumerate() {
            if *slot == 0 {
                *slot = (lo + m) as u32;
            }
        }
        lo = hi;
    }

    let mut mobius: Vec<i8> = alloc("Möbius table", len)?;
    let mut prime_power_base: Vec<u32> = alloc("prime power table", len)?;
    mobius[1] = 1;
    for n in 2..len {
        let p = spf[n] as usize;
        let m = n / p;
        if m == 1 {
            mobius[n] = -1;
            prime_power_base[n] = p as u32;
            continue;
        }
        mobius[n] = if spf[m] as usize == p { 0 } else { -mobius[m] };
        if prime_power_base[m] as usize == p {
            prime_power_base[n] = p as u32;
        }
    }

    Ok(ArithTables {
        limit,
        spf,
        mobius,
        prime_power_base,
    })
}

/// Primes `≤ n`, ascending, by a segmented sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let root = isqrt(n) as usize;
    let mut small = vec![true; root + 1];
    let mut base = Vec::new();
    for i in 2..=root {
        if small[i] {
            base.push(i);
            let mut j = i * i;
            while j <= root {
                small[j] = false;
                j += i;
            }
        }
    }

    let mut out = Vec::new();
    let seg = 1usize << 18;
    let end = n as usize + 1;
    let mut lo = 2usize;
    let mut mark = vec![true; seg];
    while lo < end {
        let hi = (lo + seg).min(end);
        let window = &mut mark[..hi - lo];
        window.fill(true);
        for &p in &base {
            if p * p >= hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            while m < hi {
                window[m - lo] = false;
                m += p;
            }
        }
        out.extend(
            window
                .iter()
                .enumerate()
                .filter(|&(_, &is_p)| is_p)
                .map(|(i, _)| (lo + i) as u64),
        );
        lo = hi;
    }
    out
}
