//! Arithmetic primitives shared by every other module: factorization,
//! the classical multiplicative functions, the character of conductor 4
//! and the split of a modulus into squarefree, square and fourth-power parts.

mod sieve;

pub use sieve::{build_tables, build_tables_with, primes_up_to, ArithTables, SieveConfig};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{LabError, Result};

/// Prime factorization `n = ∏ p^e`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs, checking the
    /// ordering and the product.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        let mut last = 1;
        for &(p, e) in &factors {
            if p <= last || e == 0 || !is_prime(p) {
                return Err(LabError::pre(format!("invalid prime power {p}^{e}")));
            }
            last = p;
            let pe = p.checked_pow(e).ok_or(LabError::Overflow("factorization"))?;
            n = n.checked_mul(pe).ok_or(LabError::Overflow("factorization"))?;
        }
        Ok(Factorization { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// `v_p(n)`; zero when `p` does not divide `n`.
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_cubefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e <= 2)
    }

    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Squarefree divisors with their Möbius sign.
    pub fn squarefree_divisors(&self) -> Vec<(u64, i8)> {
        let mut out = vec![(1u64, 1i8)];
        for p in self.primes() {
            let len = out.len();
            for i in 0..len {
                let (k, s) = out[i];
                out.push((k * p, -s));
            }
        }
        out
    }
}

/// Factors `n` with deterministic Miller–Rabin plus Pollard rho.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(LabError::ZeroInput);
    }
    if n >= 1 << 63 {
        return Err(LabError::BoundExceeded {
            what: "n",
            value: n as u128,
            bound: (1u128 << 63) - 1,
        });
    }
    let factors = num_prime::nt_funcs::factorize64(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect();
    Ok(Factorization { n, factors })
}

/// Deterministic for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// `n = d1 · d3² · d4⁴` with `d1`, `d3` squarefree; `d1star = d1 / (d1, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuarticDecomposition {
    pub d1: u64,
    pub d3: u64,
    pub d4: u64,
    pub d1star: u64,
}

impl QuarticDecomposition {
    /// The square part `d2 = d3 · d4²`, so that `d = d1 · d2²`.
    pub fn d2(&self) -> u64 {
        self.d3 * self.d4 * self.d4
    }
}

pub fn quartic_decompose(d: u64) -> Result<QuarticDecomposition> {
    Ok(quartic_split(&factorize(d)?))
}

/// Exponent `e = e1 + 2 e3 + 4 e4` with `e1, e3 ∈ {0, 1}`, prime by prime.
pub fn quartic_split(f: &Factorization) -> QuarticDecomposition {
    let (mut d1, mut d3, mut d4) = (1u64, 1u64, 1u64);
    for &(p, e) in f.factors() {
        d4 *= p.pow(e / 4);
        let rest = e % 4;
        if rest & 1 == 1 {
            d1 *= p;
        }
        if rest >= 2 {
            d3 *= p;
        }
    }
    let d1star = if d1 % 2 == 0 { d1 / 2 } else { d1 };
    QuarticDecomposition { d1, d3, d4, d1star }
}

/// The non-principal character modulo 4.
pub fn chi4(n: i64) -> i8 {
    match n.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArithValues {
    pub phi: u64,
    pub tau: u64,
    pub tau5: u64,
    pub mu: i8,
}

/// Euler φ, the divisor counts τ and τ₅, and Möbius μ of a factored integer.
pub fn arith_values(f: &Factorization) -> ArithValues {
    let mut v = ArithValues {
        phi: 1,
        tau: 1,
        tau5: 1,
        mu: 1,
    };
    for &(p, e) in f.factors() {
        v.phi *= (p - 1) * p.pow(e - 1);
        v.tau *= e as u64 + 1;
        // τ₅(p^e) = C(e + 4, 4)
        let e = e as u64;
        v.tau5 *= (e + 1) * (e + 2) * (e + 3) * (e + 4) / 24;
        v.mu = if e > 1 { 0 } else { -v.mu };
    }
    v
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Largest `r` with `r² ≤ n`.
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Largest `r` with `r⁴ ≤ n`.
pub fn iroot4(n: u64) -> u64 {
    isqrt(isqrt(n))
}

/// Exponent of `p` in `n` (`n > 0`).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small_and_mersenne() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(360).unwrap().factors(), &[(2, 3), (3, 2), (5, 1)]);
        let m61 = (1u64 << 61) - 1;
        assert_eq!(factorize(m61).unwrap().factors(), &[(m61, 1)]);
        assert_eq!(factorize(0), Err(LabError::ZeroInput));
        assert!(matches!(
            factorize(1 << 63),
            Err(LabError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn quartic_examples() {
        let q = quartic_decompose(360).unwrap();
        assert_eq!((q.d1, q.d3, q.d4, q.d1star), (10, 6, 1, 5));
        let q = quartic_decompose(16).unwrap();
        assert_eq!((q.d1, q.d3, q.d4, q.d1star), (1, 1, 2, 1));
        let q = quartic_decompose(48).unwrap();
        assert_eq!((q.d1, q.d3, q.d4), (3, 1, 2));
        let q = quartic_decompose(2u64.pow(7) * 3u64.pow(5)).unwrap();
        assert_eq!((q.d1, q.d3, q.d4, q.d1star), (6, 2, 6, 3));
        assert_eq!(q.d2(), 72);
    }

    #[test]
    fn chi4_values() {
        assert_eq!(chi4(5), 1);
        assert_eq!(chi4(3), -1);
        assert_eq!(chi4(2), 0);
        assert_eq!(chi4(-1), -1);
        assert_eq!(chi4(-3), 1);
    }

    #[test]
    fn arith_values_examples() {
        let one = arith_values(&factorize(1).unwrap());
        assert_eq!(
            one,
            ArithValues {
                phi: 1,
                tau: 1,
                tau5: 1,
                mu: 1
            }
        );
        let v = arith_values(&factorize(12).unwrap());
        assert_eq!((v.phi, v.tau, v.mu), (4, 6, 0));
        assert_eq!(arith_values(&factorize(101).unwrap()).tau5, 5);
        // τ₅(8) = C(7, 4)
        assert_eq!(arith_values(&factorize(8).unwrap()).tau5, 35);
        assert_eq!(arith_values(&factorize(30).unwrap()).mu, -1);
    }

    #[test]
    fn divisors_and_radical() {
        let f = factorize(360).unwrap();
        assert_eq!(f.divisors().len(), 24);
        assert_eq!(f.radical(), 30);
        let sf = f.squarefree_divisors();
        assert_eq!(sf.len(), 8);
        assert_eq!(sf.iter().map(|&(_, s)| s as i32).sum::<i32>(), 0);
        assert!(!f.is_cubefree());
        assert!(factorize(180).unwrap().is_cubefree());
    }

    #[test]
    fn roots() {
        for n in [0u64, 1, 2, 3, 4, 15, 16, 17, 80, 81, u64::MAX] {
            let r = isqrt(n);
            assert!(r * r <= n);
            assert!((r + 1).checked_mul(r + 1).is_none_or(|s| s > n));
        }
        assert_eq!(iroot4(80), 2);
        assert_eq!(iroot4(81), 3);
    }
}
