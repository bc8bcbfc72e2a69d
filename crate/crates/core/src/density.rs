//! Local densities `ρ(b; d) = #{α mod d : α² + b² ≡ 0 (mod d)}`.
//!
//! [`rho_pair`] evaluates the closed formula
//! `ρ(b; d) = b₂ · ρ((d1* · d2 / (b₁ b₂))²)` with `b₂ = (b, d2)` and
//! `b₁ = (b / b₂, d1*)`, where `ρ` on the right is the multiplicative
//! [`rho_mult`]. [`rho_pair_oracle`] counts residues directly.

use crate::arith::{chi4, factorize, gcd, quartic_split, Factorization};
use crate::error::{LabError, Result};

/// Largest modulus accepted by the brute-force oracle.
pub const ORACLE_MAX_MODULUS: u64 = 1_000_000;

/// Multiplicative `ρ` with `ρ(p^α) = 1 + χ₄(p)`, except `ρ(m) = 0` when `4 | m`.
pub fn rho_mult(m: u64) -> Result<u64> {
    if m.is_multiple_of(4) {
        return Ok(0);
    }
    Ok(factorize(m)?
        .primes()
        .map(|p| (1 + chi4(p as i64)) as u64)
        .product())
}

/// `ρ(m²)` for `m` whose prime factors all lie in `primes`.
fn rho_square_over(m: u64, primes: impl Iterator<Item = u64>) -> u64 {
    if m.is_multiple_of(2) {
        return 0;
    }
    let mut r = 1;
    for p in primes {
        if m.is_multiple_of(p) {
            r *= (1 + chi4(p as i64)) as u64;
            if r == 0 {
                break;
            }
        }
    }
    r
}

/// Closed-form `ρ(b; d)`. Negative `b` is reduced modulo `d` first.
pub fn rho_pair(b: i64, d: u64) -> Result<u64> {
    Ok(rho_pair_factored(b, &factorize(d)?))
}

/// [`rho_pair`] for an already factored modulus.
pub fn rho_pair_factored(b: i64, d: &Factorization) -> u64 {
    let n = d.n();
    let b = (b as i128).rem_euclid(n as i128) as u64;
    let split = quartic_split(d);
    let d2 = split.d2();
    // gcd(0, n) = n
    let b2 = gcd(b, d2);
    let b1 = gcd(b / b2, split.d1star);
    let m = (split.d1star / b1) * (d2 / b2);
    b2 * rho_square_over(m, d.primes())
}

/// Literal count of `α ∈ [0, d)` with `d | α² + b²`.
pub fn rho_pair_oracle(b: i64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(LabError::ZeroInput);
    }
    if d > ORACLE_MAX_MODULUS {
        return Err(LabError::BoundExceeded {
            what: "oracle modulus",
            value: d as u128,
            bound: ORACLE_MAX_MODULUS as u128,
        });
    }
    let b = (b as i128).rem_euclid(d as i128) as u64;
    let b2 = b * b % d;
    Ok((0..d).filter(|&a| (a * a % d + b2).is_multiple_of(d)).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rho_mult_examples() {
        assert_eq!(rho_mult(1).unwrap(), 1);
        assert_eq!(rho_mult(25).unwrap(), 2);
        assert_eq!(rho_mult(9).unwrap(), 0);
        assert_eq!(rho_mult(4).unwrap(), 0);
        assert_eq!(rho_mult(50).unwrap(), 2);
        assert_eq!(rho_mult(2).unwrap(), 1);
        assert_eq!(rho_mult(65).unwrap(), 4);
    }

    #[test]
    fn rho_pair_examples() {
        assert_eq!(rho_pair(1, 5).unwrap(), 2);
        assert_eq!(rho_pair(1, 3).unwrap(), 0);
        assert_eq!(rho_pair(2, 4).unwrap(), 2);
        assert_eq!(rho_pair(3, 9).unwrap(), 3);
        assert_eq!(rho_pair(0, 5).unwrap(), 1);
        assert_eq!(rho_pair(-1, 5).unwrap(), 2);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(rho_pair_oracle(0, 1).unwrap(), 1);
        assert_eq!(rho_pair_oracle(1, 5).unwrap(), 2);
        assert_eq!(rho_pair_oracle(7, 13).unwrap(), 2);
        assert_eq!(rho_pair_oracle(1, 0), Err(LabError::ZeroInput));
        assert!(rho_pair_oracle(1, ORACLE_MAX_MODULUS + 1).is_err());
    }

    #[test]
    fn zero_b_counts_square_roots_of_zero() {
        // α² ≡ 0 mod p^e has p^{⌊e/2⌋} solutions
        for (d, expect) in [(8u64, 2u64), (16, 4), (27, 3), (81, 9), (72, 6)] {
            assert_eq!(rho_pair(0, d).unwrap(), expect, "d = {d}");
        }
    }

    #[test]
    fn multiplicative_in_modulus() {
        for b in 0..30i64 {
            for d in 1..=100u64 {
                for e in 1..=100u64 {
                    if gcd(d, e) == 1 {
                        assert_eq!(
                            rho_pair(b, d * e).unwrap(),
                            rho_pair(b, d).unwrap() * rho_pair(b, e).unwrap(),
                            "b = {b}, d = {d}, e = {e}"
                        );
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn closed_form_matches_oracle(b in -2000i64..2000, d in 1u64..3000) {
            prop_assert_eq!(rho_pair(b, d).unwrap(), rho_pair_oracle(b, d).unwrap());
        }

        #[test]
        fn periodic_in_b(b in 0i64..100_000, d in 1u64..5000) {
            prop_assert_eq!(rho_pair(b, d).unwrap(), rho_pair(b % d as i64, d).unwrap());
        }
    }
}
