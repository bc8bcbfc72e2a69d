use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{big_str, i128_str};
use crate::arith::is_prime;
use crate::error::{LabError, Result};

/// Largest prime accepted by [`trace_of_frobenius`].
pub const MAX_TRACE_PRIME: u64 = 1_000_000;

/// `y² = x³ + a2 x² + a4 x + a6` over `ℚ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
/// Coefficients serialize as decimal strings; they can exceed 64 bits.
pub struct CurveQ {
    #[serde(serialize_with = "i128_str")]
    pub a2: i128,
    #[serde(serialize_with = "i128_str")]
    pub a4: i128,
    #[serde(serialize_with = "i128_str")]
    pub a6: i128,
}

impl CurveQ {
    /// Rejects singular cubics.
    pub fn new(a2: i128, a4: i128, a6: i128) -> Result<Self> {
        let c = CurveQ { a2, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(LabError::pre(format!(
                "y^2 = x^3 + {a2}x^2 + {a4}x + {a6} is singular"
            )));
        }
        Ok(c)
    }

    /// `Δ = −b2² b8 − 8 b4³ − 27 b6² + 9 b2 b4 b6` (`a1 = a3 = 0`).
    pub fn discriminant(&self) -> BigInt {
        let (a2, a4, a6) = (BigInt::from(self.a2), BigInt::from(self.a4), BigInt::from(self.a6));
        let b2: BigInt = 4 * &a2;
        let b4: BigInt = 2 * &a4;
        let b6: BigInt = 4 * &a6;
        let b8: BigInt = 4 * &a2 * &a6 - &a4 * &a4;
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }
}

fn big_valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    v
}

/// `a_p = −Σ_{x mod p} (x³ + a2x² + a4x + a6 | p)` for a prime of good
/// reduction.
pub fn trace_of_frobenius(curve: &CurveQ, p: u64) -> Result<i64> {
    if p > MAX_TRACE_PRIME {
        return Err(LabError::BoundExceeded {
            what: "p",
            value: p as u128,
            bound: MAX_TRACE_PRIME as u128,
        });
    }
    if !is_prime(p) {
        return Err(LabError::NotPrime(p));
    }
    let disc = curve.discriminant();
    let v = big_valuation(&disc, p);
    if v > 0 {
        return Err(LabError::BadReduction { p, valuation: v });
    }
    let pi = p as i128;
    let red = |a: i128| a.rem_euclid(pi) as u64;
    let (a2, a4, a6) = (red(curve.a2), red(curve.a4), red(curve.a6));

    // χ(v) = 1 for nonzero squares, −1 for non-squares, 0 at 0
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for y in 1..=p / 2 {
        chi[(y * y % p) as usize] = 1;
    }
    let mut s: i64 = 0;
    for x in 0..p {
        let f = (((x + a2) % p * x + a4) % p * x + a6) % p;
        s += chi[f as usize] as i64;
    }
    Ok(-s)
}

/// Invariants of the Frey curve attached to `2^{ℓ+4} = p + q`.
#[derive(Debug, Clone, Serialize)]
pub struct FreyRecord {
    pub p: u64,
    pub q: u64,
    pub ell: u32,
    /// `(2^ℓ p q)²`
    #[serde(serialize_with = "big_str")]
    pub min_discriminant: BigInt,
    /// `2 p q`, the radical of the minimal discriminant.
    pub conductor: u128,
    pub v2_disc: u32,
    pub v2_divisible_by_ell: bool,
    /// `y² = x(x − p)(x − 2^{ℓ+4})`
    pub curve: CurveQ,
    /// Discriminant of `curve`; equals `2¹² · min_discriminant`.
    #[serde(serialize_with = "big_str")]
    pub model_discriminant: BigInt,
}

/// The curve is written with roots `0, p, 2^{ℓ+4}`, so the root
/// differences are `p`, `q` and `2^{ℓ+4}`; the discriminant of this model
/// is `16 (p q 2^{ℓ+4})²` and it becomes minimal after removing `2¹²`.
pub fn frey_invariants(p: u64, q: u64, ell: u32) -> Result<FreyRecord> {
    if ell == 0 {
        return Err(LabError::ZeroInput);
    }
    if ell > 58 {
        return Err(LabError::BoundExceeded {
            what: "ell",
            value: ell as u128,
            bound: 58,
        });
    }
    for n in [p, q] {
        if !is_prime(n) {
            return Err(LabError::NotPrime(n));
        }
        if n == 2 {
            return Err(LabError::pre("p and q must be odd"));
        }
    }
    if p % 4 != 3 {
        return Err(LabError::pre(format!("p = {p} is not 3 mod 4")));
    }
    let m = 1u64 << (ell + 4);
    if p.checked_add(q) != Some(m) {
        return Err(LabError::pre(format!("p + q = {} != 2^{} = {m}", p as u128 + q as u128, ell + 4)));
    }
    let root = BigInt::from(1u64 << ell) * p * q;
    let min_discriminant = &root * &root;
    let curve = CurveQ::new(-(p as i128 + m as i128), p as i128 * m as i128, 0)?;
    let model_discriminant = curve.discriminant();
    if model_discriminant != &min_discriminant * BigInt::from(1u32 << 12) {
        return Err(LabError::pre("Frey model discriminant mismatch"));
    }
    let v2_disc = big_valuation(&min_discriminant, 2);
    Ok(FreyRecord {
        p,
        q,
        ell,
        conductor: 2 * p as u128 * q as u128,
        v2_divisible_by_ell: v2_disc.is_multiple_of(ell),
        v2_disc,
        min_discriminant,
        curve,
        model_discriminant,
    })
}

/// Radical of a discriminant that is known to factor over `primes`.
#[cfg(test)]
fn radical_over(n: &BigInt, primes: &[u64]) -> Option<u128> {
    use num_traits::ToPrimitive;
    let mut rest = n.abs();
    let mut rad: u128 = 1;
    for &p in primes {
        let bp = BigInt::from(p);
        if rest.is_multiple_of(&bp) {
            rad *= p as u128;
            while rest.is_multiple_of(&bp) {
                rest /= &bp;
            }
        }
    }
    (rest.to_u64() == Some(1)).then_some(rad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn frey_examples() {
        let r = frey_invariants(19, 109, 3).unwrap();
        assert_eq!(r.min_discriminant, BigInt::from(8u64 * 19 * 109).pow(2));
        assert_eq!(r.conductor, 4142);
        assert_eq!(r.v2_disc, 6);
        assert!(r.v2_divisible_by_ell);
        let r = frey_invariants(19, 13, 1).unwrap();
        assert_eq!(r.min_discriminant, BigInt::from(244_036));
        assert_eq!(r.conductor, 494);
        let r = frey_invariants(3, 509, 5).unwrap();
        assert_eq!(r.v2_disc, 10);
        assert!(r.v2_divisible_by_ell);
    }

    #[test]
    fn frey_rejects() {
        assert!(frey_invariants(19, 110, 3).is_err());
        assert!(frey_invariants(17, 111, 3).is_err());
        assert!(frey_invariants(13, 19, 1).is_err());
        assert!(frey_invariants(19, 13, 2).is_err());
    }

    #[test]
    fn frey_radical() {
        for ell in 1..=30 {
            let d = super::super::chen_search(ell, false).unwrap();
            let r = frey_invariants(d.p, d.cofactor[0], ell).unwrap();
            assert_eq!(r.v2_disc, 2 * ell);
            assert_eq!(radical_over(&r.min_discriminant, &[2, d.p, d.cofactor[0]]), Some(r.conductor));
        }
    }

    #[test]
    fn trace_examples() {
        let c = CurveQ::new(0, 0, 1).unwrap();
        assert_eq!(trace_of_frobenius(&c, 5).unwrap(), 0);
        let c = CurveQ::new(0, 1, 0).unwrap();
        assert_eq!(trace_of_frobenius(&c, 3).unwrap(), 0);
        assert_eq!(
            trace_of_frobenius(&c, 2),
            Err(LabError::BadReduction { p: 2, valuation: 6 })
        );
        assert!(trace_of_frobenius(&c, 9).is_err());
        assert!(trace_of_frobenius(&c, 1_000_003).is_err());
        assert!(CurveQ::new(0, 0, 0).is_err());
    }

    #[test]
    fn trace_matches_point_count() {
        // y² = x³ − x + 1 at p = 7: count points directly
        let c = CurveQ::new(0, -1, 1).unwrap();
        let p = 7i64;
        let mut affine = 0;
        for x in 0..p {
            for y in 0..p {
                if (y * y - (x * x * x - x + 1)).rem_euclid(p) == 0 {
                    affine += 1;
                }
            }
        }
        assert_eq!(trace_of_frobenius(&c, 7).unwrap(), p + 1 - (affine + 1));
    }

    #[test]
    fn hasse_bound_random() {
        let primes: Vec<u64> = primes_up_to(1000).into_iter().filter(|&p| p > 3).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut done = 0;
        while done < 200 {
            let c = CurveQ {
                a2: rng.gen_range(-50..=50),
                a4: rng.gen_range(-50..=50),
                a6: rng.gen_range(-50..=50),
            };
            let p = primes[rng.gen_range(0..primes.len())];
            if let Ok(a) = trace_of_frobenius(&c, p) {
                assert!((a * a) as u64 <= 4 * p, "{c:?} p = {p} a = {a}");
                done += 1;
            }
        }
    }

    #[test]
    fn cm_curve_supersingular() {
        let c = CurveQ::new(0, -1, 0).unwrap();
        for p in primes_up_to(1000).into_iter().filter(|p| p % 4 == 3) {
            assert_eq!(trace_of_frobenius(&c, p).unwrap(), 0, "p = {p}");
        }
    }
}
