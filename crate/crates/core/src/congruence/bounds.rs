use num_integer::Integer;
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{LabError, Result};

/// Least `deg` with `ℓ ≤ (1 + √q)^{2·deg}`.
///
/// If `ℓ | Norm(a_q ∓ (1 + q))` and every conjugate of `a_q` is bounded by
/// `2√q`, the norm is at most `(1 + √q)^{2·deg}`.
pub fn degree_lower_bound(ell: u64, q: u64) -> Result<u32> {
    if ell < 5 {
        return Err(LabError::pre(format!("ell = {ell} must be at least 5")));
    }
    if !is_prime(ell) {
        return Err(LabError::NotPrime(ell));
    }
    if ![2, 3, 5, 7].contains(&q) {
        return Err(LabError::pre(format!("q = {q} must be one of 2, 3, 5, 7")));
    }
    let base = 2.0 * (1.0 + (q as f64).sqrt()).ln();
    let mut deg = ((ell as f64).ln() / base).ceil().max(1.0) as u32;
    // guard the float ceiling against rounding at exact powers
    let fits = |d: u32| (ell as f64).ln() <= base * d as f64 * (1.0 + 1e-15);
    while deg > 1 && fits(deg - 1) {
        deg -= 1;
    }
    while !fits(deg) {
        deg += 1;
    }
    Ok(deg)
}

/// Numerator of `(p − 1)(q + 1)/24` in lowest terms.
pub fn ogg_numerator(p: u64, q: u64) -> Result<u64> {
    if p == q {
        return Err(LabError::pre("p and q must be distinct"));
    }
    for n in [p, q] {
        if !is_prime(n) {
            return Err(LabError::NotPrime(n));
        }
        if n == 2 {
            return Err(LabError::pre("p and q must be odd"));
        }
    }
    let num = (p as u128 - 1) * (q as u128 + 1);
    Ok((num / num.gcd(&24)) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum EisensteinLevel {
    /// Prime `N ≡ 1 mod ℓ`.
    Single { n: u64 },
    /// `q ≡ −1 mod ℓ` and an odd prime `p ≢ 1 mod ℓ`, `p ≠ q`.
    Pair { p: u64, q: u64 },
}

pub fn eisenstein_level_search(ell: u64, t: u8) -> Result<EisensteinLevel> {
    if ell < 5 {
        return Err(LabError::pre(format!("ell = {ell} must be at least 5")));
    }
    if !is_prime(ell) {
        return Err(LabError::NotPrime(ell));
    }
    let cap = ell.checked_mul(1_000_000).ok_or(LabError::Overflow("search cap"))?;
    let first = |residue: u64| -> Result<u64> {
        let mut n = residue;
        while n <= cap {
            if is_prime(n) {
                return Ok(n);
            }
            n += ell;
        }
        Err(LabError::SearchExhausted(format!(
            "no prime = {residue} mod {ell} below {cap}"
        )))
    };
    match t {
        1 => Ok(EisensteinLevel::Single { n: first(ell + 1)? }),
        2 => {
            let q = first(ell - 1)?;
            // p = 2 would make the level even; the Ogg numerator needs odd p
            let p = (3..)
                .step_by(2)
                .find(|&p| is_prime(p) && p % ell != 1 && p != q)
                .expect("infinitely many primes");
            let (pm, qp, qm) = (p as u128 - 1, q as u128 + 1, q as u128 - 1);
            let l = ell as u128;
            debug_assert!((pm * qp) % l == 0 && pm % l != 0 && qm % l != 0);
            Ok(EisensteinLevel::Pair { p, q })
        }
        _ => Err(LabError::pre(format!("t = {t} must be 1 or 2"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_examples() {
        assert_eq!(degree_lower_bound(11, 2).unwrap(), 2);
        assert_eq!(degree_lower_bound(5, 2).unwrap(), 1);
        assert_eq!(degree_lower_bound(1009, 5).unwrap(), 3);
        assert!(degree_lower_bound(3, 2).is_err());
        assert!(degree_lower_bound(11, 11).is_err());
        assert!(degree_lower_bound(15, 2).is_err());
    }

    #[test]
    fn degree_monotone_and_q2_form() {
        let base = (3.0 + 2f64.sqrt() * 2.0).ln();
        for q in [2u64, 3, 5, 7] {
            let mut last = 0;
            for ell in (5..5000u64).filter(|&l| is_prime(l)) {
                let d = degree_lower_bound(ell, q).unwrap();
                assert!(d >= last);
                last = d;
                if q == 2 {
                    assert_eq!(d, ((ell as f64).ln() / base).ceil() as u32, "ell = {ell}");
                }
            }
        }
    }

    #[test]
    fn ogg_examples() {
        assert_eq!(ogg_numerator(11, 13).unwrap(), 35);
        assert_eq!(ogg_numerator(5, 7).unwrap(), 4);
        assert_eq!(ogg_numerator(3, 5).unwrap(), 1);
        assert!(ogg_numerator(5, 5).is_err());
        assert!(ogg_numerator(2, 5).is_err());
        assert!(ogg_numerator(9, 5).is_err());
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(eisenstein_level_search(5, 1).unwrap(), EisensteinLevel::Single { n: 11 });
        assert_eq!(eisenstein_level_search(11, 1).unwrap(), EisensteinLevel::Single { n: 23 });
        assert_eq!(eisenstein_level_search(7, 2).unwrap(), EisensteinLevel::Pair { p: 3, q: 13 });
        assert!(eisenstein_level_search(7, 3).is_err());
        assert!(eisenstein_level_search(3, 1).is_err());
        for ell in (5..300u64).filter(|&l| is_prime(l)) {
            let EisensteinLevel::Pair { p, q } = eisenstein_level_search(ell, 2).unwrap() else {
                panic!()
            };
            assert_eq!(q % ell, ell - 1);
            assert_ne!(p % ell, 1);
            assert_eq!(ogg_numerator(p, q).unwrap() % ell, 0, "ell = {ell}");
        }
    }
}
