use serde::Serialize;

use crate::arith::{factorize, is_prime};
use crate::error::{LabError, Result};

pub const MAX_CHEN_ELL: u32 = 40;

/// `2^{ℓ+4} = p + (q or q·r)` with `p ≡ 3 mod 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChenDecomposition {
    pub ell: u32,
    #[serde(rename = "M")]
    pub m: u64,
    pub p: u64,
    /// One prime, or two distinct primes in ascending order.
    pub cofactor: Vec<u64>,
}

impl ChenDecomposition {
    /// Re-checks every stated property from scratch.
    pub fn verify(&self) -> bool {
        let prod: Option<u64> = self.cofactor.iter().try_fold(1u64, |a, &b| a.checked_mul(b));
        let parts_ok = match self.cofactor.as_slice() {
            [q] => is_prime(*q),
            [q, r] => q < r && is_prime(*q) && is_prime(*r),
            _ => false,
        };
        self.ell <= MAX_CHEN_ELL
            && self.m == 1u64 << (self.ell + 4)
            && self.p % 4 == 3
            && is_prime(self.p)
            && parts_ok
            && prod.and_then(|q| q.checked_add(self.p)) == Some(self.m)
    }

    pub fn is_goldbach(&self) -> bool {
        self.cofactor.len() == 1
    }
}

/// `n` as a product of two distinct primes, if it is one.
fn distinct_semiprime(n: u64) -> Result<Option<[u64; 2]>> {
    if n < 6 {
        return Ok(None);
    }
    let f = factorize(n)?;
    Ok(match f.factors() {
        [(q, 1), (r, 1)] => Some([*q, *r]),
        _ => None,
    })
}

/// Smallest prime `p ≡ 3 mod 4` with `2^{ℓ+4} − p` prime, or (with
/// `allow_semiprime`) prime or a product of two distinct primes.
pub fn chen_search(ell: u32, allow_semiprime: bool) -> Result<ChenDecomposition> {
    if ell == 0 {
        return Err(LabError::ZeroInput);
    }
    if ell > MAX_CHEN_ELL {
        return Err(LabError::BoundExceeded {
            what: "ell",
            value: ell as u128,
            bound: MAX_CHEN_ELL as u128,
        });
    }
    let m = 1u64 << (ell + 4);
    let mut p = 3;
    while p < m {
        if is_prime(p) {
            let rest = m - p;
            if is_prime(rest) {
                return Ok(ChenDecomposition {
                    ell,
                    m,
                    p,
                    cofactor: vec![rest],
                });
            }
            if allow_semiprime {
                if let Some(qr) = distinct_semiprime(rest)? {
                    return Ok(ChenDecomposition {
                        ell,
                        m,
                        p,
                        cofactor: qr.to_vec(),
                    });
                }
            }
        }
        p += 4;
    }
    Err(LabError::SearchExhausted(format!(
        "no p = 3 mod 4 below 2^{} with a {} cofactor",
        ell + 4,
        if allow_semiprime { "prime or semiprime" } else { "prime" }
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_splittings() {
        let d = chen_search(1, false).unwrap();
        assert_eq!((d.m, d.p, d.cofactor.clone()), (32, 3, vec![29]));
        assert_eq!(chen_search(3, false).unwrap().p, 19);
        assert_eq!(chen_search(3, false).unwrap().cofactor, vec![109]);
        assert_eq!(chen_search(5, false).unwrap().cofactor, vec![509]);
    }

    #[test]
    fn semiprime_mode() {
        // 64 − 3 = 61 is prime, so the flag does not change ℓ = 2
        assert_eq!(chen_search(2, true).unwrap(), chen_search(2, false).unwrap());
        // 128 − 3 = 125 = 5³ is not admissible; 128 − 7 = 121 = 11² neither
        let d = chen_search(3, true).unwrap();
        assert!(d.verify());
        assert!(d.p <= 19);
        for ell in 1..=MAX_CHEN_ELL {
            let d = chen_search(ell, true).unwrap();
            assert!(d.verify(), "{d:?}");
        }
    }

    #[test]
    fn goldbach_exists_to_twelve() {
        for ell in 1..=12 {
            let d = chen_search(ell, false).unwrap();
            assert!(d.verify() && d.is_goldbach());
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(chen_search(0, false).is_err());
        assert!(chen_search(41, false).is_err());
    }
}
