use std::fmt;

use serde::Serialize;

use super::i128_str;
use crate::arith::{is_prime, isqrt, valuation};
use crate::error::{LabError, Result};

/// `re + i·im` in `ℤ[i]`; parts serialize as decimal strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GaussianInt {
    #[serde(serialize_with = "i128_str")]
    pub re: i128,
    #[serde(serialize_with = "i128_str")]
    pub im: i128,
}

impl GaussianInt {
    pub const fn new(re: i128, im: i128) -> Self {
        GaussianInt { re, im }
    }

    pub const fn from_int(n: i128) -> Self {
        GaussianInt { re: n, im: 0 }
    }

    pub fn conj(self) -> Self {
        GaussianInt::new(self.re, -self.im)
    }

    pub fn norm(self) -> Option<i128> {
        self.re.checked_mul(self.re)?.checked_add(self.im.checked_mul(self.im)?)
    }

    pub fn checked_add(self, o: Self) -> Option<Self> {
        Some(GaussianInt::new(self.re.checked_add(o.re)?, self.im.checked_add(o.im)?))
    }

    pub fn checked_sub(self, o: Self) -> Option<Self> {
        Some(GaussianInt::new(self.re.checked_sub(o.re)?, self.im.checked_sub(o.im)?))
    }

    pub fn checked_mul(self, o: Self) -> Option<Self> {
        let re = self.re.checked_mul(o.re)?.checked_sub(self.im.checked_mul(o.im)?)?;
        let im = self.re.checked_mul(o.im)?.checked_add(self.im.checked_mul(o.re)?)?;
        Some(GaussianInt::new(re, im))
    }

    pub fn checked_scale(self, k: i128) -> Option<Self> {
        Some(GaussianInt::new(self.re.checked_mul(k)?, self.im.checked_mul(k)?))
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuarticSolution {
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    pub p: u64,
}

/// All `A⁴ + B² = 5^ℓ p ≤ 5^ℓ · bound` with `A, B ≥ 1`, `p` prime,
/// `p ∉ {2, 5}`, `p ≠ ℓ` and `v₅(A⁴ + B²) = ℓ`, ascending by `(p, A, B)`.
pub fn quartic_solution_search(ell: u32, bound: u64) -> Result<Vec<QuarticSolution>> {
    if bound == 0 {
        return Err(LabError::ZeroInput);
    }
    let scale = 5u64
        .checked_pow(ell)
        .ok_or(LabError::Overflow("5^ell"))?;
    let limit = scale.checked_mul(bound).ok_or(LabError::Overflow("5^ell * bound"))?;
    let mut out = Vec::new();
    let mut a = 1u64;
    while let Some(a4) = a.checked_pow(4).filter(|&v| v < limit) {
        for b in 1..=isqrt(limit - a4) {
            let m = a4 + b * b;
            if m % scale != 0 {
                continue;
            }
            let p = m / scale;
            if p == 2 || p == 5 || p == ell as u64 || !is_prime(p) {
                continue;
            }
            debug_assert_eq!(valuation(m, 5), ell);
            out.push(QuarticSolution { a, b, p });
        }
        a += 1;
    }
    out.sort_by_key(|s| (s.p, s.a, s.b));
    Ok(out)
}

/// `E: y² = x³ + 4A x² + 2(A² + iB) x` over `ℚ(i)`.
#[derive(Debug, Clone, Serialize)]
pub struct QCurveRecord {
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    pub ell: u32,
    pub p: u64,
    #[serde(serialize_with = "i128_str")]
    pub a2: i128,
    pub a4: GaussianInt,
    /// `512 (A² + iB) 5^ℓ p`, confirmed against `16 a4² (a2² − 4 a4)`.
    pub discriminant: GaussianInt,
}

impl QCurveRecord {
    /// `(A² + iB)(A² − iB) = 5^ℓ p`.
    pub fn norm_identity(&self) -> bool {
        let z = GaussianInt::new(self.a as i128 * self.a as i128, self.b as i128);
        let target = 5i128.pow(self.ell) * self.p as i128;
        z.checked_mul(z.conj()) == Some(GaussianInt::from_int(target))
    }
}

pub fn qcurve_construct(a: u64, b: u64, ell: u32, p: u64) -> Result<QCurveRecord> {
    if a == 0 || b == 0 {
        return Err(LabError::ZeroInput);
    }
    if !is_prime(p) {
        return Err(LabError::NotPrime(p));
    }
    let ovf = LabError::Overflow("Q-curve data");
    let lhs = (a as u128)
        .checked_pow(4)
        .and_then(|v| v.checked_add(b as u128 * b as u128))
        .ok_or(ovf.clone())?;
    let rhs = 5u128
        .checked_pow(ell)
        .and_then(|v| v.checked_mul(p as u128))
        .ok_or(ovf.clone())?;
    if lhs != rhs {
        return Err(LabError::pre(format!("A^4 + B^2 = {lhs} != 5^{ell} * {p} = {rhs}")));
    }
    let rhs = i128::try_from(rhs).map_err(|_| ovf.clone())?;
    let z = GaussianInt::new(a as i128 * a as i128, b as i128);
    let a2 = 4 * a as i128;
    let a4 = z.checked_scale(2).ok_or(ovf.clone())?;

    let stated = z.checked_scale(512).and_then(|w| w.checked_scale(rhs)).ok_or(ovf.clone())?;
    let cubic = (|| {
        let a4sq = a4.checked_mul(a4)?;
        let inner = GaussianInt::from_int(a2.checked_mul(a2)?).checked_sub(a4.checked_scale(4)?)?;
        a4sq.checked_mul(inner)?.checked_scale(16)
    })()
    .ok_or(ovf)?;
    if stated != cubic {
        return Err(LabError::pre(format!(
            "discriminant mismatch: {stated} vs {cubic}"
        )));
    }
    Ok(QCurveRecord {
        a,
        b,
        ell,
        p,
        a2,
        a4,
        discriminant: stated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::tally;

    #[test]
    fn gaussian_ring() {
        let z = GaussianInt::new(3, -2);
        assert_eq!(z.checked_mul(z.conj()), Some(GaussianInt::from_int(13)));
        assert_eq!(z.norm(), Some(13));
        assert_eq!(z.to_string(), "3-2i");
        assert_eq!(GaussianInt::new(0, 1).checked_mul(GaussianInt::new(0, 1)), Some(GaussianInt::from_int(-1)));
        assert_eq!(GaussianInt::new(i128::MAX, 0).checked_scale(2), None);
    }

    #[test]
    fn quartic_examples() {
        assert!(quartic_solution_search(0, 10).unwrap().is_empty());
        assert_eq!(
            quartic_solution_search(0, 20).unwrap()[0],
            QuarticSolution { a: 1, b: 4, p: 17 }
        );
        let s1 = quartic_solution_search(1, 100).unwrap();
        assert!(s1.contains(&QuarticSolution { a: 3, b: 2, p: 17 }));
        let s2 = quartic_solution_search(2, 400).unwrap();
        assert!(s2.contains(&QuarticSolution { a: 1, b: 18, p: 13 }));
        assert!(s2.windows(2).all(|w| w[0].p <= w[1].p));
    }

    #[test]
    fn quartic_output_is_in_the_sequence() {
        for (ell, bound) in [(0u32, 2000u64), (1, 2000), (2, 1000)] {
            let c = 5u64.pow(ell);
            let t = tally(c, bound).unwrap();
            for s in quartic_solution_search(ell, bound).unwrap() {
                let m = s.a.pow(4) + s.b * s.b;
                assert_eq!(m, c * s.p);
                assert_eq!(valuation(m, 5), ell);
                assert!(is_prime(s.p));
                assert!(t.get(s.p) > 0, "{s:?}");
            }
        }
    }

    #[test]
    fn qcurve_examples() {
        let r = qcurve_construct(3, 2, 1, 17).unwrap();
        assert_eq!(r.a2, 12);
        assert_eq!(r.a4, GaussianInt::new(18, 4));
        assert_eq!(r.discriminant, GaussianInt::new(9, 2).checked_scale(512 * 85).unwrap());
        assert!(r.norm_identity());
        let r = qcurve_construct(1, 18, 2, 13).unwrap();
        assert_eq!(r.a4, GaussianInt::new(2, 36));
        assert_eq!(r.discriminant, GaussianInt::new(1, 18).checked_scale(512 * 325).unwrap());
        assert!(qcurve_construct(3, 2, 1, 19).is_err());
        assert!(qcurve_construct(3, 2, 0, 85).is_err());
    }

    #[test]
    fn qcurve_for_every_solution() {
        for ell in 0..4 {
            for s in quartic_solution_search(ell, 500).unwrap() {
                let r = qcurve_construct(s.a, s.b, ell, s.p).unwrap();
                assert!(r.norm_identity());
            }
        }
    }
}
