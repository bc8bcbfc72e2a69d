use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Exact rational number in lowest terms with a positive denominator.
///
/// Arithmetic is checked: an intermediate that does not fit in 128 bits
/// panics instead of wrapping. Values serialize as `"num/den"`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(Ratio<i128>);

impl ExactRational {
    pub const ZERO: ExactRational = ExactRational(Ratio::new_raw(0, 1));
    pub const ONE: ExactRational = ExactRational(Ratio::new_raw(1, 1));

    /// `None` when `denominator == 0`.
    pub fn new(numerator: i128, denominator: i128) -> Option<Self> {
        (denominator != 0).then(|| ExactRational(Ratio::new(numerator, denominator)))
    }

    pub fn from_int(n: i128) -> Self {
        ExactRational(Ratio::from_integer(n))
    }

    pub fn recip_int(n: i128) -> Self {
        ExactRational(Ratio::new(1, n))
    }

    pub fn numerator(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        if self.0 < Ratio::zero() {
            -*self
        } else {
            *self
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_add(&rhs.0).map(ExactRational)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_sub(&rhs.0).map(ExactRational)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_mul(&rhs.0).map(ExactRational)
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        self.0.checked_div(&rhs.0).map(ExactRational)
    }

    /// Integer power; panics on overflow.
    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(ExactRational::ONE, |acc, _| acc * *self)
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        ExactRational::ZERO
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_int(n as i128)
    }
}

impl From<u64> for ExactRational {
    fn from(n: u64) -> Self {
        ExactRational::from_int(n as i128)
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                self.$checked(&rhs)
                    .unwrap_or_else(|| panic!("exact rational overflow in {self} {} {rhs}", stringify!($method)))
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);
checked_binop!(Div, div, checked_div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::ZERO, |a, b| a + b)
    }
}

impl Product for ExactRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::ONE, |a, b| a * b)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Shorthand for `ExactRational::new(n, d).unwrap()` in tests and tables.
pub fn q(n: i128, d: i128) -> ExactRational {
    ExactRational::new(n, d).expect("zero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_display() {
        let r = q(6, -8);
        assert_eq!(r.numerator(), -3);
        assert_eq!(r.denominator(), 4);
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(q(4, 2).to_string(), "2/1");
        assert!(ExactRational::new(1, 0).is_none());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 2) - q(1, 3), q(1, 6));
        assert_eq!(q(2, 3) * q(3, 4), q(1, 2));
        assert_eq!(q(2, 3) / q(4, 3), q(1, 2));
        assert_eq!(q(2, 3).pow(3), q(8, 27));
        assert_eq!(vec![q(1, 2), q(1, 4)].into_iter().sum::<ExactRational>(), q(3, 4));
        assert!(q(1, 3) < q(1, 2));
        assert_eq!(q(-1, 3).abs(), q(1, 3));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_panics() {
        let big = ExactRational::from_int(i128::MAX / 2);
        let _ = big * ExactRational::from_int(3);
    }
}
