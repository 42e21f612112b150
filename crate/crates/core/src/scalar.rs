use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Field element used by the sign-critical algorithms.
///
/// `f64` compares against zero with a relative tolerance; [`BigRational`]
/// compares exactly.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed {
    /// Whether zero tests are exact.
    const EXACT: bool;

    /// Zero test. `scale` is the magnitude the value should be compared
    /// against; exact types ignore both arguments.
    fn is_negligible(&self, scale: f64, rel_tol: f64) -> bool;

    fn to_f64(&self) -> f64;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// `1/sqrt(x)`, when representable.
    fn recip_sqrt(x: u64) -> Option<Self>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn is_negligible(&self, scale: f64, rel_tol: f64) -> bool {
        self.abs() <= rel_tol * scale.max(1.0)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn recip_sqrt(x: u64) -> Option<Self> {
        Some(1.0 / libm::sqrt(x as f64))
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn is_negligible(&self, _scale: f64, _rel_tol: f64) -> bool {
        self.is_zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        ratio(num, den)
    }

    fn recip_sqrt(x: u64) -> Option<Self> {
        let root = num_integer::Roots::sqrt(&x);
        (root * root == x && root != 0).then(|| ratio(1, root as i64))
    }
}

/// Exact rational `num/den`.
///
/// # Panics
///
/// Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_zero_test_is_relative() {
        assert!(1e-11_f64.is_negligible(1.0, 1e-10));
        assert!(!1e-9_f64.is_negligible(1.0, 1e-10));
        assert!(1e-9_f64.is_negligible(100.0, 1e-10));
    }

    #[test]
    fn rational_zero_test_is_exact() {
        let tiny = ratio(1, i64::MAX);
        assert!(!tiny.is_negligible(1.0, 1.0));
        assert!(BigRational::zero().is_negligible(1.0, 0.0));
    }

    #[test]
    fn recip_sqrt_only_for_perfect_squares() {
        assert_eq!(BigRational::recip_sqrt(4), Some(ratio(1, 2)));
        assert_eq!(BigRational::recip_sqrt(2), None);
        assert!((f64::recip_sqrt(2).unwrap() - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }
}
