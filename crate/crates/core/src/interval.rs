//! Closed intervals with exact rational endpoints.
//!
//! Addition and multiplication are exact; only square roots round, outward,
//! at a controlled decimal scale. Endpoints can be re-rounded outward to keep
//! denominators from ballooning during refinement loops.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

use crate::rational::{decimal_str, BigRational, Rounding};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_interval(&self, inner: &RatInterval) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    /// Sign of every value in the interval, when uniform.
    pub fn definite_sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    /// Enclosure of the square root at decimal scale `digits`.
    ///
    /// Callers guarantee the true value is nonnegative; a lower endpoint that
    /// dipped below zero during refinement is clamped.
    pub fn sqrt_outward(&self, digits: u32) -> RatInterval {
        let lo = if self.lo.is_positive() {
            sqrt_floor(&self.lo, digits)
        } else {
            BigRational::zero()
        };
        let hi = if self.hi.is_positive() {
            sqrt_ceil(&self.hi, digits)
        } else {
            BigRational::zero()
        };
        RatInterval::new(lo, hi)
    }

    /// Round both endpoints outward onto the 10^(-digits) grid.
    pub fn round_outward(&self, digits: u32) -> RatInterval {
        RatInterval::new(
            round_dir(&self.lo, digits, Rounding::Floor),
            round_dir(&self.hi, digits, Rounding::Ceil),
        )
    }
}

fn round_dir(q: &BigRational, digits: u32, rounding: Rounding) -> BigRational {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = q * BigRational::from(scale.clone());
    let rounded = match rounding {
        Rounding::Floor => scaled.floor(),
        Rounding::Ceil => scaled.ceil(),
    };
    rounded / BigRational::from(scale)
}

/// Largest multiple of 10^(-digits) with square <= q (for q >= 0).
pub fn sqrt_floor(q: &BigRational, digits: u32) -> BigRational {
    debug_assert!(!q.is_negative());
    let scale = BigInt::from(10u32).pow(digits);
    // sqrt(n/d) = sqrt(n*d)/d; floor(sqrt(n*d) * 10^p) via integer sqrt.
    let nd = (q.numer() * q.denom()).magnitude() * (&scale * &scale).magnitude();
    let root = BigInt::from(nd.sqrt());
    BigRational::new(root, q.denom() * &scale)
}

/// Smallest multiple of 10^(-digits) with square >= q (for q >= 0).
pub fn sqrt_ceil(q: &BigRational, digits: u32) -> BigRational {
    debug_assert!(!q.is_negative());
    let scale = BigInt::from(10u32).pow(digits);
    let nd = (q.numer() * q.denom()).magnitude() * (&scale * &scale).magnitude();
    let root = nd.sqrt();
    let exact = &root * &root == nd;
    let up = if exact { root } else { root + 1u32 };
    BigRational::new(BigInt::from(up), q.denom() * &scale)
}

/// Render the interval as a `[lo, hi]` pair of decimal strings, rounded
/// outward so the printed interval still encloses the value.
pub fn interval_decimal(iv: &RatInterval, digits: u32) -> (String, String) {
    (
        decimal_str(&iv.lo, digits, Rounding::Floor),
        decimal_str(&iv.hi, digits, Rounding::Ceil),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn sqrt_bounds_bracket_value() {
        let two = RatInterval::point(rat(2, 1));
        let iv = two.sqrt_outward(10);
        assert!(iv.lo.clone() * iv.lo.clone() <= rat(2, 1));
        assert!(iv.hi.clone() * iv.hi.clone() >= rat(2, 1));
        assert!(iv.width() <= rat(2, 10_000_000_000));
    }

    #[test]
    fn sqrt_of_exact_square_is_tightish() {
        let iv = RatInterval::point(rat(25, 16)).sqrt_outward(6);
        assert!(iv.contains(&rat(5, 4)));
        assert!(iv.width() <= rat(2, 1_000_000));
    }

    #[test]
    fn multiplication_covers_sign_cases() {
        let a = RatInterval::new(rat(-2, 1), rat(3, 1));
        let b = RatInterval::new(rat(-5, 1), rat(1, 2));
        let prod = a.mul(&b);
        assert_eq!(prod.lo, rat(-15, 1));
        assert_eq!(prod.hi, rat(10, 1));
    }

    #[test]
    fn definite_sign_detection() {
        assert_eq!(
            RatInterval::new(rat(1, 9), rat(2, 9)).definite_sign(),
            Some(Ordering::Greater)
        );
        assert_eq!(
            RatInterval::new(rat(-2, 9), rat(-1, 9)).definite_sign(),
            Some(Ordering::Less)
        );
        assert_eq!(RatInterval::new(rat(-1, 9), rat(1, 9)).definite_sign(), None);
        assert_eq!(
            RatInterval::point(rat(0, 1)).definite_sign(),
            Some(Ordering::Equal)
        );
    }
}
