//! Scalar abstraction shared by the numeric layers.
//!
//! Root refinement, resonance clustering, and the asymptotic fits are written
//! once against [`Real`] and run either in `f64` (seeding, quick oracles) or in
//! [`BigReal`](crate::BigReal) at a caller-chosen number of decimal digits.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

/// Ordered real field with the transcendental functions the crate needs.
///
/// Values carry their own working precision (`digits`). Constructors take the
/// precision explicitly; `f64` ignores it.
pub trait Real: Num + Clone + Debug + PartialOrd + Neg<Output = Self> {
    fn from_f64_digits(x: f64, digits: u32) -> Self;
    fn from_bigint_digits(x: &BigInt, digits: u32) -> Self;

    /// Significant decimal digits carried by this value.
    fn digits(&self) -> u32;

    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan(&self) -> Self;
    fn floor(&self) -> Self;
    fn pi(digits: u32) -> Self;

    fn is_finite(&self) -> bool;

    /// A constant at the precision of `self`.
    fn lift(&self, x: f64) -> Self {
        Self::from_f64_digits(x, self.digits())
    }

    fn from_i64_digits(x: i64, digits: u32) -> Self {
        Self::from_bigint_digits(&BigInt::from(x), digits)
    }

    fn from_ratio_digits(x: &BigRational, digits: u32) -> Self {
        Self::from_bigint_digits(x.numer(), digits) / Self::from_bigint_digits(x.denom(), digits)
    }

    /// `10^(-k)` at the requested precision.
    fn ten_pow_neg(k: u32, digits: u32) -> Self {
        Self::from_f64_digits(1.0, digits) / Self::from_bigint_digits(&BigInt::from(10u32).pow(k), digits)
    }

    /// Natural logarithm of a positive integer of any size.
    fn ln_bigint(x: &BigInt, digits: u32) -> Self {
        let keep = 64 + (digits as u64) * 4;
        let bits = x.bits();
        if bits <= keep {
            return Self::from_bigint_digits(x, digits).ln();
        }
        let shift = bits - keep;
        let head = Self::from_bigint_digits(&(x >> shift), digits).ln();
        let ln2 = Self::from_f64_digits(2.0, digits).ln();
        head + ln2 * Self::from_bigint_digits(&BigInt::from(shift), digits)
    }

    fn atan2(&self, x: &Self) -> Self {
        let zero = Self::zero();
        let pi = Self::pi(self.digits().max(x.digits()));
        if *x > zero {
            (self.clone() / x.clone()).atan()
        } else if *x < zero {
            let base = (self.clone() / x.clone()).atan();
            if *self >= zero {
                base + pi
            } else {
                base - pi
            }
        } else if *self > zero {
            pi / self.lift(2.0)
        } else if *self < zero {
            -(pi / self.lift(2.0))
        } else {
            zero
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn from_f64_digits(x: f64, _digits: u32) -> Self {
        x
    }

    fn from_bigint_digits(x: &BigInt, _digits: u32) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }

    fn digits(&self) -> u32 {
        f64::DIGITS
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn atan(&self) -> Self {
        f64::atan(*self)
    }

    fn floor(&self) -> Self {
        f64::floor(*self)
    }

    fn pi(_digits: u32) -> Self {
        std::f64::consts::PI
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }

    fn ten_pow_neg(k: u32, _digits: u32) -> Self {
        10f64.powi(-(k as i32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_ln_bigint_handles_huge_values() {
        let x = BigInt::from(3u32).pow(5000);
        let got: f64 = Real::ln_bigint(&x, 15);
        assert!((got - 5000.0 * 3f64.ln()).abs() < 1e-9);
    }
}
