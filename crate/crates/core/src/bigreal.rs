//! Multiprecision real scalar backed by `astro-float`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_traits::{Num, One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::scalar::Real;

const RM: RoundingMode = RoundingMode::ToEven;

/// Digits used when every operand is an exact small constant.
const FALLBACK_DIGITS: u32 = 30;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Mantissa bits needed for `digits` decimal digits, plus one guard word.
pub fn digits_to_bits(digits: u32) -> usize {
    let raw = (digits as usize * 3322).div_ceil(1000);
    raw.div_ceil(64) * 64 + 64
}

/// Real number carried at a fixed number of significant decimal digits.
///
/// `digits == 0` marks an exact constant produced by [`Zero`] or [`One`];
/// binary operations run at the larger precision of their operands.
#[derive(Clone)]
pub struct BigReal {
    value: BigFloat,
    digits: u32,
}

impl BigReal {
    fn wrap(value: BigFloat, digits: u32) -> Self {
        BigReal { value, digits }
    }

    fn bits(&self) -> usize {
        digits_to_bits(self.effective_digits())
    }

    fn effective_digits(&self) -> u32 {
        if self.digits == 0 {
            FALLBACK_DIGITS
        } else {
            self.digits
        }
    }

    fn joint(&self, other: &Self) -> (u32, usize) {
        let d = self.digits.max(other.digits);
        let eff = if d == 0 { FALLBACK_DIGITS } else { d };
        (d, digits_to_bits(eff))
    }

    pub fn from_f64(x: f64, digits: u32) -> Self {
        BigReal::wrap(BigFloat::from_f64(x, digits_to_bits(digits)), digits)
    }

    pub fn from_bigint(x: &BigInt, digits: u32) -> Self {
        let p = digits_to_bits(digits);
        if x.is_zero() {
            return BigReal::wrap(BigFloat::from_u8(0, p), digits);
        }
        let mag = x.magnitude();
        let shift = mag.bits().saturating_sub(p as u64 + 64);
        let head = mag >> shift;
        let words = head.to_u64_digits();
        let sign = if x.is_negative() { Sign::Neg } else { Sign::Pos };
        let e = (64 * words.len() as u64 + shift) as i32;
        let mut v = BigFloat::from_words(&words, sign, e);
        v.set_precision(p, RM).expect("precision within limits");
        BigReal::wrap(v, digits)
    }

    /// Parses a decimal literal such as `"-1.25e-3"`.
    pub fn parse(s: &str, digits: u32) -> Option<Self> {
        let p = digits_to_bits(digits);
        let v = with_consts(|cc| BigFloat::parse(s.trim(), astro_float::Radix::Dec, p, RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(BigReal::wrap(v, digits))
        }
    }

    pub fn precision_digits(&self) -> u32 {
        self.digits
    }

    /// Re-rounds to a different working precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        let mut v = self.value.clone();
        let _ = v.set_precision(digits_to_bits(digits), RM);
        BigReal::wrap(v, digits)
    }

    pub fn is_zero_value(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_bigint(&self) -> Option<BigInt> {
        let half = BigReal::from_f64(0.5, self.effective_digits());
        let shifted = if self.is_negative() {
            self.clone() - half
        } else {
            self.clone() + half
        };
        shifted.trunc_to_bigint()
    }

    fn trunc_to_bigint(&self) -> Option<BigInt> {
        if self.value.is_zero() {
            return Some(BigInt::zero());
        }
        let (words, _, sign, exp, _) = self.value.as_raw_parts()?;
        let mut limbs = Vec::with_capacity(words.len() * 2);
        for w in words {
            limbs.push(*w as u32);
            limbs.push((*w >> 32) as u32);
        }
        let mantissa = BigUint::new(limbs);
        let scale = exp as i64 - 64 * words.len() as i64;
        let mag = if scale >= 0 {
            mantissa << (scale as u64)
        } else {
            mantissa >> ((-scale) as u64)
        };
        let out = BigInt::from(mag);
        Some(if sign == Sign::Neg { -out } else { out })
    }

    /// Decimal rendering with `sig` significant digits.
    pub fn to_decimal(&self, sig: u32) -> String {
        let sig = sig.max(1);
        if self.value.is_nan() {
            return "NaN".into();
        }
        if self.value.is_inf() {
            return if self.value.is_negative() { "-inf".into() } else { "inf".into() };
        }
        if self.value.is_zero() {
            return "0".into();
        }
        let work = sig + 20;
        let x = self.with_digits(work.max(self.effective_digits())).abs();
        let approx = x.to_f64_parts();
        let mut k = approx.floor() as i64;
        let ten = BigInt::from(10u32);
        let mut digits_int;
        loop {
            let e = sig as i64 - 1 - k;
            let scaled = if e >= 0 {
                x.clone() * BigReal::from_bigint(&ten.pow(e as u32), work)
            } else {
                x.clone() / BigReal::from_bigint(&ten.pow((-e) as u32), work)
            };
            digits_int = scaled.round_to_bigint().unwrap_or_default();
            let lo = ten.pow(sig - 1);
            let hi = ten.pow(sig);
            if digits_int >= hi {
                k += 1;
            } else if digits_int < lo {
                k -= 1;
            } else {
                break;
            }
        }
        let d = digits_int.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        format_decimal(sign, &d, k)
    }

    /// log10 of the magnitude, in f64, for non-zero finite values.
    fn to_f64_parts(&self) -> f64 {
        match self.value.as_raw_parts() {
            Some((words, _, _, exp, _)) => {
                let top = *words.last().unwrap_or(&0) as f64 / 18446744073709551616.0;
                top.log10() + exp as f64 * std::f64::consts::LOG10_2
            }
            None => 0.0,
        }
    }
}

fn format_decimal(sign: &str, digits: &str, k: i64) -> String {
    let trimmed = digits.trim_end_matches('0');
    let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
    if (-7..21).contains(&k) {
        if k >= 0 {
            let int_len = (k + 1) as usize;
            if int_len >= trimmed.len() {
                let mut s = trimmed.to_string();
                s.push_str(&"0".repeat(int_len - trimmed.len()));
                format!("{sign}{s}")
            } else {
                format!("{sign}{}.{}", &trimmed[..int_len], &trimmed[int_len..])
            }
        } else {
            let zeros = "0".repeat((-k - 1) as usize);
            format!("{sign}0.{zeros}{trimmed}")
        }
    } else {
        if trimmed.len() == 1 {
            format!("{sign}{trimmed}e{k}")
        } else {
            format!("{sign}{}.{}e{k}", &trimmed[..1], &trimmed[1..])
        }
    }
}

impl Real for BigReal {
    fn from_f64_digits(x: f64, digits: u32) -> Self {
        BigReal::from_f64(x, digits)
    }

    fn from_bigint_digits(x: &BigInt, digits: u32) -> Self {
        BigReal::from_bigint(x, digits)
    }

    fn digits(&self) -> u32 {
        self.effective_digits()
    }

    fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf() {
            return if self.value.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        match self.value.as_raw_parts() {
            Some((words, _, sign, exp, _)) if !self.value.is_zero() => {
                let top = *words.last().unwrap_or(&0) as f64 / 18446744073709551616.0;
                let mag = if exp > 1100 {
                    f64::INFINITY
                } else if exp < -1100 {
                    0.0
                } else {
                    top * 2f64.powi(exp)
                };
                if sign == Sign::Neg {
                    -mag
                } else {
                    mag
                }
            }
            _ => 0.0,
        }
    }

    fn abs(&self) -> Self {
        BigReal::wrap(self.value.abs(), self.digits)
    }

    fn sqrt(&self) -> Self {
        BigReal::wrap(self.value.sqrt(self.bits(), RM), self.digits)
    }

    fn exp(&self) -> Self {
        let p = self.bits();
        BigReal::wrap(with_consts(|cc| self.value.exp(p, RM, cc)), self.digits)
    }

    fn ln(&self) -> Self {
        let p = self.bits();
        BigReal::wrap(with_consts(|cc| self.value.ln(p, RM, cc)), self.digits)
    }

    fn sin(&self) -> Self {
        let p = self.bits();
        BigReal::wrap(with_consts(|cc| self.value.sin(p, RM, cc)), self.digits)
    }

    fn cos(&self) -> Self {
        let p = self.bits();
        BigReal::wrap(with_consts(|cc| self.value.cos(p, RM, cc)), self.digits)
    }

    fn atan(&self) -> Self {
        let p = self.bits();
        BigReal::wrap(with_consts(|cc| self.value.atan(p, RM, cc)), self.digits)
    }

    fn floor(&self) -> Self {
        BigReal::wrap(self.value.floor(), self.digits)
    }

    fn pi(digits: u32) -> Self {
        let p = digits_to_bits(digits);
        BigReal::wrap(with_consts(|cc| cc.pi(p, RM)), digits)
    }

    fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                let (d, p) = self.joint(&rhs);
                BigReal::wrap(self.value.$inner(&rhs.value, p, RM), d)
            }
        }

        impl<'a> $tr<&'a BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &'a BigReal) -> BigReal {
                let (d, p) = self.joint(rhs);
                BigReal::wrap(self.value.$inner(&rhs.value, p, RM), d)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Rem for BigReal {
    type Output = BigReal;
    fn rem(self, rhs: BigReal) -> BigReal {
        let q = (self.clone() / rhs.clone()).floor();
        self - q * rhs
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(self.value.neg(), self.digits)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl Zero for BigReal {
    fn zero() -> Self {
        BigReal::wrap(BigFloat::from_u8(0, 64), 0)
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl One for BigReal {
    fn one() -> Self {
        BigReal::wrap(BigFloat::from_u8(1, 64), 0)
    }
}

impl Num for BigReal {
    type FromStrRadixErr = String;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        if radix != 10 {
            return Err(format!("unsupported radix {radix}"));
        }
        BigReal::parse(s, FALLBACK_DIGITS).ok_or_else(|| format!("invalid decimal literal {s:?}"))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().map(|p| p as u32).unwrap_or(self.effective_digits());
        f.write_str(&self.to_decimal(sig))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(self.effective_digits().min(40)))
    }
}

impl Serialize for BigReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal(self.effective_digits()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(x: f64) -> BigReal {
        BigReal::from_f64(x, 60)
    }

    #[test]
    fn ln2_to_sixty_digits() {
        let got = hp(2.0).ln().to_decimal(60);
        assert_eq!(got, "0.69314718055994530941723212145817656807550013436025525412068");
    }

    #[test]
    fn sqrt3_matches_known_expansion() {
        let got = hp(3.0).sqrt().to_decimal(50);
        assert_eq!(got, "1.7320508075688772935274463415058723669428052538104");
    }

    #[test]
    fn bigint_round_trip() {
        let x: BigInt = "-123456789012345678901234567890123".parse().unwrap();
        let r = BigReal::from_bigint(&x, 60);
        assert_eq!(r.round_to_bigint().unwrap(), x);
    }

    #[test]
    fn huge_bigint_is_truncated_not_lost() {
        let x = BigInt::from(7u32).pow(3000);
        let r = BigReal::from_bigint(&x, 60);
        let l = r.ln();
        let expect = hp(7.0).ln() * hp(3000.0);
        assert!((l - expect).abs() < BigReal::ten_pow_neg(50, 60));
    }

    #[test]
    fn atan2_quadrants_agree_with_f64() {
        for (y, x) in [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0), (0.5, 0.0), (-3.0, 0.0)] {
            let ours = hp(y).atan2(&hp(x)).to_f64();
            assert!((ours - f64::atan2(y, x)).abs() < 1e-15, "{y} {x}");
        }
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(hp(0.0).to_decimal(10), "0");
        assert_eq!(hp(-2.5).to_decimal(10), "-2.5");
        assert_eq!(hp(1234.0).to_decimal(10), "1234");
        assert_eq!(hp(0.00125).to_decimal(3), "0.00125");
        assert_eq!(hp(1e30).to_decimal(3), "1e30");
        assert_eq!(hp(1.5e-30).to_decimal(3), "1.5e-30");
    }

    #[test]
    fn to_f64_is_close() {
        for x in [1.0, -3.25, 1e-200, 7.5e250, 0.1] {
            let got = hp(x).to_f64();
            assert!((got - x).abs() <= x.abs() * 1e-15, "{x} -> {got}");
        }
    }

    #[test]
    fn exact_constants_adopt_operand_precision() {
        let third = BigReal::one() / BigReal::from_f64(3.0, 80);
        assert_eq!(third.precision_digits(), 80);
        let back = third * BigReal::from_f64(3.0, 80) - BigReal::one();
        assert!(back.abs() < BigReal::ten_pow_neg(78, 80));
    }
}
