//! Binary floating-point reals with a per-value precision.

pub mod bell;
pub mod consts;
mod elem;
pub mod gamma;
pub mod harmonic;
pub mod polylog;
pub mod sici;
pub mod zeta;

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

const LOG2_10: f64 = core::f64::consts::LOG2_10;

/// Bits carried for a request of `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    libm::ceil(digits as f64 * LOG2_10) as u32 + 4
}

pub fn digits_for_bits(bits: u32) -> u32 {
    libm::floor(bits.saturating_sub(4) as f64 / LOG2_10) as u32
}

/// `mant * 2^exp`, rounded to `prec` significant bits.
///
/// Binary operations round to the larger of the two operand precisions, so
/// small exact integers mix freely with working-precision values. Each
/// elementary operation is correct to within one unit in the last place of
/// its result precision.
#[derive(Clone)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigReal {
    pub const MIN_PREC: u32 = 64;

    pub fn zero(prec: u32) -> Self {
        Self { mant: BigInt::zero(), exp: 0, prec: prec.max(Self::MIN_PREC) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1).with_prec(prec)
    }

    /// Exact integer; precision is the larger of 64 and its bit length.
    pub fn from_int(v: BigInt) -> Self {
        let prec = (v.bits() as u32).max(Self::MIN_PREC);
        Self { mant: v, exp: 0, prec }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_int(BigInt::from(v))
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_int(BigInt::from(v))
    }

    /// Exact conversion of a double; precision 64.
    pub fn from_f64(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Domain("non-finite f64".into()));
        }
        if v == 0.0 {
            return Ok(Self::zero(Self::MIN_PREC));
        }
        let (m, e) = libm::frexp(v);
        let mi = libm::ldexp(m, 53) as i64;
        Ok(Self { mant: BigInt::from(mi), exp: e as i64 - 53, prec: Self::MIN_PREC }.normalized())
    }

    pub fn from_rational(r: &ExactRational, prec: u32) -> Self {
        let prec = prec.max(Self::MIN_PREC);
        if r.is_zero() {
            return Self::zero(prec);
        }
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        let shift = prec as i64 + 2 + db - nb;
        let q = if shift >= 0 {
            (r.numer() << shift as usize) / r.denom()
        } else {
            r.numer() / (r.denom() << (-shift) as usize)
        };
        Self { mant: q, exp: -shift, prec }.normalized()
    }

    pub fn frac(num: i64, den: i64, prec: u32) -> Self {
        Self::from_rational(&ExactRational::frac(num, den), prec)
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> ExactRational {
        if self.exp >= 0 {
            ExactRational::from_int(&self.mant << self.exp as usize)
        } else {
            ExactRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize).expect("nonzero")
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Decimal digits implied by the precision tag.
    pub fn digits(&self) -> u32 {
        digits_for_bits(self.prec)
    }

    /// Re-tag to `prec` bits, rounding when it shrinks.
    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec.max(Self::MIN_PREC);
        self.normalized()
    }

    pub fn set_prec(&self, prec: u32) -> Self {
        self.clone().with_prec(prec)
    }

    fn normalized(mut self) -> Self {
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let shift = (bits - self.prec as u64) as usize;
            let sign = self.mant.sign();
            let mag = self.mant.magnitude() >> (shift - 1);
            let rounded = (mag + 1u32) >> 1;
            self.mant = BigInt::from_biguint(sign, rounded);
            self.exp += shift as i64;
        }
        if self.mant.is_zero() {
            self.exp = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Position just above the leading bit: `2^(top-1) <= |x| < 2^top`.
    /// Zero reports `i64::MIN`.
    pub fn top(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 64).max(0);
        let m = (self.mant.magnitude() >> shift as usize).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        let v = if e > 2000 {
            f64::INFINITY
        } else if e < -2200 {
            0.0
        } else {
            libm::ldexp(m, e as i32)
        };
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Nearest integer (ties away from zero).
    pub fn round_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let sh = (-self.exp) as usize;
        let sign = self.mant.sign();
        let mag = self.mant.magnitude();
        let r = if sh > mag.bits() as usize + 1 { num_bigint::BigUint::zero() } else { ((mag >> (sh - 1)) + 1u32) >> 1 };
        BigInt::from_biguint(sign, r)
    }

    pub fn floor_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            &self.mant >> (-self.exp) as usize
        }
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0 || {
            let sh = (-self.exp) as u64;
            self.mant.is_zero() || self.mant.trailing_zeros().is_none_or(|t| t >= sh)
        }
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let prec = self.prec.max(rhs.prec);
        if rhs.is_zero() {
            return self.clone().with_prec(prec);
        }
        if self.is_zero() {
            let r = rhs.clone().with_prec(prec);
            return if negate_rhs { -r } else { r };
        }
        let (ta, tb) = (self.top(), rhs.top());
        let gap = prec as i64 + 8;
        if tb < ta - gap {
            return self.nudge(rhs.signum() * if negate_rhs { -1 } else { 1 }, prec);
        }
        if ta < tb - gap {
            let r = rhs.nudge(self.signum() * if negate_rhs { -1 } else { 1 }, prec);
            return if negate_rhs { -r } else { r };
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &rhs.mant << (rhs.exp - e) as usize;
        let m = if negate_rhs { a - b } else { a + b };
        Self { mant: m, exp: e, prec }.normalized()
    }

    /// Self plus a sticky contribution far below its last place, so that
    /// rounding still sees the sign of the neglected operand.
    fn nudge(&self, sign: i32, prec: u32) -> Self {
        let v = self.clone().with_prec(prec);
        let pad = prec as i64 + 2 - v.mant.bits() as i64;
        let m = (&v.mant << pad as usize) + sign;
        Self { mant: m, exp: v.exp - pad, prec }.normalized()
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.prec).checked_div(self)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Ok(Self::zero(prec));
        }
        let shift = prec as i64 + 3 + rhs.mant.bits() as i64 - self.mant.bits() as i64;
        let shift = shift.max(0);
        let num = &self.mant << shift as usize;
        let (q, r) = num.div_rem(&rhs.mant);
        // Fold the remainder into a sticky bit.
        let sticky = if r.is_zero() { 0 } else if self.mant.is_negative() == rhs.mant.is_negative() { 1 } else { -1 };
        let q = (q << 1usize) + sticky;
        Ok(Self { mant: q, exp: self.exp - shift - rhs.exp - 1, prec }.normalized())
    }

    pub fn div_i64(&self, d: i64) -> Self {
        self.checked_div(&Self::from_i64(d)).expect("nonzero divisor")
    }

    pub fn mul_i64(&self, m: i64) -> Self {
        let r = Self { mant: &self.mant * m, exp: self.exp, prec: self.prec };
        r.normalized()
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain("sqrt of a negative value".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let want = 2 * (self.prec as i64 + 4);
        let mut shift = (want - self.mant.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = self.mant.magnitude() << shift as usize;
        let r = m.sqrt();
        Ok(Self { mant: BigInt::from(r), exp: (self.exp - shift) / 2, prec: self.prec }.normalized())
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let prec = self.prec;
        let work = self.clone().with_prec(prec + 2 * (64 - (n as u64).leading_zeros()) + 8);
        let mut acc = Self::one(work.prec);
        let mut base = work;
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        Ok(acc.with_prec(prec))
    }

    pub fn max_prec(&self, other: &Self) -> u32 {
        self.prec.max(other.prec)
    }

    fn cmp_exact(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            let mag = ta.cmp(&tb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `|self - other| <= tol`.
    pub fn close_to(&self, other: &Self, tol: &Self) -> bool {
        (self - other).abs() <= *tol
    }

    /// `10^e` at `prec` bits.
    pub fn pow10(e: i64, prec: u32) -> Self {
        let p = BigReal::from_int(num_traits::pow(BigInt::from(10u32), e.unsigned_abs() as usize)).with_prec(prec);
        if e >= 0 {
            p
        } else {
            p.recip().expect("nonzero")
        }
    }

    /// `d.ddd…e±X` with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return alloc::format!("0.{}e0", "0".repeat(digits - 1));
        }
        let mut e10 = libm::floor((self.top() - 1) as f64 * core::f64::consts::LOG10_2) as i64;
        let exact = self.abs().to_rational();
        let lo = num_traits::pow(BigInt::from(10u32), digits - 1);
        let hi = &lo * 10u32;
        let n = loop {
            let k = digits as i64 - 1 - e10;
            let scaled = if k >= 0 {
                exact.clone() * ExactRational::from_int(num_traits::pow(BigInt::from(10u32), k as usize))
            } else {
                exact.clone() * ExactRational::new(1, num_traits::pow(BigInt::from(10u32), (-k) as usize)).unwrap()
            };
            let (q, r) = scaled.numer().div_rem(scaled.denom());
            let n = if (r * 2u32) >= *scaled.denom() { q + 1u32 } else { q };
            if n >= hi {
                e10 += 1;
            } else if n < lo {
                e10 -= 1;
            } else {
                break n;
            }
        };
        let s = n.to_string();
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        out.push_str(&s[..1]);
        if digits > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push('e');
        out.push_str(&e10.to_string());
        out
    }

    /// Fixed-point rendering with `places` decimals.
    pub fn to_fixed(&self, places: usize) -> String {
        self.to_rational().to_decimal(places)
    }

    pub fn parse(s: &str, prec: u32) -> Result<Self> {
        let s = s.trim();
        let (m, e) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| Error::Parse(s.into()))?),
            None => (s, 0),
        };
        let r: ExactRational = m.parse()?;
        let v = Self::from_rational(&r, prec + 8);
        let v = if e == 0 { v } else { v * Self::pow10(e, prec + 8) };
        Ok(v.with_prec(prec))
    }
}

impl FromStr for BigReal {
    type Err = Error;
    /// Precision follows the number of significant digits written (at least 64 bits).
    fn from_str(s: &str) -> Result<Self> {
        let sig = s.split(['e', 'E']).next().unwrap_or("").chars().filter(|c| c.is_ascii_digit()).count();
        Self::parse(s, bits_for_digits(sig as u32 + 2))
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(self.digits() as usize);
        f.write_str(&self.to_sci(d))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{} bits]", self.to_sci(self.digits().min(40) as usize), self.prec)
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(mut self) -> BigReal {
        self.mant = -self.mant;
        self
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -(self.clone())
    }
}

macro_rules! forward {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &BigReal) -> BigReal {
                $body(self, rhs)
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                $body(&self, &rhs)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &BigReal) -> BigReal {
                $body(&self, rhs)
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                $body(self, &rhs)
            }
        }
    };
}

forward!(Add, add, |a: &BigReal, b: &BigReal| a.add_impl(b, false));
forward!(Sub, sub, |a: &BigReal, b: &BigReal| a.add_impl(b, true));
forward!(Mul, mul, |a: &BigReal, b: &BigReal| {
    BigReal { mant: &a.mant * &b.mant, exp: a.exp + b.exp, prec: a.prec.max(b.prec) }.normalized()
});
// Panics on a zero divisor; `checked_div` is the fallible form.
forward!(Div, div, |a: &BigReal, b: &BigReal| a.checked_div(b).expect("division by zero"));

impl core::iter::Sum for BigReal {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(BigReal::zero(BigReal::MIN_PREC), |a, b| a + b)
    }
}

impl From<i64> for BigReal {
    fn from(v: i64) -> Self {
        BigReal::from_i64(v)
    }
}

impl From<u64> for BigReal {
    fn from(v: u64) -> Self {
        BigReal::from_u64(v)
    }
}

/// Absolute tolerance `10^(-e)` at `prec` bits.
pub fn tol10(e: i64, prec: u32) -> BigReal {
    BigReal::pow10(-e, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> BigReal {
        BigReal::from_i64(v)
    }

    #[test]
    fn arithmetic_basics() {
        let p = 200;
        let third = r(1).with_prec(p) / r(3);
        let back = &third * &r(3);
        assert!((back - r(1)).abs() < BigReal::pow10(-58, p));
        assert_eq!(r(7) + r(-7), r(0));
        assert_eq!((r(5) - r(8)).to_f64(), -3.0);
        assert_eq!(r(-3).abs(), r(3));
    }

    #[test]
    fn far_apart_addition_keeps_larger() {
        let big = r(1).with_prec(100);
        let tiny = r(1).mul_pow2(-500);
        assert_eq!(&big + &tiny, big);
        assert_eq!(&big - &tiny, big);
        assert!(&tiny - &big < r(0));
    }

    #[test]
    fn sqrt_and_powers() {
        let two = r(2).with_prec(300);
        let s = two.sqrt().unwrap();
        assert!((s.sqr() - r(2)).abs() < BigReal::pow10(-85, 300));
        assert_eq!(r(3).powi(4).unwrap(), r(81));
        let inv = r(2).with_prec(100).powi(-3).unwrap();
        assert_eq!(inv.to_f64(), 0.125);
        assert!(r(-1).sqrt().is_err());
    }

    #[test]
    fn f64_round_trip() {
        for v in [0.1, -2.5e-300, 1.7e300, 3.0] {
            assert_eq!(BigReal::from_f64(v).unwrap().to_f64(), v);
        }
    }

    #[test]
    fn decimal_io() {
        let x = BigReal::parse("3.14159265358979323846264338327950288", 128).unwrap();
        assert_eq!(x.to_sci(10), "3.141592654e0");
        assert_eq!(BigReal::parse("-1.25e-3", 80).unwrap().to_sci(3), "-1.25e-3");
        assert_eq!(r(1000).to_sci(2), "1.0e3");
        assert_eq!(r(0).to_sci(3), "0.00e0");
        assert_eq!(BigReal::frac(1, 8, 80).to_fixed(4), "0.1250");
        let y: BigReal = "2.5".parse().unwrap();
        assert_eq!(y.to_f64(), 2.5);
    }

    #[test]
    fn rational_round_trip() {
        let q = ExactRational::frac(-19, 720);
        let x = BigReal::from_rational(&q, 256);
        let back = x.to_rational();
        assert!((back - q).abs() < ExactRational::new(1, BigInt::one() << 250usize).unwrap());
    }

    #[test]
    fn ordering_and_integer_parts() {
        assert!(r(2) > BigReal::frac(3, 2, 80));
        assert!(r(-2) < BigReal::frac(-3, 2, 80));
        assert_eq!(BigReal::frac(5, 2, 80).round_to_int(), BigInt::from(3));
        assert_eq!(BigReal::frac(-5, 2, 80).floor_to_int(), BigInt::from(-3));
        assert!(r(12).is_integer());
        assert!(!BigReal::frac(1, 2, 80).is_integer());
    }

    #[test]
    fn digits_tag() {
        assert_eq!(digits_for_bits(bits_for_digits(50)), 50);
        assert_eq!(BigReal::one(bits_for_digits(30)).digits(), 30);
    }
}
