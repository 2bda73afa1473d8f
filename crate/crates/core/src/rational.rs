//! Arbitrary-precision signed rationals.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Reduced fraction with positive denominator.
///
/// The wrapped `BigRational` normalizes after every operation, so the
/// invariants hold by construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, Error> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(BigRational::new(num.into(), den)))
    }

    /// Panics on a zero denominator; for literals.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("zero denominator")
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    pub fn powi(&self, e: i32) -> Self {
        if e < 0 {
            return self.recip().expect("zero to a negative power").powi(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Nearest f64 (computed from a scaled integer quotient so huge
    /// numerators and denominators do not overflow).
    pub fn to_f64(&self) -> f64 {
        if let (Some(n), Some(d)) = (self.numer().to_f64(), self.denom().to_f64()) {
            if n.is_finite() && d.is_finite() && d != 0.0 {
                return n / d;
            }
        }
        let nb = self.numer().bits() as i64;
        let db = self.denom().bits() as i64;
        let shift = 64 - (nb - db);
        let q = if shift >= 0 {
            (self.numer() << shift as usize) / self.denom()
        } else {
            self.numer() / (self.denom() << (-shift) as usize)
        };
        libm::ldexp(q.to_f64().unwrap_or(0.0), (-shift) as i32)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    /// Fixed-point decimal rendering with `digits` places, rounded half away from zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10u32), digits);
        let scaled = self.numer() * &scale;
        let den = self.denom();
        let (mut q, r) = num_integer::Integer::div_rem(&scaled.abs(), den);
        if (r * 2u32) >= *den {
            q += 1u32;
        }
        let mut s = q.to_string();
        if s.len() <= digits {
            let pad = digits + 1 - s.len();
            s.insert_str(0, &"0".repeat(pad));
        }
        let split = s.len() - digits;
        let mut out = String::new();
        if self.is_negative() && s.bytes().any(|b| b != b'0') {
            out.push('-');
        }
        out.push_str(&s[..split]);
        if digits > 0 {
            out.push('.');
            out.push_str(&s[split..]);
        }
        out
    }
}

impl From<BigRational> for ExactRational {
    fn from(v: BigRational) -> Self {
        Self(v)
    }
}

impl From<i64> for ExactRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigInt> for ExactRational {
    fn from(v: BigInt) -> Self {
        Self::from_int(v)
    }
}

impl fmt::Display for ExactRational {
    /// Integers print bare; everything else as `num/den`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                Self::new(n, d)
            }
            None => {
                // Plain integer or terminating decimal.
                if let Some((ip, fp)) = s.split_once('.') {
                    let neg = ip.starts_with('-');
                    let digits: String = [ip.trim_start_matches(['-', '+']), fp].concat();
                    let n = BigInt::from_str(&digits).map_err(|_| bad())?;
                    let d = num_traits::pow(BigInt::from(10u32), fp.len());
                    Self::new(if neg { -n } else { n }, d)
                } else {
                    Ok(Self::from_int(BigInt::from_str(s).map_err(|_| bad())?))
                }
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: &ExactRational) -> ExactRational {
                ExactRational($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $tr<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: ExactRational) -> ExactRational {
                ExactRational($tr::$m(self.0, rhs.0))
            }
        }
        impl $tr<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: &ExactRational) -> ExactRational {
                ExactRational($tr::$m(self.0, &rhs.0))
            }
        }
        impl $tr<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: ExactRational) -> ExactRational {
                ExactRational($tr::$m(&self.0, rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
// Division panics on zero like the primitive types; use `checked_div` otherwise.
binop!(Div, div);

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        self.0 += &rhs.0;
    }
}
impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        self.0 -= &rhs.0;
    }
}
impl MulAssign<&ExactRational> for ExactRational {
    fn mul_assign(&mut self, rhs: &ExactRational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}
impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl core::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl PartialEq<i64> for ExactRational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for ExactRational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

/// Shorthand for `ExactRational::frac`.
pub fn q(num: i64, den: i64) -> ExactRational {
    ExactRational::frac(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_signs() {
        let r = ExactRational::new(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["19/720", "-3/160", "7", "0"] {
            let r: ExactRational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("0.25".parse::<ExactRational>().unwrap(), q(1, 4));
        assert_eq!("-1.5".parse::<ExactRational>().unwrap(), q(-3, 2));
        assert!("1/0".parse::<ExactRational>().is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q(3, 160).to_decimal(5), "0.01875");
        assert_eq!(q(-1, 3).to_decimal(4), "-0.3333");
        assert_eq!(q(2, 3).to_decimal(0), "1");
    }

    #[test]
    fn f64_of_huge_parts() {
        let big = num_traits::pow(BigInt::from(10u32), 400);
        let r = ExactRational::new(&big * 3u32, &big * 7u32).unwrap();
        assert!((r.to_f64() - 3.0 / 7.0).abs() < 1e-16);
        let r = ExactRational::new(BigInt::one(), big).unwrap();
        assert_eq!(r.to_f64(), 0.0);
    }

    #[test]
    fn pow() {
        assert_eq!(q(2, 3).powi(3), q(8, 27));
        assert_eq!(q(2, 3).powi(-2), q(9, 4));
    }
}
