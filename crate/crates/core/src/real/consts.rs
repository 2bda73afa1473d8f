//! Mathematical constants and the memoized constant catalog.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::race::OnceBox;

use super::{bits_for_digits, digits_for_bits, gamma, zeta, BigReal};
use crate::error::{Error, Result};
use crate::exact_kernel::bernoulli;
use crate::rational::ExactRational;

const CACHE_BITS: u32 = 4096;
const GAMMA_CACHE_BITS: u32 = 1200;

static PI: OnceBox<BigReal> = OnceBox::new();
static LN2: OnceBox<BigReal> = OnceBox::new();
static EULER: OnceBox<BigReal> = OnceBox::new();

/// `sum_k (-1)^k 2^bits / ((2k+1) m^(2k+1))` in fixed point.
fn atan_inv_fixed(m: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits as usize;
    let m2 = BigInt::from(m * m);
    let mut pw = one / m;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !pw.is_zero() {
        let t = &pw / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        pw /= &m2;
        k += 1;
    }
    sum
}

/// `sum_k 2^bits / ((2k+1) m^(2k+1))` in fixed point.
fn atanh_inv_fixed(m: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits as usize;
    let m2 = BigInt::from(m * m);
    let mut pw = one / m;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !pw.is_zero() {
        sum += &pw / (2 * k + 1);
        pw /= &m2;
        k += 1;
    }
    sum
}

fn fixed_to_real(v: BigInt, bits: u32, prec: u32) -> BigReal {
    BigReal::from_int(v).mul_pow2(-(bits as i64)).with_prec(prec)
}

fn compute_pi(prec: u32) -> BigReal {
    let b = prec + 32;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let v = atan_inv_fixed(5, b) * 16 - atan_inv_fixed(239, b) * 4;
    fixed_to_real(v, b, prec)
}

fn compute_ln2(prec: u32) -> BigReal {
    let b = prec + 32;
    fixed_to_real(atanh_inv_fixed(3, b) * 2, b, prec)
}

/// Euler's constant by Euler–Maclaurin on the harmonic numbers.
fn compute_euler(prec: u32) -> BigReal {
    let w = prec + 32;
    let n = (w / 2).max(16) as i64;
    // H_{n-1} as one exact fraction keeps the sum free of rounding.
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for k in 1..n {
        num = num * k + &den;
        den *= k;
    }
    let nn = BigReal::from_i64(n).with_prec(w);
    let mut g = BigReal::from_rational(&ExactRational::new(num, den).expect("nonzero"), w) - nn.ln().expect("positive")
        + nn.recip().expect("nonzero").mul_pow2(-1);
    let inv2 = nn.sqr().recip().expect("nonzero");
    let mut pw = inv2.clone();
    let eps_top = -(w as i64) - 2;
    for j in 1.. {
        let b = BigReal::from_rational(&bernoulli(2 * j), w);
        let term = (b * &pw).div_i64(2 * j as i64);
        if term.top() < eps_top {
            break;
        }
        g = g + term;
        pw = &pw * &inv2;
    }
    g.with_prec(prec)
}

fn cached(cell: &'static OnceBox<BigReal>, cap: u32, prec: u32, f: fn(u32) -> BigReal) -> BigReal {
    if prec + 16 > cap {
        return f(prec);
    }
    cell.get_or_init(|| Box::new(f(cap))).set_prec(prec)
}

pub fn pi(prec: u32) -> BigReal {
    cached(&PI, CACHE_BITS, prec, compute_pi)
}

pub fn ln2(prec: u32) -> BigReal {
    cached(&LN2, CACHE_BITS, prec, compute_ln2)
}

pub fn euler_gamma(prec: u32) -> BigReal {
    cached(&EULER, GAMMA_CACHE_BITS, prec, compute_euler)
}

pub fn ln_2pi(prec: u32) -> Result<BigReal> {
    pi(prec + 8).mul_pow2(1).ln().map(|v| v.with_prec(prec))
}

/// Names of the catalog entries in a fixed order.
pub const CATALOG_NAMES: [&str; 10] =
    ["gamma", "pi", "ln_2pi", "ln_A", "zeta2", "zeta3", "zeta4", "zeta_prime_m1", "zeta_prime_m3", "zeta_prime_2"];

/// Named constants at one precision, computed once.
#[derive(Debug, Clone)]
pub struct ConstantCatalog {
    digits: u32,
    pub gamma: BigReal,
    pub pi: BigReal,
    pub ln_2pi: BigReal,
    pub ln_a: BigReal,
    pub zeta2: BigReal,
    pub zeta3: BigReal,
    pub zeta4: BigReal,
    pub zeta_prime_m1: BigReal,
    pub zeta_prime_m3: BigReal,
    pub zeta_prime_2: BigReal,
}

impl ConstantCatalog {
    /// Computes every entry at `digits` decimal digits. The value of
    /// `ζ'(-3)` is accepted only if the direct Euler–Maclaurin route and the
    /// functional-equation route agree to `digits - 10` places.
    pub fn compute(digits: u32) -> Result<Self> {
        let prec = bits_for_digits(digits);
        let w = prec + 32;
        let gamma = euler_gamma(w);
        let pi = pi(w);
        let ln_2pi = ln_2pi(w)?;
        let one = BigReal::one(w);
        let zeta2 = zeta::zeta(&BigReal::from_i64(2).with_prec(w))?;
        let zeta3 = zeta::zeta(&BigReal::from_i64(3).with_prec(w))?;
        let zeta4 = zeta::zeta(&BigReal::from_i64(4).with_prec(w))?;
        let zeta_prime_m1 = zeta::zeta_derivative(&(-&one))?;
        let ln_a = BigReal::frac(1, 12, w) - &zeta_prime_m1;
        let zeta_prime_m3 = zeta::zeta_derivative(&BigReal::from_i64(-3).with_prec(w))?;
        let zeta_prime_2 = zeta::zeta_derivative(&BigReal::from_i64(2).with_prec(w))?;
        let fe = zeta_prime_m3_functional(w)?;
        let tol = BigReal::pow10(-(digits as i64 - 10), w);
        if (&fe - &zeta_prime_m3).abs() > tol {
            return Err(Error::Accuracy {
                estimate: zeta_prime_m3.to_f64(),
                error: (&fe - &zeta_prime_m3).to_f64(),
                levels: 0,
            });
        }
        let r = |v: BigReal| v.with_prec(prec);
        Ok(Self {
            digits,
            gamma: r(gamma),
            pi: r(pi),
            ln_2pi: r(ln_2pi),
            ln_a: r(ln_a),
            zeta2: r(zeta2),
            zeta3: r(zeta3),
            zeta4: r(zeta4),
            zeta_prime_m1: r(zeta_prime_m1),
            zeta_prime_m3: r(zeta_prime_m3),
            zeta_prime_2: r(zeta_prime_2),
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn prec(&self) -> u32 {
        self.gamma.prec()
    }

    pub fn get(&self, name: &str) -> Option<&BigReal> {
        Some(match name {
            "gamma" => &self.gamma,
            "pi" => &self.pi,
            "ln_2pi" => &self.ln_2pi,
            "ln_A" => &self.ln_a,
            "zeta2" => &self.zeta2,
            "zeta3" => &self.zeta3,
            "zeta4" => &self.zeta4,
            "zeta_prime_m1" => &self.zeta_prime_m1,
            "zeta_prime_m3" => &self.zeta_prime_m3,
            "zeta_prime_2" => &self.zeta_prime_2,
            _ => return None,
        })
    }

    /// `(name, decimal)` pairs with `digits + 5` significant digits.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        CATALOG_NAMES
            .iter()
            .map(|n| (*n, self.get(n).expect("listed").to_sci(self.digits as usize + 5)))
            .collect()
    }

    /// Rebuilds a catalog from stored decimals. Entries stored at fewer digits
    /// than requested are rejected.
    pub fn from_entries<'a>(digits: u32, entries: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let prec = bits_for_digits(digits);
        let mut vals: Vec<Option<BigReal>> = alloc::vec![None; CATALOG_NAMES.len()];
        for (name, text) in entries {
            let idx = CATALOG_NAMES
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| Error::Parse(format!("unknown constant {name}")))?;
            let sig = text.split(['e', 'E']).next().unwrap_or("").chars().filter(|c| c.is_ascii_digit()).count();
            if (sig as u32) < digits + 1 {
                return Err(Error::Domain(format!("{name} stored at {sig} digits, need {}", digits + 1)));
            }
            vals[idx] = Some(BigReal::parse(text, prec)?);
        }
        let mut it = vals.into_iter().zip(CATALOG_NAMES);
        let mut next = || {
            let (v, n) = it.next().expect("fixed length");
            v.ok_or_else(|| Error::Parse(format!("missing constant {n}")))
        };
        Ok(Self {
            digits,
            gamma: next()?,
            pi: next()?,
            ln_2pi: next()?,
            ln_a: next()?,
            zeta2: next()?,
            zeta3: next()?,
            zeta4: next()?,
            zeta_prime_m1: next()?,
            zeta_prime_m3: next()?,
            zeta_prime_2: next()?,
        })
    }
}

/// `ζ'(-3) = -ζ(-3) [ -ln 2π + ψ(4) + ζ'(4)/ζ(4) ]` with `ζ(-3) = 1/120`.
pub fn zeta_prime_m3_functional(prec: u32) -> Result<BigReal> {
    let w = prec + 16;
    let four = BigReal::from_i64(4).with_prec(w);
    let z4 = zeta::zeta_jet(&four, 1)?;
    let bracket = -ln_2pi(w)? + gamma::digamma(&four)? + &z4[1] / &z4[0];
    Ok((-bracket).div_i64(120).with_prec(prec))
}

/// `ζ'(-1)` from the same functional equation at `s = 2`, with `ζ(-1) = -1/12`.
pub fn zeta_prime_m1_functional(prec: u32) -> Result<BigReal> {
    let w = prec + 16;
    let two = BigReal::from_i64(2).with_prec(w);
    let z2 = zeta::zeta_jet(&two, 1)?;
    let bracket = -ln_2pi(w)? + gamma::digamma(&two)? + &z2[1] / &z2[0];
    Ok(bracket.div_i64(12).with_prec(prec))
}

pub fn digits_of(prec: u32) -> u32 {
    digits_for_bits(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_100: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";
    const GAMMA_60: &str = "0.577215664901532860606512090082402431042159335939923598805767234884867726777664670936947063";

    #[test]
    fn pi_ln2_gamma_digits() {
        let p = bits_for_digits(100);
        let pr = BigReal::parse(PI_100, p + 20).unwrap();
        assert!((pi(p) - pr).abs() < BigReal::pow10(-99, p));
        let big = pi(CACHE_BITS + 100);
        assert!((big.set_prec(p) - pi(p)).abs() < BigReal::pow10(-99, p));
        let l2 = BigReal::parse("0.69314718055994530941723212145817656807550013436025525412068000949339362196969471560586332699641868754", p + 20).unwrap();
        assert!((ln2(p) - l2).abs() < BigReal::pow10(-99, p));
        let g = BigReal::parse(GAMMA_60, p).unwrap();
        let pg = bits_for_digits(85);
        assert!((euler_gamma(pg) - g).abs() < BigReal::pow10(-84, pg));
        assert!((compute_euler(bits_for_digits(40)) - euler_gamma(bits_for_digits(40))).abs() < BigReal::pow10(-39, p));
    }

    #[test]
    fn catalog_consistency() {
        let c = ConstantCatalog::compute(50).unwrap();
        let p = c.prec();
        let ln_a_printed = BigReal::parse("0.248754477033784262547253", p).unwrap();
        assert!((&c.ln_a - &ln_a_printed).abs() < BigReal::pow10(-24, p));
        let pi2 = c.pi.sqr();
        assert!((&c.zeta2 - &pi2.div_i64(6)).abs() < BigReal::pow10(-48, p));
        assert!((&c.zeta4 - &pi2.sqr().div_i64(90)).abs() < BigReal::pow10(-48, p));
        let fe = zeta_prime_m1_functional(p).unwrap();
        assert!((&fe - &c.zeta_prime_m1).abs() < BigReal::pow10(-45, p));
        let round = ConstantCatalog::from_entries(50, c.entries().iter().map(|(n, s)| (*n, s.as_str()))).unwrap();
        assert_eq!(round.ln_a.to_sci(50), c.ln_a.to_sci(50));
        let entries = c.entries();
        assert!(ConstantCatalog::from_entries(80, entries.iter().map(|(n, s)| (*n, s.as_str()))).is_err());
    }

    #[test]
    fn precision_monotonicity() {
        let a = ConstantCatalog::compute(50).unwrap();
        let b = ConstantCatalog::compute(80).unwrap();
        let p = a.prec();
        for n in CATALOG_NAMES {
            let d = (a.get(n).unwrap() - &b.get(n).unwrap().set_prec(p)).abs();
            assert!(d < BigReal::pow10(-45, p), "{n}");
        }
    }
}
