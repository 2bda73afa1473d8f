//! Elementary functions. Each routine works with guard bits and rounds once
//! at the end, so results carry about one ulp of error at the input precision.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::consts;
use super::BigReal;
use crate::error::{Error, Result};

const GUARD: u32 = 24;

impl BigReal {
    pub fn exp(&self) -> Result<BigReal> {
        let p = self.prec;
        if self.is_zero() {
            return Ok(BigReal::one(p));
        }
        let xf = self.to_f64();
        if xf > 4.0e15 {
            return Err(Error::Domain("exp overflow".into()));
        }
        if xf < -4.0e15 {
            return Ok(BigReal::zero(p));
        }
        let n = libm::round(xf / core::f64::consts::LN_2) as i64;
        let s = 4 + (libm::sqrt(p as f64) / 2.0) as i64;
        let w = p + GUARD + s as u32 + (64 - n.unsigned_abs().leading_zeros());
        let r = if n == 0 {
            self.set_prec(w)
        } else {
            self.set_prec(w) - consts::ln2(w).mul_i64(n)
        };
        let r = r.mul_pow2(-s);
        let mut sum = BigReal::one(w);
        let mut term = BigReal::one(w);
        let eps_top = -(w as i64) - 2;
        let mut k = 1i64;
        loop {
            term = (&term * &r).div_i64(k);
            if term.is_zero() || term.top() < eps_top {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        for _ in 0..s {
            sum = sum.sqr();
        }
        Ok(sum.mul_pow2(n).with_prec(p))
    }

    /// `exp(x) - 1`, accurate for small `|x|`.
    pub fn exp_m1(&self) -> Result<BigReal> {
        let p = self.prec;
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.top() > -2 {
            return Ok(self.set_prec(p + GUARD).exp()? - BigReal::one(p));
        }
        let w = p + GUARD;
        let x = self.set_prec(w);
        let mut term = x.clone();
        let mut sum = x.clone();
        let eps_top = x.top() - w as i64 - 2;
        let mut k = 2i64;
        loop {
            term = (&term * &x).div_i64(k);
            if term.is_zero() || term.top() < eps_top {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        Ok(sum.with_prec(p))
    }

    pub fn ln(&self) -> Result<BigReal> {
        if !self.is_positive() {
            return Err(Error::Domain("ln of a nonpositive value".into()));
        }
        let p = self.prec;
        let w = p + GUARD;
        // self = m 2^k with m in [3/4, 3/2)
        let mut k = self.top();
        let mut m = self.set_prec(w).mul_pow2(-k);
        if m < BigReal::frac(3, 4, 64) {
            m = m.mul_pow2(1);
            k -= 1;
        }
        let d = m - BigReal::one(w);
        let mut v = ln1p_small(&d, w);
        if k != 0 {
            v = v + consts::ln2(w + 64).mul_i64(k);
        }
        Ok(v.with_prec(p))
    }

    /// `ln(1 + x)`, accurate for small `|x|`.
    pub fn ln_1p(&self) -> Result<BigReal> {
        let p = self.prec;
        if self.abs() < BigReal::frac(1, 4, 64) {
            return Ok(ln1p_small(&self.set_prec(p + GUARD), p + GUARD).with_prec(p));
        }
        (self.set_prec(p + GUARD) + BigReal::one(p)).ln().map(|v| v.with_prec(p))
    }

    /// `x^y` for `x > 0`.
    pub fn pow(&self, y: &BigReal) -> Result<BigReal> {
        let p = self.prec.max(y.prec);
        if y.is_integer() && y.abs() < BigReal::from_i64(1 << 20) {
            let n = y.round_to_int().to_i64().expect("small");
            return self.set_prec(p).powi(n);
        }
        let l = self.set_prec(p + GUARD).ln()?;
        (l * y.set_prec(p + GUARD)).exp().map(|v| v.with_prec(p))
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self) -> Result<(BigReal, BigReal)> {
        let p = self.prec;
        let mag = self.top().max(0) as u32;
        let w = p + GUARD + mag;
        let half_pi = consts::pi(w + 8).mul_pow2(-1);
        let x = self.set_prec(w);
        let k = (&x / &half_pi).round_to_int();
        let r = &x - &half_pi * BigReal::from_int(k.clone());
        let quadrant = (k % BigInt::from(4)).to_i64().unwrap_or(0).rem_euclid(4);
        let r2 = r.sqr();
        let eps_top = -(w as i64) - 2;
        let mut s = r.clone();
        let mut term = r.clone();
        let mut j = 1i64;
        loop {
            term = -(&term * &r2).div_i64((2 * j) * (2 * j + 1));
            if term.is_zero() || term.top() < eps_top {
                break;
            }
            s = &s + &term;
            j += 1;
        }
        let mut c = BigReal::one(w);
        let mut term = BigReal::one(w);
        let mut j = 1i64;
        loop {
            term = -(&term * &r2).div_i64((2 * j - 1) * (2 * j));
            if term.is_zero() || term.top() < eps_top {
                break;
            }
            c = &c + &term;
            j += 1;
        }
        let (s, c) = match quadrant {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        Ok((s.with_prec(p), c.with_prec(p)))
    }

    pub fn sin(&self) -> Result<BigReal> {
        Ok(self.sin_cos()?.0)
    }

    pub fn cos(&self) -> Result<BigReal> {
        Ok(self.sin_cos()?.1)
    }

    /// `(sinh x, cosh x)`.
    pub fn sinh_cosh(&self) -> Result<(BigReal, BigReal)> {
        let p = self.prec;
        let w = p + GUARD;
        let x = self.set_prec(w);
        let sinh = if x.top() < -1 {
            let em1 = x.exp_m1()?;
            // sinh x = (e^x - 1)(1 + e^{-x}) / 2
            let ex = &em1 + &BigReal::one(w);
            (&em1 + &(&em1 / &ex)).mul_pow2(-1)
        } else {
            let e = x.exp()?;
            (&e - &e.recip()?).mul_pow2(-1)
        };
        let cosh = (BigReal::one(w) + sinh.sqr()).sqrt()?;
        Ok((sinh.with_prec(p), cosh.with_prec(p)))
    }
}

/// `ln(1+d)` through `2 atanh(d/(2+d))`, for `|d| <= 1/2`.
fn ln1p_small(d: &BigReal, w: u32) -> BigReal {
    if d.is_zero() {
        return BigReal::zero(w);
    }
    let y = d.set_prec(w) / (BigReal::from_i64(2).with_prec(w) + d);
    let y2 = y.sqr();
    let mut pw = y.clone();
    let mut sum = y.clone();
    let eps_top = y.top() - w as i64 - 2;
    let mut k = 1i64;
    loop {
        pw = &pw * &y2;
        let term = pw.div_i64(2 * k + 1);
        if term.is_zero() || term.top() < eps_top {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    sum.mul_pow2(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn close(a: &BigReal, b: &BigReal, digits: i64) -> bool {
        (a - b).abs() <= BigReal::pow10(-digits, P) * b.abs().max(BigReal::one(P))
    }

    #[test]
    fn exp_ln_inverse() {
        for v in [-30.5, -1.0, -1e-9, 0.3, 1.0, 2.0, 17.25, 700.0] {
            let x = BigReal::from_f64(v).unwrap().with_prec(P);
            let y = x.exp().unwrap().ln().unwrap();
            assert!((&y - &x).abs() < BigReal::pow10(-56, P), "v={v}");
        }
    }

    #[test]
    fn known_values() {
        let e = BigReal::one(P).exp().unwrap();
        let e_ref = BigReal::parse("2.71828182845904523536028747135266249775724709369995957496696762772", P).unwrap();
        assert!(close(&e, &e_ref, 58));
        let l10 = BigReal::from_i64(10).with_prec(P).ln().unwrap();
        let l10_ref = BigReal::parse("2.30258509299404568401799145468436420760110148862877297603332790096757", P).unwrap();
        assert!(close(&l10, &l10_ref, 58));
    }

    #[test]
    fn small_argument_forms() {
        let x = BigReal::parse("1e-40", P).unwrap();
        let l = x.ln_1p().unwrap();
        // ln(1+x) = x - x^2/2 + ...
        let expect = &x - &x.sqr().mul_pow2(-1);
        assert!((&l - &expect).abs() < BigReal::pow10(-135, P));
        let em1 = x.exp_m1().unwrap();
        assert!((&em1 - &(&x + &x.sqr().mul_pow2(-1))).abs() < BigReal::pow10(-135, P));
    }

    #[test]
    fn trig() {
        let pi = consts::pi(P);
        let (s, c) = pi.mul_pow2(-2).sin_cos().unwrap();
        assert!(close(&s, &c, 58));
        assert!((pi.sin().unwrap()).abs() < BigReal::pow10(-58, P));
        let (s, c) = BigReal::from_i64(1000).with_prec(P).sin_cos().unwrap();
        assert!(close(&(s.sqr() + c.sqr()), &BigReal::one(P), 58));
        assert!((s.to_f64() - 1000f64.sin()).abs() < 1e-13);
        let (sh, ch) = BigReal::frac(1, 3, P).sinh_cosh().unwrap();
        assert!(close(&(ch.sqr() - sh.sqr()), &BigReal::one(P), 58));
        let (sh, _) = BigReal::parse("1e-30", P).unwrap().sinh_cosh().unwrap();
        assert!((sh.to_f64() - 1e-30).abs() < 1e-45);
    }

    #[test]
    fn general_power() {
        let x = BigReal::from_i64(2).with_prec(P);
        let h = BigReal::frac(1, 2, P);
        assert!(close(&x.pow(&h).unwrap(), &x.sqrt().unwrap(), 58));
        assert_eq!(x.pow(&BigReal::from_i64(10)).unwrap(), BigReal::from_i64(1024));
        assert!(BigReal::from_i64(-1).ln().is_err());
    }
}
