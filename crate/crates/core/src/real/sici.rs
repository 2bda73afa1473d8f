//! Sine and cosine integrals.

use super::{consts, BigReal};
use crate::error::{Error, Result};

const GUARD: u32 = 24;

/// Power series carry about `1.45 x` extra bits of cancellation; past
/// `x ≈ 0.75 w` the asymptotic series reaches `2^{-w}` before diverging.
fn use_asymptotic(x: f64, w: u32) -> bool {
    x > 0.75 * w as f64 + 10.0
}

/// `(f, g)` auxiliary functions from their asymptotic series.
fn aux_fg(x: &BigReal, w: u32) -> (BigReal, BigReal) {
    let inv = x.recip().expect("positive");
    let inv2 = inv.sqr();
    let mut f = BigReal::zero(w);
    let mut g = BigReal::zero(w);
    // f ~ (1/x) sum (-1)^k (2k)!/x^{2k}, g ~ (1/x^2) sum (-1)^k (2k+1)!/x^{2k}
    let mut tf = inv.clone();
    let mut tg = inv2.clone();
    let eps_top = -(w as i64) - 2 + inv.top();
    let mut k = 0i64;
    loop {
        f = &f + &tf;
        g = &g + &tg;
        k += 1;
        let ntf = -(&tf * &inv2).mul_i64((2 * k - 1) * (2 * k));
        let ntg = -(&tg * &inv2).mul_i64((2 * k) * (2 * k + 1));
        if ntf.top() < eps_top || ntf.abs() > tf.abs() {
            break;
        }
        tf = ntf;
        tg = ntg;
    }
    (f, g)
}

pub fn sine_integral(x: &BigReal) -> Result<BigReal> {
    if x.is_negative() {
        return Ok(-sine_integral(&-x)?);
    }
    let p = x.prec();
    if x.is_zero() {
        return Ok(BigReal::zero(p));
    }
    let xf = x.to_f64();
    let w = p + GUARD;
    if use_asymptotic(xf, w) {
        let x = x.set_prec(w);
        let (f, g) = aux_fg(&x, w);
        let (s, c) = x.sin_cos()?;
        let v = consts::pi(w).mul_pow2(-1) - f * c - g * s;
        return Ok(v.with_prec(p));
    }
    let w = w + (1.45 * xf) as u32;
    let x = x.set_prec(w);
    let x2 = x.sqr();
    // sum (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
    let mut pw = x.clone();
    let mut sum = x.clone();
    let eps_top = x.top() - w as i64 - 2;
    let mut k = 1i64;
    loop {
        pw = -(&pw * &x2).div_i64((2 * k) * (2 * k + 1));
        let t = pw.div_i64(2 * k + 1);
        if t.top() < eps_top && (k as f64) > xf {
            break;
        }
        sum = &sum + &t;
        k += 1;
    }
    Ok(sum.with_prec(p))
}

pub fn cosine_integral(x: &BigReal) -> Result<BigReal> {
    if !x.is_positive() {
        return Err(Error::Domain("Ci needs x > 0".into()));
    }
    let p = x.prec();
    let xf = x.to_f64();
    let w = p + GUARD;
    if use_asymptotic(xf, w) {
        let x = x.set_prec(w);
        let (f, g) = aux_fg(&x, w);
        let (s, c) = x.sin_cos()?;
        return Ok((f * s - g * c).with_prec(p));
    }
    let w = w + (1.45 * xf.max(0.0)) as u32;
    let x = x.set_prec(w);
    let x2 = x.sqr();
    // γ + ln x + sum_{k>=1} (-1)^k x^{2k} / (2k (2k)!)
    let mut sum = consts::euler_gamma(w) + x.ln()?;
    let mut pw = BigReal::one(w);
    let eps_top = -(w as i64) - 2;
    let mut k = 1i64;
    loop {
        pw = -(&pw * &x2).div_i64((2 * k - 1) * (2 * k));
        let t = pw.div_i64(2 * k);
        if t.top() < eps_top && (k as f64) > xf {
            break;
        }
        sum = &sum + &t;
        k += 1;
    }
    Ok(sum.with_prec(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::bits_for_digits;

    #[test]
    fn known_values() {
        let p = bits_for_digits(50);
        assert!(sine_integral(&BigReal::zero(p)).unwrap().is_zero());
        let pi = consts::pi(p);
        let si_pi = sine_integral(&pi).unwrap();
        let reference = BigReal::parse("1.851937051982466170361053370157991363345809728981", p).unwrap();
        assert!((si_pi - reference).abs() < BigReal::pow10(-47, p));
        // Ci(1) = 0.3374039229009681346626...
        let ci1 = cosine_integral(&BigReal::one(p)).unwrap();
        assert!((ci1.to_f64() - 0.33740392290096813).abs() < 1e-15);
        assert!(cosine_integral(&BigReal::zero(p)).is_err());
    }

    #[test]
    fn large_argument_limit() {
        let p = bits_for_digits(30);
        let half_pi = consts::pi(p).mul_pow2(-1);
        let x = BigReal::from_i64(1_000_000).with_prec(p);
        let si = sine_integral(&x).unwrap();
        assert!((&si - &half_pi).abs() < BigReal::pow10(-5, p));
        // both branches agree near the switch point
        let w = p + GUARD;
        let xs = (0.75 * w as f64 + 10.0) as i64;
        let a = sine_integral(&BigReal::from_i64(xs).with_prec(p)).unwrap();
        let b = sine_integral(&BigReal::from_i64(xs + 1).with_prec(p)).unwrap();
        assert!((a - b).abs() < BigReal::pow10(-1, p));
    }
}
