//! Hurwitz zeta function and its `s`-derivatives by Euler–Maclaurin.
//!
//! Every quantity is carried as a truncated Taylor jet in `ε` around the
//! requested `s`, so `∂_s^k ζ(s, a)` comes out of the same summation. The
//! argument is shifted to `X = M + a` with `X ≈ 0.16·w + |s|`, which puts the
//! smallest Euler–Maclaurin term near `e^{-2πX}`, far below `2^{-w}`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::{bits_for_digits, BigReal};
use crate::error::{Error, Result};
use crate::exact_kernel::{bernoulli, factorial};
use crate::rational::ExactRational;

type Jet = Vec<BigReal>;

fn jet_mul(a: &[BigReal], b: &[BigReal], w: u32) -> Jet {
    let n = a.len().min(b.len());
    let mut out = vec![BigReal::zero(w); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
        }
    }
    out
}

/// Taylor jet of `x^{-(s+ε)}` given `ln x`.
fn pow_jet(ln_x: &BigReal, s: &BigReal, order: usize, w: u32) -> Result<Jet> {
    let base = (-(s * ln_x)).exp()?;
    let mut out = Vec::with_capacity(order + 1);
    let mut c = base;
    for j in 0..=order {
        if j > 0 {
            c = -(&c * ln_x).div_i64(j as i64);
        }
        out.push(c.set_prec(w));
    }
    Ok(out)
}

fn jet_top(j: &[BigReal]) -> i64 {
    j.iter().map(|v| v.top()).max().unwrap_or(i64::MIN)
}

/// Taylor coefficients of `ζ(s+ε, a)`, or of `ζ(1+ε, a) - 1/ε` when
/// `at_pole` is set (then `s` must be 1).
fn em_jet(s: &BigReal, a: &BigReal, order: usize, at_pole: bool) -> Result<Jet> {
    let p = s.max_prec(a);
    let w = p + 32 + 6 * order as u32;
    let s = s.set_prec(w);
    let a = a.set_prec(w);
    let sf = s.to_f64();
    let x0 = 0.16 * w as f64 + sf.abs() + 2.0 * order as f64 + 4.0;
    let af = a.to_f64();
    let m = libm::ceil(x0 - af).max(0.0) as i64;

    let mut acc = vec![BigReal::zero(w); order + 1];
    let integer_s = s.is_integer() && order == 0;
    for n in 0..m {
        let x = &a + &BigReal::from_i64(n);
        if integer_s {
            let e = s.round_to_int().to_i64().expect("small");
            acc[0] = &acc[0] + &x.powi(-e)?;
        } else {
            let jet = pow_jet(&x.ln()?, &s, order, w)?;
            for (t, v) in acc.iter_mut().zip(jet) {
                *t = &*t + &v;
            }
        }
    }

    let x = &a + &BigReal::from_i64(m);
    let lx = x.ln()?;
    let px = pow_jet(&lx, &s, order, w)?;

    if at_pole {
        // X^{-ε}/ε - 1/ε = sum_k (-ln X)^{k+1}/(k+1)! ε^k
        let mut c = BigReal::one(w);
        for (k, t) in acc.iter_mut().enumerate() {
            c = -(&c * &lx).div_i64(k as i64 + 1);
            *t = &*t + &c;
        }
    } else {
        let d = &s - &BigReal::one(w);
        let dinv = d.recip()?;
        let mut inv = Vec::with_capacity(order + 1);
        let mut c = dinv.clone();
        for _ in 0..=order {
            inv.push(c.clone());
            c = -(&c * &dinv);
        }
        let pole = jet_mul(&px, &inv, w);
        for (t, v) in acc.iter_mut().zip(pole) {
            *t = &*t + &(v * &x);
        }
    }
    for (t, v) in acc.iter_mut().zip(px.iter()) {
        *t = &*t + &v.mul_pow2(-1);
    }

    // Correction terms B_{2j}/(2j)! (s+ε)_{2j-1} X^{-s-ε-2j+1}
    let mut poch = vec![BigReal::zero(w); order + 1];
    poch[0] = s.clone();
    if order >= 1 {
        poch[1] = BigReal::one(w);
    }
    let xinv = x.recip()?;
    let xinv2 = xinv.sqr();
    let mut xp = xinv.clone();
    let scale = jet_top(&acc).max(0);
    let eps_top = scale - w as i64 - 2;
    let mut last = i64::MAX;
    let mut growing = 0;
    for j in 1usize.. {
        let b = ExactRational::checked_div(&bernoulli(2 * j), &ExactRational::from_int(factorial(2 * j as u64)))?;
        let coef = BigReal::from_rational(&b, w) * &xp;
        let term: Jet = jet_mul(&poch, &px, w).into_iter().map(|v| v * &coef).collect();
        let top = jet_top(&term);
        if top < eps_top {
            break;
        }
        if top > last {
            growing += 1;
            if growing > 3 {
                return Err(Error::Accuracy { estimate: acc[0].to_f64(), error: libm::ldexp(1.0, top as i32), levels: j as u32 });
            }
        }
        last = top;
        for (t, v) in acc.iter_mut().zip(term) {
            *t = &*t + &v;
        }
        let k1 = BigReal::from_i64(2 * j as i64 - 1);
        let k2 = BigReal::from_i64(2 * j as i64);
        let f1 = [&s + &k1, BigReal::one(w)];
        let f2 = [&s + &k2, BigReal::one(w)];
        poch = jet_mul(&jet_mul(&poch, &pad(&f1, order, w), w), &pad(&f2, order, w), w);
        xp = &xp * &xinv2;
    }
    Ok(acc.into_iter().map(|v| v.with_prec(p)).collect())
}

fn pad(v: &[BigReal], order: usize, w: u32) -> Jet {
    let mut out: Jet = v.iter().take(order + 1).cloned().collect();
    while out.len() < order + 1 {
        out.push(BigReal::zero(w));
    }
    out
}

fn check_a(a: &BigReal) -> Result<()> {
    if a.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Hurwitz parameter a = {} must be positive", a.to_sci(10))))
    }
}

fn check_s(s: &BigReal) -> Result<()> {
    if *s == BigReal::from_i64(1) {
        Err(Error::Pole("s = 1".into()))
    } else {
        Ok(())
    }
}

/// `[ζ(s,a), ∂_s ζ(s,a), …, ∂_s^order ζ(s,a)]`.
pub fn hurwitz_zeta_jet(s: &BigReal, a: &BigReal, order: usize) -> Result<Vec<BigReal>> {
    check_s(s)?;
    check_a(a)?;
    let jet = em_jet(s, a, order, false)?;
    Ok(jet.into_iter().enumerate().map(|(k, v)| v.mul_i64((1..=k as i64).product::<i64>().max(1))).collect())
}

pub fn hurwitz_zeta(s: &BigReal, a: &BigReal) -> Result<BigReal> {
    check_s(s)?;
    check_a(a)?;
    Ok(em_jet(s, a, 0, false)?.remove(0))
}

pub fn zeta(s: &BigReal) -> Result<BigReal> {
    hurwitz_zeta(s, &BigReal::one(s.prec()))
}

pub fn zeta_jet(s: &BigReal, order: usize) -> Result<Vec<BigReal>> {
    hurwitz_zeta_jet(s, &BigReal::one(s.prec()), order)
}

pub fn zeta_derivative(s: &BigReal) -> Result<BigReal> {
    Ok(zeta_jet(s, 1)?.remove(1))
}

/// Central difference `(ζ(s+h) - ζ(s-h)) / 2h` with `h = 10^{-P/3}`.
pub fn zeta_derivative_fd(s: &BigReal) -> Result<BigReal> {
    let p = s.prec();
    let digits = super::digits_for_bits(p);
    let w = p + bits_for_digits(digits / 3 + 4);
    let h = BigReal::pow10(-(digits as i64 / 3), w);
    let s = s.set_prec(w);
    let d = zeta(&(&s + &h))? - zeta(&(&s - &h))?;
    Ok((d / h.mul_pow2(1)).with_prec(p))
}

/// `γ_k(a)` from the Laurent expansion `ζ(1+ε,a) = 1/ε + Σ (-1)^k γ_k(a) ε^k / k!`.
pub fn stieltjes_laurent(k: usize, a: &BigReal) -> Result<BigReal> {
    check_a(a)?;
    let jet = em_jet(&BigReal::one(a.prec()), a, k, true)?;
    let f = (1..=k as i64).product::<i64>().max(1);
    let v = jet[k].mul_i64(f);
    Ok(if k % 2 == 1 { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::consts;

    fn p() -> u32 {
        bits_for_digits(50)
    }

    fn tol(d: i64) -> BigReal {
        BigReal::pow10(-d, p())
    }

    fn r(n: i64, d: i64) -> BigReal {
        BigReal::frac(n, d, p())
    }

    #[test]
    fn riemann_values() {
        let pi2 = consts::pi(p()).sqr();
        assert!((zeta(&r(2, 1)).unwrap() - pi2.div_i64(6)).abs() < tol(48));
        assert!((zeta(&r(0, 1)).unwrap() + r(1, 2)).abs() < tol(48));
        assert!((zeta(&r(-1, 1)).unwrap() + r(1, 12)).abs() < tol(48));
        assert!((zeta(&r(-3, 1)).unwrap() - r(1, 120)).abs() < tol(48));
        assert!(zeta(&r(-2, 1)).unwrap().abs() < tol(48));
        assert!(matches!(zeta(&r(1, 1)), Err(Error::Pole(_))));
    }

    #[test]
    fn hurwitz_shift_and_half() {
        let s = r(3, 1);
        let a = r(1, 2);
        let lhs = hurwitz_zeta(&s, &a).unwrap() - a.powi(-3).unwrap();
        let rhs = hurwitz_zeta(&s, &(&a + &r(1, 1))).unwrap();
        assert!((lhs - rhs).abs() < tol(47));
        // ζ(2,1/2) = 3 ζ(2)
        let pi2 = consts::pi(p()).sqr();
        assert!((hurwitz_zeta(&r(2, 1), &a).unwrap() - pi2.div_i64(2)).abs() < tol(47));
        assert!(hurwitz_zeta(&s, &r(0, 1)).is_err());
    }

    #[test]
    fn derivatives() {
        // ζ'(0) = -ln(2π)/2
        let d0 = zeta_derivative(&r(0, 1)).unwrap();
        let expect = -consts::ln_2pi(p()).unwrap().mul_pow2(-1);
        assert!((&d0 - &expect).abs() < tol(47));
        let fd = zeta_derivative_fd(&r(0, 1)).unwrap();
        assert!((fd - expect).abs() < tol(30));
        // ζ'(-1) = 1/12 - ln A
        let ln_a = BigReal::parse("0.24875447703378426254725299357611397609737", p()).unwrap();
        let dm1 = zeta_derivative(&r(-1, 1)).unwrap();
        assert!((dm1 - (r(1, 12) - ln_a)).abs() < tol(40));
        let fe = consts::zeta_prime_m3_functional(p()).unwrap();
        assert!((zeta_derivative(&r(-3, 1)).unwrap() - fe).abs() < tol(46));
    }

    #[test]
    fn laurent_stieltjes() {
        let g = stieltjes_laurent(0, &r(1, 1)).unwrap();
        assert!((g - consts::euler_gamma(p())).abs() < tol(47));
        let g1 = stieltjes_laurent(1, &r(1, 1)).unwrap();
        let g1_ref = BigReal::parse("-0.0728158454836767248605863758749013191377", p()).unwrap();
        assert!((g1 - g1_ref).abs() < tol(38));
        let g2 = stieltjes_laurent(2, &r(1, 1)).unwrap();
        let g2_ref = BigReal::parse("-0.0096903631928723184845303860352125293590", p()).unwrap();
        assert!((g2 - g2_ref).abs() < tol(38));
        let g3 = stieltjes_laurent(3, &r(1, 1)).unwrap();
        let g3_ref = BigReal::parse("0.0020538344203033458661600465427533842857", p()).unwrap();
        assert!((g3 - g3_ref).abs() < tol(38));
        // γ_0(a) = -ψ(a)
        let a = r(2, 1);
        let g02 = stieltjes_laurent(0, &a).unwrap();
        assert!((g02 + crate::real::gamma::digamma(&a).unwrap()).abs() < tol(47));
    }
}
