//! Cases whose left side is a definite integral done by double-exponential
//! quadrature.

use alloc::boxed::Box;
use alloc::vec::Vec;
use alloc::{format, vec};

use once_cell::race::OnceBox;

use super::{Ctx, Params};
use crate::error::{Error, Result};
use crate::exact_kernel::{bernoulli, factorial};
use crate::quad::{oloa_integrand, shared_rules, Domain};
use crate::rational::ExactRational;
use crate::real::{bits_for_digits, consts, gamma, zeta, BigReal};
use crate::report::{CheckMode, VerificationReport};
use crate::series::{self, TruncatedSeries};

const QUAD: CheckMode = CheckMode::QuadratureVsClosedForm;

fn one(w: u32) -> BigReal {
    BigReal::one(w)
}

/// `e^x`, flushed to zero far below the working precision.
fn exp_small(x: &BigReal) -> Result<BigReal> {
    if x.to_f64() < -(0.7 * x.prec() as f64 + 64.0) {
        return Ok(BigReal::zero(x.prec()));
    }
    x.exp()
}

fn horner(coeffs: &[BigReal], z: &BigReal) -> BigReal {
    let w = z.prec();
    coeffs.iter().rev().fold(BigReal::zero(w), |acc, c| acc * z + c)
}

fn to_reals(c: &[ExactRational], w: u32) -> Vec<BigReal> {
    c.iter().map(|q| BigReal::from_rational(q, w)).collect()
}

/// Series terms needed for `|z| <= 1/8` at `w` bits.
fn terms_for(w: u32) -> usize {
    w as usize / 3 + 8
}

// ---------------------------------------------------------------------------
// log-bracket powers

pub(super) fn oloa(ctx: &Ctx<'_>, k: u32) -> Result<Vec<VerificationReport>> {
    let c = ctx.consts;
    let w = ctx.prec();
    let zero = BigReal::zero(w + 16);
    let r = ctx.integrate(Domain::UnitInterval, |x, xc| oloa_integrand(k, &zero, x, xc))?;
    let pi2 = ctx.c(&c.pi).sqr();
    let la = ctx.c(&c.ln_a);
    let z3 = ctx.c(&c.zeta3);
    let rhs = match k {
        2 => ctx.c(&c.ln_2pi) - ctx.q(3, 2),
        3 => ctx.q(-31, 24) + la.mul_i64(6),
        4 => ctx.q(-49, 72) + la.mul_i64(2) + (z3.mul_i64(5) / pi2.mul_i64(2)),
        5 => {
            ctx.q(-4367, 8640) + (la.mul_i64(5).div_i64(3)) + (z3.mul_i64(15) / pi2.mul_i64(8))
                - ctx.c(&c.zeta_prime_m3).mul_i64(35).div_i64(3)
        }
        _ => return Err(Error::Unsupported(format!("log-bracket power {k}"))),
    };
    let id = ["", "", "OLOA_SQUARE", "OLOA_CUBE", "OLOA_FOURTH", "OLOA_FIFTH"][k as usize];
    Ok(vec![ctx.tight(id, r.value, rhs, QUAD).nodes(r.nodes as u64)])
}

/// `(σ+1)ln(σ+1) - 2σ + σψ(σ+1) - 2lnΓ(σ+1) + ln 2π - 3/2` for `σ > -1`,
/// at the precision of `sigma`.
pub fn oloa_sigma_closed_form(sigma: &BigReal) -> Result<BigReal> {
    let w = sigma.prec() + 16;
    let s = sigma.set_prec(w);
    let s1 = &s + &one(w);
    if !s1.is_positive() {
        return Err(Error::Domain(format!("sigma = {} is on or left of the critical line sigma = -1", sigma.to_f64())));
    }
    let v = &s1 * &s1.ln()? - s.mul_i64(2) + &s * &gamma::digamma(&s1)? - gamma::log_gamma(&s1)?.mul_i64(2)
        + consts::ln_2pi(w)?
        - BigReal::frac(3, 2, w);
    Ok(v.with_prec(sigma.prec()))
}

pub(super) fn oloa_sigma(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let w = ctx.prec();
    let sigma = p.real("sigma", w + 16)?;
    let rhs = oloa_sigma_closed_form(&sigma.set_prec(w))?;
    let r = ctx.integrate(Domain::UnitInterval, |x, xc| oloa_integrand(2, &sigma, x, xc))?;
    let mut rep = p.label(ctx.tight("OLOA_SIGMA", r.value, rhs.clone(), QUAD).nodes(r.nodes as u64));
    if sigma.to_f64() < -0.5 {
        let near = oloa_sigma_closed_form(&BigReal::frac(-99, 100, w))?;
        let grows = near > rhs;
        rep = rep.note(format!(
            "blow-up toward sigma = -1: closed form {:.6} at -0.99 {} {:.6} here",
            near.to_f64(),
            if grows { "exceeds" } else { "does not exceed" },
            rhs.to_f64()
        ));
        if !grows {
            rep.pass = false;
        }
    }
    Ok(vec![rep])
}

// ---------------------------------------------------------------------------
// digamma moments

/// `∫_0^1 x^k ψ(x+1) dx`.
fn psi_moment(ctx: &Ctx<'_>, k: i64) -> Result<(BigReal, u64)> {
    let r = ctx.integrate(Domain::UnitInterval, |x, _| {
        let x1 = x + &one(x.prec());
        Ok(x.powi(k)? * gamma::digamma(&x1)?)
    })?;
    Ok((r.value, r.nodes as u64))
}

pub(super) fn psi_mom_1(ctx: &Ctx<'_>, _: &Params) -> Result<Vec<VerificationReport>> {
    let (v, n) = psi_moment(ctx, 1)?;
    let rhs = one(ctx.prec()) - ctx.c(&ctx.consts.ln_2pi).mul_pow2(-1);
    Ok(vec![ctx.tight("PSI_MOM_1", v, rhs, QUAD).nodes(n)])
}

pub(super) fn psi_mom_2(ctx: &Ctx<'_>, _: &Params) -> Result<Vec<VerificationReport>> {
    let c = ctx.consts;
    let w = ctx.prec();
    let (v, n) = psi_moment(ctx, 2)?;
    let rhs = (one(w) - ctx.c(&c.ln_2pi)).mul_pow2(-1) + ctx.c(&c.ln_a).mul_i64(2);
    // -γ/3 + Σ_{k>=2} (-1)^k ζ(k)/(k+2), with ζ(k) = 1 + ζ(k,2) and
    // Σ_{k>=2} (-1)^k/(k+2) = 5/6 - ln 2.
    let ww = w + 16;
    let mut s = BigReal::frac(5, 6, ww) - consts::ln2(ww) - consts::euler_gamma(ww).div_i64(3);
    let two = BigReal::from_i64(2).with_prec(ww);
    let mut k = 2i64;
    loop {
        let t = zeta::hurwitz_zeta(&BigReal::from_i64(k).with_prec(ww), &two)?.div_i64(k + 2);
        if t.is_zero() || t.top() < -(ww as i64) {
            break;
        }
        s = if k % 2 == 0 { s + t } else { s - t };
        k += 1;
    }
    let series = ctx
        .tight("PSI_MOM_2", s.with_prec(w), rhs.clone(), CheckMode::SeriesVsClosedForm)
        .param("form", 2)
        .terms(k as u64 - 2)
        .note("Kummer series: -gamma/3 + sum (-1)^k zeta(k)/(k+2)");
    Ok(vec![ctx.tight("PSI_MOM_2", v, rhs, QUAD).param("form", 1).nodes(n), series])
}

pub(super) fn psi_mom_4(ctx: &Ctx<'_>, _: &Params) -> Result<Vec<VerificationReport>> {
    let c = ctx.consts;
    let w = ctx.prec();
    // ∫ t^4 ψ(t) = ∫ t^4 ψ(t+1) - 1/4
    let (v, n) = psi_moment(ctx, 4)?;
    let lhs = v - ctx.q(1, 4);
    let pi2 = ctx.c(&c.pi).sqr();
    let zp3 = ctx.c(&c.zeta_prime_m3);
    let rhs = ctx.q(-11, 180) + ctx.c(&c.ln_a).mul_i64(4) - ctx.c(&c.ln_2pi).mul_pow2(-1)
        - ctx.c(&c.zeta3).mul_i64(3) / pi2.mul_i64(2)
        - zp3.mul_i64(4);
    let zd = |s: i64| zeta::zeta_derivative(&BigReal::from_i64(s).with_prec(w));
    let rhs2 = ctx.q(49, 180) - ctx.c(&c.zeta_prime_m1).mul_i64(4) + zd(0)? + zd(-2)?.mul_i64(6) - zp3.mul_i64(4);
    Ok(vec![
        ctx.tight("PSI_MOM_4", lhs.clone(), rhs, QUAD).param("form", 1).nodes(n),
        ctx.tight("PSI_MOM_4", lhs, rhs2, QUAD)
            .param("form", 2)
            .nodes(n)
            .note("closed form through zeta'(0), zeta'(-1), zeta'(-2), zeta'(-3)"),
    ])
}

// ---------------------------------------------------------------------------
// Glaisher's constant

/// `∫_0^∞ (1/(e^t-1) - 1/t + 1/2 - t/12) e^{-at} dt / t²` for `a > 0`.
/// The bracket comes from its Bernoulli series below `t = 1`.
pub fn glaisher_kernel_integral(a: &BigReal, digits: u32) -> Result<BigReal> {
    if !a.is_positive() {
        return Err(Error::Domain("Glaisher kernel needs a > 0".into()));
    }
    let w = bits_for_digits(digits + 10) + 16;
    let a = a.set_prec(w + 16);
    // B_{2k}/(2k)!, k >= 2, until (1/2π)^{2k} is negligible
    let kmax = (w as f64 * 0.19) as usize + 4;
    let coef: Vec<BigReal> = (2..=kmax)
        .map(|k| BigReal::from_rational(&(bernoulli(2 * k) / ExactRational::from_int(factorial(2 * k as u64))), w + 16))
        .collect();
    let r = shared_rules(w).rule(Domain::SemiAxis).integrate(
        |pt| {
            let t = pt.x.set_prec(w + 16);
            let decay = exp_small(&-(&a * &t))?;
            if decay.is_zero() {
                return Ok(decay);
            }
            let b = if t.to_f64() < 1.0 {
                // Σ B_{2k} t^{2k-3}/(2k)!
                let t2 = t.sqr();
                horner(&coef, &t2) * &t
            } else {
                let em = exp_small(&-&t)?;
                let bose = &em / &(one(w + 16) - &em);
                (bose - t.recip()? + BigReal::frac(1, 2, w + 16) - t.div_i64(12)) / t.sqr()
            };
            Ok(b * decay)
        },
        digits + 4,
    )?;
    Ok(r.value.with_prec(bits_for_digits(digits + 10)))
}

const GLAISHER_TERMS: usize = 180;

/// Taylor coefficients of `(1/z + 1/L - 1/2 + L/12)/L²`, `L = ln(1-z)`,
/// from `z^0` on.
pub(super) fn glaisher_series(n_terms: usize) -> Vec<ExactRational> {
    static CACHE: OnceBox<Vec<ExactRational>> = OnceBox::new();
    if n_terms <= GLAISHER_TERMS {
        let all = CACHE.get_or_init(|| Box::new(build_glaisher_series(GLAISHER_TERMS)));
        return all[..n_terms].to_vec();
    }
    build_glaisher_series(n_terms)
}

fn build_glaisher_series(n_terms: usize) -> Vec<ExactRational> {
    let n = n_terms as i64 + 4;
    let base = series::base_series(n as usize + 1).expect("n >= 1");
    let l = -&series::neg_log_ratio(n).shift(1);
    let num = &(&base - &TruncatedSeries::monomial(0, ExactRational::frac(1, 2), n)) + &l.scale(&ExactRational::frac(1, 12));
    let inv = series::inv_log(n + 2);
    let f = &num * &(&inv * &inv);
    (0..n_terms as i64).map(|m| f.coeff(m).expect("within order")).collect()
}

/// `(1/z + 1/L - 1/2 + L/12)/L²` on `(0,1)`, from its series when `z < 1/8`.
fn glaisher_f(z: &BigReal, zc: &BigReal, series: &[BigReal]) -> Result<BigReal> {
    let w = z.prec();
    if z.to_f64() < 0.125 {
        return Ok(horner(series, z));
    }
    let g = w + 32;
    let l = zc.set_prec(g).ln()?;
    let v = z.set_prec(g).recip()? + l.recip()? - BigReal::frac(1, 2, g) + l.div_i64(12);
    Ok((v / l.sqr()).with_prec(w))
}

pub(super) fn lna_int(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let form = p.get("form").map(|_| p.int("form")).transpose()?.unwrap_or(1);
    let w = ctx.prec();
    let rhs = ctx.c(&ctx.consts.ln_a);
    let quarter = ctx.q(1, 4);
    let rep = match form {
        1 => {
            let v = glaisher_kernel_integral(&one(w), ctx.digits())?;
            ctx.tight("LNA_INT", v + quarter, rhs, QUAD).note("semi-axis Bose-kernel form")
        }
        2 => {
            let ser = to_reals(&glaisher_series(terms_for(w + 16)), w + 16);
            let r = ctx.integrate(Domain::UnitInterval, |z, zc| glaisher_f(z, zc, &ser))?;
            ctx.tight("LNA_INT", r.value + quarter, rhs, QUAD).nodes(r.nodes as u64).note("log form on (0,1)")
        }
        _ => return Err(Error::Domain(format!("LNA_INT form must be 1 or 2, got {form}"))),
    };
    Ok(vec![p.label(rep)])
}

pub(super) fn cor4(ctx: &Ctx<'_>, _: &Params) -> Result<Vec<VerificationReport>> {
    let c = ctx.consts;
    let lhs = ctx.c(&c.zeta_prime_2);
    let rhs = ctx.c(&c.zeta2) * (ctx.c(&c.gamma) + ctx.c(&c.ln_2pi) - ctx.c(&c.ln_a).mul_i64(12));
    Ok(vec![ctx.tight("COR4", lhs, rhs, CheckMode::SeriesVsClosedForm).note("zeta'(2) by Euler-Maclaurin")])
}

// ---------------------------------------------------------------------------
// first Stieltjes constant

pub(super) fn cor6(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let form = p.get("form").map(|_| p.int("form")).transpose()?.unwrap_or(1);
    let w = ctx.prec();
    let c = ctx.consts;
    let g = consts::euler_gamma(w + 16);
    let z2 = ctx.c(&c.zeta2);
    let z3 = ctx.c(&c.zeta3);
    let pi2 = ctx.c(&c.pi).sqr();
    let gamma1 = zeta::stieltjes_laurent(1, &one(w))?;
    // ψ(x+1), ψ'(x+1) and (ψ(x+1) + γ)/x; the last from ζ(2) - ζ(3)x once
    // 1 + x no longer resolves x
    let psi = |x: &BigReal| -> Result<(BigReal, BigReal, BigReal)> {
        let wx = x.prec();
        let x1 = x + &one(wx);
        let s = gamma::digamma(&x1)?;
        let ratio = if x.top() < -(wx as i64) / 2 {
            z2.set_prec(wx) - &z3.set_prec(wx) * x
        } else {
            (&s + &g.set_prec(wx)) / x.clone()
        };
        Ok((s, gamma::polygamma(1, &x1)?, ratio))
    };
    let rep = match form {
        1 => {
            // γψ(x) + [ψ²(x) - ψ'(x)]/2 written through ψ(x+1)
            let r = ctx.integrate(Domain::UnitInterval, |x, _| {
                let (s, s1, ratio) = psi(x)?;
                Ok(&g.set_prec(x.prec()) * &s + (s.sqr() - s1).mul_pow2(-1) - ratio)
            })?;
            let lhs = pi2.div_i64(6) + r.value;
            ctx.tight("COR6", lhs, gamma1, QUAD).nodes(r.nodes as u64).note("gamma_1 as pi^2/6 plus a digamma integral")
        }
        2 => {
            let a = ctx.integrate(Domain::UnitInterval, |x, _| Ok(psi(x)?.0.sqr()))?;
            let b = ctx.integrate(Domain::UnitInterval, |x, _| {
                let (s, s1, ratio) = psi(x)?;
                Ok(ratio.mul_pow2(1) - (&g.set_prec(x.prec()) * &s).mul_pow2(1) + s1)
            })?;
            let rhs = gamma1.mul_pow2(1) - pi2.div_i64(3) + b.value;
            ctx.tight("COR6", a.value, rhs, QUAD)
                .nodes((a.nodes + b.nodes) as u64)
                .note("integral of psi(x+1)^2 against gamma_1")
        }
        _ => return Err(Error::Domain(format!("COR6 form must be 1 or 2, got {form}"))),
    };
    Ok(vec![p.label(rep)])
}

// ---------------------------------------------------------------------------
// Hurwitz zeta moments

pub(super) fn eq216(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let w = ctx.prec();
    let z = p.real("z", w + 16)?;
    let k = p.int("k")?;
    if k < 1 || z.to_f64() >= 1.0 || (k as f64) - z.to_f64() <= -1.0 {
        return Err(Error::Domain("moment recursion needs k >= 1, z < 1".into()));
    }
    let z1 = &z - &one(w + 16);
    let lhs = ctx.integrate(Domain::UnitInterval, |t, _| {
        let z = z.set_prec(t.prec());
        Ok(t.powi(k)? * zeta::hurwitz_zeta(&z, t)?)
    })?;
    let inner = ctx.integrate(Domain::UnitInterval, |t, _| {
        let z1 = z1.set_prec(t.prec());
        Ok(t.powi(k - 1)? * zeta::hurwitz_zeta(&z1, t)?)
    })?;
    let zz = zeta::zeta(&z1)?;
    let rhs = (inner.value.set_prec(w).mul_i64(k) - zz.set_prec(w)) / z1.set_prec(w);
    let rep = ctx
        .tight("EQ216", lhs.value, rhs, QUAD)
        .nodes((lhs.nodes + inner.nodes) as u64)
        .note(format!("inner integral {:.3e}", inner.value.to_f64()));
    Ok(vec![p.label(rep)])
}

// ---------------------------------------------------------------------------
// repeated integration by parts

pub(super) fn eq226_sweep() -> Vec<Params> {
    let mut out = Vec::new();
    for x in [2i64, 5] {
        for f in 1..=4i64 {
            out.push(Params::new().with("x", x.into()).with("form", f.into()));
        }
    }
    out
}

/// Regular series of `k!/ln^{k+1}(1-z) + P_k(1/z)` and the polynomial `P_k`.
fn bracket(k: u32, n_terms: usize) -> Result<(Vec<ExactRational>, Vec<(i64, ExactRational)>)> {
    let poly = series::ibp_bracket_poles(k)?;
    let fact = ExactRational::from_int(factorial(k as u64));
    let s = series::inv_log_power(k + 1, n_terms)?.scale(&fact);
    let reg = (0..n_terms as i64).map(|m| s.coeff(m).expect("within order")).collect();
    Ok((reg, poly))
}

/// `Σ_{j<=k} p_{j+1}/x^j` boundary terms for the k-th form.
fn boundary(k: u32, x: &ExactRational) -> ExactRational {
    let mut b = -x.recip().expect("x > 0") / ExactRational::from(2);
    if k >= 2 {
        b -= &(x.powi(-2) / ExactRational::from(12));
    }
    if k >= 4 {
        b += &(x.powi(-4) / ExactRational::from(120));
    }
    b
}

pub(super) fn eq226(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let w = ctx.prec();
    let xq = p.rational("x")?;
    if !xq.is_positive() {
        return Err(Error::Domain("x must be positive".into()));
    }
    let k = p.int("form")?;
    if !(1..=4).contains(&k) {
        return Err(Error::Domain(format!("form must be 1..4, got {k}")));
    }
    let k = k as u32;
    let ww = w + 16;
    let (reg, poly) = bracket(k, terms_for(ww))?;
    let reg = to_reals(&reg, ww);
    let g = ww + 48;
    let poly: Vec<(i64, BigReal)> = poly.iter().map(|(m, c)| (*m, BigReal::from_rational(c, g))).collect();
    let fact = BigReal::from_int(factorial(k as u64)).with_prec(g);
    let xm1 = BigReal::from_rational(&(&xq - &ExactRational::one()), g);
    let r = ctx.integrate(Domain::UnitInterval, |z, zc| {
        let wz = z.prec();
        let br = if z.to_f64() < 0.125 {
            horner(&reg, z)
        } else {
            let l = zc.set_prec(g).ln()?;
            let mut v = &fact / &l.powi(k as i64 + 1)?;
            let zi = z.set_prec(g).recip()?;
            for (m, c) in &poly {
                v = v + c * &zi.powi(-m)?;
            }
            v.with_prec(wz)
        };
        let weight = exp_small(&(&xm1.set_prec(wz) * &zc.ln()?))?;
        Ok(br * weight)
    })?;
    let xr = BigReal::from_rational(&xq, w);
    let lhs = -(r.value.with_prec(w) / xr.powi(k as i64)?) + BigReal::from_rational(&boundary(k, &xq), w);
    let rhs = gamma::digamma(&xr)? - xr.ln()?;
    Ok(vec![p.label(ctx.tight("EQ226_PARTS", lhs, rhs, QUAD).nodes(r.nodes as u64))])
}
