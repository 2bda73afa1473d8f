//! Stieltjes constants, zeta values from Bell-polynomial series, the Knessl
//! integral for `p_n` and its sine-integral upper bound.
//!
//! The limit formula with Euler-Maclaurin endpoint corrections is the oracle
//! every other route is compared against.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{domain, Error, Result};
use crate::exact_kernel::{bernoulli, pn_table};
use crate::numeric::{self, ln_gamma_ratio, polygamma_f64, slow_sum, x_p_shift, SlowSum};
use crate::quad::{shared_rules, Domain, QuadResult};
use crate::rational::ExactRational;
use crate::real::bell::bell_complete;
use crate::real::polylog::{lerch_phi, polylog_neg, PolylogSJet};
use crate::real::{bits_for_digits, consts, gamma, sici, zeta, BigReal};

const GUARD: u32 = 16;

/// Working precision of the limit formula. With three correction terms the
/// truncation error at `N = 10^5` is far below `10^{-30}`.
pub const LIMIT_DIGITS: u32 = 32;

/// Default number of terms of the limit formula.
pub const LIMIT_TERMS: u64 = 100_000;

/// `e^x` with a hard zero below `-cut`, where it is under `2^{-w}`.
fn exp_or_zero(x: &BigReal, w: u32) -> Result<BigReal> {
    if x.to_f64() < -cut(w) {
        return Ok(BigReal::zero(w));
    }
    x.exp()
}

fn cut(w: u32) -> f64 {
    0.7 * w as f64 + 64.0
}

fn integrate(domain: Domain, digits: u32, f: impl Fn(&BigReal, &BigReal) -> Result<BigReal>) -> Result<QuadResult> {
    let w = bits_for_digits(digits) + GUARD;
    shared_rules(w).rule(domain).integrate(|pt| f(pt.x, pt.xc), digits)
}

fn pi2(w: u32) -> BigReal {
    consts::pi(w).sqr()
}

// ---------------------------------------------------------------------------
// limit formula

/// Derivative `f^{(m)}` of `f(x) = ln^k x / x` as `x^{-1-m} Σ c_i ln^i x`.
fn log_over_x_derivative(k: usize, m: usize) -> Vec<i64> {
    let mut c = vec![0i64; k + 1];
    c[k] = 1;
    for j in 0..m {
        let p = 1 + j as i64;
        // d/dx [ln^i x x^{-p}] = (i ln^{i-1} x - p ln^i x) x^{-p-1}
        let mut next = vec![0i64; k + 1];
        for (i, &ci) in c.iter().enumerate() {
            next[i] -= p * ci;
            if i > 0 {
                next[i - 1] += i as i64 * ci;
            }
        }
        c = next;
    }
    c
}

/// `γ_k(a)` for `k = 0..=kmax` from
/// `Σ_{n=0}^{N} f(n+a) - ln^{k+1}(X)/(k+1)` with `f(x) = ln^k x/x`, `X = N+a`,
/// corrected by Euler-Maclaurin at the upper end:
///
/// `γ_k(a) = S_N - F(X) - f(X)/2 - Σ_{j=1}^{3} B_{2j}/(2j)! f^{(2j-1)}(X) + O(f^{(7)}(X))`.
pub fn stieltjes_limit_all(kmax: usize, a: &BigReal, n: u64) -> Result<Vec<BigReal>> {
    if !a.is_positive() {
        return Err(domain("stieltjes_limit needs a > 0"));
    }
    if kmax > 3 {
        return Err(Error::Unsupported("Stieltjes constants above order 3".into()));
    }
    let p = bits_for_digits(LIMIT_DIGITS);
    let w = p + GUARD;
    let a = a.set_prec(w);
    let mut sums = vec![BigReal::zero(w); kmax + 1];
    let mut x = a.clone();
    let mut lx = x.ln()?;
    let one = BigReal::one(w);
    for i in 0..=n {
        if i > 0 {
            // ln(x+1) = ln x + ln(1 + 1/x)
            lx = &lx + &x.recip()?.ln_1p()?;
            x = &x + &one;
        }
        let inv = x.recip()?;
        let mut t = inv;
        for (k, s) in sums.iter_mut().enumerate() {
            if k > 0 {
                t = &t * &lx;
            }
            *s = &*s + &t;
        }
    }
    let lpow: Vec<BigReal> = {
        let mut v = vec![BigReal::one(w)];
        for i in 1..=kmax + 1 {
            let next = &v[i - 1] * &lx;
            v.push(next);
        }
        v
    };
    let mut out = Vec::with_capacity(kmax + 1);
    for (k, s) in sums.into_iter().enumerate() {
        let mut g = s - lpow[k + 1].div_i64(k as i64 + 1);
        g = g - (&lpow[k] / &x).mul_pow2(-1);
        for j in 1..=3usize {
            let m = 2 * j - 1;
            let c = log_over_x_derivative(k, m);
            let mut d = BigReal::zero(w);
            for (i, &ci) in c.iter().enumerate() {
                d = &d + &lpow[i].mul_i64(ci);
            }
            d = d / x.powi(m as i64 + 1)?;
            let b = BigReal::from_rational(&bernoulli(2 * j), w);
            let fact: i64 = (1..=2 * j as i64).product();
            g = g - (b * d).div_i64(fact);
        }
        out.push(g.with_prec(p));
    }
    Ok(out)
}

/// `γ_k(a)` by the corrected limit formula with `N` terms.
pub fn stieltjes_limit(k: usize, a: &BigReal, n: u64) -> Result<BigReal> {
    Ok(stieltjes_limit_all(k, a, n)?.pop().expect("k+1 entries"))
}

// ---------------------------------------------------------------------------
// p-kernel integrals

/// Which form of the `γ₁` integral to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gamma1Form {
    /// `∫_0^1 u^{a-1} ln(-ln u) [1/(1-u) + 1/ln u] du`, any `a > 0`.
    UnitInterval,
    /// `∫_0^∞ [1/(1-e^t) + e^{-t}/t] ln t dt`, the case `a = 1`.
    SemiAxis,
}

/// `e^{-t} - 1 + t`, by its Taylor series for small `t`.
fn exp_tail2(t: &BigReal, w: u32) -> Result<BigReal> {
    if t.to_f64() < 0.5 {
        let mut term = t.sqr().mul_pow2(-1);
        let mut sum = BigReal::zero(w);
        let floor = term.top() - w as i64 - 4;
        let mut m = 2i64;
        loop {
            sum = &sum + &term;
            if term.is_zero() || term.top() < floor {
                break;
            }
            m += 1;
            term = -(&term * t).div_i64(m);
        }
        return Ok(sum);
    }
    Ok(exp_or_zero(&-t, w)? - BigReal::one(w) + t)
}

/// `e^{-t} Σ p_{n+1} (1-e^{-t})^{n-1} = 1/(e^t - 1) - e^{-t}/t`, written as
/// `(t - 1 + e^{-t}) / (t (e^t - 1))` to avoid the cancellation at `t → 0`.
pub fn p_kernel(t: &BigReal) -> Result<BigReal> {
    let w = t.prec();
    if t.to_f64() > cut(w) {
        return Ok(BigReal::zero(w));
    }
    let num = exp_tail2(t, w)?;
    Ok(num / (t * &t.exp_m1()?))
}

/// `M_j = ∫_0^∞ ln^j t · p_kernel(t) dt`.
pub fn p_kernel_moment(j: u32, digits: u32) -> Result<BigReal> {
    let r = integrate(Domain::SemiAxis, digits, |t, _| {
        let k = p_kernel(t)?;
        if k.is_zero() {
            return Ok(k);
        }
        Ok(t.ln()?.powi(j as i64)? * k)
    })?;
    Ok(r.value.with_prec(bits_for_digits(digits)))
}

/// `Σ_{n=1}^{terms} p_{n+1} (1-e^{-t})^{n-1}` and the closed form
/// `1/(1-e^{-t}) - 1/t`.
pub fn p_kernel_series_check(t: &BigReal, terms: usize) -> Result<(BigReal, BigReal)> {
    let w = t.prec() + GUARD;
    let t = t.set_prec(w);
    let z = -(-&t).exp_m1()?;
    let pn = pn_table();
    let mut acc = BigReal::zero(w);
    for n in (1..=terms).rev() {
        acc = &acc * &z + BigReal::from_rational(pn.p(n + 1), w);
    }
    let closed = z.recip()? - t.recip()?;
    Ok((acc.with_prec(w - GUARD), closed.with_prec(w - GUARD)))
}

/// `γ₁(a)` through the `p`-kernel integral.
///
/// `UnitInterval`: `γ₁(a) = -ln²a/2 - γ[ln a - ψ(a)] - ∫_0^1 u^{a-1} ln(-ln u)[1/(1-u) + 1/ln u] du`.
/// `SemiAxis` (only `a = 1`): `γ₁ = -γ² - M_1`.
pub fn gamma1_by_p(form: Gamma1Form, a: &BigReal, digits: u32) -> Result<BigReal> {
    let p = bits_for_digits(digits);
    let w = p + GUARD;
    let g = consts::euler_gamma(w);
    match form {
        Gamma1Form::SemiAxis => {
            if *a != BigReal::one(a.prec()) {
                return Err(domain("the semi-axis form holds at a = 1 only"));
            }
            let m1 = p_kernel_moment(1, digits)?.with_prec(w);
            Ok((-g.sqr() - m1).with_prec(p))
        }
        Gamma1Form::UnitInterval => {
            if !a.is_positive() {
                return Err(domain("gamma1_by_p needs a > 0"));
            }
            let a = a.set_prec(w);
            let am1 = &a - &BigReal::one(w);
            let r = integrate(Domain::UnitInterval, digits, |u, uc| {
                let wi = u.prec();
                let lnu = if uc.top() < -1 { (-uc).ln_1p()? } else { u.ln()? };
                let bracket = if uc.top() <= -10 {
                    crate::quad::oloa_bracket_series(uc, wi)
                } else {
                    crate::quad::oloa_bracket_direct(u, uc, wi)?
                };
                let weight = if am1.is_zero() { BigReal::one(wi) } else { u.pow(&am1.set_prec(wi))? };
                Ok(weight * (-lnu).ln()? * bracket)
            })?;
            let la = a.ln()?;
            let psi = gamma::digamma(&a)?;
            let v = -la.sqr().mul_pow2(-1) - g * (&la - &psi) - r.value.with_prec(w);
            Ok(v.with_prec(p))
        }
    }
}

/// `γ₂ = -γ(γ² + ζ(2) + 2γ₁) + M_2` with `γ₁ = -γ² - M_1`.
pub fn gamma2_by_p(digits: u32) -> Result<BigReal> {
    let p = bits_for_digits(digits);
    let w = p + GUARD;
    let (g, z2) = (consts::euler_gamma(w), pi2(w).div_i64(6));
    let g1 = gamma1_by_p(Gamma1Form::SemiAxis, &BigReal::one(w), digits + 2)?.with_prec(w);
    let m2 = p_kernel_moment(2, digits + 2)?.with_prec(w);
    Ok((m2 - &g * (g.sqr() + z2 + g1.mul_pow2(1))).with_prec(p))
}

/// `-γ₃ = γ⁴ + (π²/2)γ₁ + (γ²/2)(π² + 6γ₁) + 3γγ₂ + 2γζ(3) + M_3`.
pub fn gamma3_by_p(digits: u32) -> Result<BigReal> {
    let p = bits_for_digits(digits);
    let w = p + GUARD;
    let g = consts::euler_gamma(w);
    let pi_sq = pi2(w);
    let g1 = gamma1_by_p(Gamma1Form::SemiAxis, &BigReal::one(w), digits + 2)?.with_prec(w);
    let g2 = gamma2_by_p(digits + 2)?.with_prec(w);
    let z3 = zeta::zeta(&BigReal::from_i64(3).with_prec(w))?;
    let m3 = p_kernel_moment(3, digits + 2)?.with_prec(w);
    let g_sq = g.sqr();
    let s = g_sq.sqr()
        + (&pi_sq * &g1).mul_pow2(-1)
        + (&g_sq * &(&pi_sq + &g1.mul_i64(6))).mul_pow2(-1)
        + (&g * &g2).mul_i64(3)
        + (&g * &z3).mul_pow2(1)
        + m3;
    Ok((-s).with_prec(p))
}

// ---------------------------------------------------------------------------
// Bell-polynomial series

/// `1/(m-1) + (1/(m-1)!) Σ_{n<=N} (p_{n+1}/n) Y_{m-1}(H_n, H_n^{(2)}, 2! H_n^{(3)}, ...)`
/// in double precision, closed with the midpoint tail model. The second
/// value reports whether every summand is positive, i.e. the partial sums
/// increase strictly.
pub fn zeta_bell(m: u32, n: usize) -> Result<(SlowSum, bool)> {
    if m < 2 {
        return Err(domain("zeta_bell needs m >= 2"));
    }
    if n < 2 {
        return Err(domain("zeta_bell needs N >= 2"));
    }
    let r = (m - 1) as usize;
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let p = numeric::p_f64_table(n + 3);
    // harmonic tables H^{(j)}, j = 1..=r
    let mut h = vec![numeric::Neumaier::default(); r];
    let mut terms = Vec::with_capacity(n + 3);
    terms.push(0.0);
    for k in 1..=n + 2 {
        let xs: Vec<f64> = (0..r)
            .map(|j| {
                h[j].add(libm::pow(k as f64, -(j as f64 + 1.0)));
                fact(j) * h[j].value()
            })
            .collect();
        let y = bell_complete(&xs).expect("m >= 2");
        terms.push(p[k + 1] / k as f64 * y / fact(r));
    }
    let increasing = terms[1..=n].iter().all(|&t| t > 0.0);
    let zetas: Vec<f64> = (2..=r + 1).map(|j| zeta_f64(j as u32)).collect();
    let density = |s: f64| {
        if s > 700.0 {
            return 0.0;
        }
        let x = libm::exp(s);
        // H_x^{(j)} = ζ(j) - (-1)^j ψ^{(j-1)}(x+1)/(j-1)!, H_x = ψ(x+1) + γ
        let xs: Vec<f64> = (1..=r)
            .map(|j| {
                let hj = if j == 1 {
                    numeric::digamma_f64(x + 1.0) + numeric::EULER_GAMMA
                } else {
                    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
                    zetas[j - 2] - sign * polygamma_f64(j as u32 - 1, x + 1.0) / fact(j - 1)
                };
                fact(j - 1) * hj
            })
            .collect();
        // x g(x) = p_{x+1} Y / (m-1)!
        x_p_shift(s, 1.0) / x * bell_complete(&xs).expect("m >= 2") / fact(r)
    };
    let mut sum = slow_sum(1, n, |k| terms[k], density);
    let head = 1.0 / r as f64;
    sum.partial += head;
    sum.value += head;
    Ok((sum, increasing))
}

/// `ζ(j)` for `j >= 2` in double precision: 99 terms plus Euler-Maclaurin.
fn zeta_f64(j: u32) -> f64 {
    let jf = j as f64;
    let mut s = numeric::Neumaier::default();
    for k in 1..100u32 {
        s.add(libm::pow(k as f64, -jf));
    }
    let x = 100.0f64;
    s.add(libm::pow(x, 1.0 - jf) / (jf - 1.0));
    s.add(0.5 * libm::pow(x, -jf));
    s.add(jf / 12.0 * libm::pow(x, -jf - 1.0));
    s.add(-jf * (jf + 1.0) * (jf + 2.0) / 720.0 * libm::pow(x, -jf - 3.0));
    s.value()
}

/// `ζ(m,a) = a^{1-m}/(m-1) + ((-1)^{m-1}/(m-1)!) Σ p_{n+1} B(a,n) Y_{m-1}(g, g', ..., g^{(m-2)})`
/// with `g^{(r)} = ψ^{(r)}(a) - ψ^{(r)}(a+n)`, in double precision with the
/// midpoint tail model. Requires `a >= 1/4`.
pub fn hurwitz_bell(m: u32, a: f64, n: usize) -> Result<SlowSum> {
    if m < 2 || !(0.25..=1e6).contains(&a) || n < 2 {
        return Err(domain("hurwitz_bell needs m >= 2, 1/4 <= a <= 1e6, N >= 2"));
    }
    let r = (m - 1) as usize;
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
    let p = numeric::p_f64_table(n + 3);
    let mut sums = vec![numeric::Neumaier::default(); r];
    let mut beta = 1.0 / a;
    let mut terms = Vec::with_capacity(n + 3);
    terms.push(0.0);
    for k in 1..=n + 2 {
        // g^{(j)}(n) = -(-1)^j j! Σ_{i<n} (a+i)^{-j-1}
        let xs: Vec<f64> = (0..r)
            .map(|j| {
                sums[j].add(libm::pow(a + (k - 1) as f64, -(j as f64) - 1.0));
                let sj = if j.is_multiple_of(2) { -1.0 } else { 1.0 };
                sj * fact(j) * sums[j].value()
            })
            .collect();
        terms.push(sign * p[k + 1] * beta * bell_complete(&xs).expect("m >= 2") / fact(r));
        beta *= k as f64 / (a + k as f64);
    }
    let psis: Vec<f64> = (0..r).map(|j| polygamma_f64(j as u32, a)).collect();
    let lg_a = libm::lgamma(a);
    let density = |s: f64| {
        let xs: Vec<f64>;
        let ln_beta;
        if s < 600.0 {
            let x = libm::exp(s);
            xs = (0..r).map(|j| psis[j] - polygamma_f64(j as u32, a + x)).collect();
            ln_beta = lg_a - ln_gamma_ratio(x, a);
        } else {
            xs = (0..r).map(|j| if j == 0 { psis[0] - s } else { psis[j] }).collect();
            ln_beta = lg_a - a * s;
        }
        // x g(x) = (x p_{x+1}) B(a,x) Y / (m-1)!
        sign * x_p_shift(s, 1.0) * libm::exp(ln_beta) * bell_complete(&xs).expect("m >= 2") / fact(r)
    };
    let mut sum = slow_sum(1, n, |k| terms[k], density);
    let head = libm::pow(a, 1.0 - m as f64) / r as f64;
    sum.partial += head;
    sum.value += head;
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Knessl integral and the upper bound

/// `p_{n+1} = ∫_0^∞ (1+u)^{-n} du/(ln²u + π²)`, in `x = ln u`.
pub fn knessl_p(n: u32, digits: u32) -> Result<BigReal> {
    if n < 1 {
        return Err(domain("knessl_p needs n >= 1"));
    }
    let p = bits_for_digits(digits);
    let w = p + GUARD;
    let pi_sq = pi2(w);
    let nn = n as i64;
    let r = integrate(Domain::LogSemiAxis, digits, |x, _| {
        let wi = x.prec();
        let one = BigReal::one(wi);
        // e^x (1+e^x)^{-n}; for x > 0 as e^{-(n-1)x} (1+e^{-x})^{-n}
        let f = if x.is_negative() {
            let e = exp_or_zero(x, wi)?;
            &e / &(&e + &one).powi(nn)?
        } else {
            let e = exp_or_zero(&-x, wi)?;
            let decay = if nn == 1 { one.clone() } else { exp_or_zero(&-(x.mul_i64(nn - 1)), wi)? };
            decay / (&e + &one).powi(nn)?
        };
        Ok(f / (x.sqr() + &pi_sq.set_prec(wi)))
    })?;
    Ok(r.value.with_prec(p))
}

/// `-1/2 + Si(π)/π + (-1)^{n-1}[1/2 - Si((n-1)π)/π]` and whether the exact
/// `p_{n+1}` lies strictly below it.
pub fn p_upper_bound(n: u32, digits: u32) -> Result<(BigReal, bool)> {
    if n < 1 {
        return Err(domain("the bound needs n >= 1"));
    }
    let p = bits_for_digits(digits);
    let w = p + GUARD;
    let pi = consts::pi(w);
    let half = BigReal::frac(1, 2, w);
    let si_pi = sici::sine_integral(&pi)?;
    let si_n = sici::sine_integral(&pi.mul_i64(n as i64 - 1))?;
    let bracket = &half - &(si_n / &pi);
    let bracket = if n % 2 == 1 { bracket } else { -bracket };
    let bound = si_pi / &pi - half + bracket;
    let pn = pn_table();
    let exact = pn
        .get(n as usize + 1)
        .ok_or_else(|| domain("exact p_{n+1} outside the table"))?;
    let holds = BigReal::from_rational(exact, w) < bound;
    Ok((bound.with_prec(p), holds))
}

// ---------------------------------------------------------------------------
// ψ(x) - ln x

/// One representation of `ψ(x) - ln x`.
#[derive(Debug, Clone)]
pub struct DigammaRep {
    pub name: &'static str,
    pub value: BigReal,
    /// Absolute accuracy the route can deliver at this precision.
    pub accuracy: f64,
    pub terms: Option<u64>,
}

/// `-Σ p_{n+1} (n-1)!/(x)_n`: exact coefficients up to `n = 200` in full
/// precision, then a double-precision continuation with the tail model when
/// the remainder is still visible.
fn digamma_p_series(x: &BigReal) -> Result<DigammaRep> {
    let p = x.prec();
    let w = p + GUARD;
    let xw = x.set_prec(w);
    let pn = pn_table();
    let floor = BigReal::pow10(-(consts::digits_of(p) as i64) - 2, w);
    let mut ratio = xw.recip()?; // (n-1)!/(x)_n at n = 1
    let mut acc = BigReal::zero(w);
    let mut used = 0u64;
    let n_exact = pn.n_max() - 1;
    let mut converged = false;
    for n in 1..=n_exact {
        let t = BigReal::from_rational(pn.p(n + 1), w) * &ratio;
        acc = &acc + &t;
        used = n as u64;
        if t.abs() < floor {
            converged = true;
            break;
        }
        ratio = ratio.mul_i64(n as i64) / (&xw + &BigReal::from_i64(n as i64));
    }
    if converged {
        return Ok(DigammaRep { name: "p_series", value: (-acc).with_prec(p), accuracy: 0.0, terms: Some(used) });
    }
    let xf = x.to_f64();
    if xf < 0.25 {
        return Err(domain("p-series continuation needs x >= 1/4"));
    }
    let n_max = 20_000usize;
    let tail = hurwitz_like_tail(xf, n_exact, n_max)?;
    let value = -(acc + BigReal::from_f64(tail.value)?.with_prec(w));
    Ok(DigammaRep {
        name: "p_series",
        value: value.with_prec(p),
        accuracy: tail.tolerance,
        terms: Some(n_max as u64),
    })
}

/// `Σ_{n>n0} p_{n+1} B(x,n)` in double precision.
fn hurwitz_like_tail(x: f64, n0: usize, n_max: usize) -> Result<SlowSum> {
    let p = numeric::p_f64_table(n_max + 3);
    let mut lb = Vec::with_capacity(n_max + 3);
    for k in 0..=n_max + 2 {
        lb.push(if k == 0 { 0.0 } else { libm::exp(libm::lgamma(x) - ln_gamma_ratio(k as f64, x)) });
    }
    let lg = libm::lgamma(x);
    Ok(slow_sum(
        n0 + 1,
        n_max,
        |k| p[k + 1] * lb[k],
        |s| {
            let ln_beta = if s < 600.0 { lg - ln_gamma_ratio(libm::exp(s), x) } else { lg - x * s };
            x_p_shift(s, 1.0) * libm::exp(ln_beta)
        },
    ))
}

/// Number of terms the `p`-series needs before a term drops below `10^{-d}`.
pub fn digamma_p_series_terms(x: &BigReal, d: u32) -> Result<u64> {
    let w = x.prec() + GUARD;
    let xw = x.set_prec(w);
    let pn = pn_table();
    let floor = BigReal::pow10(-(d as i64), w);
    let mut ratio = xw.recip()?;
    for n in 1..pn.n_max() {
        let t = BigReal::from_rational(pn.p(n + 1), w) * &ratio;
        if t.abs() < floor {
            return Ok(n as u64);
        }
        ratio = ratio.mul_i64(n as i64) / (&xw + &BigReal::from_i64(n as i64));
    }
    Err(domain("p-series did not reach the requested size within the table"))
}

/// `₂F₁(1,1;x+1;q)`: power series for `q <= 1/2`, otherwise through
/// `x/(1-q) Φ(-q/(1-q), 1, x)`.
pub fn hyp2f1_11(x: &BigReal, q: &BigReal, qc: &BigReal) -> Result<BigReal> {
    let w = q.prec();
    if q.to_f64() <= 0.5 {
        // Σ m!/(x+1)_m q^m
        let mut term = BigReal::one(w);
        let mut sum = BigReal::zero(w);
        let mut m = 0i64;
        loop {
            sum = &sum + &term;
            if term.is_zero() || term.top() < -(w as i64) - 4 {
                break;
            }
            m += 1;
            term = (&term * q).mul_i64(m) / (x + &BigReal::from_i64(m));
        }
        return Ok(sum);
    }
    let y = q / qc;
    Ok(x * &lerch_phi(&y, &BigReal::one(w), x)? / qc)
}

/// All representations of `ψ(x) - ln x` at the precision of `x`.
pub fn digamma_reps(x: &BigReal) -> Result<Vec<DigammaRep>> {
    if !x.is_positive() {
        return Err(domain("digamma_reps needs x > 0"));
    }
    let p = x.prec();
    let digits = consts::digits_of(p);
    let w = p + GUARD;
    let xw = x.set_prec(w);
    let two_pi = consts::pi(w).mul_pow2(1);
    let head = -(xw.mul_pow2(1).recip()?);
    let exact = |name, r: QuadResult, scale: BigReal| DigammaRep {
        name,
        value: (&head - &(r.value.with_prec(w) * scale)).with_prec(p),
        accuracy: 0.0,
        terms: Some(r.nodes as u64),
    };
    let mut out = Vec::new();
    out.push(DigammaRep {
        name: "reference",
        value: (gamma::digamma(&xw)? - xw.ln()?).with_prec(p),
        accuracy: 0.0,
        terms: None,
    });
    out.push(digamma_p_series(x)?);

    // ∫ t/((t²+x²)(e^{2πt}-1)) dt
    let x2 = xw.sqr();
    let r = integrate(Domain::SemiAxis, digits, |t, _| {
        let wi = t.prec();
        let e = &two_pi.set_prec(wi) * t;
        if e.to_f64() > cut(wi) {
            return Ok(BigReal::zero(wi));
        }
        Ok(t / &((t.sqr() + &x2.set_prec(wi)) * e.exp_m1()?))
    })?;
    out.push(exact("t_integral", r, BigReal::from_i64(2).with_prec(w)));

    // ∫ v/((1+v²)(e^{2πxv}-1)) dv
    let c = &two_pi * &xw;
    let r = integrate(Domain::SemiAxis, digits, |v, _| {
        let wi = v.prec();
        let e = &c.set_prec(wi) * v;
        if e.to_f64() > cut(wi) {
            return Ok(BigReal::zero(wi));
        }
        Ok(v / &((v.sqr() + &BigReal::one(wi)) * e.exp_m1()?))
    })?;
    out.push(exact("v_integral", r, BigReal::from_i64(2).with_prec(w)));

    // ∫_1^∞ ln u/(u(1+ln²u)(u^{2πx}-1)) du with u = 1 + y
    let r = integrate(Domain::SemiAxis, digits, |y, _| {
        let wi = y.prec();
        let l = y.ln_1p()?;
        let e = &c.set_prec(wi) * &l;
        if e.to_f64() > cut(wi) {
            return Ok(BigReal::zero(wi));
        }
        let u = y + &BigReal::one(wi);
        Ok(&l / &(u * (l.sqr() + &BigReal::one(wi)) * e.exp_m1()?))
    })?;
    out.push(exact("log_integral", r, BigReal::from_i64(2).with_prec(w)));

    // -(1/x) ∫_0^1 ₂F₁(1,1;x+1;v) dv/(v[ln²(1/v-1)+π²]), with v = 1/(1+e^y)
    let pi_sq = pi2(w);
    let r = integrate(Domain::RealLine, digits, |y, _| {
        let wi = y.prec();
        let one = BigReal::one(wi);
        let den = y.sqr() + &pi_sq.set_prec(wi);
        let xi = xw.set_prec(wi);
        if y.is_negative() {
            // q > 1/2: q F(q) e^y = x Φ(-e^{-y}, 1, x)
            if (-y).to_f64() > cut(wi) {
                // Φ(-V,1,x) ~ 1/V for V → ∞
                return Ok(BigReal::zero(wi));
            }
            let big = (-y).exp()?;
            return Ok(&xi * &lerch_phi(&big, &one, &xi)? / den);
        }
        // q = 1/(1+e^y) <= 1/2; q e^y = 1/(1+e^{-y})
        let em = exp_or_zero(&-y, wi)?;
        let opm = &one + &em;
        let q = if em.is_zero() { BigReal::zero(wi) } else { &em / &opm };
        let qc = opm.recip()?;
        let f = hyp2f1_11(&xi, &q, &qc)?;
        Ok(&qc * &f / den)
    })?;
    out.push(DigammaRep {
        name: "hypergeometric_integral",
        value: (-(r.value.with_prec(w) / &xw)).with_prec(p),
        accuracy: 0.0,
        terms: Some(r.nodes as u64),
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// polylogarithm and Lerch routes

/// `ζ(s) - 1/(s-1) = -∫_0^∞ Li_s(-v) dv/(v²(ln²v + π²))`, in `x = ln v`.
pub fn polylog_zeta_integral(s: &BigReal, digits: u32) -> Result<BigReal> {
    if !s.is_positive() || *s == BigReal::one(s.prec()) {
        return Err(domain("polylog_zeta_integral needs s > 0, s != 1"));
    }
    let p = bits_for_digits(digits);
    let w = p + GUARD;
    let pi_sq = pi2(w);
    let s = s.set_prec(w);
    let r = integrate(Domain::RealLine, digits, |x, _| {
        let wi = x.prec();
        let den = x.sqr() + &pi_sq.set_prec(wi);
        let xf = x.to_f64();
        if xf > cut(wi) {
            return Ok(BigReal::zero(wi));
        }
        // Li_s(-v)/v → -1 as v → 0
        let ratio = if xf < -cut(wi) {
            -BigReal::one(wi)
        } else {
            let v = x.exp()?;
            polylog_neg(&s.set_prec(wi), &v)? / v
        };
        Ok(-ratio / den)
    })?;
    Ok(r.value.with_prec(p))
}

/// `γ_k = (-1)^{k-1} ∫_0^∞ ∂_s^k Li_s(-v)|_{s=1} dv/(v²(ln²v + π²))`, `k <= 2`.
pub fn stieltjes_polylog(k: usize, digits: u32) -> Result<BigReal> {
    if k > 2 {
        return Err(Error::Unsupported("polylog route is limited to k <= 2".into()));
    }
    let p = bits_for_digits(digits);
    let w = p + GUARD;
    let pi_sq = pi2(w);
    let jet = PolylogSJet::new(k, w)?;
    let r = integrate(Domain::RealLine, digits, |x, _| {
        let wi = x.prec();
        let den = x.sqr() + &pi_sq.set_prec(wi);
        let xf = x.to_f64();
        if xf > cut(wi) {
            return Ok(BigReal::zero(wi));
        }
        let ratio = if xf < -cut(wi) {
            // D_0/v → -1; D_k/v → 0 for k >= 1
            if k == 0 {
                -BigReal::one(wi)
            } else {
                BigReal::zero(wi)
            }
        } else {
            let v = x.exp()?;
            jet.eval(&v)?.with_prec(wi) / v
        };
        Ok(ratio / den)
    })?;
    let v = r.value.with_prec(p);
    Ok(if k % 2 == 1 { v } else { -v })
}

/// `γ₁` (order 1) or `γ₂` (order 2) from the log-kernel integrals
///
/// `γ₁ + γ² = ∫ [γ ln(1+1/u) + ∂_s Li_s(-1/u)] du/(ln²u + π²)`,
/// `γ₂ + γ(γ² + ζ(2) + 2γ₁) = ∫ [(γ²+ζ(2)) ln(1+1/u) + 2γ ∂_s Li - ∂_s² Li] du/(ln²u + π²)`,
///
/// with derivatives at `s = 1`. The order-2 case uses the order-1 result for `γ₁`.
pub fn log_kernel_gamma(order: usize, digits: u32) -> Result<BigReal> {
    if !(1..=2).contains(&order) {
        return Err(domain("log_kernel_gamma order must be 1 or 2"));
    }
    let p = bits_for_digits(digits);
    let w = p + GUARD;
    let pi_sq = pi2(w);
    let g = consts::euler_gamma(w);
    let z2 = pi_sq.div_i64(6);
    let jet = PolylogSJet::new(order, w)?;
    let c0 = if order == 1 { g.clone() } else { g.sqr() + &z2 };
    // in y = ln u, v = 1/u = e^{-y}, du = e^y dy = dy / v
    let r = integrate(Domain::RealLine, digits, |y, _| {
        let wi = y.prec();
        let den = y.sqr() + &pi_sq.set_prec(wi);
        let yf = y.to_f64();
        if yf < -cut(wi) {
            return Ok(BigReal::zero(wi));
        }
        let ratio = if yf > cut(wi) {
            // ln(1+v)/v → 1, ∂_s^k Li(-v)/v → 0
            c0.set_prec(wi)
        } else {
            let v = (-y).exp()?;
            let d = jet.eval_all(&v)?;
            let l = v.ln_1p()?;
            let num = if order == 1 {
                &c0.set_prec(wi) * &l + &d[1].set_prec(wi)
            } else {
                &c0.set_prec(wi) * &l + &(&g.set_prec(wi) * &d[1].set_prec(wi)).mul_pow2(1) - &d[2].set_prec(wi)
            };
            num / v
        };
        Ok(ratio / den)
    })?;
    let i = r.value.with_prec(w);
    if order == 1 {
        return Ok((i - g.sqr()).with_prec(p));
    }
    let g1 = log_kernel_gamma(1, digits)?.with_prec(w);
    Ok((i - &g * &(g.sqr() + z2 + g1.mul_pow2(1))).with_prec(p))
}

/// `ζ(s,a) - a^{1-s}/(s-1) = ∫_0^∞ Φ(-v,s,a) dv/(v(ln²v + π²))`; at `s = 1`
/// the right side equals `ln a - ψ(a)`, which is what is returned there.
pub fn lerch_hurwitz_integral(s: &BigReal, a: &BigReal, digits: u32) -> Result<BigReal> {
    if !s.is_positive() || !a.is_positive() {
        return Err(domain("lerch_hurwitz_integral needs s > 0, a > 0"));
    }
    let p = bits_for_digits(digits);
    let w = p + GUARD;
    let pi_sq = pi2(w);
    let (s, a) = (s.set_prec(w), a.set_prec(w));
    let a_pow = a.pow(&-&s)?;
    let r = integrate(Domain::RealLine, digits, |x, _| {
        let wi = x.prec();
        let den = x.sqr() + &pi_sq.set_prec(wi);
        let xf = x.to_f64();
        if xf > cut(wi) {
            return Ok(BigReal::zero(wi));
        }
        let phi = if xf < -cut(wi) {
            a_pow.set_prec(wi)
        } else {
            lerch_phi(&x.exp()?, &s.set_prec(wi), &a.set_prec(wi))?
        };
        Ok(phi / den)
    })?;
    Ok(r.value.with_prec(p))
}

/// The binomial double sum `Σ_n p_{n+2} Σ_{k<=n} C(n,k)(-1)^k/(k+a)^s` for
/// integer `s >= 1` and rational `a > 0`.
///
/// Inner sums for `n <= n_max` are formed exactly in binary arithmetic wide
/// enough to absorb the `2^n` cancellation; the outer remainder uses the
/// midpoint tail model with the inner sum continued in `n` by
/// `Γ(s)^{-1} ∫_0^∞ t^{s-1} e^{-at} (1-e^{-t})^n dt`.
pub fn hurwitz_binomial_double_sum(s: u32, a: &ExactRational, n_max: usize) -> Result<SlowSum> {
    if s < 1 || !a.is_positive() || n_max < 10 {
        return Err(domain("double sum needs s >= 1, a > 0, N >= 10"));
    }
    let w = n_max as u32 + 2 + 96;
    let f: Vec<BigReal> = (0..=n_max + 2)
        .map(|k| {
            let base = a + &ExactRational::from(k as i64);
            BigReal::from_rational(&base, w).powi(-(s as i64))
        })
        .collect::<Result<_>>()?;
    let p = numeric::p_f64_table(n_max + 5);
    let mut row = vec![BigInt::from(1)];
    let mut terms = Vec::with_capacity(n_max + 3);
    for n in 0..=n_max + 2 {
        if n > 0 {
            let mut next = Vec::with_capacity(n + 1);
            next.push(BigInt::from(1));
            for k in 1..n {
                next.push(&row[k - 1] + &row[k]);
            }
            next.push(BigInt::from(1));
            row = next;
        }
        let mut acc = BigReal::zero(w);
        for (k, c) in row.iter().enumerate() {
            let t = &f[k] * &BigReal::from_int(c.clone());
            acc = if k.is_multiple_of(2) { &acc + &t } else { &acc - &t };
        }
        terms.push(p[n + 2] * acc.to_f64());
    }
    let af = a.to_f64();
    let sf = s as f64;
    let gs = libm::tgamma(sf);
    let inner = move |x: f64| {
        // Γ(s)^{-1} ∫ t^{s-1} e^{-at} (1-e^{-t})^x dt over (0,∞)
        let (v, _) = numeric::integrate_tail_f64(0.0, |t| {
            let l = libm::log1p(-libm::exp(-t));
            libm::pow(t, sf - 1.0) * libm::exp(-af * t + x * l)
        });
        v / gs
    };
    Ok(slow_sum(0, n_max, |n| terms[n], |sig| {
        if sig > 700.0 {
            return 0.0;
        }
        let x = libm::exp(sig);
        // x p_{x+2} S(x)
        x_p_shift(sig, 2.0) * inner(x)
    }))
}

// ---------------------------------------------------------------------------
// dispatcher

/// Route used to compute a Stieltjes constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StieltjesMethod {
    LimitFormula,
    PSeries,
    PolylogIntegral,
}

impl StieltjesMethod {
    pub fn name(self) -> &'static str {
        match self {
            StieltjesMethod::LimitFormula => "limit_formula",
            StieltjesMethod::PSeries => "p_series",
            StieltjesMethod::PolylogIntegral => "polylog_integral",
        }
    }

    pub fn all() -> [StieltjesMethod; 3] {
        [StieltjesMethod::LimitFormula, StieltjesMethod::PSeries, StieltjesMethod::PolylogIntegral]
    }
}

impl core::str::FromStr for StieltjesMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StieltjesMethod::all()
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(s.into()))
    }
}

#[derive(Debug, Clone)]
pub struct StieltjesRequest {
    pub k: usize,
    pub a: BigReal,
    pub method: StieltjesMethod,
}

/// Evaluates a request at `digits` of precision (the limit formula is
/// capped at [`LIMIT_DIGITS`]).
///
/// Coverage: the limit formula handles every `k <= 3` and `a > 0`; the
/// p-series handles `k = 0` (any `a`), `k = 1` (any `a`) and `k = 2, 3` at
/// `a = 1`; the polylog route handles `k <= 2` at `a = 1` and `k = 0` for any
/// `a` through the Lerch integral.
pub fn stieltjes(req: &StieltjesRequest, digits: u32) -> Result<BigReal> {
    let StieltjesRequest { k, ref a, method } = *req;
    if k > 3 {
        return Err(Error::Unsupported("Stieltjes constants above order 3".into()));
    }
    let p = bits_for_digits(digits);
    let a = a.set_prec(p);
    let at_one = a == BigReal::one(p);
    let unsupported = || Err(Error::Unsupported(alloc::format!("{} for k = {k} at a = {a}", method.name())));
    match method {
        StieltjesMethod::LimitFormula => stieltjes_limit(k, &a, LIMIT_TERMS),
        StieltjesMethod::PSeries => match k {
            0 => {
                let reps = digamma_reps(&a)?;
                let ps = reps.into_iter().find(|r| r.name == "p_series").expect("always present");
                Ok(-(ps.value + a.ln()?))
            }
            1 if at_one => gamma1_by_p(Gamma1Form::SemiAxis, &a, digits),
            1 => gamma1_by_p(Gamma1Form::UnitInterval, &a, digits),
            2 if at_one => gamma2_by_p(digits),
            3 if at_one => gamma3_by_p(digits),
            _ => unsupported(),
        },
        StieltjesMethod::PolylogIntegral => match k {
            0 if !at_one => {
                let one = BigReal::one(p);
                Ok(lerch_hurwitz_integral(&one, &a, digits)? - a.ln()?)
            }
            0..=2 if at_one => stieltjes_polylog(k, digits),
            _ => unsupported(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn bits(d: u32) -> u32 {
        bits_for_digits(d)
    }

    fn close(a: &BigReal, b: &BigReal, tol: f64) -> bool {
        (a - b).abs().to_f64() < tol
    }

    #[test]
    fn derivative_coefficients() {
        // f = ln x/x: f' = (1 - ln x)/x², f''' = (11 - 6 ln x)/x⁴
        assert_eq!(log_over_x_derivative(1, 1), vec![1, -1]);
        assert_eq!(log_over_x_derivative(1, 3), vec![11, -6]);
        assert_eq!(log_over_x_derivative(0, 3), vec![-6]);
    }

    /// The corrected limit agrees with the Laurent coefficients, and already
    /// at `N = 10^3`.
    #[test]
    fn limit_formula_against_laurent() {
        let p = bits(40);
        for a in [BigReal::one(p), BigReal::frac(1, 2, p)] {
            let lim = stieltjes_limit_all(3, &a, 1000).unwrap();
            for (k, v) in lim.iter().enumerate() {
                let r = zeta::stieltjes_laurent(k, &a).unwrap();
                assert!(close(v, &r, 1e-20), "k={k} a={a}: {v} vs {r}");
            }
        }
        let two = BigReal::from_i64(2).with_prec(p);
        let g0 = stieltjes_limit(0, &two, 2000).unwrap();
        assert!(close(&g0, &-gamma::digamma(&two).unwrap(), 1e-22));
    }

    #[test]
    fn kernel_closed_form() {
        let t = BigReal::one(bits(30));
        let (s, c) = p_kernel_series_check(&t, 40).unwrap();
        assert!(close(&s, &c, 1e-10));
        // small-t limit of the kernel is 1/2
        let tiny = BigReal::pow10(-30, bits(40));
        assert!(close(&p_kernel(&tiny).unwrap(), &BigReal::frac(1, 2, bits(40)), 1e-28));
    }

    #[test]
    fn gamma_by_p_kernel() {
        let d = 30;
        let p = bits(d);
        let one = BigReal::one(p);
        for k in 1..=3 {
            let r = zeta::stieltjes_laurent(k, &one).unwrap();
            let v = match k {
                1 => gamma1_by_p(Gamma1Form::SemiAxis, &one, d).unwrap(),
                2 => gamma2_by_p(d).unwrap(),
                _ => gamma3_by_p(d).unwrap(),
            };
            assert!(close(&v, &r, 1e-25), "k={k}: {v} vs {r}");
        }
        let u1 = gamma1_by_p(Gamma1Form::UnitInterval, &one, d).unwrap();
        assert!(close(&u1, &zeta::stieltjes_laurent(1, &one).unwrap(), 1e-25));
    }

    #[test]
    fn zeta_from_bell_series() {
        let z = [0.0, 0.0, PI2_6, 1.202_056_903_159_594_3, 1.082_323_233_711_138_2];
        for m in 2..=4u32 {
            let (r, up) = zeta_bell(m, 2000).unwrap();
            assert!(up);
            assert!(r.partial < z[m as usize]);
            assert!((r.value - z[m as usize]).abs() < r.tolerance.max(1e-11), "m={m}: {r:?}");
        }
    }

    const PI2_6: f64 = core::f64::consts::PI * core::f64::consts::PI / 6.0;

    #[test]
    fn hurwitz_from_bell_series() {
        let r = hurwitz_bell(2, 1.0, 2000).unwrap();
        let (z, _) = zeta_bell(2, 2000).unwrap();
        assert!((r.value - z.value).abs() < 1e-12);
        let r = hurwitz_bell(2, 0.5, 2000).unwrap();
        assert!((r.value - 3.0 * PI2_6).abs() < 1e-10, "{r:?}");
        let r = hurwitz_bell(3, 2.0, 2000).unwrap();
        assert!((r.value - (1.202_056_903_159_594_3 - 1.0)).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn knessl_and_bound() {
        let d = 30;
        let pn = pn_table();
        for n in [1u32, 2, 7] {
            let v = knessl_p(n, d).unwrap();
            let e = BigReal::from_rational(pn.p(n as usize + 1), bits(d));
            assert!(close(&v, &e, 1e-27), "n={n}");
        }
        let (b, ok) = p_upper_bound(1, d).unwrap();
        assert!(ok);
        assert!((b.to_f64() - 0.589_489_872_236_1).abs() < 1e-12);
        assert!((1..=40).all(|n| p_upper_bound(n, 20).unwrap().1));
    }

    #[test]
    fn digamma_representations() {
        let p = bits(25);
        for x in [BigReal::one(p), BigReal::from_i64(2).with_prec(p)] {
            let reps = digamma_reps(&x).unwrap();
            let r = reps[0].value.clone();
            for rep in &reps[1..] {
                let tol = rep.accuracy.max(1e-20);
                assert!(close(&rep.value, &r, tol), "{} at x={x}: {} vs {r}", rep.name, rep.value);
            }
        }
        let ten = BigReal::from_i64(10).with_prec(p);
        assert!(digamma_p_series_terms(&ten, 12).unwrap() <= 30);
    }

    #[test]
    fn polylog_routes() {
        let d = 20;
        let p = bits(d);
        let g = consts::euler_gamma(p);
        assert!(close(&stieltjes_polylog(0, d).unwrap(), &g, 1e-18));
        let two = BigReal::from_i64(2).with_prec(p);
        let z2m1 = pi2(p).div_i64(6) - BigReal::one(p);
        assert!(close(&polylog_zeta_integral(&two, d).unwrap(), &z2m1, 1e-18));
        let one = BigReal::one(p);
        assert!(close(&lerch_hurwitz_integral(&one, &one, d).unwrap(), &g, 1e-18));
        let half = BigReal::frac(1, 2, p);
        let v = lerch_hurwitz_integral(&two, &half, d).unwrap();
        assert!(close(&v, &(pi2(p).mul_pow2(-1) - BigReal::from_i64(2)), 1e-18));
    }

    #[test]
    fn binomial_double_sum_matches_lerch_integral() {
        let r = hurwitz_binomial_double_sum(2, &q(3, 2), 300).unwrap();
        let p = bits(20);
        let v = lerch_hurwitz_integral(&BigReal::from_i64(2).with_prec(p), &BigReal::frac(3, 2, p), 20).unwrap();
        assert!((r.value - v.to_f64()).abs() < 1e-9, "{r:?} vs {v}");
    }
}
