//! Polylogarithm and Lerch transcendent on the negative real axis.
//!
//! Both come from the Fermi-type integral `∫_0^∞ g(t)/(e^t + v) dt`. For
//! `v > e` the integrand has a soft step at `t = ln v`, so the range is split
//! there: `(0, ln v)` goes to tanh-sinh and the tail to exp-sinh. Small `v`
//! takes the power series instead.

use alloc::vec;
use alloc::vec::Vec;

use super::{consts, gamma, zeta, BigReal};
use crate::error::{domain, Result};
use crate::exact_kernel::binomial;
use crate::quad::shared_rules;

const GUARD: u32 = 16;

/// Below this the power series in `v` is used.
const SERIES_MAX: f64 = 0.25;

fn digits_for(bits: u32) -> u32 {
    consts::digits_of(bits)
}

/// `∫_0^∞ g(t)/(e^t + v) dt` for `v >= 0` and `g` of polynomial growth.
pub fn fermi_integral<G>(v: &BigReal, g: G) -> Result<BigReal>
where
    G: Fn(&BigReal) -> Result<BigReal>,
{
    fermi_integral_decay(v, 1.0, g)
}

/// As [`fermi_integral`] for `g(t)/e^t` decaying like `e^{-rate t}`, `rate > 0`.
pub fn fermi_integral_decay<G>(v: &BigReal, rate: f64, g: G) -> Result<BigReal>
where
    G: Fn(&BigReal) -> Result<BigReal>,
{
    if rate <= 0.0 {
        return Err(domain("fermi integral needs a positive decay rate"));
    }
    if v.is_negative() {
        return Err(domain("fermi integral needs v >= 0"));
    }
    let p = v.prec();
    let w = p + GUARD;
    let rules = shared_rules(w);
    let target = digits_for(p) + 2;
    let one = BigReal::one(w);
    let v = v.set_prec(w);
    // past this point the integrand is below 2^{-w} of its bulk
    let cutoff = (0.7 * w as f64 + 64.0) / rate.min(1.0);
    let fermi = |t: &BigReal, shift: &BigReal| -> Result<BigReal> {
        if t.to_f64() > cutoff {
            return Ok(BigReal::zero(w));
        }
        Ok(t.exp()? + shift)
    };
    if v.to_f64() <= core::f64::consts::E {
        let r = rules.rule(crate::quad::Domain::SemiAxis).integrate(
            |pt| {
                let t = pt.x;
                let den = fermi(t, &v)?;
                if den.is_zero() {
                    return Ok(den);
                }
                Ok(g(t)? / den)
            },
            target,
        )?;
        return Ok(r.value.with_prec(p));
    }
    let l = v.ln()?;
    let head = rules.rule(crate::quad::Domain::UnitInterval).integrate(
        |pt| {
            let t = &l * pt.x;
            Ok(g(&t)? * &l / (t.exp()? + &v))
        },
        target,
    )?;
    let tail = rules.rule(crate::quad::Domain::SemiAxis).integrate(
        |pt| {
            let t = &l + pt.x;
            let den = fermi(pt.x, &one)?;
            if den.is_zero() {
                return Ok(den);
            }
            Ok(g(&t)? / den)
        },
        target,
    )?;
    let tail = tail.value / &v;
    Ok((head.value + tail).with_prec(p))
}

/// `Li_s(-v)` for `s > 0`, `v >= 0`.
pub fn polylog_neg(s: &BigReal, v: &BigReal) -> Result<BigReal> {
    if !s.is_positive() {
        return Err(domain("polylog integral needs s > 0"));
    }
    if v.is_negative() {
        return Err(domain("polylog_neg needs v >= 0"));
    }
    let p = s.max_prec(v);
    if v.is_zero() {
        return Ok(BigReal::zero(p));
    }
    let w = p + GUARD;
    let (s, v) = (s.set_prec(w), v.set_prec(w));
    if s == BigReal::one(w) {
        return Ok((-v.ln_1p()?).with_prec(p));
    }
    if v.to_f64() <= SERIES_MAX {
        return Ok(power_series(&v, |k| BigReal::from_i64(k).with_prec(w).pow(&-&s))?.with_prec(p));
    }
    let sm1 = &s - &BigReal::one(w);
    let j = fermi_integral(&v, |t| t.pow(&sm1))?;
    let g = gamma::gamma_fn(&s)?;
    Ok((-(&v * &j) / g).with_prec(p))
}

/// `sum_{k>=1} (-v)^k c_k` for `0 < v <= 1/4`, stopping once terms fall
/// below the working precision.
fn power_series(v: &BigReal, c: impl Fn(i64) -> Result<BigReal>) -> Result<BigReal> {
    let w = v.prec();
    let mut pw = -v.clone();
    let mut sum = BigReal::zero(w);
    let eps_top = pw.top() - w as i64 - 4;
    let mut k = 1i64;
    loop {
        let t = &pw * &c(k)?;
        sum = &sum + &t;
        if k > 1 && (t.is_zero() || t.top() < eps_top) {
            break;
        }
        pw = -(&pw * v);
        k += 1;
    }
    Ok(sum)
}

/// Taylor coefficients of `1/Γ(1+ε)` through `ε^order`, from
/// `ln Γ(1+ε) = -γε + sum_{m>=2} (-1)^m ζ(m) ε^m/m`.
pub fn recip_gamma_jet(order: usize, prec: u32) -> Result<Vec<BigReal>> {
    let w = prec + GUARD;
    // exponent g(ε) = γε - sum_{m>=2} (-1)^m ζ(m) ε^m / m
    let mut g = vec![BigReal::zero(w); order + 1];
    if order >= 1 {
        g[1] = consts::euler_gamma(w);
    }
    for (m, gm) in g.iter_mut().enumerate().skip(2) {
        let z = zeta::zeta(&BigReal::from_i64(m as i64).with_prec(w))?.div_i64(m as i64);
        *gm = if m % 2 == 0 { -z } else { z };
    }
    // f = exp(g): f_n = (1/n) sum_{k=1}^n k g_k f_{n-k}
    let mut f = vec![BigReal::one(w)];
    for n in 1..=order {
        let mut acc = BigReal::zero(w);
        for k in 1..=n {
            acc = &acc + &(&g[k] * &f[n - k]).mul_i64(k as i64);
        }
        f.push(acc.div_i64(n as i64));
    }
    Ok(f.into_iter().map(|x| x.with_prec(prec)).collect())
}

/// `∂_s^k Li_s(-v)` at `s = 1`, `k <= 3`, with the `1/Γ` jet computed once.
#[derive(Debug, Clone)]
pub struct PolylogSJet {
    k: usize,
    prec: u32,
    rg: Vec<BigReal>,
}

impl PolylogSJet {
    pub fn new(k: usize, prec: u32) -> Result<Self> {
        if k > 3 {
            return Err(crate::error::Error::Unsupported("s-derivatives of Li above order 3".into()));
        }
        Ok(Self { k, prec, rg: recip_gamma_jet(k, prec + GUARD)? })
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn eval(&self, v: &BigReal) -> Result<BigReal> {
        Ok(self.eval_all(v)?.pop().expect("k+1 entries"))
    }

    /// `[∂_s^0, ..., ∂_s^k] Li_s(-v)` at `s = 1`, sharing the integrals `J_i`.
    pub fn eval_all(&self, v: &BigReal) -> Result<Vec<BigReal>> {
        if v.is_negative() {
            return Err(domain("polylog derivative needs v >= 0"));
        }
        let p = self.prec;
        let w = p + GUARD;
        if v.is_zero() {
            return Ok(vec![BigReal::zero(p); self.k + 1]);
        }
        let v = v.set_prec(w);
        let d0 = (-v.ln_1p()?).with_prec(p);
        if self.k == 0 {
            return Ok(vec![d0]);
        }
        let mut out = vec![d0];
        if v.to_f64() <= SERIES_MAX {
            // sum (-v)^j (-ln j)^k / j
            for k in 1..=self.k as i64 {
                let s = power_series(&v, |j| {
                    let lj = BigReal::from_i64(j).with_prec(w).ln()?;
                    let t = lj.powi(k)?.div_i64(j);
                    Ok(if k % 2 == 1 { -t } else { t })
                })?;
                out.push(s.with_prec(p));
            }
            return Ok(out);
        }
        // d^k/dε^k [-v R(ε) J(ε)] = -v sum_i C(k,i) (k-i)! r_{k-i} J_i
        let mut js = vec![v.ln_1p()? / &v];
        for i in 1..=self.k as i64 {
            js.push(fermi_integral(&v, |t| t.ln()?.powi(i))?);
        }
        for k in 1..=self.k {
            let mut acc = BigReal::zero(w);
            for (i, ji) in js.iter().enumerate().take(k + 1) {
                let c = binomial(k as u64, i as u64) * crate::exact_kernel::factorial((k - i) as u64);
                let c = BigReal::from_int(c).with_prec(w);
                acc = &acc + &(&c * &self.rg[k - i] * ji);
            }
            out.push((-(&v * &acc)).with_prec(p));
        }
        Ok(out)
    }
}

/// `∂_s^k Li_s(-v)` at `s = 1`.
pub fn polylog_s_derivative(k: usize, v: &BigReal) -> Result<BigReal> {
    PolylogSJet::new(k, v.prec())?.eval(v)
}

/// Lerch transcendent `Φ(-v, s, a) = sum_n (-v)^n/(n+a)^s`, continued
/// through its integral form, for `v >= 0`, `s > 0`, `a > 0`.
pub fn lerch_phi(v: &BigReal, s: &BigReal, a: &BigReal) -> Result<BigReal> {
    if v.is_negative() || !s.is_positive() || !a.is_positive() {
        return Err(domain("lerch_phi needs v >= 0, s > 0, a > 0"));
    }
    let p = v.max_prec(s).max(a.prec());
    let w = p + GUARD;
    let (v, s, a) = (v.set_prec(w), s.set_prec(w), a.set_prec(w));
    let neg_s = -&s;
    let a_term = a.pow(&neg_s)?;
    if v.is_zero() {
        return Ok(a_term.with_prec(p));
    }
    if v.to_f64() <= SERIES_MAX {
        let rest = power_series(&v, |n| (&a + &BigReal::from_i64(n)).pow(&neg_s))?;
        return Ok((a_term + rest).with_prec(p));
    }
    let one = BigReal::one(w);
    let sm1 = &s - &one;
    let am1 = &a - &one;
    let s_is_one = s == one;
    let j = fermi_integral_decay(&v, a.to_f64(), |t| {
        let damp = (-(&am1 * t)).exp()?;
        if s_is_one {
            Ok(damp)
        } else {
            Ok(t.pow(&sm1)? * damp)
        }
    })?;
    let j = if s_is_one { j } else { j / gamma::gamma_fn(&s)? };
    Ok(j.with_prec(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::bits_for_digits;

    fn p() -> u32 {
        bits_for_digits(40)
    }

    fn r(n: i64, d: i64) -> BigReal {
        BigReal::frac(n, d, p())
    }

    fn tol(d: i64) -> BigReal {
        BigReal::pow10(-d, p())
    }

    #[test]
    fn polylog_values() {
        let v = r(3, 1);
        let li1 = polylog_neg(&r(1, 1), &v).unwrap();
        assert!((li1 + r(4, 1).ln().unwrap()).abs() < tol(38));
        assert!(polylog_neg(&r(2, 1), &r(0, 1)).unwrap().is_zero());
        // Li_2(-1) = -π²/12
        let li2 = polylog_neg(&r(2, 1), &r(1, 1)).unwrap();
        let expect = -consts::pi(p()).sqr().div_i64(12);
        assert!((li2 - expect).abs() < tol(36));
        // integral and series branches meet
        let a = polylog_neg(&r(3, 2), &BigReal::from_f64(0.25).unwrap().with_prec(p())).unwrap();
        let b = {
            let v = BigReal::from_f64(0.25).unwrap().with_prec(p() + 16);
            let s = r(3, 2).with_prec(p() + 16);
            let j = fermi_integral(&v, |t| t.pow(&(&s - &BigReal::one(p() + 16)))).unwrap();
            -(&v * &j) / gamma::gamma_fn(&s).unwrap()
        };
        assert!((a - b).abs() < tol(36));
        // inversion Li_2(-v) + Li_2(-1/v) = -π²/6 - ln²v/2 at v = 10
        let v = r(10, 1);
        let lhs = polylog_neg(&r(2, 1), &v).unwrap() + polylog_neg(&r(2, 1), &r(1, 10)).unwrap();
        let rhs = -consts::pi(p()).sqr().div_i64(6) - v.ln().unwrap().sqr().mul_pow2(-1);
        assert!((lhs - rhs).abs() < tol(35));
    }

    /// Finite differences in `s` of the integral against the derivative routine.
    #[test]
    fn s_derivatives() {
        for v in [r(1, 8), r(2, 1), r(50, 1)] {
            let h = BigReal::pow10(-8, p());
            let up = polylog_neg(&(r(1, 1) + &h), &v).unwrap();
            let dn = polylog_neg(&(r(1, 1) - &h), &v).unwrap();
            let fd = (up - dn) / h.mul_pow2(1);
            let d1 = polylog_s_derivative(1, &v).unwrap();
            assert!((fd - d1).abs() < tol(14), "v = {v}");
        }
        // at v = 1: ∂_s Li_s(-1) = -∂_s η(s) at s = 1 = -(γ ln 2 - ln²2/2)
        let d1 = polylog_s_derivative(1, &r(1, 1)).unwrap();
        let l2 = consts::ln2(p());
        let expect = -(consts::euler_gamma(p()) * &l2 - l2.sqr().mul_pow2(-1));
        assert!((d1 - expect).abs() < tol(36));
        assert!(polylog_s_derivative(4, &r(1, 1)).is_err());
    }

    #[test]
    fn recip_gamma_coefficients() {
        let rg = recip_gamma_jet(3, p()).unwrap();
        let g = consts::euler_gamma(p());
        assert_eq!(rg[0], BigReal::one(p()));
        assert!((&rg[1] - &g).abs() < tol(38));
        // second coefficient (γ² - π²/6)/2
        let c2 = (g.sqr() - consts::pi(p()).sqr().div_i64(6)).mul_pow2(-1);
        assert!((&rg[2] - &c2).abs() < tol(38));
    }

    #[test]
    fn lerch_values() {
        assert!((lerch_phi(&r(0, 1), &r(2, 1), &r(3, 1)).unwrap() - r(1, 9)).abs() < tol(38));
        let ln2 = consts::ln2(p());
        assert!((lerch_phi(&r(1, 1), &r(1, 1), &r(1, 1)).unwrap() - ln2).abs() < tol(36));
        // Φ(-v, s, 1) = Li_s(-v)/(-v)
        let v = r(1, 2);
        let phi = lerch_phi(&v, &r(2, 1), &r(1, 1)).unwrap();
        let li = polylog_neg(&r(2, 1), &v).unwrap();
        assert!((phi + li / v).abs() < tol(36));
        // large v through the split integral
        let v = r(1000, 1);
        let phi = lerch_phi(&v, &r(2, 1), &r(1, 1)).unwrap();
        let li = polylog_neg(&r(2, 1), &v).unwrap();
        assert!((phi + li / v).abs() < tol(36));
    }
}
