//! Log-gamma, digamma, polygamma and Beta for positive real arguments.
//!
//! All routines shift the argument upward until the asymptotic Stirling
//! series converges to the working precision, then undo the shift with the
//! recurrence. The asymptotic sums stop once a term falls below the last
//! guard bit, so results hold the input precision to within a few ulps.

use alloc::format;

use super::{consts, BigReal};
use crate::error::{Error, Result};
use crate::exact_kernel::bernoulli;

const GUARD: u32 = 32;

fn check_positive(x: &BigReal) -> Result<()> {
    if x.is_positive() {
        return Ok(());
    }
    if x.is_integer() {
        Err(Error::Pole(x.to_sci(12)))
    } else {
        Err(Error::Domain(format!("argument {} must be positive", x.to_sci(12))))
    }
}

/// Shift threshold for `w` working bits.
fn threshold(w: u32, extra: u32) -> i64 {
    (w as f64 * 0.13) as i64 + 8 + extra as i64
}

pub fn digamma(x: &BigReal) -> Result<BigReal> {
    check_positive(x)?;
    let p = x.prec();
    let w = p + GUARD;
    let x0 = threshold(w, 0);
    let mut y = x.set_prec(w);
    // sum 1/(x+k) accumulated as a single fraction num/den
    let mut num = BigReal::zero(w);
    let mut den = BigReal::one(w);
    while y.to_f64() < x0 as f64 {
        num = &num * &y + &den;
        den = &den * &y;
        y = y + BigReal::from_i64(1);
    }
    let shift = if num.is_zero() { BigReal::zero(w) } else { &num / &den };
    let inv = y.recip()?;
    let inv2 = inv.sqr();
    let mut s = y.ln()? - inv.mul_pow2(-1);
    let mut pw = inv2.clone();
    let eps_top = s.top().max(0) - w as i64 - 2;
    for k in 1.. {
        let t = (BigReal::from_rational(&bernoulli(2 * k), w) * &pw).div_i64(2 * k as i64);
        if t.is_zero() || t.top() < eps_top {
            break;
        }
        s = s - t;
        pw = &pw * &inv2;
    }
    Ok((s - shift).with_prec(p))
}

/// `ψ^{(k)}(x)`; `k = 0` is the digamma function.
pub fn polygamma(k: u32, x: &BigReal) -> Result<BigReal> {
    if k == 0 {
        return digamma(x);
    }
    check_positive(x)?;
    let p = x.prec();
    let w = p + GUARD + 2 * k;
    let x0 = threshold(w, 2 * k);
    let kk = k as i64;
    let mut y = x.set_prec(w);
    let mut shift = BigReal::zero(w);
    while y.to_f64() < x0 as f64 {
        shift = shift + y.powi(-(kk + 1))?;
        y = y + BigReal::from_i64(1);
    }
    // (-1)^{k+1} [ (k-1)!/y^k + k!/(2 y^{k+1}) + sum_j B_{2j} (2j+k-1)!/((2j)! y^{2j+k}) ]
    let fact = |n: i64| (1..=n).fold(BigReal::one(w), |a, i| a.mul_i64(i));
    let inv = y.recip()?;
    let inv2 = inv.sqr();
    let yk = inv.powi(kk)?;
    let mut s = &yk * fact(kk - 1) + (&yk * &inv * fact(kk)).mul_pow2(-1);
    let mut pw = &yk * &inv2;
    // ratio (2j+k-1)!/(2j)! maintained incrementally
    let mut ratio = fact(kk - 1) * BigReal::from_i64(kk).mul_i64(kk + 1).div_i64(2);
    let eps_top = s.top() - w as i64 - 2;
    for j in 1.. {
        if j > 1 {
            let jj = j as i64;
            ratio = ratio.mul_i64((2 * jj + kk - 2) * (2 * jj + kk - 1)).div_i64((2 * jj - 1) * (2 * jj));
        }
        let t = BigReal::from_rational(&bernoulli(2 * j), w) * &ratio * &pw;
        if t.is_zero() || t.top() < eps_top {
            break;
        }
        s = s + t;
        pw = &pw * &inv2;
    }
    let total = s + shift * fact(kk);
    Ok(if k % 2 == 1 { total } else { -total }.with_prec(p))
}

pub fn log_gamma(x: &BigReal) -> Result<BigReal> {
    check_positive(x)?;
    let p = x.prec();
    let w = p + GUARD + (x.top().max(0) as u32);
    let x0 = threshold(w, 0);
    let mut y = x.set_prec(w);
    let mut prod = BigReal::one(w);
    while y.to_f64() < x0 as f64 {
        prod = &prod * &y;
        y = y + BigReal::from_i64(1);
    }
    // (y - 1/2) ln y - y + ln(2π)/2 + sum B_{2j} / (2j(2j-1) y^{2j-1})
    let half = BigReal::frac(1, 2, w);
    let mut s = (&y - &half) * y.ln()? - &y + consts::ln_2pi(w)?.mul_pow2(-1);
    let inv = y.recip()?;
    let inv2 = inv.sqr();
    let mut pw = inv.clone();
    let eps_top = s.top().max(0) - w as i64 - 2;
    for j in 1.. {
        let jj = j as i64;
        let t = (BigReal::from_rational(&bernoulli(2 * j), w) * &pw).div_i64(2 * jj * (2 * jj - 1));
        if t.is_zero() || t.top() < eps_top {
            break;
        }
        s = s + t;
        pw = &pw * &inv2;
    }
    Ok((s - prod.ln()?).with_prec(p))
}

pub fn gamma_fn(x: &BigReal) -> Result<BigReal> {
    let p = x.prec();
    log_gamma(&x.set_prec(p + 16))?.exp().map(|v| v.with_prec(p))
}

pub fn beta(x: &BigReal, y: &BigReal) -> Result<BigReal> {
    let p = x.max_prec(y);
    let w = p + 16;
    let (x, y) = (x.set_prec(w), y.set_prec(w));
    let l = log_gamma(&x)? + log_gamma(&y)? - log_gamma(&(&x + &y))?;
    l.exp().map(|v| v.with_prec(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::bits_for_digits;

    fn p() -> u32 {
        bits_for_digits(50)
    }

    fn tol(d: i64) -> BigReal {
        BigReal::pow10(-d, p())
    }

    #[test]
    fn digamma_values() {
        let g = consts::euler_gamma(p());
        let one = BigReal::one(p());
        assert!((digamma(&one).unwrap() + &g).abs() < tol(48));
        let two = BigReal::from_i64(2).with_prec(p());
        assert!((digamma(&two).unwrap() - (&one - &g)).abs() < tol(48));
        // ψ(1/2) = -γ - 2 ln 2
        let h = BigReal::frac(1, 2, p());
        let expect = -&g - consts::ln2(p()).mul_pow2(1);
        assert!((digamma(&h).unwrap() - expect).abs() < tol(48));
        assert!(matches!(digamma(&BigReal::zero(p())), Err(Error::Pole(_))));
        assert!(matches!(digamma(&BigReal::frac(-1, 2, p())), Err(Error::Domain(_))));
    }

    #[test]
    fn recurrence_holds() {
        for (a, b) in [(1, 3), (1, 2), (2, 1), (10, 1)] {
            let x = BigReal::frac(a, b, p());
            let lhs = digamma(&(&x + &BigReal::one(p()))).unwrap();
            let rhs = digamma(&x).unwrap() + x.recip().unwrap();
            assert!((lhs - rhs).abs() < tol(42));
        }
    }

    #[test]
    fn polygamma_values() {
        let pi2 = consts::pi(p()).sqr();
        // ψ'(1) = π²/6, ψ'(1/2) = π²/2
        let one = BigReal::one(p());
        assert!((polygamma(1, &one).unwrap() - pi2.div_i64(6)).abs() < tol(47));
        assert!((polygamma(1, &BigReal::frac(1, 2, p())).unwrap() - pi2.div_i64(2)).abs() < tol(47));
        // ψ''(1) = -2 ζ(3)
        let z3 = BigReal::parse("1.2020569031595942853997381615114499907649862923404988817922715553", p()).unwrap();
        assert!((polygamma(2, &one).unwrap() + z3.mul_i64(2)).abs() < tol(47));
        // ψ'''(1) = π^4/15
        assert!((polygamma(3, &one).unwrap() - pi2.sqr().div_i64(15)).abs() < tol(46));
    }

    #[test]
    fn log_gamma_values() {
        let one = BigReal::one(p());
        assert!(log_gamma(&one).unwrap().abs() < tol(48));
        assert!(log_gamma(&BigReal::from_i64(2).with_prec(p())).unwrap().abs() < tol(48));
        // Γ(1/2) = √π
        let lg = log_gamma(&BigReal::frac(1, 2, p())).unwrap();
        let expect = consts::pi(p()).ln().unwrap().mul_pow2(-1);
        assert!((lg - expect).abs() < tol(48));
        let g5 = gamma_fn(&BigReal::from_i64(5).with_prec(p())).unwrap();
        assert!((g5 - BigReal::from_i64(24)).abs() < tol(46));
        let big = log_gamma(&BigReal::from_i64(1000).with_prec(p())).unwrap();
        assert!((big.to_f64() - 5905.220423209181).abs() < 1e-9);
    }

    #[test]
    fn beta_values() {
        for n in 1..6 {
            let b = beta(&BigReal::one(p()), &BigReal::from_i64(n).with_prec(p())).unwrap();
            assert!((b - BigReal::frac(1, n, p())).abs() < tol(47));
        }
    }
}
