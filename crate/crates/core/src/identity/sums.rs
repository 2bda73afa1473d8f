//! Cases whose left side is an infinite series: p-coefficient sums closed by
//! the Euler-Maclaurin tail model, and unit-argument hypergeometric sums.

use alloc::vec::Vec;
use alloc::{format, vec};

use super::{Ctx, Params};
use crate::error::{Error, Result};
use crate::exact_kernel::{pn_table, PnRoute, PnTable};
use crate::numeric::{self, digamma_f64, hyp_unit_sum, ln_beta_shifted, pcomb_sum, slow_sum, PComb, SlowSum, EULER_GAMMA};
use crate::quad::Domain;
use crate::rational::ExactRational;
use crate::real::{gamma, BigReal};
use crate::report::{CheckMode, ToleranceClass, VerificationReport};

fn plain(_: f64, _: f64) -> f64 {
    0.0
}

fn sum_of(ctx: &Ctx<'_>, comb: &PComb, n0: usize, ln_w: impl Fn(f64, f64) -> f64) -> SlowSum {
    pcomb_sum(comb, n0, ctx.opts.terms, ln_w)
}

fn positive(p: &Params, name: &str) -> Result<ExactRational> {
    let v = p.rational(name)?;
    if !v.is_positive() {
        return Err(Error::Domain(format!("{name} must be positive, got {v}")));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// plain p-sums

pub(super) fn gamma_sum(ctx: &Ctx<'_>, _: &Params) -> Result<Vec<VerificationReport>> {
    let s = sum_of(ctx, &PComb::new(&[0, 1], &[(1, &[1])]), 1, plain);
    Ok(vec![ctx.slow("GAMMA_SUM", &s, ctx.c(&ctx.consts.gamma))?])
}

fn sum_p2_over_n(ctx: &Ctx<'_>) -> SlowSum {
    sum_of(ctx, &PComb::new(&[0, 1], &[(2, &[1])]), 1, plain)
}

pub(super) fn sums_239(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let c = ctx.consts;
    let form = p.get("form").map(|_| p.int("form")).transpose()?.unwrap_or(1);
    let (s, rhs, what) = match form {
        1 => (
            sum_p2_over_n(ctx),
            (ctx.c(&c.ln_2pi) - ctx.q(1, 1) - ctx.c(&c.gamma)).mul_pow2(-1),
            "sum p_{n+2}/n = (ln 2pi - 1 - gamma)/2",
        ),
        2 => (sum_of(ctx, &PComb::new(&[1], &[(3, &[1])]), 1, plain), ctx.q(5, 12), "sum p_{n+3} = 5/12"),
        3 => (
            sum_of(ctx, &PComb::new(&[1, 1], &[(2, &[0, -1])]), 1, plain),
            ctx.c(&c.gamma) - ctx.q(1, 1),
            "-sum n p_{n+2}/(n+1) = gamma - 1",
        ),
        _ => return Err(Error::Domain(format!("SUMS_239 form must be 1..3, got {form}"))),
    };
    Ok(vec![p.label(ctx.slow("SUMS_239", &s, rhs)?.note(what))])
}

pub(super) fn sums_239_printed(ctx: &Ctx<'_>, _: &Params) -> Result<Vec<VerificationReport>> {
    let c = ctx.consts;
    let s = sum_p2_over_n(ctx);
    let rhs = ctx.c(&c.ln_2pi).mul_pow2(-1) - ctx.q(1, 1) - ctx.c(&c.gamma);
    let r = ctx.slow("SUMS_239.printed", &s, rhs)?;
    Ok(vec![r.note("printed value ln(2pi)/2 - 1 - gamma; the sum is (ln 2pi - 1 - gamma)/2")])
}

pub(super) fn prop3(ctx: &Ctx<'_>, _: &Params) -> Result<Vec<VerificationReport>> {
    // 12n(n+1) times the summand
    let comb = PComb::new(&[0, 12, 12], &[(4, &[0, 12, 18, 6]), (3, &[12, 12, -12, -12]), (2, &[0, -11, -6, 6])]);
    let mut s = sum_of(ctx, &comb, 1, plain);
    s.value += 0.25;
    s.partial += 0.25;
    Ok(vec![ctx.slow("PROP3_LNA", &s, ctx.c(&ctx.consts.ln_a))?])
}

// ---------------------------------------------------------------------------
// Beta-weighted p-sums

pub(super) fn lemma2(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let yq = positive(p, "y")?;
    let y = yq.to_f64();
    let s = sum_of(ctx, &PComb::new(&[1], &[(3, &[1])]), 1, |x, s| ln_beta_shifted(x, s, 1.0, y));
    let w = ctx.prec();
    let yr = BigReal::from_rational(&yq, w);
    let inner = (yr.mul_i64(6)).recip()? - ctx.q(1, 1) + yr.mul_pow2(1) - ctx.c(&ctx.consts.ln_2pi)
        + gamma::log_gamma(&yr)?.mul_pow2(1)
        + (ctx.q(1, 1) - yr.mul_pow2(1)) * gamma::digamma(&yr)?;
    Ok(vec![p.label(ctx.slow("LEMMA2_BETA", &s, -inner.mul_pow2(-1))?)])
}

pub(super) fn prop2(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let yq = positive(p, "y")?;
    let y = yq.to_f64();
    let comb = PComb::new(&[1], &[(3, &[2, 1]), (2, &[0, -1])]);
    let s = sum_of(ctx, &comb, 1, |x, s| ln_beta_shifted(x, s, 1.0, y));
    let w = ctx.prec();
    let yr = BigReal::from_rational(&yq, w);
    let target = gamma::log_gamma(&yr)? - &yr * &yr.ln()? + &yr;
    let rhs = -(yr.mul_i64(6)).recip()? - gamma::digamma(&yr)?.mul_pow2(-1) + ctx.c(&ctx.consts.ln_2pi).mul_pow2(-1)
        - target;
    Ok(vec![p.label(ctx.slow("PROP2_LOGGAMMA", &s, rhs)?)])
}

pub(super) fn lemma3(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let xq = positive(p, "x")?;
    let x = xq.to_f64();
    // (n-1)!/(x)_n = B(n, x)
    let s = sum_of(ctx, &PComb::new(&[1], &[(1, &[1])]), 1, |n, s| ln_beta_shifted(n, s, 0.0, x));
    let xr = BigReal::from_rational(&xq, ctx.prec());
    let rhs = xr.ln()? - gamma::digamma(&xr)?;
    Ok(vec![p.label(ctx.slow("LEMMA3", &s, rhs)?)])
}

pub(super) fn cor2(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let xq = positive(p, "x")?;
    let x = xq.to_f64();
    // n!/(x+1)_n = x B(n+1, x)
    let lx = libm::log(x);
    let s = sum_of(ctx, &PComb::new(&[1], &[(2, &[1])]), 0, |n, s| lx + ln_beta_shifted(n, s, 1.0, x));
    let xr = BigReal::from_rational(&xq, ctx.prec());
    let rhs = &xr * &(xr.ln()? - gamma::digamma(&xr)?);
    Ok(vec![p.label(ctx.slow("COR2", &s, rhs)?)])
}

/// For `x <= 0` the weights `n!/(x+1)_n` grow like `n^{-x}` and the series
/// diverges; the report compares partial sums at `N/10` and `N`.
pub(super) fn cor2_divergent(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let x = p.f64("x")?;
    if x >= 0.0 || libm::trunc(x) == x {
        return Err(Error::Domain("divergence witness needs negative non-integer x".into()));
    }
    let n_max = ctx.opts.terms;
    let mut acc = numeric::Neumaier::default();
    let mut weight = 1.0;
    let mut at_tenth = 0.0;
    for n in 0..=n_max {
        if n > 0 {
            weight *= n as f64 / (x + n as f64);
        }
        acc.add(numeric::p_f64(n + 2) * weight);
        if n == n_max / 10 {
            at_tenth = acc.value();
        }
    }
    let lhs = BigReal::from_f64(acc.value())?;
    let rhs = BigReal::from_f64(at_tenth)?;
    let r = VerificationReport::real(
        "COR2.printed",
        CheckMode::SeriesVsClosedForm,
        lhs,
        rhs,
        ToleranceClass::SeriesSlow(1e-6),
        ctx.digits(),
    )
    .terms(n_max as u64 + 1)
    .note(format!(
        "partial sums at N and N/10 = {}; terms behave like n^(-x-1)/ln^2 n, so the sum diverges and x(psi(x) - ln x) is undefined",
        n_max / 10
    ));
    Ok(vec![p.label(r)])
}

// ---------------------------------------------------------------------------
// double Gamma

pub(super) fn prop4_sweep() -> Vec<Params> {
    let mut v: Vec<Params> =
        [(1, 2), (1, 1), (2, 1)].iter().map(|&(a, b)| Params::new().with("a", ExactRational::frac(a, b))).collect();
    v.push(Params::new().with("form", 2.into()));
    v
}

/// `12 c_n` with `c_n = (n+2)(n+3)p_{n+4}/2 - (n+1)(n+2)p_{n+3} + (n² + n + 1/6)p_{n+2}/2`.
pub(super) fn prop4_comb() -> PComb {
    PComb::new(&[12], &[(4, &[36, 30, 6]), (3, &[-24, -36, -12]), (2, &[1, 6, 6])])
}

pub(super) fn prop4(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let form = p.get("form").map(|_| p.int("form")).transpose()?.unwrap_or(1);
    if form == 2 {
        // coefficients against the Taylor series of the integrand
        let comb = prop4_comb();
        let series = super::integrals::glaisher_series(41);
        let parts = (1..=40)
            .map(|n| {
                let lhs = comb.exact(n).expect("p table reaches n + 4");
                VerificationReport::exact("PROP4_GAMMA2", lhs, series[n].clone()).param("n", n)
            })
            .collect();
        let r = crate::report::combine_exact("PROP4_GAMMA2", parts);
        return Ok(vec![p.label(r.note("c_n against the Taylor coefficients of the log-form integrand, n <= 40"))]);
    }
    if form != 1 {
        return Err(Error::Domain(format!("PROP4_GAMMA2 form must be 1 or 2, got {form}")));
    }
    let aq = positive(p, "a")?;
    let a = aq.to_f64();
    let s = sum_of(ctx, &prop4_comb(), 1, |x, s| ln_beta_shifted(x, s, 1.0, a));
    let rhs = super::integrals::glaisher_kernel_integral(&BigReal::from_rational(&aq, ctx.prec()), ctx.digits())?;
    Ok(vec![p.label(ctx.slow("PROP4_GAMMA2", &s, rhs)?.note("against the double Gamma kernel integral"))])
}

// ---------------------------------------------------------------------------
// Proposition-7 sums

pub(super) fn prop7_sweep() -> Vec<Params> {
    let f = |k: i64| Params::new().with("form", k.into());
    vec![
        f(1),
        f(2),
        f(3),
        f(4).with("a", ExactRational::frac(1, 2)),
        f(4).with("a", 2.into()),
        f(5),
    ]
}

pub(super) fn prop7(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let c = ctx.consts;
    let form = p.int("form")?;
    let w = ctx.prec();
    let g = ctx.c(&c.gamma);
    let psi1 = |x: &BigReal| gamma::digamma(&(x + &BigReal::one(x.prec())));
    let rep = match form {
        1 => {
            let s = sum_of(ctx, &PComb::new(&[1, 1], &[(1, &[1])]), 1, plain);
            let rhs = ctx.q(1, 1) - crate::real::consts::ln2(w);
            ctx.slow("PROP7", &s, rhs)?.note("sum p_{n+1}/(n+1) = 1 - ln 2")
        }
        2 => {
            let s = sum_of(ctx, &PComb::new(&[0, 0, 1], &[(1, &[1])]), 1, plain);
            let m = ctx.integrate(Domain::UnitInterval, |x, _| Ok(psi1(x)?.sqr()))?;
            let rhs = (g.sqr() - ctx.q(1, 1)).mul_pow2(-1) + ctx.c(&c.pi).sqr().div_i64(12) + m.value.mul_pow2(-1);
            ctx.slow("PROP7", &s, rhs)?.nodes(m.nodes as u64).note("sum p_{n+1}/n^2")
        }
        3 => {
            let s = sum_of(ctx, &PComb::new(&[0, 0, 0, 1], &[(1, &[1])]), 1, plain);
            let gw = g.set_prec(w + 16);
            let m = ctx.integrate(Domain::UnitInterval, |x, _| {
                let v = psi1(x)?;
                let v2 = v.sqr();
                Ok(&gw.set_prec(x.prec()) * &v2.mul_i64(3) + v2 * v)
            })?;
            let pi2 = ctx.c(&c.pi).sqr();
            let rhs = (ctx.q(-5, 1) + g.powi(3)?.mul_pow2(1) + &g * &pi2 + ctx.c(&c.zeta3).mul_i64(4)).div_i64(12)
                + m.value.div_i64(6);
            ctx.slow("PROP7", &s, rhs)?.nodes(m.nodes as u64).note("sum p_{n+1}/n^3")
        }
        4 => {
            let aq = positive(p, "a")?;
            let (u, v) = (i64::try_from(aq.numer()), i64::try_from(aq.denom()));
            let (Ok(u), Ok(v)) = (u, v) else {
                return Err(Error::Domain("a out of range".into()));
            };
            // p/(n + u/v) = v p/(v n + u)
            let s = sum_of(ctx, &PComb::new(&[u, v], &[(1, &[v])]), 1, plain);
            let ar = BigReal::from_rational(&aq, w + 16);
            let lga = gamma::log_gamma(&ar)?;
            let m = ctx.integrate(Domain::UnitInterval, |x, _| {
                let x1 = x + &BigReal::one(x.prec());
                let a = ar.set_prec(x.prec());
                (lga.set_prec(x.prec()) + gamma::log_gamma(&x1)? - gamma::log_gamma(&(&x1 + &a))?).exp()
            })?;
            let rhs = BigReal::from_rational(&aq, w).recip()? - m.value;
            ctx.slow("PROP7", &s, rhs)?.nodes(m.nodes as u64).note("sum p_{n+1}/(n+a)")
        }
        5 => generating(ctx)?,
        _ => return Err(Error::Domain(format!("PROP7 form must be 1..5, got {form}"))),
    };
    Ok(vec![p.label(rep)])
}

/// `Σ p_{n+1} z^n/n = z ∫_0^1 x 3F2(1,1,1-x; 2,2; z) dx` at `z = 1/2`.
fn generating(ctx: &Ctx<'_>) -> Result<VerificationReport> {
    let w = ctx.prec();
    let n_max = (w as usize) + 8;
    let owned;
    let table = if pn_table().n_max() > n_max {
        pn_table()
    } else {
        owned = PnTable::build(n_max + 1, PnRoute::Recursion)?;
        &owned
    };
    let mut lhs = ExactRational::zero();
    let half = ExactRational::frac(1, 2);
    let mut zn = ExactRational::one();
    for n in 1..=n_max {
        zn *= &half;
        lhs += &(table.p(n + 1) * &zn / ExactRational::from(n as i64));
    }
    // tail below Σ_{n>N} 2^{-n} / 2 = 2^{-N-1}
    let lhs = BigReal::from_rational(&lhs, w);
    let m = ctx.integrate(Domain::UnitInterval, |x, xc| {
        let wx = x.prec();
        let mut t = BigReal::one(wx);
        let mut acc = BigReal::one(wx);
        for k in 0.. {
            // (1-x)_{k+1}/(k+1)! z^{k+1} from the k-th term
            t = (&t * &(xc + &BigReal::from_i64(k))).div_i64(2 * (k + 1));
            let term = t.div_i64((k + 2) * (k + 2));
            if term.is_zero() || term.top() < -(wx as i64) - 4 {
                break;
            }
            acc = acc + term;
        }
        Ok(x * &acc)
    })?;
    let rhs = m.value.mul_pow2(-1);
    Ok(ctx
        .tight("PROP7", lhs, rhs, CheckMode::SeriesVsClosedForm)
        .terms(n_max as u64)
        .nodes(m.nodes as u64)
        .note("generating function, j = 1 at z = 1/2"))
}

// ---------------------------------------------------------------------------
// Stirling-Beta expansion

pub(super) fn eq317(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let aq = positive(p, "a")?;
    let a = aq.to_f64();
    let m = p.int("m")?;
    let n = p.int("n")?;
    if !(2..=3).contains(&m) || n < 1 {
        return Err(Error::Domain("Stirling-Beta expansion supports m in 2..3, n >= 1".into()));
    }
    let k = (m - 1) as usize;
    let nf = n as f64;
    let fact = if k == 2 { 2.0 } else { 1.0 };
    // u_j = |s(j,k)|/j! by u_{j+1,k} = (j u_{j,k} + u_{j,k-1})/(j+1)
    let n_max = ctx.opts.terms;
    let mut u = vec![[0.0f64; 3]; n_max + 3];
    u[0][0] = 1.0;
    for j in 0..n_max + 2 {
        for kk in 0..3 {
            let lower = if kk > 0 { u[j][kk - 1] } else { 0.0 };
            u[j + 1][kk] = (j as f64 * u[j][kk] + lower) / (j as f64 + 1.0);
        }
    }
    let term = |j: usize| {
        if j < k {
            return 0.0;
        }
        let jf = j as f64;
        fact * u[j][k] * libm::exp(ln_beta_shifted(jf, libm::log(jf), nf, a))
    };
    let density = |s: f64| {
        let x = libm::exp(s);
        // x u(x) with u(x,1) = 1/x, u(x,2) = (ψ(x)+γ)/x
        let xu = if k == 1 {
            1.0
        } else if s > 40.0 {
            s + EULER_GAMMA
        } else {
            digamma_f64(x) + EULER_GAMMA
        };
        fact * xu * libm::exp(ln_beta_shifted(x, s, nf, a))
    };
    let sum = slow_sum(k, n_max, term, density);
    let w = ctx.prec();
    let am1 = BigReal::from_rational(&(&aq - &ExactRational::one()), w + 16);
    let r = ctx.integrate(Domain::UnitInterval, |x, xc| {
        let l = -xc.ln()?;
        let base = (&am1.set_prec(x.prec()) * &(-&l)).exp()?;
        Ok(base * l.powi(m - 1)? * x.powi(n - 1)?)
    })?;
    let rep = ctx.slow("EQ317", &sum, r.value)?.nodes(r.nodes as u64);
    Ok(vec![p.label(rep)])
}

// ---------------------------------------------------------------------------
// unit-argument hypergeometric sums

pub(super) fn hyp115_sweep() -> Vec<Params> {
    [(1, 3, 2), (1, 2, 3)]
        .iter()
        .map(|&(a, b, y)| Params::new().with("x", ExactRational::frac(a, b)).with("y", y.into()))
        .collect()
}

fn hyp115_common(ctx: &Ctx<'_>, p: &Params, id: &str, shift: i64) -> Result<Vec<VerificationReport>> {
    let xq = p.rational("x")?;
    let yq = positive(p, "y")?;
    let (x, y) = (xq.to_f64(), yq.to_f64());
    if x == 0.0 || x == 1.0 {
        return Err(Error::Domain("x must differ from 0 and 1".into()));
    }
    let s = hyp_unit_sum(&[1.0, 1.0, 2.0 - x], &[3.0, y + 1.0], ctx.opts.terms)?;
    let w = ctx.prec();
    let xr = BigReal::from_rational(&xq, w);
    let yr = BigReal::from_rational(&yq, w);
    let xy1 = &xr + &yr - BigReal::one(w);
    let arg = &xr + &yr + BigReal::from_i64(shift);
    let bracket = BigReal::one(w) - &xr - &xy1 * &gamma::digamma(&yr)? + &xy1 * &gamma::digamma(&arg)?;
    let rhs = yr.mul_pow2(1) / (&xr * &(&xr - &BigReal::one(w))) * bracket;
    Ok(vec![p.label(ctx.slow(id, &s, rhs)?)])
}

pub(super) fn hyp_115(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    hyp115_common(ctx, p, "HYP_115", -1)
}

pub(super) fn hyp_115_printed(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let r = hyp115_common(ctx, p, "HYP_115.printed", 1)?;
    Ok(r.into_iter().map(|r| r.note("printed digamma argument x + y + 1; the sum needs x + y - 1")).collect())
}

/// Partial sum of `pF_{p-1}(a; b; 1)` through `j = N`.
fn hyp_partial(a: &[f64], b: &[f64], n_max: usize) -> f64 {
    let mut acc = numeric::Neumaier::default();
    let mut t = 1.0;
    for j in 0..=n_max {
        acc.add(t);
        let jf = j as f64;
        t *= a.iter().map(|&ai| ai + jf).product::<f64>() / (b.iter().map(|&bi| bi + jf).product::<f64>() * (jf + 1.0));
    }
    acc.value()
}

/// Two unit-argument series against a rational right side. Divergent pairs
/// are reported with their partial sums and fail.
fn hyp_pair(
    ctx: &Ctx<'_>,
    p: &Params,
    id: &str,
    first: (&[f64], &[f64]),
    second: (&[f64], &[f64]),
    rhs: ExactRational,
) -> Result<Vec<VerificationReport>> {
    let n = ctx.opts.terms;
    let rhs_r = BigReal::from_rational(&rhs, ctx.prec());
    let rep = match (hyp_unit_sum(first.0, first.1, n), hyp_unit_sum(second.0, second.1, n)) {
        (Ok(a), Ok(b)) => {
            let s = SlowSum {
                partial: a.partial + b.partial,
                tail: a.tail + b.tail,
                value: a.value + b.value,
                tolerance: a.tolerance + b.tolerance,
                terms: a.terms + b.terms,
            };
            let r = ctx.slow(id, &s, rhs_r)?;
            if s.tolerance > 1e-6 {
                let mut r = r.note(format!("cannot certify 6 digits: tail tolerance {:.2e}", s.tolerance));
                r.pass = false;
                r
            } else {
                r
            }
        }
        _ => {
            let partial = hyp_partial(first.0, first.1, n) + hyp_partial(second.0, second.1, n);
            let mut r = VerificationReport::real(
                id,
                CheckMode::SeriesVsClosedForm,
                BigReal::from_f64(partial)?,
                rhs_r,
                ToleranceClass::SeriesSlow(1e-6),
                ctx.digits(),
            )
            .terms(n as u64 + 1)
            .note("cannot certify: a unit-argument series diverges at this t; lhs is the partial sum");
            r.pass = false;
            r
        }
    };
    Ok(vec![p.label(rep)])
}

fn t_param(p: &Params) -> Result<ExactRational> {
    let t = p.rational("t")?;
    if t.is_zero() || t == 1 || t == 2 {
        return Err(Error::Domain("t must avoid the poles 0, 1, 2".into()));
    }
    Ok(t)
}

pub(super) fn hyp_218(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    hyp_218_as(ctx, p, "HYP_218")
}

pub(super) fn hyp_218_printed(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    hyp_218_as(ctx, p, "HYP_218.printed")
}

pub(super) fn hyp_219(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    hyp_219_as(ctx, p, "HYP_219")
}

pub(super) fn hyp_219_printed(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    hyp_219_as(ctx, p, "HYP_219.printed")
}

fn hyp_218_as(ctx: &Ctx<'_>, p: &Params, id: &str) -> Result<Vec<VerificationReport>> {
    let tq = t_param(p)?;
    let t = tq.to_f64();
    let rhs = ExactRational::from(12) / (&tq * &(&tq - &ExactRational::one()));
    hyp_pair(ctx, p, id, (&[2.0, 2.0, 3.0 - t], &[3.0, 4.0]), (&[2.0, 2.0, 2.0, 3.0 - t], &[1.0, 3.0, 4.0]), rhs)
}

fn hyp_219_as(ctx: &Ctx<'_>, p: &Params, id: &str) -> Result<Vec<VerificationReport>> {
    let tq = t_param(p)?;
    let t = tq.to_f64();
    let one = ExactRational::one();
    let rhs = ExactRational::from(12) * (ExactRational::from(4) - &tq)
        / (&tq * &(&tq - &one) * (&tq - ExactRational::from(2)));
    hyp_pair(
        ctx,
        p,
        id,
        (&[2.0, 2.0, 2.0, 2.0, 3.0 - t], &[1.0, 1.0, 3.0, 4.0]),
        (&[2.0, 2.0, 2.0, 3.0 - t], &[1.0, 3.0, 4.0]),
        rhs,
    )
}
