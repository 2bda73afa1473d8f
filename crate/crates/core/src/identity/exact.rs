//! Cases checked in exact rational arithmetic.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt::Write;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Ctx, Params};
use crate::error::{Error, Result};
use crate::exact_kernel::{bernoulli, binomial, factorial, pn_table};
use crate::numeric::PComb;
use crate::rational::ExactRational;
use crate::report::{combine_exact, VerificationReport};
use crate::series::{self, TruncatedSeries};

fn q(a: i64, b: i64) -> ExactRational {
    ExactRational::frac(a, b)
}

fn int(n: impl Into<num_bigint::BigInt>) -> ExactRational {
    ExactRational::from_int(n)
}

/// `(a)_j`.
fn poch(a: &ExactRational, j: u32) -> ExactRational {
    (0..j).fold(ExactRational::one(), |acc, i| acc * (a + &ExactRational::from(i as i64)))
}

/// Folds a sweep of exact checks over the index `idx`; a passing sweep drops
/// the index from the parameters.
fn fold(id: &str, idx: &str, parts: Vec<VerificationReport>) -> VerificationReport {
    let mut r = combine_exact(id, parts);
    if r.pass {
        r.params.retain(|(n, _)| n != idx);
    }
    r
}

// ---------------------------------------------------------------------------
// Appendix: finite alternating sums

pub(super) fn a1_sweep() -> Vec<Params> {
    let mut v: Vec<Params> = [(1, 2), (1, 1), (5, 3)].iter().map(|&(a, b)| Params::new().with("a", q(a, b))).collect();
    v.push(Params::new().with("form", 2.into()));
    v
}

pub(super) fn appendix_a1(_: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let form = p.get("form").map(|_| p.int("form")).transpose()?.unwrap_or(1);
    match form {
        1 => {
            let a = p.rational("a")?;
            if !a.is_positive() {
                return Err(Error::Domain("a must be positive".into()));
            }
            let mut parts = Vec::new();
            for n in 1..=4u32 {
                for j in 0..=12u32 {
                    let lhs = poch(&a, j) / poch(&(&a + &ExactRational::from(n as i64)), j);
                    let mut s = ExactRational::zero();
                    for k in 0..n {
                        let ak = &a + &ExactRational::from(k as i64);
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        let term = int(binomial(n as u64 - 1, k as u64)) * ExactRational::from(sign)
                            / ak.clone()
                            * poch(&ak, j)
                            / poch(&(&ak + &ExactRational::one()), j);
                        s += &term;
                    }
                    let rhs = poch(&a, n) / int(factorial(n as u64 - 1)) * s;
                    parts.push(VerificationReport::exact("APPENDIX_A1", lhs, rhs).param("n", n).param("j", j));
                }
            }
            let mut r = combine_exact("APPENDIX_A1", parts);
            if r.pass {
                r.params.clear();
                r = r.note("n = 1..4, j = 0..12");
            }
            Ok(vec![p.label(r)])
        }
        2 => {
            // 1/(x(x+1)...(x+N)) = (1/N!) Σ C(N,k)(-1)^k/(x+k)
            let mut parts = Vec::new();
            for x in [q(1, 3), q(2, 1), q(7, 5)] {
                for n in 0..=6u64 {
                    let lhs = (0..=n).fold(ExactRational::one(), |acc, i| acc * (&x + &ExactRational::from(i as i64)));
                    let lhs = lhs.recip()?;
                    let mut s = ExactRational::zero();
                    for k in 0..=n {
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        s += &(int(binomial(n, k)) * ExactRational::from(sign) / (&x + &ExactRational::from(k as i64)));
                    }
                    let rhs = s / int(factorial(n));
                    parts.push(VerificationReport::exact("APPENDIX_A1", lhs, rhs).param("x", &x).param("N", n));
                }
            }
            let mut r = combine_exact("APPENDIX_A1", parts);
            if r.pass {
                r.params.clear();
                r = r.note("partial fractions, N = 0..6 at x = 1/3, 2, 7/5");
            }
            Ok(vec![p.label(r)])
        }
        _ => Err(Error::Domain(format!("APPENDIX_A1 form must be 1 or 2, got {form}"))),
    }
}

// ---------------------------------------------------------------------------
// low-order coefficients

pub(super) fn cor3(_: &Ctx<'_>, _: &Params) -> Result<Vec<VerificationReport>> {
    let pn = pn_table();
    let first = VerificationReport::exact("COR3", pn.p(3).clone(), bernoulli(2) / ExactRational::from(2))
        .param("form", 1)
        .note("p_3 = B_2/2");
    let rhs = pn.p(5) * &ExactRational::from(6) + pn.p(3) - pn.p(4) * &ExactRational::from(6);
    let second = VerificationReport::exact("COR3", bernoulli(4) / ExactRational::from(4), rhs)
        .param("form", 2)
        .note("B_4/4 = 6p_5 + p_3 - 6p_4");
    Ok(vec![first, second])
}

pub(super) fn eq226_printed(_: &Ctx<'_>, _: &Params) -> Result<Vec<VerificationReport>> {
    let mut notes = String::new();
    let mut worst: Option<(i64, ExactRational)> = None;
    for k in 1..=4 {
        let res = series::bracket_residual_poles(k, &series::printed_ibp_bracket_poles(k)?)?;
        let _ = write!(notes, "form {k}:");
        if res.is_empty() {
            notes.push_str(" regular;");
        }
        for (m, c) in &res {
            let _ = write!(notes, " {c} z^{m}");
            if worst.is_none() {
                worst = Some((*m, c.clone()));
            }
        }
        if !res.is_empty() {
            notes.push(';');
        }
    }
    let (m, c) = worst.unwrap_or((0, ExactRational::zero()));
    let r = VerificationReport::exact("EQ226_PARTS.printed", c, ExactRational::zero())
        .param("pole", m)
        .note(format!("uncancelled poles of the printed brackets: {}", notes.trim_end_matches(';')));
    Ok(vec![r])
}

pub(super) fn prop4_printed(_: &Ctx<'_>, _: &Params) -> Result<Vec<VerificationReport>> {
    // (n+2)² in place of (n+2)(n+3)/2 on p_{n+4}
    let printed = PComb::new(&[12], &[(4, &[48, 48, 12]), (3, &[-24, -36, -12]), (2, &[1, 6, 6])]);
    let series = super::integrals::glaisher_series(11);
    let parts = (1..=10)
        .map(|n| VerificationReport::exact("PROP4_GAMMA2.printed", printed.exact(n).expect("in table"), series[n].clone()).param("n", n))
        .collect();
    let r = fold("PROP4_GAMMA2.printed", "n", parts);
    Ok(vec![r.note("printed coefficient (n+2)^2 p_{n+4}; the terms then grow like n/ln^2 n and the series diverges")])
}

// ---------------------------------------------------------------------------
// Pochhammer identities

pub(super) fn hyp_114(_: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let a = p.rational("a")?;
    if !a.is_positive() {
        return Err(Error::Domain("a must be positive".into()));
    }
    let one = ExactRational::one();
    let a1 = &a + &one;
    let a2 = &a1 + &one;
    let parts = (0..=30u32)
        .map(|j| {
            let lhs = poch(&a, j) / poch(&a2, j);
            let rhs = &a1 * &poch(&a, j) / poch(&a1, j) - &a * &poch(&a1, j) / poch(&a2, j);
            VerificationReport::exact("HYP_114", lhs, rhs).param("j", j)
        })
        .collect();
    let r = fold("HYP_114", "j", parts);
    Ok(vec![p.label(r.note("j = 0..30"))])
}

const HYP217_TERMS: u32 = 40;

pub(super) fn hyp_217(_: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let t = p.rational("t")?;
    let n_max = HYP217_TERMS;
    let nt = -t.clone();
    let six_t = &ExactRational::from(6) - &t;
    let fact = |n: u32| int(factorial(n as u64));
    let cube = |x: ExactRational| &x * &x * &x;
    // T = t(t-1)...(t-5) = (-t)_6
    let tt = poch(&nt, 6);
    let s1: ExactRational = (1..=n_max).map(|n| -(cube(n.into_q()) * poch(&nt, n + 5) / fact(n + 5))).sum();
    let s2: ExactRational =
        (0..n_max).map(|n| -(cube((n + 1).into_q()) * poch(&nt, n + 6) / fact(n + 6))).sum();
    let two = ExactRational::from(2);
    let s3 = -(&tt
        * (0..n_max)
            .map(|n| cube(poch(&two, n)) / cube(poch(&ExactRational::one(), n)) * poch(&six_t, n) / fact(n + 6))
            .sum::<ExactRational>());
    let s4 = -(&tt / ExactRational::from(720)
        * (0..n_max)
            .map(|n| {
                let one = ExactRational::one();
                cube(poch(&two, n)) / (poch(&one, n) * poch(&one, n)) * poch(&six_t, n)
                    / poch(&ExactRational::from(7), n)
                    / fact(n)
            })
            .sum::<ExactRational>());
    let parts = [s2, s3, s4]
        .into_iter()
        .enumerate()
        .map(|(i, s)| VerificationReport::exact("HYP_217", s1.clone(), s).param("form", i + 2))
        .collect();
    let r = fold("HYP_217", "form", parts);
    let growth = 2.0 - t.to_f64();
    Ok(vec![p.label(r.note(format!(
        "partial sums through {n_max} terms agree form by form; the terms grow like n^{growth:.2}, so the series themselves diverge"
    )))])
}

trait IntoQ {
    fn into_q(self) -> ExactRational;
}

impl IntoQ for u32 {
    fn into_q(self) -> ExactRational {
        ExactRational::from(self as i64)
    }
}

// ---------------------------------------------------------------------------
// Beta-type integrals I_n(s)

/// `I_n(s) = Σ_k C(n-1,k)(-1)^k (s-1)!/(k+1)^s`, term-by-term integration of
/// `∫ (-ln u)^{s-1} (1-u)^{n-1} du`.
pub fn i_direct(n: u32, s: u32) -> ExactRational {
    let g = int(factorial(s as u64 - 1));
    (0..n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            int(binomial(n as u64 - 1, k as u64)) * ExactRational::from(sign) * &g
                / ExactRational::from(k as i64 + 1).powi(s as i32)
        })
        .sum()
}

fn i_binomial(n: u32, s: u32) -> ExactRational {
    let g = int(factorial(s as u64 - 1));
    let sum: ExactRational = (1..=n)
        .map(|k| {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            int(binomial(n as u64, k as u64)) * ExactRational::from(sign) / ExactRational::from(k as i64).powi(s as i32 - 1)
        })
        .sum();
    g * sum / ExactRational::from(n as i64)
}

/// `Γ(s)/n h_{s-1}(1, 1/2, ..., 1/n)` with the complete homogeneous
/// symmetric polynomial built one variable at a time.
fn i_harmonic(n: u32, s: u32) -> ExactRational {
    let m = s as usize - 1;
    // h[r] = h_r(x_1..x_i)
    let mut h = vec![ExactRational::zero(); m + 1];
    h[0] = ExactRational::one();
    for i in 1..=n {
        let x = q(1, i as i64);
        for r in 1..=m {
            let prev = h[r - 1].clone();
            h[r] += &(&x * &prev);
        }
    }
    int(factorial(s as u64 - 1)) * h[m].clone() / ExactRational::from(n as i64)
}

/// `(-1)^{s-1} ∂_a^{s-1} B(a,n)` at `a = 1` from the Taylor product
/// `(n-1)! Π_i 1/(1+i+ε)`.
fn i_derivative(n: u32, s: u32) -> ExactRational {
    let order = s as i64 - 1;
    let mut prod = TruncatedSeries::monomial(0, int(factorial(n as u64 - 1)), order);
    for i in 0..n {
        let b = ExactRational::from(1 + i as i64);
        let f = TruncatedSeries::new(
            0,
            (0..=order)
                .map(|m| {
                    let sign = if m % 2 == 0 { 1 } else { -1 };
                    ExactRational::from(sign) / b.powi(m as i32 + 1)
                })
                .collect(),
        );
        prod = &prod * &f;
    }
    let c = prod.coeff(order).expect("within order");
    let sign = if order % 2 == 0 { 1 } else { -1 };
    c * int(factorial(order as u64)) * ExactRational::from(sign)
}

const MC_SAMPLES: usize = 4096;

/// `Γ(s) E[(1 - x_1...x_s)^{n-1}]` over uniform samples, with its standard
/// error.
fn i_monte_carlo(n: u32, s: u32, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 8 | s as u64));
    let (mut sum, mut sum2) = (0.0, 0.0);
    for _ in 0..MC_SAMPLES {
        let mut prod = 1.0;
        for _ in 0..s {
            prod *= (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        }
        let v = libm::pow(1.0 - prod, n as f64 - 1.0);
        sum += v;
        sum2 += v * v;
    }
    let m = MC_SAMPLES as f64;
    let mean = sum / m;
    let var = (sum2 / m - mean * mean).max(0.0);
    let g = int(factorial(s as u64 - 1)).to_f64();
    (g * mean, g * libm::sqrt(var / m))
}

pub(super) fn prop8_sweep() -> Vec<Params> {
    let mut v = Vec::new();
    for form in 1..=2i64 {
        for s in 2..=5i64 {
            v.push(Params::new().with("s", s.into()).with("form", form.into()));
        }
    }
    v
}

fn ns_ranges(p: &Params) -> Result<(Vec<u32>, u32)> {
    let s = p.int("s")?;
    if !(1..=12).contains(&s) {
        return Err(Error::Domain(format!("s must be in 1..12, got {s}")));
    }
    let ns = match p.get("n") {
        Some(_) => {
            let n = p.int("n")?;
            if !(1..=40).contains(&n) {
                return Err(Error::Domain(format!("n must be in 1..40, got {n}")));
            }
            vec![n as u32]
        }
        None => (1..=8).collect(),
    };
    Ok((ns, s as u32))
}

pub(super) fn prop8(ctx: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let form = p.get("form").map(|_| p.int("form")).transpose()?.unwrap_or(1);
    let (ns, s) = ns_ranges(p)?;
    let mut parts = Vec::new();
    for &n in &ns {
        let direct = i_direct(n, s);
        let r = match form {
            1 => {
                let mut r = VerificationReport::exact("PROP8_IN", i_binomial(n, s), direct.clone());
                let mut bad = Vec::new();
                if s >= 2 && i_harmonic(n, s) != direct {
                    bad.push("harmonic");
                }
                if i_derivative(n, s) != direct {
                    bad.push("derivative");
                }
                let (mc, se) = i_monte_carlo(n, s, ctx.opts.seed);
                let dev = libm::fabs(mc - direct.to_f64());
                if dev > 6.0 * se + 1e-12 {
                    bad.push("monte carlo");
                }
                r = r.note(format!("Monte Carlo {mc:.5} +- {se:.1e} over {MC_SAMPLES} samples"));
                if !bad.is_empty() {
                    r.pass = false;
                    r = r.note(format!("disagreeing routes: {}", bad.join(", ")));
                }
                r
            }
            2 => {
                if s < 2 {
                    return Err(Error::Domain("the recurrence needs s >= 2".into()));
                }
                let lhs = ExactRational::from(n as i64) * &direct;
                let rhs = ExactRational::from(s as i64 - 1) * (1..=n).map(|j| i_direct(j, s - 1)).sum::<ExactRational>();
                VerificationReport::exact("PROP8_IN", lhs, rhs).note("n I_n(s) = (s-1) sum_{j<=n} I_j(s-1)")
            }
            _ => return Err(Error::Domain(format!("PROP8_IN form must be 1 or 2, got {form}"))),
        };
        parts.push(r.param("n", n));
    }
    Ok(vec![p.label(fold("PROP8_IN", "n", parts))])
}

pub(super) fn prop8_printed_sweep() -> Vec<Params> {
    (2..=5i64).map(|s| Params::new().with("s", s.into())).collect()
}

/// The printed recurrences, each with its residual for every `n <= 8`.
pub(super) fn prop8_printed(_: &Ctx<'_>, p: &Params) -> Result<Vec<VerificationReport>> {
    let s = p.int("s")?;
    if !(2..=12).contains(&s) {
        return Err(Error::Domain(format!("s must be in 2..12, got {s}")));
    }
    let s = s as u32;
    let sm1 = ExactRational::from(s as i64 - 1);
    let mut out = Vec::new();
    for form in 1..=2 {
        let mut parts = Vec::new();
        let mut residuals = String::new();
        let first_n = if form == 1 { 2 } else { 1 };
        for n in first_n..=8u32 {
            let nq = ExactRational::from(n as i64);
            let lhs = &sm1 / &nq * i_direct(n, s);
            let rhs = if form == 1 {
                &sm1 / ExactRational::from(n as i64 - 1) * i_direct(n - 1, s) + i_direct(n, s - 1) / nq
            } else {
                (1..=n).map(|j| i_direct(j, s - 1) / ExactRational::from(j as i64 * j as i64)).sum()
            };
            let _ = write!(residuals, " n={n}: {};", &lhs - &rhs);
            parts.push(VerificationReport::exact("PROP8_IN.printed", lhs, rhs).param("n", n));
        }
        let failing = parts.iter().filter(|r| !r.pass).count();
        let total = parts.len();
        let r = combine_exact("PROP8_IN.printed", parts);
        out.push(p.label(r.param("form", form)).note(format!(
            "{failing} of {total} fail; residuals lhs - rhs:{}",
            residuals.trim_end_matches(';')
        )));
    }
    Ok(out)
}
