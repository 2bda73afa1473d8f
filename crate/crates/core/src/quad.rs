//! Double-exponential quadrature at arbitrary precision.
//!
//! Three transforms share one driver: tanh-sinh on `(0,1)`, exp-sinh on
//! `(0,∞)` and sinh-sinh on `(-∞,∞)`. Level `ℓ` uses step `2^{-ℓ}`; each level
//! reuses the previous sum and only evaluates the new odd nodes. Nodes are
//! generated once per rule and kept, so a rule can be shared by many
//! integrals at the same precision.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::real::{bits_for_digits, consts, BigReal};

/// Integration domain of an [`Integrand`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `(0,1)`; the rule receives `x` and `1-x`, both to full relative accuracy.
    UnitInterval,
    /// `(0,∞)` for integrands that decay at least like `u^{-1-δ}`.
    SemiAxis,
    /// `(0,∞)` written in `x = ln u`: the rule integrates `g(x) = u f(u)` over
    /// the real line. Suited to `1/(ln²u + π²)` kernels, whose `u`-form
    /// decays too slowly for exp-sinh.
    LogSemiAxis,
    /// `(-∞,∞)`.
    RealLine,
}

/// A point handed to an integrand: the abscissa and its complement.
/// On `(0,1)` `xc = 1 - x`; elsewhere `xc = x`.
pub struct Point<'a> {
    pub x: &'a BigReal,
    pub xc: &'a BigReal,
}

type EvalFn<'a> = dyn Fn(&Point<'_>) -> Result<BigReal> + Sync + 'a;

pub struct Integrand<'a> {
    pub domain: Domain,
    pub eval: Box<EvalFn<'a>>,
    /// Free-text description of the endpoint behaviour.
    pub endpoints: &'static str,
}

impl<'a> Integrand<'a> {
    pub fn new(domain: Domain, endpoints: &'static str, f: impl Fn(&Point<'_>) -> Result<BigReal> + Sync + 'a) -> Self {
        Self { domain, eval: Box::new(f), endpoints }
    }
}

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: BigReal,
    /// Difference between the last two levels; an upper bound in practice.
    pub error: BigReal,
    pub nodes: usize,
    pub levels: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    TanhSinh,
    ExpSinh,
    SinhSinh,
}

#[derive(Clone)]
struct Node {
    /// abscissa for `+t`
    x: BigReal,
    /// complement (tanh-sinh) or reciprocal abscissa for `-t` (exp-sinh)
    xc: BigReal,
    w_pos: BigReal,
    w_neg: BigReal,
}

/// Node tables for one transform at one precision.
pub struct QuadratureRule {
    kind: Kind,
    bits: u32,
    max_level: u32,
    levels: Vec<OnceBox<Vec<Node>>>,
}

const T_MAX: f64 = 9.0;

impl QuadratureRule {
    fn new(kind: Kind, bits: u32, max_level: u32) -> Self {
        let levels = (0..=max_level).map(|_| OnceBox::new()).collect();
        Self { kind, bits, max_level, levels }
    }

    pub fn unit(bits: u32) -> Self {
        Self::new(Kind::TanhSinh, bits, 12)
    }

    pub fn semi_axis(bits: u32) -> Self {
        Self::new(Kind::ExpSinh, bits, 12)
    }

    pub fn real_line(bits: u32) -> Self {
        Self::new(Kind::SinhSinh, bits, 12)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Nodes at level `ℓ`: `t = k 2^{-ℓ}` with `k` odd (all `k >= 0` at level 0).
    fn level(&self, l: u32) -> &[Node] {
        self.levels[l as usize].get_or_init(|| Box::new(self.build_level(l)))
    }

    fn build_level(&self, l: u32) -> Vec<Node> {
        let w = self.bits + 16;
        let half_pi = consts::pi(w).mul_pow2(-1);
        let step = 1i64 << l;
        let mut out = Vec::new();
        let mut k: i64 = if l == 0 { 0 } else { 1 };
        let inc = if l == 0 { 1 } else { 2 };
        // Far nodes stop once both abscissae are unrepresentably extreme.
        let limit_exp = 40 * self.bits as i64;
        loop {
            let t = BigReal::from_i64(k).mul_pow2(-(l as i64)).with_prec(w);
            if t.to_f64() > T_MAX {
                break;
            }
            let (sh, ch) = t.sinh_cosh().expect("finite");
            let u = &half_pi * &sh;
            let du = &half_pi * &ch;
            let node = match self.kind {
                Kind::TanhSinh => {
                    // x = 1/(1+e^{2u}), 1-x = e^{2u}/(1+e^{2u}), dx = 2 x (1-x) du
                    let e = u.mul_pow2(1).exp().expect("bounded");
                    let den = &e + &BigReal::one(w);
                    let x = den.recip().expect("positive");
                    let xc = &e / &den;
                    let wt = (&x * &xc * &du).mul_pow2(1);
                    if x.top() < -limit_exp {
                        break;
                    }
                    Node { x, xc, w_pos: wt.clone(), w_neg: wt }
                }
                Kind::ExpSinh => {
                    // u(t) = e^{(π/2) sinh t}, dx = u (π/2) cosh t
                    if u.to_f64() > (limit_exp as f64) * 0.69 {
                        break;
                    }
                    let x = u.exp().expect("bounded");
                    let xr = x.recip().expect("positive");
                    let w_pos = &x * &du;
                    let w_neg = &xr * &du;
                    Node { x, xc: xr, w_pos, w_neg }
                }
                Kind::SinhSinh => {
                    if u.to_f64() > 2000.0 {
                        break;
                    }
                    let (x, cx) = u.sinh_cosh().expect("bounded");
                    let wt = &cx * &du;
                    Node { x: x.clone(), xc: x, w_pos: wt.clone(), w_neg: wt }
                }
            };
            out.push(node);
            k += inc;
            if k > step * 64 {
                break;
            }
        }
        out.into_iter().map(|n| round_node(n, self.bits + 8)).collect()
    }

    /// Integrates with level doubling until two successive levels agree to
    /// `10^{-target_digits}` relative to `max(1, |I|)`.
    pub fn integrate<F>(&self, f: F, target_digits: u32) -> Result<QuadResult>
    where
        F: Fn(&Point<'_>) -> Result<BigReal>,
    {
        let w = self.bits + 8;
        let tol = BigReal::pow10(-(target_digits as i64), w);
        let mut nodes = 0usize;
        let mut prev: Option<BigReal> = None;
        let mut estimate = BigReal::zero(w);
        for l in 0..=self.max_level {
            let h = BigReal::one(w).mul_pow2(-(l as i64));
            let (part, n) = self.level_sum(l, &f, &estimate)?;
            nodes += n;
            estimate = match &prev {
                None => &h * &part,
                Some(p) => p.mul_pow2(-1) + &h * &part,
            };
            if let Some(p) = &prev {
                let diff = (&estimate - p).abs();
                let scale = estimate.abs().max(BigReal::one(w));
                if l >= 3 && diff <= &tol * &scale {
                    return Ok(QuadResult { value: estimate, error: diff, nodes, levels: l });
                }
            }
            prev = Some(estimate.clone());
        }
        let p = prev.expect("at least one level");
        Err(Error::Accuracy { estimate: p.to_f64(), error: f64::NAN, levels: self.max_level })
    }

    fn level_sum<F>(&self, l: u32, f: &F, running: &BigReal) -> Result<(BigReal, usize)>
    where
        F: Fn(&Point<'_>) -> Result<BigReal>,
    {
        let w = self.bits + 8;
        let nodes = self.level(l);
        let mut sum = BigReal::zero(w);
        let mut count = 0usize;
        // scale for the outward stopping rule
        let floor_top = |s: &BigReal| running.abs().max(s.abs()).top().max(-(w as i64)) - w as i64 - 4;
        for side in [1i32, -1] {
            let mut small = 0;
            for (i, n) in nodes.iter().enumerate() {
                if side == -1 && l == 0 && i == 0 {
                    continue; // t = 0 counted once
                }
                let (x, xc, wt) = match (self.kind, side) {
                    (Kind::TanhSinh, 1) => (&n.x, &n.xc, &n.w_pos),
                    (Kind::TanhSinh, _) => (&n.xc, &n.x, &n.w_neg),
                    (Kind::ExpSinh, 1) => (&n.x, &n.x, &n.w_pos),
                    (Kind::ExpSinh, _) => (&n.xc, &n.xc, &n.w_neg),
                    (Kind::SinhSinh, 1) => (&n.x, &n.x, &n.w_pos),
                    (Kind::SinhSinh, _) => {
                        let neg = -&n.x;
                        let v = f(&Point { x: &neg, xc: &neg })?;
                        count += 1;
                        let c = v * &n.w_neg;
                        let tiny = c.is_zero() || c.top() < floor_top(&sum);
                        sum = &sum + &c;
                        if tiny && i > 4 {
                            small += 1;
                            if small >= 3 {
                                break;
                            }
                        } else {
                            small = 0;
                        }
                        continue;
                    }
                };
                let v = f(&Point { x, xc })?;
                count += 1;
                let c = v * wt;
                let tiny = c.is_zero() || c.top() < floor_top(&sum);
                sum = &sum + &c;
                if tiny && i > 4 {
                    small += 1;
                    if small >= 3 {
                        break;
                    }
                } else {
                    small = 0;
                }
            }
        }
        Ok((sum, count))
    }
}

fn round_node(n: Node, bits: u32) -> Node {
    Node { x: n.x.with_prec(bits), xc: n.xc.with_prec(bits), w_pos: n.w_pos.with_prec(bits), w_neg: n.w_neg.with_prec(bits) }
}

/// Rules for one working precision, built lazily.
pub struct RuleSet {
    bits: u32,
    unit: OnceBox<QuadratureRule>,
    semi: OnceBox<QuadratureRule>,
    line: OnceBox<QuadratureRule>,
}

impl RuleSet {
    pub fn new(bits: u32) -> Self {
        Self { bits, unit: OnceBox::new(), semi: OnceBox::new(), line: OnceBox::new() }
    }

    pub fn for_digits(digits: u32) -> Self {
        Self::new(bits_for_digits(digits))
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn rule(&self, domain: Domain) -> &QuadratureRule {
        match domain {
            Domain::UnitInterval => self.unit.get_or_init(|| Box::new(QuadratureRule::unit(self.bits))),
            Domain::SemiAxis => self.semi.get_or_init(|| Box::new(QuadratureRule::semi_axis(self.bits))),
            Domain::LogSemiAxis | Domain::RealLine => {
                self.line.get_or_init(|| Box::new(QuadratureRule::real_line(self.bits)))
            }
        }
    }

    pub fn integrate(&self, f: &Integrand<'_>, target_digits: u32) -> Result<QuadResult> {
        self.rule(f.domain).integrate(|pt| (f.eval)(pt), target_digits)
    }
}

const SLOT_BITS: u32 = 32;
const SLOTS: usize = 160;
static SHARED: [OnceBox<RuleSet>; SLOTS] = [const { OnceBox::new() }; SLOTS];

/// Process-wide rules with at least `bits` of precision, rounded up to a
/// multiple of 32 bits. Node tables are built on first use and kept.
pub fn shared_rules(bits: u32) -> &'static RuleSet {
    let slot = (bits.div_ceil(SLOT_BITS) as usize).clamp(1, SLOTS) - 1;
    SHARED[slot].get_or_init(|| Box::new(RuleSet::new((slot as u32 + 1) * SLOT_BITS)))
}

/// Shared rules sized for `digits` significant digits.
pub fn shared_rules_for_digits(digits: u32) -> &'static RuleSet {
    shared_rules(bits_for_digits(digits))
}

fn check_domain(f: &Integrand<'_>, allowed: &[Domain]) -> Result<()> {
    if allowed.contains(&f.domain) {
        Ok(())
    } else {
        Err(Error::Domain(format!("integrand domain {:?} not accepted here", f.domain)))
    }
}

/// Tanh-sinh on `(0,1)` with working precision `target_digits + 10`.
pub fn integrate_unit(f: &Integrand<'_>, target_digits: u32) -> Result<QuadResult> {
    check_domain(f, &[Domain::UnitInterval])?;
    shared_rules_for_digits(target_digits + 10).integrate(f, target_digits)
}

/// Semi-axis integral; `SemiAxis` integrands use exp-sinh, `LogSemiAxis`
/// integrands sinh-sinh in the logarithmic variable.
pub fn integrate_semi_axis(f: &Integrand<'_>, target_digits: u32) -> Result<QuadResult> {
    check_domain(f, &[Domain::SemiAxis, Domain::LogSemiAxis])?;
    shared_rules_for_digits(target_digits + 10).integrate(f, target_digits)
}

pub fn integrate_real_line(f: &Integrand<'_>, target_digits: u32) -> Result<QuadResult> {
    check_domain(f, &[Domain::RealLine, Domain::LogSemiAxis])?;
    shared_rules_for_digits(target_digits + 10).integrate(f, target_digits)
}

/// Terms of the series branch of [`oloa_integrand`].
pub const OLOA_SERIES_TERMS: usize = 40;

/// `(1/ln x + 1/(1-x))^k x^σ` on `(0,1)`, given `x` and `1-x`.
///
/// For `1-x < 2^{-10}` the bracket comes from `Σ p_{n+1} (1-x)^{n-1}`
/// truncated at 40 terms, which avoids the cancellation of the direct form.
pub fn oloa_integrand(k: u32, sigma: &BigReal, x: &BigReal, xc: &BigReal) -> Result<BigReal> {
    if !(1..=5).contains(&k) {
        return Err(Error::Domain(format!("oloa_integrand needs 1 <= k <= 5, got {k}")));
    }
    let w = x.prec().max(sigma.prec());
    let bracket = if xc.top() <= -10 { oloa_bracket_series(xc, w) } else { oloa_bracket_direct(x, xc, w)? };
    let xs = if sigma.is_zero() { BigReal::one(w) } else { x.pow(sigma)? };
    Ok(bracket.powi(k as i64)? * xs)
}

/// `1/ln x + 1/(1-x)` evaluated directly, with `ln x = ln(1 - xc)` when `x` is near 1.
pub fn oloa_bracket_direct(x: &BigReal, xc: &BigReal, w: u32) -> Result<BigReal> {
    let lnx = if xc.top() < -1 { (-xc.set_prec(w)).ln_1p()? } else { x.set_prec(w).ln()? };
    Ok(lnx.recip()? + xc.set_prec(w).recip()?)
}

/// `Σ_{n=1}^{40} p_{n+1} z^{n-1}` at `z = 1-x`.
pub fn oloa_bracket_series(z: &BigReal, w: u32) -> BigReal {
    let pn = crate::exact_kernel::pn_table();
    let mut acc = BigReal::zero(w);
    for n in (1..=OLOA_SERIES_TERMS).rev() {
        acc = &acc * z + BigReal::from_rational(pn.p(n + 1), w);
    }
    acc
}
