//! Registry of closed-form identities, each an executable pair of sides with a
//! tolerance class, and the evaluator that runs them.
//!
//! Cases whose printed form is known to be wrong live under an id ending in
//! `.printed` and are flagged `errata`; their reports are expected to fail
//! and carry the residual.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::error::{Error, Result};
use crate::numeric::SlowSum;
use crate::quad::{shared_rules, Domain, QuadResult};
use crate::rational::ExactRational;
use crate::real::consts::ConstantCatalog;
use crate::real::{bits_for_digits, BigReal};
use crate::report::{CheckMode, ToleranceClass, Value, VerificationReport};

mod exact;
mod integrals;
mod sums;

pub use integrals::{glaisher_kernel_integral, oloa_sigma_closed_form};

/// Knobs shared by every case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Working precision `P` in decimal digits.
    pub digits: u32,
    /// Term cap `N` of the slow series.
    pub terms: usize,
    /// Seed of the Monte Carlo smoke checks.
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { digits: 50, terms: 10_000, seed: 0x5eed_2016 }
    }
}

/// Named rational parameters of one evaluation, kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(Vec<(String, ExactRational)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, name: &str, value: ExactRational) -> Self {
        self.0.retain(|(n, _)| n != name);
        self.0.push((name.to_string(), value));
        self
    }

    pub fn get(&self, name: &str) -> Option<&ExactRational> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(n, _)| n.as_str())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `name=value` pairs separated by commas, e.g. `n=2,s=2` or
    /// `sigma=-0.9`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Params::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item.split_once('=').ok_or_else(|| Error::Parse(item.to_string()))?;
            out = out.with(name.trim(), value.trim().parse()?);
        }
        Ok(out)
    }

    fn rational(&self, name: &str) -> Result<ExactRational> {
        self.get(name).cloned().ok_or_else(|| Error::Domain(format!("missing parameter {name}")))
    }

    fn real(&self, name: &str, prec: u32) -> Result<BigReal> {
        Ok(BigReal::from_rational(&self.rational(name)?, prec))
    }

    fn f64(&self, name: &str) -> Result<f64> {
        Ok(self.rational(name)?.to_f64())
    }

    fn int(&self, name: &str) -> Result<i64> {
        let v = self.rational(name)?;
        if !v.is_integer() {
            return Err(Error::Domain(format!("{name} must be an integer, got {v}")));
        }
        i64::try_from(v.numer()).map_err(|_| Error::Domain(format!("{name} out of range")))
    }

    fn label(&self, r: VerificationReport) -> VerificationReport {
        self.0.iter().fold(r, |r, (n, v)| r.param(n, v))
    }
}

/// Evaluation context: options plus the constant catalog at `opts.digits`.
pub struct Ctx<'a> {
    pub opts: &'a RunOptions,
    pub consts: &'a ConstantCatalog,
}

impl Ctx<'_> {
    fn digits(&self) -> u32 {
        self.opts.digits
    }

    /// Bits of the closed-form side.
    fn prec(&self) -> u32 {
        bits_for_digits(self.opts.digits + 10)
    }

    fn c(&self, v: &BigReal) -> BigReal {
        v.set_prec(self.prec())
    }

    fn q(&self, num: i64, den: i64) -> BigReal {
        BigReal::frac(num, den, self.prec())
    }

    /// Double-exponential quadrature on `domain` with the integrand given
    /// `(x, xc)`; the integrand sees points carrying at least the closed-form
    /// precision plus a guard.
    fn integrate(&self, domain: Domain, f: impl Fn(&BigReal, &BigReal) -> Result<BigReal>) -> Result<QuadResult> {
        let rules = shared_rules(self.prec() + 16);
        rules.rule(domain).integrate(|pt| f(pt.x, pt.xc), self.opts.digits + 4)
    }

    /// Report for a quadrature side against a closed form at `10^{5-P}`.
    fn tight(&self, id: &str, lhs: BigReal, rhs: BigReal, mode: CheckMode) -> VerificationReport {
        VerificationReport::real(id, mode, lhs, rhs, ToleranceClass::Tight, self.digits())
    }

    /// Report for a slow series against a closed form within the tail
    /// model's tolerance.
    fn slow(&self, id: &str, sum: &SlowSum, rhs: BigReal) -> Result<VerificationReport> {
        let lhs = BigReal::from_f64(sum.value)?.with_prec(self.prec());
        let r = VerificationReport::real(
            id,
            CheckMode::SeriesVsClosedForm,
            lhs,
            rhs,
            ToleranceClass::SeriesSlow(sum.tolerance),
            self.digits(),
        );
        Ok(r.terms(sum.terms as u64).note(format!("partial {:.15e}, tail {:.6e}", sum.partial, sum.tail)))
    }
}

type RunFn = fn(&Ctx<'_>, &Params) -> Result<Vec<VerificationReport>>;

/// One registered identity.
pub struct IdentityCase {
    pub id: &'static str,
    /// Short description of the identity and where it comes from.
    pub anchor: &'static str,
    pub mode: CheckMode,
    /// Tests a printed formula known to be wrong.
    pub errata: bool,
    /// Parameters the case accepts.
    pub param_names: &'static [&'static str],
    sweep: fn() -> Vec<Params>,
    run: RunFn,
}

impl IdentityCase {
    /// Default parameter points.
    pub fn points(&self) -> Vec<Params> {
        (self.sweep)()
    }

    /// Runs one parameter point. Most cases give one report; cases with
    /// several displayed forms give one per form.
    pub fn evaluate(&self, ctx: &Ctx<'_>, params: &Params) -> Result<Vec<VerificationReport>> {
        if let Some(bad) = params.names().find(|n| !self.param_names.contains(n)) {
            return Err(Error::Domain(format!("{} takes no parameter {bad}", self.id)));
        }
        let mut out = (self.run)(ctx, params)?;
        for r in &mut out {
            if self.errata {
                r.errata = true;
            }
            if r.precision.is_some() {
                r.precision = Some(ctx.digits());
            }
        }
        Ok(out)
    }
}

fn none() -> Vec<Params> {
    vec![Params::new()]
}

fn sweep1(name: &'static str, values: &[(i64, i64)]) -> Vec<Params> {
    values.iter().map(|&(a, b)| Params::new().with(name, ExactRational::frac(a, b))).collect()
}

macro_rules! case {
    ($id:expr, $anchor:expr, $mode:ident, $errata:expr, $names:expr, $sweep:expr, $run:expr) => {
        IdentityCase {
            id: $id,
            anchor: $anchor,
            mode: CheckMode::$mode,
            errata: $errata,
            param_names: $names,
            sweep: $sweep,
            run: $run,
        }
    };
}

static REGISTRY: &[IdentityCase] = &[
    case!("APPENDIX_A1", "Pochhammer ratio as a finite alternating sum, with its partial-fraction seed",
        ExactRational, false, &["a", "form"], exact::a1_sweep, exact::appendix_a1),
    case!("COR2", "Shifted-Pochhammer p-series for x(ln x - psi(x))",
        SeriesVsClosedForm, false, &["x"], || sweep1("x", &[(1, 2), (3, 1)]), sums::cor2),
    case!("COR2.printed", "Shifted-Pochhammer p-series outside its domain (x < 0)",
        SeriesVsClosedForm, true, &["x"], || sweep1("x", &[(-1, 2)]), sums::cor2_divergent),
    case!("COR3", "Low-order p_n against Bernoulli numbers from matched asymptotics",
        ExactRational, false, &[], none, exact::cor3),
    case!("COR4", "zeta'(2) through gamma, ln 2pi and Glaisher's constant",
        SeriesVsClosedForm, false, &[], none, integrals::cor4),
    case!("COR6", "First Stieltjes constant from digamma integrals",
        QuadratureVsClosedForm, false, &["form"], || sweep1("form", &[(1, 1), (2, 1)]), integrals::cor6),
    case!("EQ216", "Hurwitz zeta moment recursion in the order",
        QuadratureVsClosedForm, false, &["z", "k"], || vec![Params::new().with("z", ExactRational::frac(-1, 2)).with("k", 1.into())], integrals::eq216),
    case!("EQ226_PARTS", "Repeated integration by parts of the digamma representation",
        QuadratureVsClosedForm, false, &["x", "form"], integrals::eq226_sweep, integrals::eq226),
    case!("EQ226_PARTS.printed", "Printed fourth bracket of the repeated integration by parts",
        ExactRational, true, &[], none, exact::eq226_printed),
    case!("EQ317", "Stirling-number generating function against a Beta-weighted log moment",
        SeriesVsClosedForm, false, &["a", "m", "n"],
        || vec![Params::new().with("a", ExactRational::frac(3, 2)).with("m", 3.into()).with("n", 2.into())], sums::eq317),
    case!("GAMMA_SUM", "Euler's constant as sum p_{n+1}/n",
        SeriesVsClosedForm, false, &[], none, sums::gamma_sum),
    case!("HYP_114", "Contiguous relation for (a)_j/(a+2)_j",
        ExactRational, false, &["a"], || sweep1("a", &[(1, 1), (1, 2), (2, 1)]), exact::hyp_114),
    case!("HYP_115", "Unit-argument 3F2(1,1,2-x; 3, y+1; 1) in digamma values",
        SeriesVsClosedForm, false, &["x", "y"], sums::hyp115_sweep, sums::hyp_115),
    case!("HYP_115.printed", "Unit-argument 3F2 with the printed digamma argument",
        SeriesVsClosedForm, true, &["x", "y"], sums::hyp115_sweep, sums::hyp_115_printed),
    case!("HYP_217", "Index shifts of a divergent Pochhammer sum",
        ExactRational, false, &["t"], || sweep1("t", &[(1, 4), (1, 2)]), exact::hyp_217),
    case!("HYP_218", "3F2 plus 4F3 at unit argument equal to 12/(t(t-1))",
        SeriesVsClosedForm, false, &["t"], || sweep1("t", &[(3, 2), (5, 2), (7, 2)]), sums::hyp_218),
    case!("HYP_218.printed", "3F2 plus 4F3 at the printed small t, where the series diverge",
        SeriesVsClosedForm, true, &["t"], || sweep1("t", &[(1, 3), (1, 2)]), sums::hyp_218_printed),
    case!("HYP_219", "5F4 plus 4F3 at unit argument equal to 12(4-t)/(t(t-1)(t-2))",
        SeriesVsClosedForm, false, &["t"], || sweep1("t", &[(5, 2), (7, 2)]), sums::hyp_219),
    case!("HYP_219.printed", "5F4 plus 4F3 at the printed small t, where the series diverge",
        SeriesVsClosedForm, true, &["t"], || sweep1("t", &[(1, 3), (1, 2)]), sums::hyp_219_printed),
    case!("LEMMA2_BETA", "Beta-weighted sum of p_{n+3} in lnGamma and digamma",
        SeriesVsClosedForm, false, &["y"], || sweep1("y", &[(1, 2), (1, 1), (2, 1), (5, 1)]), sums::lemma2),
    case!("LEMMA3", "p-series for ln x - psi(x) with Pochhammer weights",
        SeriesVsClosedForm, false, &["x"], || sweep1("x", &[(2, 1), (5, 1), (10, 1)]), sums::lemma3),
    case!("LNA_INT", "Glaisher's constant from the Bernoulli-subtracted Bose integral and its log form",
        QuadratureVsClosedForm, false, &["form"], || sweep1("form", &[(1, 1), (2, 1)]), integrals::lna_int),
    case!("OLOA_CUBE", "Cube of the log-bracket integral and Glaisher's constant",
        QuadratureVsClosedForm, false, &[], none, |c, _| integrals::oloa(c, 3)),
    case!("OLOA_FIFTH", "Fifth power of the log-bracket integral with zeta(3) and zeta'(-3)",
        QuadratureVsClosedForm, false, &[], none, |c, _| integrals::oloa(c, 5)),
    case!("OLOA_FOURTH", "Fourth power of the log-bracket integral with zeta(3)",
        QuadratureVsClosedForm, false, &[], none, |c, _| integrals::oloa(c, 4)),
    case!("OLOA_SIGMA", "Log-bracket square against x^sigma, singular as sigma -> -1",
        QuadratureVsClosedForm, false, &["sigma"],
        || sweep1("sigma", &[(-9, 10), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1), (5, 1)]), integrals::oloa_sigma),
    case!("OLOA_SQUARE", "Square of the log-bracket integral equals ln 2pi - 3/2",
        QuadratureVsClosedForm, false, &[], none, |c, _| integrals::oloa(c, 2)),
    case!("PROP2_LOGGAMMA", "Beta-weighted p-series for lnGamma(y) - y ln y + y",
        SeriesVsClosedForm, false, &["y"], || sweep1("y", &[(1, 2), (1, 1), (3, 1)]), sums::prop2),
    case!("PROP3_LNA", "p-series for Glaisher's constant",
        SeriesVsClosedForm, false, &[], none, sums::prop3),
    case!("PROP4_GAMMA2", "Beta-weighted p-series for the double Gamma function",
        SeriesVsClosedForm, false, &["a", "form"], sums::prop4_sweep, sums::prop4),
    case!("PROP4_GAMMA2.printed", "Printed coefficient of the double Gamma p-series",
        ExactRational, true, &[], none, exact::prop4_printed),
    case!("PROP7", "Sums of p_{n+1} against rational weights and digamma moments",
        SeriesVsClosedForm, false, &["form", "a"], sums::prop7_sweep, sums::prop7),
    case!("PROP8_IN", "Beta-type integrals I_n(s) by four representations",
        ExactRational, false, &["n", "s", "form"], exact::prop8_sweep, exact::prop8),
    case!("PROP8_IN.printed", "Printed recurrences for I_n(s)",
        ExactRational, true, &["s"], exact::prop8_printed_sweep, exact::prop8_printed),
    case!("PSI_MOM_1", "First digamma moment",
        QuadratureVsClosedForm, false, &[], none, integrals::psi_mom_1),
    case!("PSI_MOM_2", "Second digamma moment by quadrature and by the zeta series",
        QuadratureVsClosedForm, false, &[], none, integrals::psi_mom_2),
    case!("PSI_MOM_4", "Fourth digamma moment with zeta(3) and zeta'(-3)",
        QuadratureVsClosedForm, false, &[], none, integrals::psi_mom_4),
    case!("SUMS_239", "Sums of shifted p_n against rational weights",
        SeriesVsClosedForm, false, &["form"], || sweep1("form", &[(1, 1), (2, 1), (3, 1)]), sums::sums_239),
    case!("SUMS_239.printed", "Printed value of sum p_{n+2}/n",
        SeriesVsClosedForm, true, &[], none, sums::sums_239_printed),
];

/// Every registered case, sorted by id.
pub fn registry() -> &'static [IdentityCase] {
    REGISTRY
}

pub fn find(id: &str) -> Result<&'static IdentityCase> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Cases whose id starts with `filter`; an empty filter selects all.
/// A filter that selects nothing is an error.
pub fn select(filter: &str) -> Result<Vec<&'static IdentityCase>> {
    let out: Vec<_> = REGISTRY.iter().filter(|c| c.id.starts_with(filter)).collect();
    if out.is_empty() {
        return Err(Error::UnknownId(filter.to_string()));
    }
    Ok(out)
}

/// One report for `(id, params)`. When the case yields several forms, the
/// first failing one is returned, or else the one closest to its tolerance.
pub fn evaluate_identity(id: &str, params: &Params, ctx: &Ctx<'_>) -> Result<VerificationReport> {
    let case = find(id)?;
    let reports = case.evaluate(ctx, params)?;
    Ok(fold(reports))
}

fn fold(reports: Vec<VerificationReport>) -> VerificationReport {
    let ratio = |r: &VerificationReport| {
        let e = r.abs_error_f64();
        if r.tolerance > 0.0 {
            e / r.tolerance
        } else if e == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    };
    let mut best: Option<VerificationReport> = None;
    for r in reports {
        best = match best {
            None => Some(r),
            Some(b) if b.pass && (!r.pass || ratio(&r) > ratio(&b)) => Some(r),
            b => b,
        };
    }
    best.expect("every case yields a report")
}

/// Every `(case, point)` job selected by `filter`, in registry order.
pub fn jobs(filter: &str) -> Result<Vec<(&'static IdentityCase, Params)>> {
    Ok(select(filter)?.into_iter().flat_map(|c| c.points().into_iter().map(move |p| (c, p))).collect())
}

/// Runs every selected case at its default points, sequentially, and returns
/// the reports sorted by id and parameters.
pub fn run_all(ctx: &Ctx<'_>, filter: &str) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for (case, p) in jobs(filter)? {
        out.extend(case.evaluate(ctx, &p)?);
    }
    sort_reports(&mut out);
    Ok(out)
}

pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by_key(|r| r.key());
}

/// Exit-status rule: every non-errata report passes. When the selection is
/// made only of errata cases, those are the subject of the run and any
/// failure among them counts.
pub fn all_pass(reports: &[VerificationReport]) -> bool {
    let only_errata = reports.iter().all(|r| r.errata);
    reports.iter().filter(|r| only_errata || !r.errata).all(|r| r.pass)
}

/// Value carried by a report side as a `BigReal`, for cross-checks.
pub fn value_real(v: &Value, prec: u32) -> BigReal {
    match v {
        Value::Exact(q) => BigReal::from_rational(q, prec),
        Value::Real(r) => r.set_prec(prec),
    }
}

#[cfg(test)]
mod tests;
