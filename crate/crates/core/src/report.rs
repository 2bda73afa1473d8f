//! Verification reports shared by the series engine, the identity registry and
//! the Stieltjes routines.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::rational::ExactRational;
use crate::real::BigReal;

/// How a case compares its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    ExactRational,
    QuadratureVsClosedForm,
    SeriesVsClosedForm,
}

impl CheckMode {
    pub fn name(self) -> &'static str {
        match self {
            CheckMode::ExactRational => "exact_rational",
            CheckMode::QuadratureVsClosedForm => "quadrature_vs_closed_form",
            CheckMode::SeriesVsClosedForm => "series_vs_closed_form",
        }
    }
}

/// Tolerance class of a case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ToleranceClass {
    /// Error must be exactly zero.
    Exact,
    /// `10^{5-P}`.
    Tight,
    /// Explicit bound from a tail model or a fixed loose threshold.
    SeriesSlow(f64),
}

impl ToleranceClass {
    pub fn name(self) -> &'static str {
        match self {
            ToleranceClass::Exact => "exact",
            ToleranceClass::Tight => "tight",
            ToleranceClass::SeriesSlow(_) => "series_slow",
        }
    }

    /// Numeric bound at `digits` of working precision.
    pub fn bound(self, digits: u32) -> f64 {
        match self {
            ToleranceClass::Exact => 0.0,
            ToleranceClass::Tight => libm::pow(10.0, 5.0 - digits as f64),
            ToleranceClass::SeriesSlow(t) => t,
        }
    }
}

/// One side of a comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(ExactRational),
    Real(BigReal),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64(),
            Value::Real(r) => r.to_f64(),
        }
    }

    /// Exact values print as `num/den`, reals in scientific notation.
    pub fn render(&self, digits: usize) -> String {
        match self {
            Value::Exact(q) => q.to_string(),
            Value::Real(r) => r.to_sci(digits),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(20))
    }
}

impl From<ExactRational> for Value {
    fn from(q: ExactRational) -> Self {
        Value::Exact(q)
    }
}

impl From<BigReal> for Value {
    fn from(r: BigReal) -> Self {
        Value::Real(r)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub id: String,
    pub params: Vec<(String, String)>,
    pub lhs: Value,
    pub rhs: Value,
    pub abs_error: Value,
    pub tolerance: f64,
    pub tolerance_class: ToleranceClass,
    pub mode: CheckMode,
    pub pass: bool,
    /// Working precision in digits; `None` for purely exact checks.
    pub precision: Option<u32>,
    pub terms: Option<u64>,
    pub nodes: Option<u64>,
    pub runtime_ms: u64,
    /// Set on cases that test a printed formula known to be wrong.
    pub errata: bool,
    pub note: Option<String>,
}

impl VerificationReport {
    /// Exact comparison: passes iff `lhs == rhs`.
    pub fn exact(id: impl Into<String>, lhs: ExactRational, rhs: ExactRational) -> Self {
        let diff = (&lhs - &rhs).abs();
        let pass = diff.is_zero();
        VerificationReport {
            id: id.into(),
            params: Vec::new(),
            lhs: Value::Exact(lhs),
            rhs: Value::Exact(rhs),
            abs_error: Value::Exact(diff),
            tolerance: 0.0,
            tolerance_class: ToleranceClass::Exact,
            mode: CheckMode::ExactRational,
            pass,
            precision: None,
            terms: None,
            nodes: None,
            runtime_ms: 0,
            errata: false,
            note: None,
        }
    }

    /// Real comparison against `class.bound(digits)`.
    pub fn real(
        id: impl Into<String>,
        mode: CheckMode,
        lhs: BigReal,
        rhs: BigReal,
        class: ToleranceClass,
        digits: u32,
    ) -> Self {
        let diff = (&lhs - &rhs).abs();
        let tolerance = class.bound(digits);
        let pass = diff.to_f64() <= tolerance;
        VerificationReport {
            id: id.into(),
            params: Vec::new(),
            lhs: Value::Real(lhs),
            rhs: Value::Real(rhs),
            abs_error: Value::Real(diff),
            tolerance,
            tolerance_class: class,
            mode,
            pass,
            precision: Some(digits),
            terms: None,
            nodes: None,
            runtime_ms: 0,
            errata: false,
            note: None,
        }
    }

    pub fn param(mut self, name: &str, value: impl fmt::Display) -> Self {
        self.params.push((name.to_string(), value.to_string()));
        self
    }

    pub fn terms(mut self, n: u64) -> Self {
        self.terms = Some(n);
        self
    }

    pub fn nodes(mut self, n: u64) -> Self {
        self.nodes = Some(n);
        self
    }

    pub fn errata(mut self) -> Self {
        self.errata = true;
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.note = Some(s.into());
        self
    }

    /// Sort key: id, then the parameter list.
    pub fn key(&self) -> (String, Vec<(String, String)>) {
        (self.id.clone(), self.params.clone())
    }

    pub fn abs_error_f64(&self) -> f64 {
        self.abs_error.to_f64()
    }
}

/// Folds a sweep of exact checks into one report: the first failing entry, or
/// the last entry when all pass.
pub fn combine_exact(id: &str, parts: Vec<VerificationReport>) -> VerificationReport {
    let count = parts.len() as u64;
    let first_bad = parts.iter().position(|r| !r.pass);
    let mut out = match first_bad {
        Some(i) => parts.into_iter().nth(i).expect("index in range"),
        None => parts.into_iter().last().expect("non-empty sweep"),
    };
    out.id = id.into();
    out.terms = Some(count);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn exact_reports() {
        let ok = VerificationReport::exact("A", q(1, 2), q(2, 4));
        assert!(ok.pass);
        assert_eq!(ok.abs_error, Value::Exact(q(0, 1)));
        let bad = VerificationReport::exact("A", q(1, 2), q(1, 3));
        assert!(!bad.pass);
        assert_eq!(bad.abs_error, Value::Exact(q(1, 6)));
    }

    #[test]
    fn tight_tolerance_follows_precision() {
        assert!((ToleranceClass::Tight.bound(50) / 1e-45 - 1.0).abs() < 1e-12);
        let r = VerificationReport::real(
            "B",
            CheckMode::SeriesVsClosedForm,
            BigReal::from_f64(1.0).unwrap(),
            BigReal::from_f64(1.0 + 1e-12).unwrap(),
            ToleranceClass::Tight,
            10,
        );
        assert!(r.pass);
    }
}
