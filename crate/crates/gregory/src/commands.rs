//! Subcommand bodies. Each returns a [`Table`]; printing is left to the caller.

use gregory_core::exact_kernel::{p_recursion_table, pn_table, DEFAULT_N_MAX};
use gregory_core::identity::{self, Ctx, Params};
use gregory_core::quad::{oloa_integrand, shared_rules, Domain};
use gregory_core::real::consts::ConstantCatalog;
use gregory_core::real::{bits_for_digits, gamma, zeta};
use gregory_core::report::ToleranceClass;
use gregory_core::stieltjes::{self, StieltjesMethod, StieltjesRequest};
use gregory_core::{BigReal, ExactRational};
use serde_json::{json, Value};

use crate::cache::ConstantCache;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::output::Table;

/// Largest `N` served by `pn`.
pub const PN_MAX: usize = 1000;
/// Decimal places of the `pn` decimal column.
pub const PN_DECIMALS: usize = 50;

/// Exact decimal with trailing zeros dropped: `3/160 -> 0.01875`.
pub fn short_decimal(q: &ExactRational, places: usize) -> String {
    let s = q.to_decimal(places);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Rows `n, p_n, decimal` for `n = 2..=n_max`, plus the difference from
/// Knessl's integral at `digits` when `knessl` is set.
pub fn pn(n_max: usize, knessl: bool, digits: u32) -> Result<Table> {
    if n_max < 2 {
        return Err(Error::Config(format!("pn needs N >= 2, got {n_max}")));
    }
    if n_max > PN_MAX {
        return Err(Error::Config(format!("pn N = {n_max} exceeds the configured maximum {PN_MAX}")));
    }
    let values: Vec<ExactRational> = if n_max <= DEFAULT_N_MAX + 1 {
        (2..=n_max).map(|n| pn_table().p(n).clone()).collect()
    } else {
        p_recursion_table(n_max)
    };
    let mut cols = vec!["n", "p_n", "decimal"];
    if knessl {
        cols.push("knessl_residual");
    }
    let mut t = Table::new(&cols);
    for (i, p) in values.iter().enumerate() {
        let n = i + 2;
        let mut row = vec![json!(n), json!(p.to_string()), json!(short_decimal(p, PN_DECIMALS))];
        if knessl {
            let k = stieltjes::knessl_p(n as u32 - 1, digits)?;
            let r = k - BigReal::from_rational(p, bits_for_digits(digits));
            row.push(json!(r.to_sci(3)));
        }
        t.push(row);
    }
    Ok(t)
}

/// Constant catalog at the configured precision, through the cache file when
/// one is set.
pub fn catalog(cfg: &RunConfig) -> Result<ConstantCatalog> {
    match &cfg.cache {
        Some(path) => Ok(ConstantCache::new(path).catalog(cfg.precision)?.0),
        None => Ok(ConstantCatalog::compute(cfg.precision)?),
    }
}

fn rational_real(text: &str, prec: u32) -> Result<BigReal> {
    let q: ExactRational = text.parse()?;
    Ok(BigReal::from_rational(&q, prec))
}

/// `γ_k(a)` by each method, one row per method with its distance to every
/// other method that produced a value.
pub fn stieltjes_table(k: usize, a: &str, methods: &[StieltjesMethod], digits: u32) -> Result<Table> {
    if k > 3 {
        return Err(gregory_core::Error::Unsupported(format!("Stieltjes constant of order {k}; orders 0..=3 are available")).into());
    }
    let prec = bits_for_digits(digits);
    let a_val = rational_real(a, prec)?;
    if !a_val.is_positive() {
        return Err(Error::Config(format!("a = {a} must be positive")));
    }
    let vals: Vec<std::result::Result<BigReal, String>> = methods
        .iter()
        .map(|&method| {
            let req = StieltjesRequest { k, a: a_val.clone(), method };
            stieltjes::stieltjes(&req, digits).map_err(|e| e.to_string())
        })
        .collect();
    let mut cols: Vec<&'static str> = vec!["k", "a", "method", "value", "status"];
    cols.extend(methods.iter().map(|m| delta_name(*m)));
    let mut t = Table::new(&cols);
    for (m, v) in methods.iter().zip(&vals) {
        let mut row = vec![json!(k), json!(a), json!(m.name())];
        match v {
            Ok(x) => {
                row.push(json!(x.to_sci(x.digits().min(digits) as usize)));
                row.push(json!("ok"));
            }
            Err(e) => {
                row.push(Value::Null);
                row.push(json!(e));
            }
        }
        for w in &vals {
            row.push(match (v, w) {
                (Ok(x), Ok(y)) => json!((x - y).abs().to_sci(3)),
                _ => Value::Null,
            });
        }
        t.push(row);
    }
    Ok(t)
}

fn delta_name(m: StieltjesMethod) -> &'static str {
    match m {
        StieltjesMethod::LimitFormula => "delta_limit_formula",
        StieltjesMethod::PSeries => "delta_p_series",
        StieltjesMethod::PolylogIntegral => "delta_polylog_integral",
    }
}

/// `ζ(s, a)` at `digits`; with `bell` and an integer `s >= 2` at `a = 1`,
/// also the increasing Bell-polynomial series cut at `terms`.
pub fn zeta_table(s: &str, a: &str, bell: bool, terms: usize, digits: u32) -> Result<Table> {
    let prec = bits_for_digits(digits);
    let sv = rational_real(s, prec)?;
    let av = rational_real(a, prec)?;
    let value = zeta::hurwitz_zeta(&sv, &av)?;
    let mut t = Table::new(&["s", "a", "method", "value", "abs_error", "tolerance", "terms", "increasing"]);
    t.push(vec![json!(s), json!(a), json!("hurwitz"), json!(value.to_sci(digits as usize)), Value::Null, Value::Null, Value::Null, Value::Null]);
    if bell {
        let m: ExactRational = s.parse()?;
        let one: ExactRational = a.parse()?;
        if !m.is_integer() || m < ExactRational::from_int(2) || one != ExactRational::one() {
            return Err(Error::Config("the series from below needs an integer s >= 2 and a = 1".into()));
        }
        let m = u32::try_from(m.numer()).map_err(|_| Error::Config(format!("s = {s} is too large")))?;
        let (sum, increasing) = stieltjes::zeta_bell(m, terms)?;
        let err = (sum.value - value.to_f64()).abs();
        t.push(vec![
            json!(s),
            json!(a),
            json!("bell_from_below"),
            json!(format!("{:.15e}", sum.value)),
            json!(format!("{err:.3e}")),
            json!(format!("{:.3e}", sum.tolerance)),
            json!(sum.terms),
            json!(increasing),
        ]);
    }
    Ok(t)
}

/// `∫_0^1 (1/ln x + 1/(1-x))^k x^σ dx` by quadrature, against the closed
/// form where one is known: every σ for `k <= 2`, σ = 0 for `k = 3..5`.
pub fn integral_table(k: u32, sigma: &str, cfg: &RunConfig) -> Result<Table> {
    if !(1..=5).contains(&k) {
        return Err(Error::Config(format!("k = {k} outside 1..=5")));
    }
    let digits = cfg.precision;
    let prec = bits_for_digits(digits + 10);
    let sq: ExactRational = sigma.parse()?;
    let s = BigReal::from_rational(&sq, prec + 16);
    if s <= BigReal::from_i64(-1) {
        return Err(gregory_core::Error::Domain(format!("sigma = {sigma} must exceed -1")).into());
    }
    let r = shared_rules(prec + 16).rule(Domain::UnitInterval).integrate(|pt| oloa_integrand(k, &s, pt.x, pt.xc), digits + 4)?;
    let closed = match k {
        1 => {
            let s1 = s.set_prec(prec) + BigReal::one(prec);
            Some(s1.ln()? - gamma::digamma(&s1)?)
        }
        2 => Some(identity::oloa_sigma_closed_form(&s.set_prec(prec))?),
        _ if sq.is_zero() => {
            let id = ["OLOA_CUBE", "OLOA_FOURTH", "OLOA_FIFTH"][k as usize - 3];
            let consts = catalog(cfg)?;
            let opts = cfg.options();
            let rep = identity::evaluate_identity(id, &Params::new(), &Ctx { opts: &opts, consts: &consts })?;
            Some(identity::value_real(&rep.rhs, prec))
        }
        _ => None,
    };
    let mut t = Table::new(&["k", "sigma", "quadrature", "closed_form", "abs_error", "tolerance", "pass", "nodes"]);
    let tol = ToleranceClass::Tight.bound(digits);
    let (c, e, pass) = match &closed {
        Some(c) => {
            let e = (&r.value - c).abs();
            (json!(c.to_sci(digits as usize)), json!(e.to_sci(3)), json!(e.to_f64() <= tol))
        }
        None => (Value::Null, Value::Null, Value::Null),
    };
    t.push(vec![json!(k), json!(sigma), json!(r.value.to_sci(digits as usize)), c, e, json!(format!("{tol:.0e}")), pass, json!(r.nodes)]);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        assert_eq!(short_decimal(&ExactRational::frac(3, 160), 50), "0.01875");
        assert_eq!(short_decimal(&ExactRational::frac(1, 2), 50), "0.5");
        assert_eq!(short_decimal(&ExactRational::frac(1, 3), 5), "0.33333");
    }

    #[test]
    fn pn_rows() {
        let t = pn(6, false, 50).unwrap();
        assert_eq!(t.rows.len(), 5);
        assert_eq!(t.rows[4], vec![json!(6), json!("3/160"), json!("0.01875")]);
        let t = pn(2, false, 50).unwrap();
        assert_eq!(t.rows, vec![vec![json!(2), json!("1/2"), json!("0.5")]]);
        assert!(pn(PN_MAX + 1, false, 50).is_err());
    }

    #[test]
    fn stieltjes_order_limit() {
        let e = stieltjes_table(4, "1", &StieltjesMethod::all(), 20).unwrap_err();
        assert!(e.to_string().contains("unsupported"));
    }
}
