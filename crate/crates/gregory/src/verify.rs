//! Identity runs on a worker pool, with deterministic aggregation.

use std::time::Instant;

use gregory_core::identity::{self, Ctx, IdentityCase, Params, RunOptions};
use gregory_core::real::consts::ConstantCatalog;
use gregory_core::report::{ToleranceClass, Value as Side};
use gregory_core::VerificationReport;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::output::Table;

/// Digits printed for the error and the tolerance.
const ERROR_DIGITS: usize = 6;

/// Result of one `(case, parameter point)` job.
#[derive(Debug, Clone)]
pub enum Outcome {
    Reports(Vec<VerificationReport>),
    /// The evaluation itself failed, e.g. a quadrature that did not converge.
    Failed { id: String, params: Vec<(String, String)>, errata: bool, error: String },
}

/// Runs the jobs on `threads` workers (0 = one per core). Every report gets
/// the wall time of its job; the outcome list comes back in job order.
pub fn run_jobs(jobs: &[(&'static IdentityCase, Params)], opts: &RunOptions, consts: &ConstantCatalog, threads: usize) -> Result<Vec<Outcome>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let ctx = Ctx { opts, consts };
    Ok(pool.install(|| {
        jobs.par_iter()
            .map(|(case, p)| {
                let t0 = Instant::now();
                let res = case.evaluate(&ctx, p);
                let ms = t0.elapsed().as_millis() as u64;
                match res {
                    Ok(mut rs) => {
                        for r in &mut rs {
                            r.runtime_ms = ms;
                        }
                        Outcome::Reports(rs)
                    }
                    Err(e) => Outcome::Failed {
                        id: case.id.to_string(),
                        params: params_text(p),
                        errata: case.errata,
                        error: e.to_string(),
                    },
                }
            })
            .collect()
    }))
}

fn params_text(p: &Params) -> Vec<(String, String)> {
    p.names().map(|n| (n.to_string(), p.get(n).expect("listed").to_string())).collect()
}

/// Jobs for a filter, or the single point `params` when given. Parameters
/// need a filter naming exactly one case.
pub fn plan(filter: &str, params: Option<&str>) -> Result<Vec<(&'static IdentityCase, Params)>> {
    match params {
        None => Ok(identity::jobs(filter)?),
        Some(text) => {
            let case = identity::find(filter)
                .map_err(|_| Error::Config(format!("--params needs --filter to name one identity exactly, got `{filter}`")))?;
            Ok(vec![(case, Params::parse(text)?)])
        }
    }
}

/// Flattened outcomes sorted by id, then parameters.
pub fn collect(outcomes: Vec<Outcome>) -> Vec<Outcome> {
    let mut flat: Vec<Outcome> = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Reports(rs) => flat.extend(rs.into_iter().map(|r| Outcome::Reports(vec![r]))),
            f => flat.push(f),
        }
    }
    flat.sort_by_key(key);
    flat
}

fn key(o: &Outcome) -> (String, Vec<(String, String)>) {
    match o {
        Outcome::Reports(rs) => rs[0].key(),
        Outcome::Failed { id, params, .. } => (id.clone(), params.clone()),
    }
}

/// The exit rule of the registry, with evaluation failures counted as
/// failing reports.
pub fn all_pass(outcomes: &[Outcome]) -> bool {
    let only_errata = outcomes.iter().all(errata);
    outcomes.iter().filter(|o| only_errata || !errata(o)).all(passed)
}

fn errata(o: &Outcome) -> bool {
    match o {
        Outcome::Reports(rs) => rs.iter().all(|r| r.errata),
        Outcome::Failed { errata, .. } => *errata,
    }
}

fn passed(o: &Outcome) -> bool {
    matches!(o, Outcome::Reports(rs) if rs.iter().all(|r| r.pass))
}

/// Ids with at least one failing non-errata outcome (or any failing outcome
/// when only errata cases ran), deduplicated.
pub fn failing_ids(outcomes: &[Outcome]) -> Vec<String> {
    let only_errata = outcomes.iter().all(errata);
    let mut ids: Vec<String> = outcomes
        .iter()
        .filter(|o| (only_errata || !errata(o)) && !passed(o))
        .map(|o| key(o).0)
        .collect();
    ids.dedup();
    ids
}

pub const COLUMNS: [&str; 16] = [
    "id",
    "params",
    "pass",
    "errata",
    "mode",
    "tolerance_class",
    "tolerance",
    "abs_error",
    "lhs",
    "rhs",
    "precision",
    "terms",
    "nodes",
    "runtime_ms",
    "note",
    "error",
];

/// One row per outcome. Reals print with `digits` significant digits;
/// `runtime_ms` is left out unless `timings` is set, so that equal inputs
/// give byte-identical output.
pub fn table(outcomes: &[Outcome], digits: usize, timings: bool) -> Table {
    let cols: Vec<&'static str> = COLUMNS.iter().copied().filter(|c| timings || *c != "runtime_ms").collect();
    let mut t = Table::new(&cols);
    for o in outcomes {
        let mut row = match o {
            Outcome::Reports(rs) => report_row(&rs[0], digits),
            Outcome::Failed { id, params, errata, error } => {
                let mut m = Map::new();
                m.insert("id".into(), json!(id));
                m.insert("params".into(), params_json(params));
                m.insert("pass".into(), json!(false));
                m.insert("errata".into(), json!(errata));
                m.insert("error".into(), json!(error));
                m
            }
        };
        if !timings {
            row.remove("runtime_ms");
        }
        t.push(cols.iter().map(|c| row.remove(*c).unwrap_or(Value::Null)).collect());
    }
    t
}

fn params_json(p: &[(String, String)]) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), json!(v))).collect())
}

fn side(v: &Side, digits: usize) -> Value {
    json!(v.render(digits))
}

fn sci(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits - 1, x)
}

pub fn report_row(r: &VerificationReport, digits: usize) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("id".into(), json!(r.id));
    m.insert("params".into(), params_json(&r.params));
    m.insert("pass".into(), json!(r.pass));
    m.insert("errata".into(), json!(r.errata));
    m.insert("mode".into(), json!(r.mode.name()));
    m.insert("tolerance_class".into(), json!(r.tolerance_class.name()));
    let tol = match r.tolerance_class {
        ToleranceClass::Exact => json!("0"),
        _ => json!(sci(r.tolerance, ERROR_DIGITS)),
    };
    m.insert("tolerance".into(), tol);
    let err = match &r.abs_error {
        Side::Exact(q) => json!(q.to_string()),
        Side::Real(x) => json!(x.to_sci(ERROR_DIGITS)),
    };
    m.insert("abs_error".into(), err);
    m.insert("lhs".into(), side(&r.lhs, digits));
    m.insert("rhs".into(), side(&r.rhs, digits));
    m.insert("precision".into(), json!(r.precision));
    m.insert("terms".into(), json!(r.terms));
    m.insert("nodes".into(), json!(r.nodes));
    m.insert("runtime_ms".into(), json!(r.runtime_ms));
    m.insert("note".into(), json!(r.note));
    m.insert("error".into(), Value::Null);
    m
}
