use super::*;
use crate::rational::q;

fn catalog(d: u32) -> ConstantCatalog {
    ConstantCatalog::compute(d).unwrap()
}

#[test]
fn registry_ids_unique_and_sorted() {
    let ids: Vec<_> = registry().iter().map(|c| c.id).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(ids, sorted);
    assert!(select("NOPE").is_err());
    assert_eq!(select("OLOA").unwrap().len(), 5);
}

#[test]
fn params_parse() {
    let p = Params::parse("n=2, s=2,sigma=-0.9").unwrap();
    assert_eq!(p.get("sigma"), Some(&q(-9, 10)));
    assert!(Params::parse("n2").is_err());
}

#[test]
fn beta_integral_example() {
    let c = catalog(20);
    let opts = RunOptions { digits: 20, ..Default::default() };
    let ctx = Ctx { opts: &opts, consts: &c };
    let p = Params::parse("n=2,s=2").unwrap();
    let r = evaluate_identity("PROP8_IN", &p, &ctx).unwrap();
    assert!(r.pass);
    assert_eq!(r.lhs, Value::Exact(q(3, 4)));
    assert_eq!(r.rhs, Value::Exact(q(3, 4)));
    assert!(evaluate_identity("PROP8_IN", &Params::parse("t=1").unwrap(), &ctx).is_err());
}

#[test]
fn exact_cases() {
    let c = catalog(20);
    let opts = RunOptions { digits: 20, ..Default::default() };
    let ctx = Ctx { opts: &opts, consts: &c };
    for id in ["APPENDIX_A1", "COR3", "HYP_114", "HYP_217", "PROP8_IN"] {
        for r in run_all(&ctx, id).unwrap().iter().filter(|r| !r.errata) {
            assert!(r.pass, "{r:?}");
            assert_eq!(r.abs_error_f64(), 0.0);
        }
    }
    let printed = run_all(&ctx, "PROP8_IN.printed").unwrap();
    assert_eq!(printed.len(), 8);
    assert!(printed.iter().all(|r| r.errata && !r.pass));
    assert!(!all_pass(&printed));
    let poles = run_all(&ctx, "EQ226_PARTS.printed").unwrap();
    assert_eq!(poles[0].lhs, Value::Exact(q(7, 1)));
    let coeff = run_all(&ctx, "PROP4_GAMMA2.printed").unwrap();
    assert_eq!(coeff[0].lhs, Value::Exact(q(7, 90)));
    assert_eq!(coeff[0].rhs, Value::Exact(q(-1, 720)));
}

#[test]
fn sigma_domain() {
    let c = catalog(20);
    let opts = RunOptions { digits: 20, ..Default::default() };
    let ctx = Ctx { opts: &opts, consts: &c };
    let bad = Params::new().with("sigma", q(-1, 1));
    assert!(matches!(evaluate_identity("OLOA_SIGMA", &bad, &ctx), Err(Error::Domain(_))));
}

#[test]
fn exit_rule() {
    let ok = VerificationReport::exact("A", q(1, 1), q(1, 1));
    let bad = VerificationReport::exact("B", q(1, 1), q(2, 1)).errata();
    assert!(all_pass(&[ok.clone(), bad.clone()]));
    assert!(!all_pass(&[bad]));
    assert!(all_pass(&[ok]));
}
