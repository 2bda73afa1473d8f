use gregory::core::exact_kernel::{p_recursion, p_stirling};
use gregory::core::identity::Params;
use gregory::core::real::BigReal;
use gregory::core::{ExactRational, TruncatedSeries};
use gregory::dump::SeriesDump;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = ExactRational> {
    (-1000i64..1000, 1i64..500).prop_map(|(n, d)| ExactRational::frac(n, d))
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    (-3i64..3, prop::collection::vec(rational(), 1..12)).prop_map(|(m, c)| TruncatedSeries::new(m, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(q in rational()) {
        let back: ExactRational = q.to_string().parse().unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn series_product_commutes(a in series(), b in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn series_inverse(a in series()) {
        prop_assume!(a.valuation().is_some());
        let inv = a.inverse().unwrap();
        let prod = &a * &inv;
        let one = TruncatedSeries::monomial(0, ExactRational::one(), prod.order());
        prop_assert!(prod.difference(&one).is_empty(), "{:?}", prod);
    }

    #[test]
    fn series_dump_round_trip(a in series()) {
        let text = serde_json::to_string(&SeriesDump::from(&a)).unwrap();
        let back: SeriesDump = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_series().unwrap(), a);
    }

    #[test]
    fn p_routes_agree_and_decrease(n in 2i64..70) {
        let a = p_stirling(n).unwrap();
        prop_assert_eq!(&a, &p_recursion(n).unwrap());
        prop_assert!(a.is_positive());
        prop_assert!(p_stirling(n + 1).unwrap() < a);
    }

    #[test]
    fn real_decimal_round_trip(n in -10_000i64..10_000, d in 1i64..10_000, digits in 20u32..80) {
        let prec = gregory::core::real::bits_for_digits(digits);
        let x = BigReal::frac(n, d, prec);
        let back = BigReal::parse(&x.to_sci(digits as usize + 5), prec).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn params_round_trip(n in 1i64..50, s in 2i64..9, sig in rational()) {
        let text = format!("n={n},s={s},sigma={sig}");
        let p = Params::parse(&text).unwrap();
        prop_assert_eq!(p.get("n").unwrap(), &ExactRational::frac(n, 1));
        prop_assert_eq!(p.get("sigma").unwrap(), &sig);
        prop_assert_eq!(p.names().collect::<Vec<_>>(), vec!["n", "s", "sigma"]);
    }
}
