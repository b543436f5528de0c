use proptest::prelude::*;

use satake::cone_series::{cone_witness, expand_product, series_mul, ConeSpec};
use satake::lattice::LatticeVector;
use satake::linalg::rat;
use satake::qlaurent::QLaurent;
use satake::spherical::{inverse_satake_lfun, macdonald_p, parse_preset};

fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector::new(v.to_vec())
}

fn arb_generators() -> impl Strategy<Value = (Vec<i64>, Vec<Vec<i64>>)> {
    prop::collection::vec(-3i64..=3, 3)
        .prop_filter("nonzero direction", |d| d.iter().any(|&x| x != 0))
        .prop_flat_map(|dir| {
            let d = dir.clone();
            let gen = prop::collection::vec(-3i64..=3, 3)
                .prop_filter("strictly positive on the direction", move |g| {
                    g.iter().zip(&d).map(|(a, b)| a * b).sum::<i64>() > 0
                });
            (Just(dir), prop::collection::vec(gen, 1..5))
        })
}

fn arb_factor() -> impl Strategy<Value = (QLaurent, LatticeVector)> {
    (-3i64..2, -2i64..3, 0i64..3, 0i64..3)
        .prop_filter("nonzero exponent", |(_, _, a, b)| a + b > 0)
        .prop_map(|(e, c, a, b)| {
            let c = if c == 0 { 1 } else { c };
            (QLaurent::v_monomial(e, rat(c)), lv(&[a, b - a]))
        })
}

/// Partial sums of `mu - lambda` are nonnegative and the total vanishes: `mu` lies above `lambda`
/// in the order generated by the positive coroots `e_i - e_j`, `i < j`.
fn above(mu: &LatticeVector, lambda: &LatticeVector) -> bool {
    let mut acc = 0;
    for (a, b) in mu.coords().iter().zip(lambda.coords()) {
        acc += a - b;
        if acc < 0 {
            return false;
        }
    }
    acc == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witness_is_positive_on_every_generator((_, gens) in arb_generators()) {
        let gens: Vec<LatticeVector> = gens.into_iter().map(LatticeVector::new).collect();
        let xi = cone_witness(3, &gens).unwrap();
        for g in &gens {
            prop_assert!(xi.pair(g).to_integer().unwrap() >= 1, "{g} under {xi:?}");
        }
    }

    #[test]
    fn series_product_commutes_and_respects_truncation(
        a in prop::collection::vec(arb_factor(), 1..3),
        b in prop::collection::vec(arb_factor(), 1..3),
        n in 0i64..8,
        m in 0i64..8,
    ) {
        let spec = ConeSpec::new(2, vec![lv(&[1, -1]), lv(&[0, 1])]).unwrap();
        let sa = expand_product(&[], &a, &spec, n.max(m)).unwrap();
        let sb = expand_product(&b[..1], &b[1..], &spec, n.max(m)).unwrap();
        let ab = series_mul(&sa, &sb).unwrap();
        prop_assert_eq!(&ab, &series_mul(&sb, &sa).unwrap());
        let small = series_mul(&sa.truncate(n), &sb.truncate(m)).unwrap();
        prop_assert!(small.agrees_with(&ab));
        prop_assert_eq!(small.bound(), n.min(m));
        let whole: Vec<_> = a.iter().chain(&b[1..]).cloned().collect();
        prop_assert_eq!(ab, expand_product(&b[..1], &whole, &spec, n.max(m)).unwrap());
    }

    #[test]
    fn macdonald_polynomials_are_symmetric_and_triangular(
        preset in prop::sample::select(vec!["group:gl2", "group:gl3", "whittaker:gl3"]),
        raw in prop::collection::vec(-2i64..=2, 3),
    ) {
        let datum = parse_preset(preset).unwrap();
        let mut coords = raw[..datum.rank()].to_vec();
        coords.sort_unstable();
        let lambda = LatticeVector::new(coords);
        prop_assert!(datum.is_antidominant(&lambda));
        let p = macdonald_p(&datum, &lambda).unwrap();
        prop_assert!(p.poly().is_invariant(datum.weyl()));
        prop_assert!(!p.poly().coefficient(&lambda).is_zero());
        for (mu, _) in p.poly().terms() {
            let low = datum.roots().antidominant_image(mu);
            prop_assert!(above(&low, &lambda), "{mu} in P_{lambda}");
        }
    }

    #[test]
    fn hecke_values_are_weighted_series_coefficients(n in 0i64..7) {
        let datum = parse_preset("group:gl2").unwrap();
        let table = inverse_satake_lfun(&datum, &lv(&[0, 1]), n).unwrap();
        for row in &table.rows {
            prop_assert!(datum.is_antidominant(&row.lambda));
            prop_assert!(row.lambda.dot(&table.witness) <= n);
            prop_assert_eq!(row.hecke.clone(), &row.series * &datum.rho_weight(&row.lambda));
        }
    }
}
