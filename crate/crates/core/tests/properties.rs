use proptest::prelude::*;

use qhahn::coeffs::{build_table, build_z, q_reverse, Adjoin, Branch, ParamSet, Sign, Variant};
use qhahn::exactfield::{rat, Field, Quad};
use qhahn::qmatrix::{build_l, moments, recurrence_polys, table_residual};

fn small_rat() -> impl Strategy<Value = Quad> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| Quad::rational(rat(n, d)))
}

fn nonzero_rat() -> impl Strategy<Value = Quad> {
    small_rat().prop_filter("nonzero", |x| !x.is_zero())
}

fn q_value() -> impl Strategy<Value = Quad> {
    prop_oneof![Just(rat(2, 1)), Just(rat(3, 1)), Just(rat(1, 2)), Just(rat(3, 2))].prop_map(Quad::rational)
}

fn params() -> impl Strategy<Value = ParamSet<Quad>> {
    (
        q_value(),
        nonzero_rat(),
        [small_rat(), small_rat(), small_rat()],
        nonzero_rat(),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(q, y, d, a1, b, starred)| {
            let mut p = ParamSet::new(q, y, d, a1).with_adjoin(Adjoin::Auto);
            if b {
                p.branch = Branch::B;
            }
            if starred {
                p.variant = Variant::Starred;
            }
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn residual_vanishes(p in params()) {
        if let Ok(t) = build_table(&p, 10) {
            prop_assert!(table_residual(&t, 6).unwrap().is_zero_on_valid());
        }
    }

    #[test]
    fn sign_flip_gives_parity_moments(p in params()) {
        let flipped = p.clone().with_sign(Sign::Minus);
        if let (Ok(a), Ok(b)) = (build_table(&p, 6), build_table(&flipped, 6)) {
            let ma = moments(&build_l(&a, 5).unwrap(), 8).unwrap();
            let mb = moments(&build_l(&b, 5).unwrap(), 8).unwrap();
            for (n, (x, y)) in ma.m.iter().zip(&mb.m).enumerate() {
                let expected = if n % 2 == 0 { x.clone() } else { -x.clone() };
                prop_assert_eq!(y, &expected);
            }
        }
    }

    #[test]
    fn double_reversal_is_identity(p in params()) {
        if let Ok(t) = build_table(&p, 6) {
            prop_assert_eq!(build_table(&q_reverse(&q_reverse(&p)), 6).unwrap(), t);
        }
    }

    #[test]
    fn degrees_bounded_by_eight(p in params()) {
        let (n, m) = build_z(&p).unwrap().degrees();
        prop_assert!(n <= qhahn::ratfunc::Degree::Finite(8));
        prop_assert!(m <= qhahn::ratfunc::Degree::Finite(8));
    }

    #[test]
    fn polys_are_monic(p in params()) {
        if let Ok(t) = build_table(&p, 6) {
            let polys = recurrence_polys(&t.alpha, &t.beta, 6).unwrap();
            for (k, row) in polys.rows.iter().enumerate() {
                prop_assert_eq!(row.degree(), qhahn::ratfunc::Degree::Finite(k));
                prop_assert!(row.lead().is_some_and(|c| c.is_one()));
            }
        }
    }
}
