use proptest::prelude::*;

use t2fuzzy::conv::{join_conv, meet_conv, negation, star};
use t2fuzzy::doc::{parse_function, serialize};
use t2fuzzy::pwl::Knot;
use t2fuzzy::rational::{self, q, Rational};
use t2fuzzy::verify::generator::{GeneratorConfig, Generator};
use t2fuzzy::PiecewiseFn;

const D: i64 = 24;

fn grade() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(rational::zero()), Just(rational::one()), (0..=D).prop_map(|n| q(n, D))]
}

/// Arbitrary members of M on the 1/24 grid, jumps included.
fn function() -> impl Strategy<Value = PiecewiseFn> {
    (prop::collection::btree_set(1..D, 0..5), prop::collection::vec((grade(), grade(), grade(), any::<(bool, bool)>()), 7))
        .prop_map(|(interior, grades)| {
            let mut xs = vec![rational::zero()];
            xs.extend(interior.into_iter().map(|n| q(n, D)));
            xs.push(rational::one());
            let last = xs.len() - 1;
            let knots = xs
                .into_iter()
                .enumerate()
                .map(|(i, x)| {
                    let (v, l, r, (jl, jr)) = grades[i].clone();
                    Knot {
                        x,
                        left: (i > 0).then(|| if jl { l } else { v.clone() }),
                        right: (i < last).then(|| if jr { r } else { v.clone() }),
                        value: v,
                    }
                })
                .collect();
            PiecewiseFn::new(knots).unwrap()
        })
}

fn member_of_l() -> impl Strategy<Value = PiecewiseFn> {
    any::<u64>().prop_map(|seed| Generator::new(GeneratorConfig { denominator_bound: D as u32, ..GeneratorConfig::with_seed(seed) }).normal_convex())
}

fn point() -> impl Strategy<Value = Rational> {
    (0..=4 * D).prop_map(|n| q(n, 4 * D))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn document_round_trip(f in function()) {
        let text = serialize("f", &f);
        let back = parse_function(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serialize("f", &back), text);
    }

    #[test]
    fn evaluation_stays_in_unit(f in function(), x in point()) {
        let v = f.eval(&x).unwrap();
        prop_assert!(rational::in_unit(&v));
        prop_assert!(v <= f.sup());
    }

    #[test]
    fn envelopes_dominate_and_are_idempotent(f in function(), x in point()) {
        let (l, r) = (f.left_envelope(), f.right_envelope());
        prop_assert!(f.le(&l) && f.le(&r));
        prop_assert_eq!(l.left_envelope(), l.clone());
        prop_assert_eq!(r.right_envelope(), r.clone());
        prop_assert_eq!(l.eval(&x).unwrap(), f.sup_on(&rational::zero(), &x, false, false).unwrap().value);
        prop_assert_eq!(r.eval(&x).unwrap(), f.sup_on(&x, &rational::one(), false, false).unwrap().value);
    }

    #[test]
    fn reflection_is_an_involution(f in function(), x in point()) {
        let n = negation(&f);
        prop_assert_eq!(negation(&n), f.clone());
        prop_assert_eq!(n.eval(&x).unwrap(), f.eval(&(rational::one() - &x)).unwrap());
    }

    #[test]
    fn pointwise_lattice(f in function(), g in function(), x in point()) {
        let (lo, hi) = (f.min(&g), f.max(&g));
        let (a, b) = (f.eval(&x).unwrap(), g.eval(&x).unwrap());
        prop_assert_eq!(lo.eval(&x).unwrap(), rational::min(&a, &b));
        prop_assert_eq!(hi.eval(&x).unwrap(), rational::max(&a, &b));
        prop_assert_eq!(lo, g.min(&f));
    }

    #[test]
    fn convolutions_commute_on_m(f in function(), g in function()) {
        prop_assert_eq!(meet_conv(&f, &g), meet_conv(&g, &f));
        prop_assert_eq!(join_conv(&f, &g), join_conv(&g, &f));
        prop_assert_eq!(meet_conv(&f, &f), f.clone());
    }

    #[test]
    fn balance_on_l(f in member_of_l()) {
        let d = f.balance_data().unwrap();
        prop_assert!(d.l1 <= d.r1);
        prop_assert_eq!(&d.bf, &d.r1);
        prop_assert_eq!(&d.cf, &d.l1);
        prop_assert_eq!(f.convex_profile().unwrap(), f);
    }

    #[test]
    fn star_stays_in_l(f in member_of_l(), g in member_of_l()) {
        let h = star(&f, &g).unwrap();
        prop_assert!(h.is_normal_convex());
        prop_assert_eq!(h, star(&g, &f).unwrap());
    }
}
