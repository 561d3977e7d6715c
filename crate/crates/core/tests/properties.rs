use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use dsurg::cfk::{vh_profile_with, AlexanderPolynomial, CfkComplex, VHProfile};
use dsurg::correction::{check_vanishing_propagation, d_from_profiles, lens_d, niwu_dnorm, unknot_d};
use dsurg::obstructions::{bing_verdict, split_verdict, KnotInvariantRecord, Verdict};
use dsurg::surgery::{
    chain_determinants, generator_self_intersection, slam_dunk, slam_dunk_solve, ChainDiagram,
};
use dsurg::{DInvariantTable, Engine, Execution, KnotExpr, Slope, SpinCLabel};

fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (1i64..60, 1i64..60).prop_filter("coprime", |(p, q)| num_integer::gcd(*p, *q) == 1)
}

fn torus_knot() -> impl Strategy<Value = KnotExpr> {
    prop_oneof![Just((2, 3)), Just((2, 5)), Just((3, 4)), Just((2, 7)), Just((3, 5))]
        .prop_map(|(p, q)| KnotExpr::torus(p, q).unwrap())
}

/// Sums of at most three torus knots or their mirrors.
fn sum_knot() -> impl Strategy<Value = KnotExpr> {
    prop::collection::vec((torus_knot(), any::<bool>()), 1..=3).prop_map(|parts| {
        KnotExpr::sum_all(parts.into_iter().map(|(k, m)| if m { KnotExpr::mirror(k) } else { k }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_determinants_recover_the_slope((a, b) in coprime_pair()) {
        let r = Slope::new(a, b).unwrap();
        let chain = ChainDiagram::from_slope(r).unwrap();
        prop_assert_eq!(chain.slope().unwrap(), r);
        let dets = chain_determinants(&chain).unwrap();
        prop_assert_eq!(dets.det_a, BigInt::from(a));
        prop_assert_eq!(dets.det_b, BigInt::from(b));
    }

    #[test]
    fn slam_dunk_inverts((a, b) in coprime_pair(), n in -20i64..20, neg in any::<bool>()) {
        let r = Slope::new(if neg { -a } else { a }, b).unwrap();
        let out = slam_dunk(n, r).unwrap();
        prop_assert_eq!(slam_dunk_solve(n, out).unwrap(), r);
    }

    #[test]
    fn generator_square_sign((a, b) in coprime_pair(), neg in any::<bool>()) {
        let r = Slope::new(if neg { -a } else { a }, b).unwrap();
        let sq = generator_self_intersection(r).unwrap();
        prop_assert_eq!(sq.is_negative(), !r.in_closed_interval(-4, 0));
    }

    #[test]
    fn unknot_surgery_is_normalized((p, q) in coprime_pair(), neg in any::<bool>()) {
        let s = Slope::new(if neg { -p } else { p }, q).unwrap();
        let zero = VHProfile::zero();
        for label in SpinCLabel::all(p as u64) {
            let d = d_from_profiles(&zero, &zero, s, label).unwrap();
            prop_assert!(d.dnorm.is_zero());
            prop_assert_eq!(d.d, unknot_d(s, label).unwrap());
        }
    }

    #[test]
    fn lens_values_are_conjugation_symmetric((p, q) in coprime_pair()) {
        // Conjugation sends the label i to q - 1 - i mod p.
        for i in 0..p {
            let a = lens_d(p, q, SpinCLabel::from_integer(i, p as u64).unwrap()).unwrap();
            let b = lens_d(p, q, SpinCLabel::from_integer(q - 1 - i, p as u64).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn vanishing_v0_kills_positive_surgeries(k in sum_knot(), (p, q) in coprime_pair()) {
        let profile = Engine::new().profile(&k).unwrap();
        if check_vanishing_propagation(&profile) {
            for label in SpinCLabel::all(p as u64) {
                prop_assert!(niwu_dnorm(&profile, p, q, label).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn dnorm_is_nonpositive_and_even(k in sum_knot(), (p, q) in coprime_pair()) {
        let profile = Engine::new().profile(&k).unwrap();
        let two = BigRational::from_integer(BigInt::from(2));
        for label in SpinCLabel::all(p as u64) {
            let x = niwu_dnorm(&profile, p, q, label).unwrap();
            prop_assert!(!x.is_positive());
            prop_assert!((x / &two).is_integer());
        }
    }

    #[test]
    fn reversal_and_ordering_do_not_change_profiles(a in torus_knot(), b in torus_knot()) {
        let e = Engine::new();
        let ab = KnotExpr::sum(a.clone(), KnotExpr::mirror(b.clone()));
        let ba = KnotExpr::sum(KnotExpr::mirror(b), a);
        prop_assert_eq!(ab.cache_key(), ba.cache_key());
        prop_assert_eq!(e.profile(&ab).unwrap(), e.profile(&KnotExpr::rev(ab.clone())).unwrap());
        prop_assert_eq!(e.profile(&ab).unwrap(), e.profile(&ba).unwrap());
    }

    #[test]
    fn split_reports_never_obstruct_the_unknot(s in -3i64..=3, delta in -3i64..=3) {
        let base = KnotInvariantRecord::gather(&Engine::new(), &KnotExpr::Unknot);
        let rec = base.clone().with_s(0).with_delta(1, BigRational::from_integer(BigInt::from(0)));
        prop_assert_eq!(split_verdict(&rec).unwrap().verdict, Verdict::NoObstructionFound);
        // Adding a nonvanishing invariant can only move the verdict towards
        // an obstruction.
        let more = base.with_s(s).with_delta(2, BigRational::from_integer(BigInt::from(delta)));
        let v = split_verdict(&more).unwrap().verdict;
        prop_assert_eq!(v == Verdict::Obstructed, s != 0 || delta != 0);
    }
}

#[test]
fn bing_does_not_obstruct_slice_sums() {
    let e = Engine::new();
    for k in ["U", "T(2,3) # mirror(T(2,3))", "T(3,4) # mirror(rev(T(3,4)))"] {
        let rec = KnotInvariantRecord::gather(&e, &k.parse().unwrap());
        assert_eq!(bing_verdict(&rec).unwrap().verdict, Verdict::NoObstructionFound, "{k}");
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let seq = Engine::new().with_execution(Execution::Sequential);
    let par = Engine::new().with_execution(Execution::Parallel);
    let k: KnotExpr = "T(3,5) # T(2,7) # mirror(T(2,5))".parse().unwrap();
    assert_eq!(seq.profile(&k).unwrap(), par.profile(&k).unwrap());
    for s in [Slope::new(17, 3).unwrap(), Slope::new(-11, 4).unwrap()] {
        let a: DInvariantTable = seq.d_table(&k, s).unwrap();
        let b = par.d_table(&k, s).unwrap();
        assert_eq!(a, b);
    }
    let alex = AlexanderPolynomial::torus(4, 5).unwrap();
    let c = CfkComplex::staircase(&alex).unwrap();
    let big = c.tensor(&c.dual()).tensor(&c);
    assert_eq!(
        vh_profile_with(&big, 20, Execution::Sequential).unwrap(),
        vh_profile_with(&big, 20, Execution::Parallel).unwrap()
    );
}
