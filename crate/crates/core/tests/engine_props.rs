use hpdcalc_core::checks::{check_main_theorem, CheckConfig};
use hpdcalc_core::engine::{
    hpd_total, join_profile_with, n_hyperplane_sod, n_join_components, universal_hyperplane_sod,
    JPrimeBound, Splitting,
};
use hpdcalc_core::{IntWorkspace, InvariantExpr, Profile};
use proptest::prelude::*;

type P = InvariantExpr;

fn prim() -> impl Strategy<Value = P> {
    (0i64..=3, 0i64..=1, 0i64..=1).prop_map(|(k, x, y)| {
        &(&P::int(k) + &P::symbol("x").scale_int(x)) + &P::symbol("y").scale_int(y)
    })
}

fn pair() -> impl Strategy<Value = (Profile, Profile)> {
    (3usize..=9)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prim(), 1..n),
                prop::collection::vec(prim(), 1..n),
            )
        })
        .prop_map(|(n, a, b)| {
            (
                Profile::new("A", n, a, None).unwrap(),
                Profile::new("B", n, b, None).unwrap(),
            )
        })
}

fn workspace(p: &Profile, q: &Profile, e: &P) -> IntWorkspace {
    let mut ws = IntWorkspace::new();
    for s in ["x", "y", "e"] {
        ws.declare_symbol(s).unwrap();
    }
    ws.add_category(p.clone()).unwrap();
    ws.add_category(q.clone()).unwrap();
    ws.declare_intersection("A", "B", p.ambient_rank(), e.clone())
        .unwrap();
    ws
}

proptest! {
    #[test]
    fn join_is_commutative((p, q) in pair()) {
        let e = P::symbol("e");
        let a = join_profile_with(&p, &q, &e, JPrimeBound::Orthogonal).unwrap();
        let b = join_profile_with(&q, &p, &e, JPrimeBound::Orthogonal).unwrap();
        prop_assert_eq!(&a.components, &b.components);
        prop_assert_eq!(a.total.clone(), a.conservation_rhs());
    }

    #[test]
    fn single_factor_specializations((p, _q) in pair()) {
        prop_assert_eq!(n_join_components(&[&p]).unwrap(), p.components());
        let nh = n_hyperplane_sod(&[&p], &Splitting, None).unwrap();
        prop_assert_eq!(nh.sod, universal_hyperplane_sod(&p).unwrap());
        prop_assert_eq!(nh.c_invariant, hpd_total(&p).unwrap());
    }

    #[test]
    fn main_theorem_is_symmetric((p, q) in pair()) {
        let e = P::symbol("e");
        let ws = workspace(&p, &q, &e);
        let cfg = CheckConfig::default();
        let pq = check_main_theorem("m", &p, &q, &ws, None, &cfg).unwrap();
        let qp = check_main_theorem("m", &q, &p, &ws, None, &cfg).unwrap();
        prop_assert_eq!(&pq.results[0].lhs, &qp.results[0].lhs);
        prop_assert_eq!(&pq.results[0].rhs, &qp.results[0].rhs);
        prop_assert!(pq.results[0].passed());
    }

    #[test]
    fn failing_checks_carry_separating_witnesses((p, q) in pair(), k in 1i64..4) {
        // Perturbing the declared intersection by a multiple of x breaks the identity.
        let e = P::symbol("e");
        let ws = workspace(&p, &q, &e);
        let cfg = CheckConfig::default();
        let good = join_profile_with(&p, &q, &e, JPrimeBound::Orthogonal).unwrap();
        let bad_e = &e + &P::symbol("x").scale_int(k);
        let bad = join_profile_with(&p, &q, &bad_e, JPrimeBound::Orthogonal).unwrap();
        let r = hpdcalc_core::CheckResult::compare("c", bad.total.clone(), good.total.clone(), vec![]);
        prop_assert!(!r.passed());
        prop_assert!(r.witness_separates());
        let again = check_main_theorem("m", &p, &q, &ws, None, &cfg).unwrap();
        prop_assert_eq!(again, check_main_theorem("m", &p, &q, &ws, None, &cfg).unwrap());
    }
}
