use std::sync::Arc;

use proptest::prelude::*;

use knotcon::exactalg::{rat, Rational};
use knotcon::infection::{ConstructionNode, CurveSpec};
use knotcon::knots::{self, KnotFlags, KnotRecord};
use knotcon::rhocalc::{first_order_signatures, linearly_independent, simplify, Axioms, Context, RhoAtom, RhoTerm};

fn atom() -> impl Strategy<Value = RhoAtom> {
    let names = prop::sample::select(vec!["K1", "K2", "nine46", "eight9", "trefoil", "unknot"]);
    (0u8..3, names).prop_map(|(kind, k)| match kind {
        0 => RhoAtom::Rho0(k.into()),
        1 => RhoAtom::Rho1(k.into()),
        _ => RhoAtom::Fos { knot: k.into(), submodule: "⟨α⟩".into() },
    })
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn term() -> impl Strategy<Value = RhoTerm> {
    (proptest::collection::vec((atom(), coeff()), 0..4), coeff()).prop_map(|(parts, c)| {
        parts.into_iter().fold(RhoTerm::constant(c), |t, (a, q)| t.plus_atom(a, q))
    })
}

fn opaque(name: &str) -> ConstructionNode {
    ConstructionNode::knot(Arc::new(KnotRecord::opaque(name, KnotFlags::default())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn vector_space_laws(a in term(), b in term(), c in term(), p in coeff(), q in coeff()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a + &RhoTerm::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a + &b).scale(&p), &a.scale(&p) + &b.scale(&p));
        prop_assert_eq!(a.scale(&(&p + &q)), &a.scale(&p) + &a.scale(&q));
        prop_assert_eq!(a.scale(&p).scale(&q), a.scale(&(&p * &q)));
        prop_assert_eq!(-&(-&a), a.clone());
    }

    #[test]
    fn simplification_is_idempotent_and_linear(a in term(), b in term(), p in coeff()) {
        let ctx = Context::new();
        let s = simplify(&a, &ctx);
        prop_assert_eq!(simplify(&s, &ctx), s.clone());
        prop_assert_eq!(simplify(&(&a + &b.scale(&p)), &ctx), &s + &simplify(&b, &ctx).scale(&p));
        // only atoms are rewritten
        prop_assert_eq!(s.constant_part(), a.constant_part());
    }

    #[test]
    fn display_round_trips_atoms(a in atom()) {
        prop_assert_eq!(a.to_string().parse::<RhoAtom>().unwrap(), a);
    }

    #[test]
    fn independence_matches_rank(cs in proptest::collection::vec(coeff(), 4)) {
        let mut ax = Axioms::default();
        ax.declare_independent([RhoAtom::Rho0("K1".into()), RhoAtom::Rho0("K2".into())]);
        let t1 = RhoTerm::zero().plus_atom(RhoAtom::Rho0("K1".into()), cs[0].clone()).plus_atom(RhoAtom::Rho0("K2".into()), cs[1].clone());
        let t2 = RhoTerm::zero().plus_atom(RhoAtom::Rho0("K1".into()), cs[2].clone()).plus_atom(RhoAtom::Rho0("K2".into()), cs[3].clone());
        let det = &cs[0] * &cs[3] - &cs[1] * &cs[2];
        prop_assert_eq!(linearly_independent(&[t1, t2], &ax), det != rat(0, 1));
    }
}

#[test]
fn nine46_signature_set() {
    let r = knots::nine46();
    let m = r.module().unwrap();
    let k = ConstructionNode::infect(
        ConstructionNode::knot(Arc::new(r)),
        vec![
            CurveSpec::linking_zero("α").with_class(m.generator(0)),
            CurveSpec::linking_zero("β").with_class(m.generator(1)),
        ],
        vec![opaque("K1"), opaque("K2")],
    );
    let t = first_order_signatures(&k, &Context::new()).unwrap();
    let got: Vec<String> = t.terms().iter().map(ToString::to_string).collect();
    assert_eq!(got, ["rho0(K1) + rho0(K2) + rho1(nine46)", "rho0(K2)", "rho0(K1)"]);
}

#[test]
fn slice_knot_first_order_signatures_contain_zero() {
    for k in [knots::nine46(), knots::eight9(), knots::unknot()] {
        let t = first_order_signatures(&ConstructionNode::knot(Arc::new(k.clone())), &Context::new()).unwrap();
        assert!(t.terms().iter().any(RhoTerm::is_zero), "{}", k.name);
    }
}
