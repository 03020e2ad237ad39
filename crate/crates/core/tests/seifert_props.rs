mod common;

use proptest::prelude::*;

use common::{riemann_rho0, seifert_strategy};
use knotcon::exactalg::{int, rat, LaurentPoly};
use knotcon::knots;
use knotcon::seifert::{rho0_batch, SeifertMatrix};
use knotcon::Exec;

fn tol() -> knotcon::exactalg::Rational {
    rat(1, 1_000_000_000)
}

#[test]
fn trefoil_matches_riemann_oracle() {
    let v = knots::trefoil().seifert.unwrap();
    let r = v.rho0(&tol()).unwrap();
    assert!(r.contains(&rat(-4, 3)));
    let oracle = riemann_rho0(&v, 200_000);
    assert!((oracle - r.to_f64()).abs() < 1e-4, "oracle {oracle} vs {r}");
}

#[test]
fn amphichiral_table_knots_vanish() {
    for k in [knots::figure_eight(), knots::eight9(), knots::unknot()] {
        let r = k.seifert.as_ref().unwrap().rho0(&tol()).unwrap();
        assert!(r.is_exact() && r.contains(&int(0)), "{}: {r}", k.name);
    }
}

#[test]
fn batch_modes_agree() {
    let vs: Vec<SeifertMatrix> = [knots::trefoil(), knots::five2(), knots::nine46(), knots::eight9()]
        .into_iter()
        .map(|k| k.seifert.unwrap())
        .collect();
    let seq = rho0_batch(&vs, &tol(), Exec::Sequential).unwrap();
    let par = rho0_batch(&vs, &tol(), Exec::Parallel).unwrap();
    assert_eq!(seq, par);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn alexander_polynomial_symmetric_and_unit_at_one(v in seifert_strategy(3, 2)) {
        let d = v.alexander_poly();
        prop_assert!(d.is_associate(&d.conj()), "Δ = {d}");
        let at_one = d.eval(&int(1));
        prop_assert!(at_one == int(1) || at_one == int(-1), "Δ(1) = {at_one}");
        // the normalised polynomial is exactly symmetric
        let det = v.alexander_det();
        let span = det.span() as i64;
        let shifted = det.shift(-det.min_exp().unwrap() - span / 2);
        if span % 2 == 0 {
            prop_assert_eq!(&shifted, &shifted.conj());
        }
        prop_assert!(!LaurentPoly::zero().is_associate(&d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rho0_additive_under_connected_sum(a in seifert_strategy(2, 2), b in seifert_strategy(1, 2)) {
        let t = tol();
        let ra = a.rho0(&t).unwrap();
        let rb = b.rho0(&t).unwrap();
        let sum = a.connected_sum(&b).rho0(&t).unwrap();
        let bound = &ra + &rb;
        // both enclose the same real number
        prop_assert!(sum.lo() <= bound.hi() && bound.lo() <= sum.hi(), "{sum} vs {bound}");
    }

    #[test]
    fn rho0_odd_under_mirror(v in seifert_strategy(2, 2)) {
        let t = tol();
        let r = v.rho0(&t).unwrap();
        let m = v.mirror().rho0(&t).unwrap();
        let neg = -&m;
        prop_assert!(r.lo() <= neg.hi() && neg.lo() <= r.hi());
    }

    #[test]
    fn rho0_matches_sampling(v in seifert_strategy(2, 1)) {
        let r = v.rho0(&tol()).unwrap();
        let oracle = riemann_rho0(&v, 4000);
        // each jump contributes at most 2/samples of discretisation error
        let jumps = v.signature_function().jumps().len().max(1) as f64;
        prop_assert!((oracle - r.to_f64()).abs() <= 2.0 * jumps / 4000.0 + 1e-9, "{oracle} vs {r}");
    }

    #[test]
    fn signature_function_even_and_bounded(v in seifert_strategy(2, 2)) {
        let s = v.signature_function();
        let vals = s.values();
        let n = v.size() as i64;
        prop_assert!(vals.iter().all(|x| x.abs() <= n));
        let r = vals.len();
        for i in 0..r {
            prop_assert_eq!(vals[i], vals[r - 1 - i]);
        }
    }
}
