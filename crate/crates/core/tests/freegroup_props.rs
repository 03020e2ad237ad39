mod common;

use proptest::prelude::*;

use common::{deep_word, word_strategy};
use knotcon::freegroup::{bing_curve, derived_depth, derived_depth_batch, Depth, FreeWord};
use knotcon::Exec;

const N_MAX: u32 = 3;

fn depth(w: &FreeWord) -> Depth {
    derived_depth(w, N_MAX).unwrap()
}

#[test]
fn known_depths() {
    let x = |i| FreeWord::generator(4, i);
    let c = FreeWord::commutator;
    assert_eq!(depth(&c(&x(0), &x(1))), Depth::Exact(1));
    assert_eq!(depth(&c(&c(&x(0), &x(1)), &c(&x(2), &x(3)))), Depth::Exact(2));
    assert_eq!(depth(&x(0)), Depth::Exact(0));
    assert_eq!(depth(&FreeWord::identity(4)), Depth::AtLeast(N_MAX));
    for n in 1..=3 {
        assert_eq!(derived_depth(&bing_curve(n).unwrap(), n + 1).unwrap(), Depth::Exact(n));
    }
}

#[test]
fn batch_modes_agree() {
    let words: Vec<FreeWord> = (1..=3).map(|n| bing_curve(n).unwrap()).collect();
    let seq: Vec<_> = derived_depth_batch(&words, 4, Exec::Sequential).into_iter().map(Result::unwrap).collect();
    let par: Vec<_> = derived_depth_batch(&words, 4, Exec::Parallel).into_iter().map(Result::unwrap).collect();
    assert_eq!(seq, par);
    assert_eq!(seq, vec![Depth::Exact(1), Depth::Exact(2), Depth::Exact(3)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn depth_one_is_abelianization(w in word_strategy(3, 14)) {
        let d = depth(&w);
        let null = w.abelianization().iter().all(|&e| e == 0);
        prop_assert_eq!(d.lower_bound() >= 1, null);
    }

    #[test]
    fn conjugation_invariance(w in word_strategy(3, 10), g in word_strategy(3, 6)) {
        prop_assert_eq!(depth(&w.conjugate_by(&g)), depth(&w));
        prop_assert_eq!(depth(&w.inverse()), depth(&w));
    }

    /// `[F⁽ᵃ⁾, F⁽ᵇ⁾] ⊆ F⁽ᵐⁱⁿ⁽ᵃ,ᵇ⁾⁺¹⁾`.
    #[test]
    fn commutator_superadditivity(u in word_strategy(3, 8), v in word_strategy(3, 8)) {
        let (du, dv) = (depth(&u).lower_bound(), depth(&v).lower_bound());
        let c = FreeWord::commutator(&u, &v);
        let dc = depth(&c).lower_bound();
        prop_assert!(dc >= (du.min(dv) + 1).min(N_MAX), "[{u}, {v}]: {du}, {dv} → {dc}");
    }

    #[test]
    fn nested_commutators_reach_their_depth(picks in proptest::collection::vec(0usize..4, 8), d in 1u32..=2) {
        let w = deep_word(4, d, &picks);
        prop_assert!(depth(&w).lower_bound() >= d);
    }

    #[test]
    fn products_stay_in_the_subgroup(u in word_strategy(2, 6), v in word_strategy(2, 6), a in word_strategy(2, 6)) {
        let cu = FreeWord::commutator(&u, &a);
        let cv = FreeWord::commutator(&v, &a);
        let d = depth(&cu).lower_bound().min(depth(&cv).lower_bound());
        prop_assert!(depth(&cu.mul(&cv)).lower_bound() >= d);
    }
}
