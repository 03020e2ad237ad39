mod common;

use proptest::prelude::*;

use common::eisenstein_strategy;
use knotcon::exactalg::{factor, factor_with_cap, int, LaurentPoly};
use knotcon::Error;

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(-4i64..=4, 2..=4)
        .prop_filter("nonconstant", |cs| cs[1..].iter().any(|&c| c != 0) && cs[0] != 0)
        .prop_map(|cs| LaurentPoly::from_ints(0, &cs))
}

fn product(fs: &[(LaurentPoly, u32)]) -> LaurentPoly {
    fs.iter().fold(LaurentPoly::one(), |acc, (f, e)| &acc * &f.pow(*e))
}

#[test]
fn cap_is_reported() {
    let f = LaurentPoly::from_ints(0, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    assert!(matches!(factor_with_cap(&f, 10), Err(Error::DegreeCap { degree: 11, cap: 10 })));
}

#[test]
fn cyclotomic_splitting() {
    // t⁶ − 1 = (t − 1)(t + 1)(t² + t + 1)(t² − t + 1)
    let f = LaurentPoly::from_ints(0, &[-1, 0, 0, 0, 0, 0, 1]);
    let fs = factor(&f).unwrap();
    assert_eq!(fs.len(), 4);
    assert!(product(&fs).is_associate(&f));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn eisenstein_polynomials_are_irreducible(f in eisenstein_strategy()) {
        let fs = factor(&f).unwrap();
        prop_assert_eq!(fs.len(), 1, "{} split as {:?}", f, fs);
        prop_assert!(fs[0].0.is_associate(&f));
        prop_assert_eq!(fs[0].1, 1);
    }

    #[test]
    fn factorisation_reconstructs(a in small_poly(), b in small_poly(), c in small_poly()) {
        let f = &(&a * &b) * &c;
        let fs = factor(&f).unwrap();
        prop_assert!(product(&fs).is_associate(&f));
        for (g, _) in &fs {
            prop_assert!(g.divides(&f));
            prop_assert!(factor(g).unwrap().len() == 1);
        }
        // every factor of a part divides some irreducible factor's power
        for part in [&a, &b, &c] {
            for (g, _) in factor(part).unwrap() {
                prop_assert!(fs.iter().any(|(h, _)| h.is_associate(&g)));
            }
        }
    }

    #[test]
    fn gcd_divides_and_is_maximal(a in small_poly(), b in small_poly(), c in small_poly()) {
        let g = LaurentPoly::gcd(&(&a * &c), &(&b * &c));
        prop_assert!(g.divides(&(&a * &c)) && g.divides(&(&b * &c)));
        prop_assert!(c.divides(&g));
        let (d, s, t) = LaurentPoly::ext_gcd(&a, &b);
        prop_assert_eq!(&(&s * &a) + &(&t * &b), d);
    }

    #[test]
    fn conjugation_is_an_involutive_ring_map(a in small_poly(), b in small_poly(), x in -5i64..=5) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assume!(x != 0);
        let xq = int(x);
        prop_assert_eq!(a.conj().eval(&xq), a.eval(&(int(1) / xq)));
    }
}
