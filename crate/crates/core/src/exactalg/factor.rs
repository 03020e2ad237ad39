use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::zpoly::*;
use super::LaurentPoly;
use crate::error::{Error, Result};

/// Factorisation is refused above this degree unless a larger cap is given.
pub const DEFAULT_DEGREE_CAP: usize = 24;

/// Factors `f` into normalized irreducibles over ℚ, with multiplicities.
///
/// The product of the factors equals `f` up to a unit `c·tᵏ`. Output is
/// sorted by [`LaurentPoly::sort_key`]. Units factor as the empty list.
pub fn factor(f: &LaurentPoly) -> Result<Vec<(LaurentPoly, u32)>> {
    factor_with_cap(f, DEFAULT_DEGREE_CAP)
}

pub fn factor_with_cap(f: &LaurentPoly, cap: usize) -> Result<Vec<(LaurentPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::OutOfRange("cannot factor the zero polynomial".into()));
    }
    let g = f.normalize();
    let deg = g.span();
    if deg > cap {
        return Err(Error::DegreeCap { degree: deg, cap });
    }
    let mut out: Vec<(LaurentPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&g) {
        let z = to_zpoly(&part);
        for irr in factor_squarefree(&z) {
            out.push((from_zpoly(&irr).normalize(), mult));
        }
    }
    out.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Yun's algorithm on a normalized polynomial.
fn squarefree_decomposition(f: &LaurentPoly) -> Vec<(LaurentPoly, u32)> {
    let mut out = Vec::new();
    if f.span() == 0 {
        return out;
    }
    let df = f.derivative();
    let a = LaurentPoly::gcd(f, &df);
    let mut b = f.exact_div(&a).unwrap();
    let c = df.exact_div(&a).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while b.span() > 0 {
        let ai = LaurentPoly::gcd(&b, &d);
        b = b.exact_div(&ai).unwrap();
        let c = d.exact_div(&ai).unwrap();
        d = &c - &b.derivative();
        if ai.span() > 0 {
            out.push((ai, i));
        }
        i += 1;
    }
    out
}

/// Zassenhaus: modular factorisation, Hensel lifting, subset recombination.
fn factor_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    for p in small_primes(4000).into_iter().skip(1) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = zpoly_mod(f, p);
        if fp.len() != f.len() || pgcd(&fp, &pderiv(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&pmonic(&fp, p), p, &mut rng);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, us) = best.expect("a good prime exists for squarefree input");

    let bound = lc.abs() * BigInt::from(2u32).pow(n as u32) * norm1(f) * BigInt::from(2u32);
    let pz = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pz.clone();
    while m <= bound {
        m *= &pz;
        k += 1;
    }
    let mut lifted = hensel_lift(f, &us, p, k);

    let mut rest = f.to_vec();
    let mut factors = Vec::new();
    let mut s = 1usize;
    while 2 * s <= lifted.len() {
        let mut found = None;
        for comb in (0..lifted.len()).combinations(s) {
            let lc = rest.last().unwrap().clone();
            let mut g: ZPoly = vec![lc];
            for &i in &comb {
                g = symmetric_mod(&zmul(&g, &lifted[i]), &m);
            }
            let g = primitive(&g);
            if let Some(q) = zdiv_exact(&rest, &g) {
                found = Some((comb, g, q));
                break;
            }
        }
        match found {
            Some((comb, g, q)) => {
                factors.push(g);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !comb.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => s += 1,
        }
    }
    if rest.len() > 1 {
        if is_negative_lead(&rest) {
            rest = rest.into_iter().map(|c| -c).collect();
        }
        factors.push(rest);
    } else {
        debug_assert!(rest.len() == 1 && rest[0].abs().is_one() || rest.is_empty() || rest[0].is_zero());
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(0, c)
    }

    #[test]
    fn rational_root_example() {
        let f = factor(&lp(&[2, -5, 2])).unwrap();
        assert_eq!(f, vec![(lp(&[-2, 1]), 1), (lp(&[-1, 2]), 1)]);
    }

    #[test]
    fn eight_nine_alexander() {
        let p = lp(&[-1, 1, -2, 1]);
        let q = lp(&[-1, 2, -1, 1]);
        let f = factor(&(&p * &q).shift(-3)).unwrap();
        assert_eq!(f, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn irreducible_quadratic() {
        assert_eq!(factor(&lp(&[1, -1, 1])).unwrap(), vec![(lp(&[1, -1, 1]), 1)]);
    }

    #[test]
    fn multiplicities_and_units() {
        let tref = lp(&[1, -1, 1]);
        let f = (&tref * &tref) * lp(&[-2, 1]).scale(&crate::exactalg::rat(-3, 7));
        let got = factor(&f.shift(5)).unwrap();
        assert_eq!(got, vec![(lp(&[-2, 1]), 1), (tref, 2)]);
        assert!(factor(&LaurentPoly::monomial(crate::exactalg::int(4), -2))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 + 1 is irreducible over ℚ but splits modulo every prime
        assert_eq!(factor(&lp(&[1, 0, 0, 0, 1])).unwrap(), vec![(lp(&[1, 0, 0, 0, 1]), 1)]);
        // (x^4+1)(x^4 - 10x^2 + 1)
        let a = lp(&[1, 0, 0, 0, 1]);
        let b = lp(&[1, 0, -10, 0, 1]);
        let got = factor(&(&a * &b)).unwrap();
        assert_eq!(got.len(), 2);
        assert!(got.contains(&(a, 1)) && got.contains(&(b, 1)));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let f = lp(&[1, 1]).pow(25);
        assert_eq!(
            factor(&f).unwrap_err(),
            Error::DegreeCap { degree: 25, cap: 24 }
        );
        assert_eq!(factor_with_cap(&f, 30).unwrap(), vec![(lp(&[1, 1]), 25)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(factor(&LaurentPoly::zero()).is_err());
    }

    #[test]
    fn non_monic_leading_coefficients() {
        let a = lp(&[3, 0, 5]);
        let b = lp(&[-7, 2]);
        let c = lp(&[1, 4, 0, 6]);
        let got = factor(&(&(&a * &b) * &c)).unwrap();
        let mut want = vec![(a, 1), (b, 1), (c, 1)];
        want.sort_by(|x, y| x.0.sort_key().cmp(&y.0.sort_key()));
        assert_eq!(got, want);
    }
}
