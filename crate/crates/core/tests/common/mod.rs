//! Generators and independent oracles shared by the property suites and
//! the acceptance target.
#![allow(dead_code)]

use nalgebra::DMatrix;
use proptest::prelude::*;

use knotcon::alexmod::{AlexModule, Submodule};
use knotcon::exactalg::LaurentPoly;
use knotcon::freegroup::FreeWord;
use knotcon::seifert::SeifertMatrix;

/// `S + E` with `S` symmetric and `E` the upper half of the standard
/// symplectic form, so `V − Vᵀ` is unimodular by construction. A random
/// elementary congruence then moves it off the normal form.
pub fn seifert_strategy(max_genus: usize, entry: i64) -> impl Strategy<Value = SeifertMatrix> {
    (1..=max_genus).prop_flat_map(move |g| {
        let n = 2 * g;
        (
            proptest::collection::vec(-entry..=entry, n * (n + 1) / 2),
            proptest::collection::vec((0..n, 0..n, -1i64..=1), 0..3),
        )
            .prop_map(move |(sym, moves)| {
                let mut v = vec![vec![0i64; n]; n];
                let mut it = sym.into_iter();
                for i in 0..n {
                    for j in i..n {
                        let x = it.next().unwrap();
                        v[i][j] = x;
                        v[j][i] = x;
                    }
                }
                for i in 0..g {
                    v[2 * i][2 * i + 1] += 1;
                }
                for (a, b, c) in moves {
                    if a != b {
                        // row a += c·row b, then column a += c·column b
                        for k in 0..n {
                            v[a][k] += c * v[b][k];
                        }
                        for k in 0..n {
                            v[k][a] += c * v[k][b];
                        }
                    }
                }
                SeifertMatrix::new(v).expect("unimodular by construction")
            })
    })
}

/// Midpoint Riemann sum of `σ_ω(V)` over `ω = e^{2πiu}`, `u ∈ [0, 1)`,
/// with the signature read off eigenvalues of the real form of the
/// Hermitian matrix `(1 − ω)V + (1 − ω̄)Vᵀ`.
pub fn riemann_rho0(v: &SeifertMatrix, samples: usize) -> f64 {
    let e = v.entries();
    let n = e.len();
    let sym = DMatrix::from_fn(n, n, |i, j| (e[i][j] + e[j][i]) as f64);
    let skew = DMatrix::from_fn(n, n, |i, j| (e[i][j] - e[j][i]) as f64);
    let mut total = 0i64;
    let mut h = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for k in 0..samples {
        let theta = std::f64::consts::TAU * (k as f64 + 0.5) / samples as f64;
        let a = &sym * (1.0 - theta.cos());
        let b = &skew * (-theta.sin());
        h.view_mut((0, 0), (n, n)).copy_from(&a);
        h.view_mut((n, n), (n, n)).copy_from(&a);
        h.view_mut((0, n), (n, n)).copy_from(&(-&b));
        h.view_mut((n, 0), (n, n)).copy_from(&b);
        let eig = h.clone().symmetric_eigenvalues();
        let sig: i64 = eig.iter().map(|&x| if x > 1e-9 { 1 } else if x < -1e-9 { -1 } else { 0 }).sum();
        total += sig / 2;
    }
    total as f64 / samples as f64
}

/// Whether the component primes are pairwise non-associate, so every
/// submodule is a product of divisor chains.
pub fn distinct_primes(m: &AlexModule) -> bool {
    let c = m.components();
    (0..c.len()).all(|i| (i + 1..c.len()).all(|j| !c[i].prime.is_associate(&c[j].prime)))
}

/// All submodules of `⊕ Λ/(pⱼ^eⱼ)` with distinct primes are
/// `⊕ pⱼ^kⱼ·Λ/(pⱼ^eⱼ)`; keep those on whose generators the presentation
/// form `blanchfield_direct` vanishes.
pub fn brute_isotropic(m: &AlexModule) -> Vec<Submodule> {
    let comps = m.components();
    let sizes: Vec<u32> = comps.iter().map(|c| c.exponent + 1).collect();
    let total: u32 = sizes.iter().product();
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut gens = Vec::new();
        for (j, c) in comps.iter().enumerate() {
            let k = idx % sizes[j];
            idx /= sizes[j];
            if k < c.exponent {
                gens.push(m.scale(&c.prime.pow(k), &m.generator(j)));
            }
        }
        let iso = gens.iter().all(|x| gens.iter().all(|y| m.blanchfield_direct(x, y).is_zero()));
        if iso {
            out.push(Submodule::span(m, &gens).unwrap());
        }
    }
    out
}

/// Eisenstein polynomials at `p`: irreducible over ℚ.
pub fn eisenstein_strategy() -> impl Strategy<Value = LaurentPoly> {
    (prop::sample::select(vec![2i64, 3, 5, 7]), 2usize..=7).prop_flat_map(|(p, deg)| {
        (
            proptest::collection::vec(-3i64..=3, deg - 1),
            1i64..=3,
            prop::sample::select(vec![1i64, -1, 2, -2]),
        )
            .prop_map(move |(mid, lead, c0)| {
                let lead = if lead % p == 0 { lead + 1 } else { lead };
                // constant term p·c0 with p ∤ c0
                let c0 = if c0 % p == 0 { c0 + 1 } else { c0 };
                let mut coeffs = vec![p * c0];
                coeffs.extend(mid.iter().map(|c| p * c));
                coeffs.push(lead);
                LaurentPoly::from_ints(0, &coeffs)
            })
    })
}

pub fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    proptest::collection::vec((0..rank, prop::bool::ANY), 0..=max_len).prop_map(move |ls| {
        FreeWord::from_letters(rank, ls.into_iter().map(|(g, inv)| (g, if inv { -1 } else { 1 }))).unwrap()
    })
}

/// `[…[[a, b], c]…]`-style nested commutator of random generators with
/// prescribed nesting depth; lies in `F⁽ᵈ⁾`.
pub fn deep_word(rank: usize, depth: u32, picks: &[usize]) -> FreeWord {
    fn go(rank: usize, depth: u32, picks: &[usize], pos: &mut usize) -> FreeWord {
        if depth == 0 {
            let g = picks[*pos % picks.len()] % rank;
            *pos += 1;
            return FreeWord::generator(rank, g);
        }
        let a = go(rank, depth - 1, picks, pos);
        let b = go(rank, depth - 1, picks, pos);
        FreeWord::commutator(&a, &b)
    }
    go(rank, depth, picks, &mut 0)
}
