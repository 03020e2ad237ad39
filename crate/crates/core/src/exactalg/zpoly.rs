//! Dense integer polynomials and polynomials over 𝔽ₚ, used by the
//! factoriser. Coefficient vectors are ascending and trimmed.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{LaurentPoly, Rational};

pub(crate) type ZPoly = Vec<BigInt>;
pub(crate) type PPoly = Vec<u64>;

pub(crate) fn ztrim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

pub(crate) fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

pub(crate) fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub(crate) fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(f: &[BigInt]) -> ZPoly {
    let mut g = content(f);
    if g.is_zero() {
        return Vec::new();
    }
    if f.last().unwrap().is_negative() {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

/// Exact quotient `f / g` over ℤ, if it exists.
pub(crate) fn zdiv_exact(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    if g.is_empty() || g.len() > f.len() {
        return None;
    }
    if !g[0].is_zero() && !f[0].is_zero() && !(&f[0] % &g[0]).is_zero() {
        return None;
    }
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lg = &g[dg];
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for k in (0..q.len()).rev() {
        let top = &r[k + dg];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lg);
        if !rem.is_zero() {
            return None;
        }
        for (i, gi) in g.iter().enumerate() {
            r[k + i] -= &c * gi;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| ztrim(q))
}

pub(crate) fn to_zpoly(f: &LaurentPoly) -> ZPoly {
    // f normalized: exponents from 0, integer coefficients
    f.to_dense().iter().map(|c| c.to_integer()).collect()
}

pub(crate) fn from_zpoly(f: &[BigInt]) -> LaurentPoly {
    LaurentPoly::from_terms(
        f.iter()
            .enumerate()
            .map(|(i, c)| (i as i64, Rational::from_integer(c.clone()))),
    )
}

pub(crate) fn small_primes(limit: u64) -> Vec<u64> {
    let mut sieve = vec![true; limit as usize + 1];
    let mut out = Vec::new();
    for i in 2..=limit as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// 𝔽ₚ[x]

pub(crate) fn mod_u64(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

pub(crate) fn zpoly_mod(f: &[BigInt], p: u64) -> PPoly {
    ptrim(f.iter().map(|c| mod_u64(c, p)).collect())
}

pub(crate) fn ptrim(mut f: PPoly) -> PPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn padd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    ptrim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

pub(crate) fn psub(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    ptrim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

pub(crate) fn pmul(a: &[u64], b: &[u64], p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ptrim(out)
}

pub(crate) fn pscale(a: &[u64], c: u64, p: u64) -> PPoly {
    ptrim(a.iter().map(|x| x * c % p).collect())
}

pub(crate) fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    assert!(!b.is_empty());
    let mut r = ptrim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] * inv % p;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - c * bi % p) % p;
        }
        q[k] = c;
        r = ptrim(r);
        if r.len() <= db {
            break;
        }
    }
    (ptrim(q), r)
}

pub(crate) fn pmonic(a: &[u64], p: u64) -> PPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => pscale(a, inv_mod(l, p), p),
    }
}

pub(crate) fn pgcd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let (mut x, mut y) = (ptrim(a.to_vec()), ptrim(b.to_vec()));
    while !y.is_empty() {
        let r = pdivrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    pmonic(&x, p)
}

/// `(g, s, t)` with `s·a + t·b = g` monic.
pub(crate) fn pext_gcd(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly, PPoly) {
    let (mut r0, mut r1) = (ptrim(a.to_vec()), ptrim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    (pscale(&r0, inv, p), pscale(&s0, inv, p), pscale(&t0, inv, p))
}

pub(crate) fn pderiv(a: &[u64], p: u64) -> PPoly {
    ptrim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn ppowmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> PPoly {
    let mut acc: PPoly = vec![1];
    let b = pdivrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = pdivrem(&pmul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = pdivrem(&pmul(&acc, &b, p), m, p).1;
        }
    }
    acc
}

/// Complete factorisation of a monic squarefree polynomial over 𝔽ₚ (p odd).
pub(crate) fn factor_mod_p<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<PPoly> {
    let mut out = Vec::new();
    // distinct-degree
    let mut rest = f.to_vec();
    let x: PPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1usize;
    let pb = BigUint::from(p);
    while rest.len() > 2 * d {
        h = ppowmod(&h, &pb, &rest, p);
        let g = pgcd(&psub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            equal_degree(&g, d, p, rng, &mut out);
            rest = pdivrem(&rest, &g, p).0;
            h = pdivrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(pmonic(&rest, p));
    }
    out
}

fn equal_degree<R: Rng>(g: &[u64], d: usize, p: u64, rng: &mut R, out: &mut Vec<PPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(pmonic(g, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: PPoly = ptrim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = psub(&ppowmod(&a, &e, g, p), &[1], p);
        let h = pgcd(&b, g, p);
        if h.len() > 1 && h.len() < g.len() {
            let other = pdivrem(g, &h, p).0;
            equal_degree(&h, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting

fn to_z(a: &[u64]) -> ZPoly {
    a.iter().map(|c| BigInt::from(*c)).collect()
}

fn zmod(f: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn zdiv_scalar(f: &[BigInt], m: &BigInt) -> ZPoly {
    f.iter()
        .map(|c| {
            debug_assert!((c % m).is_zero());
            c / m
        })
        .collect()
}

/// Lifts `f ≡ g·h (mod p)` with `g` monic to `f ≡ G·H (mod p^k)`.
fn hensel_two(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = pext_gcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let pz = BigInt::from(p);
    let mut big_g = to_z(g);
    let mut big_h = to_z(h);
    let mut m = pz.clone();
    for _ in 1..k {
        let diff = zsub(f, &zmul(&big_g, &big_h));
        let e = zpoly_mod(&zdiv_scalar(&zmod(&diff, &(&m * &pz)), &m), p);
        if !e.is_empty() {
            let te = pmul(&t, &e, p);
            let (q, b) = pdivrem(&te, g, p);
            let a = padd(&pmul(&s, &e, p), &pmul(&q, h, p), p);
            let mb: ZPoly = to_z(&b).iter().map(|c| c * &m).collect();
            let ma: ZPoly = to_z(&a).iter().map(|c| c * &m).collect();
            big_g = zadd(&big_g, &mb);
            big_h = zadd(&big_h, &ma);
        }
        m *= &pz;
        big_g = zmod(&big_g, &m);
        big_h = zmod(&big_h, &m);
    }
    (big_g, big_h)
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// Lifts a complete modular factorisation `f ≡ lc·∏uᵢ (mod p)` to monic
/// factors modulo `p^k`.
pub(crate) fn hensel_lift(f: &[BigInt], us: &[PPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(k);
    let mut target = f.to_vec();
    let mut out = Vec::new();
    for i in 0..us.len() - 1 {
        let lc = mod_u64(target.last().unwrap(), p);
        let mut h: PPoly = vec![lc];
        for u in &us[i + 1..] {
            h = pmul(&h, u, p);
        }
        let (g_lift, h_lift) = hensel_two(&target, &us[i], &h, p, k);
        out.push(g_lift);
        target = h_lift;
    }
    // the last factor carries the leading coefficient; make it monic mod p^k
    let lc = target.last().unwrap().clone();
    let inv = lc.modinv(&modulus).expect("leading coefficient invertible mod p^k");
    out.push(zmod(
        &target.iter().map(|c| c * &inv).collect::<ZPoly>(),
        &modulus,
    ));
    out
}

pub(crate) fn symmetric_mod(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    ztrim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

pub(crate) fn norm1(f: &[BigInt]) -> BigInt {
    f.iter().map(|c| c.abs()).sum()
}

pub(crate) fn is_negative_lead(f: &[BigInt]) -> bool {
    f.last().map(|c| c.sign() == Sign::Minus).unwrap_or(false)
}
