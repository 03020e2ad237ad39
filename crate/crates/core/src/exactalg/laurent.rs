use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::Rational;

/// Laurent polynomial in `t` with rational coefficients.
///
/// Stored sparsely; zero coefficients are never kept, so the zero polynomial
/// is the empty map and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds `Σ coeffs[i]·t^(lowest + i)` from integer coefficients.
    pub fn from_ints(lowest: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (lowest + i as i64, Rational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    /// Dense ascending coefficients, interpreted as a polynomial with
    /// exponents `0..len`.
    pub fn from_dense(coeffs: &[Rational]) -> Self {
        Self::from_terms(coeffs.iter().cloned().enumerate().map(|(i, c)| (i as i64, c)))
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units of ℚ[t,t⁻¹] are the nonzero monomials `c·tᵏ`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Euclidean size in ℚ[t,t⁻¹]: `max_exp - min_exp` (0 for units).
    pub fn span(&self) -> usize {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => (b - a) as usize,
            _ => 0,
        }
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms.values().next_back().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn trailing_coeff(&self) -> Rational {
        self.terms.values().next().cloned().unwrap_or_else(Rational::zero)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The involution `f(t) ↦ f(t⁻¹)`.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a rational point. Panics on `t = 0` when negative powers
    /// are present.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                assert!(!x.is_zero(), "evaluating a Laurent polynomial with negative powers at 0");
                num_traits::pow(x.recip(), (-*e) as usize)
            };
            acc += c * p;
        }
        acc
    }

    /// Dense coefficient vector of `t^(-min_exp)·f` (ascending), i.e. the
    /// polynomial part with the `t`-power stripped. Empty for zero.
    pub fn to_dense(&self) -> Vec<Rational> {
        let Some(lo) = self.min_exp() else {
            return Vec::new();
        };
        let hi = self.max_exp().unwrap();
        let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            out[(e - lo) as usize] = c.clone();
        }
        out
    }

    /// True if every exponent is non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 0)
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| **e != 0)
                .map(|(e, c)| (e - 1, c * Rational::from_integer(BigInt::from(*e)))),
        )
    }

    /// Unit normal form: lowest exponent 0, integer coefficients with gcd 1,
    /// positive leading coefficient. Two polynomials are associates exactly
    /// when their normal forms coincide.
    pub fn normalize(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<(i64, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (e - lo, (c * Rational::from_integer(den_lcm.clone())).to_integer()))
            .collect();
        let mut g = BigInt::zero();
        for (_, c) in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().1.is_negative() {
            g = -g;
        }
        Self {
            terms: ints
                .into_iter()
                .map(|(e, c)| (e, Rational::from_integer(c / &g)))
                .collect(),
        }
    }

    pub fn is_associate(&self, other: &Self) -> bool {
        self.normalize() == other.normalize()
    }

    /// Euclidean division in ℚ[t,t⁻¹]: `self = q·d + r` with
    /// `span(r) < span(d)` (and `r = 0` when `d` is a unit).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        let Some(ma) = self.min_exp() else {
            return (Self::zero(), Self::zero());
        };
        let md = d.min_exp().unwrap();
        let a = self.to_dense();
        let b = d.to_dense();
        let (q, r) = dense_div_rem(&a, &b);
        let q = Self::from_dense(&q).shift(ma - md);
        let r = Self::from_dense(&r).shift(ma);
        (q, r)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// `self / d` when the division is exact in ℚ[t,t⁻¹].
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Normalized greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.normalize()
    }

    /// Extended gcd: returns `(g, s, u)` with `s·a + u·b = g`, `g` normalized.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut u0, mut u1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let u2 = &u0 - &(&q * &u1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            u0 = u1;
            u1 = u2;
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let g = r0.normalize();
        // r0 = c·t^k·g
        let k = r0.min_exp().unwrap();
        let c = r0.trailing_coeff() / g.trailing_coeff();
        let inv = Self::monomial(c.recip(), -k);
        (g, &s0 * &inv, &u0 * &inv)
    }

    pub fn lcm(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        let g = Self::gcd(a, b);
        (a * b).exact_div(&g).unwrap().normalize()
    }

    /// Inverse of `self` modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = Self::ext_gcd(self, m);
        g.is_one().then(|| s.rem(m))
    }

    /// Canonical representative of the class of `self` in ℚ[t,t⁻¹]/(q): the
    /// unique polynomial of degree below `span(q)`. Zero when `q` is a unit.
    pub fn residue(&self, q: &Self) -> Self {
        let q = q.normalize();
        if q.span() == 0 || self.is_zero() {
            return Self::zero();
        }
        let qd = q.to_dense();
        let rem = |f: &Self| -> Self {
            debug_assert!(f.is_polynomial());
            let hi = f.max_exp().unwrap_or(0).max(0);
            let dense: Vec<Rational> = (0..=hi).map(|e| f.coeff(e)).collect();
            Self::from_dense(&dense_div_rem(&dense, &qd).1)
        };
        let lo = self.min_exp().unwrap();
        let mut r = rem(&self.shift(-lo));
        // t⁻¹ ≡ −(q − q(0))/(q(0)·t) modulo q
        let step = if lo >= 0 {
            Self::t()
        } else {
            let q0 = q.coeff(0);
            (&q - &Self::constant(q0.clone())).shift(-1).scale(&(-q0.recip()))
        };
        for _ in 0..lo.unsigned_abs() {
            r = rem(&(&r * &step));
        }
        r
    }

    /// Total order used for deterministic output: by span, then by the
    /// coefficient sequence from the lowest exponent upwards.
    pub fn sort_key(&self) -> (usize, Vec<Rational>) {
        (self.span(), self.to_dense())
    }

    pub fn to_f64_coeffs(&self) -> Vec<(i64, f64)> {
        self.terms
            .iter()
            .map(|(e, c)| (*e, c.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }
}

/// Polynomial long division on dense ascending vectors.
pub(crate) fn dense_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r: Vec<Rational> = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lb;
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            r[k + i] -= t;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match *e {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                let f: fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let mut out = a.clone();
    for (e, c) in &b.terms {
        out.add_term(*e, c.clone());
    }
    out
});

binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    for (e, c) in &b.terms {
        out.add_term(*e, -c.clone());
    }
    out
});

binop!(Mul, mul, |a, b| {
    let mut out = LaurentPoly::zero();
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            out.add_term(ea + eb, ca * cb);
        }
    }
    out
});

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

// JSON: sparse list of [exponent, [numerator, denominator]] pairs, highest
// exponent first. Integers outside the i64 range are written as strings.

fn bigint_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn json_bigint(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("non-integer coefficient {n}")),
        serde_json::Value::String(s) => s.parse::<BigInt>().map_err(|e| e.to_string()),
        other => Err(format!("expected integer, got {other}")),
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            let pair = serde_json::json!([e, [bigint_json(c.numer()), bigint_json(c.denom())]]);
            seq.serialize_element(&pair)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        LaurentPoly::from_json(&v).map_err(de::Error::custom)
    }
}

impl LaurentPoly {
    /// Parses the sparse JSON form. A bare integer is accepted as a constant.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        if let Some(c) = v.as_i64() {
            return Ok(Self::from(c));
        }
        let arr = v
            .as_array()
            .ok_or_else(|| format!("expected Laurent polynomial term list, got {v}"))?;
        let mut out = Self::zero();
        for term in arr {
            let pair = term
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| format!("expected [exp, [num, den]], got {term}"))?;
            let e = pair[0]
                .as_i64()
                .ok_or_else(|| format!("bad exponent {}", pair[0]))?;
            let c = match &pair[1] {
                serde_json::Value::Array(nd) if nd.len() == 2 => {
                    let n = json_bigint(&nd[0])?;
                    let d = json_bigint(&nd[1])?;
                    if d.is_zero() {
                        return Err("zero denominator".into());
                    }
                    Rational::new(n, d)
                }
                other => Rational::from_integer(json_bigint(other)?),
            };
            out.add_term(e, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn p() -> LaurentPoly {
        LaurentPoly::from_ints(0, &[-1, 1, -2, 1])
    }
    fn q() -> LaurentPoly {
        LaurentPoly::from_ints(0, &[-1, 2, -1, 1])
    }

    #[test]
    fn residues_are_canonical() {
        let q = LaurentPoly::from_ints(0, &[-2, 1]);
        // classes mod (t − 2) are values at 2
        let f = LaurentPoly::from_ints(-2, &[1, 0, 3, 1]);
        assert_eq!(f.residue(&q), LaurentPoly::constant(f.eval(&super::super::int(2))));
        let p = LaurentPoly::from_ints(0, &[-1, 1, -2, 1]);
        let g = LaurentPoly::from_ints(-5, &[1, 2, 0, 0, 0, 0, 0, 0, 7]);
        let r = g.residue(&p);
        assert!(r.is_polynomial() && r.max_exp().unwrap() < 3);
        assert!(p.divides(&(&g - &r)));
        assert!(g.residue(&LaurentPoly::one()).is_zero());
    }

    #[test]
    fn normalize_examples() {
        // −(2t−1)(t−2) → 2t² − 5t + 2
        let f = -(LaurentPoly::from_ints(0, &[-1, 2]) * LaurentPoly::from_ints(0, &[-2, 1]));
        assert_eq!(f.normalize(), LaurentPoly::from_ints(0, &[2, -5, 2]));
        assert_eq!(p().shift(-3).normalize(), p());
        assert!(LaurentPoly::zero().normalize().is_zero());
        // rational content is cleared
        let g = LaurentPoly::from_terms([(2, rat(-1, 2)), (3, rat(1, 3))]);
        assert_eq!(g.normalize(), LaurentPoly::from_ints(0, &[-3, 2]));
    }

    #[test]
    fn gcd_examples() {
        let a = LaurentPoly::from_ints(0, &[-2, 1]);
        let b = LaurentPoly::from_ints(0, &[-1, 2]);
        assert!(LaurentPoly::gcd(&a, &b).is_one());
        assert_eq!(LaurentPoly::gcd(&(p() * q()), &p()), p());
        assert_eq!(LaurentPoly::gcd(&LaurentPoly::zero(), &b.shift(4)), b);
    }

    #[test]
    fn div_rem_is_euclidean() {
        let a = LaurentPoly::from_ints(-3, &[1, 0, 5, -2, 7]);
        let d = LaurentPoly::from_ints(2, &[3, 1, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.span() < d.span());
        let (q, r) = a.div_rem(&LaurentPoly::monomial(int(3), 5));
        assert!(r.is_zero());
        assert_eq!(q * LaurentPoly::monomial(int(3), 5), a);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p().shift(2);
        let b = q().shift(-1);
        let (g, s, u) = LaurentPoly::ext_gcd(&a, &b);
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&u * &b), g);
        assert_eq!(
            (p().inverse_mod(&q()).unwrap() * p()).rem(&q()),
            LaurentPoly::one()
        );
    }

    #[test]
    fn conj_and_eval() {
        let f = LaurentPoly::from_ints(0, &[1, -1, 1]);
        assert_eq!(f.eval(&int(-1)), int(3));
        assert_eq!(f.conj().normalize(), f);
        assert_eq!(p().conj().normalize(), q());
    }

    #[test]
    fn json_form() {
        let v = serde_json::to_value(p()).unwrap();
        assert_eq!(v, serde_json::json!([[3, [1, 1]], [2, [-2, 1]], [1, [1, 1]], [0, [-1, 1]]]));
        let back: LaurentPoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, p());
        assert_eq!(LaurentPoly::from_json(&serde_json::json!(3)).unwrap(), LaurentPoly::from(3));
    }

    #[test]
    fn display() {
        assert_eq!(p().to_string(), "t^3 - 2*t^2 + t - 1");
        assert_eq!(LaurentPoly::from_terms([(-1, rat(1, 2))]).to_string(), "1/2*t^-1");
    }
}
