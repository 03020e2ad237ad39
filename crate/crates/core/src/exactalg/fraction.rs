use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{LaurentPoly, Rational};

/// An element of ℚ(t)/ℚ[t,t⁻¹], the target of the classical Blanchfield form.
///
/// Canonical representative: `num/den` with `den` a monic polynomial with
/// nonzero constant term, `num` a polynomial of degree `< deg den`, and
/// `gcd(num, den) = 1`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FractionModLaurent {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl FractionModLaurent {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    /// Reduces `num/den` modulo ℚ[t,t⁻¹]. Panics if `den` is zero.
    pub fn new(num: &LaurentPoly, den: &LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() || den.is_unit() {
            return Self::zero();
        }
        // den = c·t^k·D with D(0) ≠ 0; fold the unit c·t^k into the numerator.
        let k = den.min_exp().unwrap();
        let d = den.shift(-k);
        let lc = d.leading_coeff();
        let d = d.scale(&lc.recip());
        let n = num.shift(-k).scale(&lc.recip());

        // t is invertible modulo D since D(0) ≠ 0.
        let m = n.min_exp().unwrap();
        let mut acc = poly_rem(&n.shift(-m), &d);
        if m >= 0 {
            acc = poly_rem(&acc.shift(m), &d);
        } else {
            let d0 = d.coeff(0);
            // t·(-(D - D(0))/(t·D(0))) ≡ 1 mod D
            let tinv = (&d - &LaurentPoly::constant(d0.clone()))
                .shift(-1)
                .scale(&(-d0.recip()));
            for _ in 0..(-m) {
                acc = poly_rem(&(&acc * &tinv), &d);
            }
        }
        if acc.is_zero() {
            return Self::zero();
        }
        let g = LaurentPoly::gcd(&acc, &d);
        let d = d.exact_div(&g).unwrap();
        let acc = acc.exact_div(&g).unwrap();
        let lc = d.leading_coeff();
        let d = d.scale(&lc.recip());
        let acc = acc.scale(&lc.recip());
        if d.span() == 0 {
            return Self::zero();
        }
        Self { num: acc, den: d }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Module action of ℚ[t,t⁻¹].
    pub fn mul_laurent(&self, f: &LaurentPoly) -> Self {
        Self::new(&(&self.num * f), &self.den)
    }

    pub fn conj(&self) -> Self {
        Self::new(&self.num.conj(), &self.den.conj())
    }
}

/// Remainder of an ordinary polynomial (non-negative exponents) by `d`.
fn poly_rem(a: &LaurentPoly, d: &LaurentPoly) -> LaurentPoly {
    debug_assert!(a.is_polynomial() && d.is_polynomial());
    if a.is_zero() {
        return LaurentPoly::zero();
    }
    let hi = a.max_exp().unwrap();
    let dense: Vec<Rational> = (0..=hi).map(|e| a.coeff(e)).collect();
    let dd: Vec<Rational> = (0..=d.max_exp().unwrap()).map(|e| d.coeff(e)).collect();
    let (_, rem) = super::laurent::dense_div_rem(&dense, &dd);
    LaurentPoly::from_dense(&rem)
}

impl Add for &FractionModLaurent {
    type Output = FractionModLaurent;
    fn add(self, rhs: &FractionModLaurent) -> FractionModLaurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        FractionModLaurent::new(&num, &(&self.den * &rhs.den))
    }
}

impl Add for FractionModLaurent {
    type Output = FractionModLaurent;
    fn add(self, rhs: FractionModLaurent) -> FractionModLaurent {
        &self + &rhs
    }
}

impl Neg for &FractionModLaurent {
    type Output = FractionModLaurent;
    fn neg(self) -> FractionModLaurent {
        if self.is_zero() {
            return self.clone();
        }
        FractionModLaurent {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &FractionModLaurent {
    type Output = FractionModLaurent;
    fn sub(self, rhs: &FractionModLaurent) -> FractionModLaurent {
        self + &(-rhs)
    }
}

impl Zero for FractionModLaurent {
    fn zero() -> Self {
        FractionModLaurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for FractionModLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for FractionModLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for FractionModLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::json!({ "num": self.num, "den": self.den }).serialize(s)
    }
}
