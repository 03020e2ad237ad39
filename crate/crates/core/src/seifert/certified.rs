//! Certified real enclosures, and rigorous bounds for arccos(y)/π.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::exactalg::{rat, Rational};

/// A real number known to lie in `[midpoint − radius, midpoint + radius]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedReal {
    pub midpoint: Rational,
    pub radius: Rational,
}

impl CertifiedReal {
    pub fn exact(q: Rational) -> Self {
        CertifiedReal { midpoint: q, radius: Rational::zero() }
    }

    pub fn from_bounds(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        let two = Rational::from_integer(2.into());
        CertifiedReal { midpoint: (&lo + &hi) / &two, radius: (hi - lo) / two }
    }

    pub fn lo(&self) -> Rational {
        &self.midpoint - &self.radius
    }

    pub fn hi(&self) -> Rational {
        &self.midpoint + &self.radius
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo() <= q && q <= &self.hi()
    }

    pub fn contains_f64(&self, x: f64, slack: f64) -> bool {
        let lo = self.lo().to_f64().unwrap();
        let hi = self.hi().to_f64().unwrap();
        lo - slack <= x && x <= hi + slack
    }

    /// `self ⊆ other`.
    pub fn subset_of(&self, other: &CertifiedReal) -> bool {
        other.lo() <= self.lo() && self.hi() <= other.hi()
    }

    /// True when zero is provably excluded.
    pub fn is_certainly_nonzero(&self) -> bool {
        self.midpoint.abs() > self.radius
    }

    /// `|x| > c` holds for every point of the enclosure.
    pub fn abs_certainly_greater(&self, c: &Rational) -> bool {
        self.lo() > *c || self.hi() < -c
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CertifiedReal { midpoint: &self.midpoint * c, radius: &self.radius * c.abs() }
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for &CertifiedReal {
    type Output = CertifiedReal;
    fn add(self, o: &CertifiedReal) -> CertifiedReal {
        CertifiedReal { midpoint: &self.midpoint + &o.midpoint, radius: &self.radius + &o.radius }
    }
}

impl Sub for &CertifiedReal {
    type Output = CertifiedReal;
    fn sub(self, o: &CertifiedReal) -> CertifiedReal {
        CertifiedReal { midpoint: &self.midpoint - &o.midpoint, radius: &self.radius + &o.radius }
    }
}

impl Neg for &CertifiedReal {
    type Output = CertifiedReal;
    fn neg(self) -> CertifiedReal {
        CertifiedReal { midpoint: -&self.midpoint, radius: self.radius.clone() }
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mid = self.midpoint.to_f64().unwrap_or(f64::NAN);
        let rad = self.radius.to_f64().unwrap_or(f64::NAN);
        write!(f, "{mid:.9} ± {rad:.1e}")
    }
}

impl Serialize for CertifiedReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CertifiedReal", 4)?;
        st.serialize_field("midpoint", &self.midpoint.to_string())?;
        st.serialize_field("radius", &self.radius.to_string())?;
        st.serialize_field("midpoint_f64", &self.midpoint.to_f64())?;
        st.serialize_field("radius_f64", &self.radius.to_f64())?;
        st.end()
    }
}

// ---------------------------------------------------------------------------
// Fixed-point interval arithmetic: a value `x` is enclosed by
// `[lo, hi]·2^(-prec)` with outward rounding on every operation.

#[derive(Clone, Debug)]
struct Iv {
    lo: BigInt,
    hi: BigInt,
}

fn floor_div(a: &BigInt, d: &BigInt) -> BigInt {
    a.div_floor(d)
}

fn ceil_div(a: &BigInt, d: &BigInt) -> BigInt {
    -((-a).div_floor(d))
}

struct Fixed {
    prec: u32,
    unit: BigInt,
}

impl Fixed {
    fn new(prec: u32) -> Self {
        Fixed { prec, unit: BigInt::one() << prec }
    }

    fn int(&self, n: i64) -> Iv {
        let v = BigInt::from(n) << self.prec;
        Iv { lo: v.clone(), hi: v }
    }

    fn add(&self, a: &Iv, b: &Iv) -> Iv {
        Iv { lo: &a.lo + &b.lo, hi: &a.hi + &b.hi }
    }

    fn sub(&self, a: &Iv, b: &Iv) -> Iv {
        Iv { lo: &a.lo - &b.hi, hi: &a.hi - &b.lo }
    }

    fn mul(&self, a: &Iv, b: &Iv) -> Iv {
        let ps = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let mn = ps.iter().min().unwrap();
        let mx = ps.iter().max().unwrap();
        Iv { lo: floor_div(mn, &self.unit), hi: ceil_div(mx, &self.unit) }
    }

    fn div_int(&self, a: &Iv, n: u64) -> Iv {
        let d = BigInt::from(n);
        Iv { lo: floor_div(&a.lo, &d), hi: ceil_div(&a.hi, &d) }
    }

    fn mul_int(&self, a: &Iv, n: i64) -> Iv {
        let (x, y) = (&a.lo * n, &a.hi * n);
        if n >= 0 {
            Iv { lo: x, hi: y }
        } else {
            Iv { lo: y, hi: x }
        }
    }

    /// Multiplication by a non-negative rational.
    fn mul_rat(&self, a: &Iv, q: &Rational) -> Iv {
        debug_assert!(!q.is_negative());
        Iv {
            lo: floor_div(&(&a.lo * q.numer()), q.denom()),
            hi: ceil_div(&(&a.hi * q.numer()), q.denom()),
        }
    }

    /// arctan(1/n) by its alternating series.
    fn atan_inv(&self, n: u64) -> Iv {
        let one = self.int(1);
        let mut pw = self.div_int(&one, n);
        let n2 = n * n;
        let mut sum = Iv { lo: BigInt::zero(), hi: BigInt::zero() };
        let mut k = 0u64;
        loop {
            let term = self.div_int(&pw, 2 * k + 1);
            sum = if k % 2 == 0 { self.add(&sum, &term) } else { self.sub(&sum, &term) };
            pw = self.div_int(&pw, n2);
            k += 1;
            if pw.hi <= BigInt::one() {
                break;
            }
        }
        let tail = self.div_int(&pw, 2 * k + 1).hi + 1;
        Iv { lo: sum.lo - &tail, hi: sum.hi + &tail }
    }

    /// π = 16·arctan(1/5) − 4·arctan(1/239).
    fn pi(&self) -> Iv {
        self.sub(
            &self.mul_int(&self.atan_inv(5), 16),
            &self.mul_int(&self.atan_inv(239), 4),
        )
    }

    /// cos on an interval inside [0, π] via the Taylor series. From the
    /// second term on the series alternates with decreasing terms, so the
    /// next term bounds the tail.
    fn cos(&self, z: &Iv) -> Iv {
        let z2 = self.mul(z, z);
        let mut term = self.int(1);
        let mut sum = term.clone();
        let mut k = 1u64;
        let eps = BigInt::from(4);
        loop {
            term = self.div_int(&self.mul(&term, &z2), (2 * k - 1) * (2 * k));
            sum = if k % 2 == 0 { self.add(&sum, &term) } else { self.sub(&sum, &term) };
            k += 1;
            if term.hi <= eps {
                let next = self.div_int(&self.mul(&term, &z2), (2 * k - 1) * (2 * k));
                return Iv { lo: sum.lo - &next.hi, hi: sum.hi + &next.hi };
            }
        }
    }

    fn lt_rat(&self, a: &BigInt, y: &Rational) -> bool {
        // a·2^-prec < y
        a * y.denom() < (y.numer() << self.prec)
    }

    fn gt_rat(&self, a: &BigInt, y: &Rational) -> bool {
        a * y.denom() > (y.numer() << self.prec)
    }
}

/// Rigorous bounds `(lo, hi)` with `lo ≤ arccos(y)/π ≤ hi` and
/// `hi − lo ≤ width`, for rational `y ∈ [−1, 1]`.
///
/// The three rational values of arccos(y)/π at rational y in (−1, 1)
/// (y = 0, ±1/2) are returned exactly.
pub fn acos_over_pi(y: &Rational, width: &Rational) -> (Rational, Rational) {
    assert!(y.abs() <= Rational::one(), "acos argument outside [-1, 1]");
    for (yy, u) in [
        (Rational::one(), Rational::zero()),
        (-Rational::one(), Rational::one()),
        (Rational::zero(), rat(1, 2)),
        (rat(1, 2), rat(1, 3)),
        (rat(-1, 2), rat(2, 3)),
    ] {
        if *y == yy {
            return (u.clone(), u);
        }
    }
    let mut prec = 64 + bits_for(width);
    let mut fx = Fixed::new(prec);
    let mut pi = fx.pi();
    let (mut a, mut b) = (Rational::zero(), Rational::one());
    let two = Rational::from_integer(2.into());
    while &b - &a > *width {
        let m = (&a + &b) / &two;
        loop {
            let c = fx.cos(&fx.mul_rat(&pi, &m));
            // cos is decreasing on [0, π]
            if fx.gt_rat(&c.lo, y) {
                a = m;
                break;
            }
            if fx.lt_rat(&c.hi, y) {
                b = m;
                break;
            }
            prec += 32;
            fx = Fixed::new(prec);
            pi = fx.pi();
        }
    }
    (a, b)
}

/// Number of binary digits needed to resolve `w`.
pub(crate) fn bits_for(w: &Rational) -> u32 {
    if !w.is_positive() {
        return 64;
    }
    let ratio = w.denom().bits() as i64 - w.numer().bits() as i64;
    ratio.max(0) as u32 + 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_enclosure() {
        let fx = Fixed::new(128);
        let p = fx.pi();
        let lo = Rational::new(p.lo.clone(), BigInt::one() << 128);
        let hi = Rational::new(p.hi.clone(), BigInt::one() << 128);
        assert!(lo.to_f64().unwrap() <= std::f64::consts::PI + 1e-15);
        assert!(hi.to_f64().unwrap() >= std::f64::consts::PI - 1e-15);
        assert!(&hi - &lo < rat(1, 1 << 40));
        // 355/113 overshoots π by about 2.7e-7
        assert!(hi < rat(355, 113));
    }

    #[test]
    fn acos_bounds_bracket_f64() {
        for (n, d) in [(1, 3), (-7, 10), (9, 10), (-1, 100), (99, 100)] {
            let y = rat(n, d);
            let w = rat(1, 1_000_000_000_000);
            let (lo, hi) = acos_over_pi(&y, &w);
            assert!(&hi - &lo <= w);
            let f = (y.to_f64().unwrap()).acos() / std::f64::consts::PI;
            assert!(lo.to_f64().unwrap() <= f + 1e-12 && f - 1e-12 <= hi.to_f64().unwrap());
        }
        assert_eq!(acos_over_pi(&rat(1, 2), &rat(1, 10)), (rat(1, 3), rat(1, 3)));
    }

    #[test]
    fn certified_real_ops() {
        let a = CertifiedReal::from_bounds(rat(1, 2), rat(3, 2));
        let b = CertifiedReal::exact(rat(-1, 1));
        let s = &a + &b;
        assert!(s.contains(&rat(0, 1)));
        assert!(!s.is_certainly_nonzero());
        assert!(a.is_certainly_nonzero());
        assert!(a.abs_certainly_greater(&rat(1, 3)));
        assert!(!a.abs_certainly_greater(&rat(1, 2)));
        assert_eq!(format!("{}", CertifiedReal::exact(rat(-4, 3))), "-1.333333333 ± 0.0e0");
    }
}
