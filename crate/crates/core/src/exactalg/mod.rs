//! Exact arithmetic: rationals, Laurent polynomials over ℚ and the torsion
//! quotient ℚ(t)/ℚ[t,t⁻¹] in which Blanchfield pairings take values.

mod factor;
mod fraction;
mod laurent;
pub mod matrix;
mod zpoly;

pub use factor::{factor, factor_with_cap, DEFAULT_DEGREE_CAP};
pub use fraction::FractionModLaurent;
pub use laurent::LaurentPoly;
pub(crate) use laurent::dense_div_rem as laurent_dense_div_rem;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Normalized gcd in ℚ[t,t⁻¹].
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::gcd(a, b)
}

/// Unit normal form (lowest exponent 0, primitive integer content, positive
/// leading coefficient).
pub fn normalize(f: &LaurentPoly) -> LaurentPoly {
    f.normalize()
}
