//! Dense univariate polynomials over ℚ and Sturm-sequence root isolation.

use num_traits::{Signed, Zero};

use crate::exactalg::laurent_dense_div_rem as div_rem;
use crate::exactalg::Rational;

/// Ascending coefficient vector, trimmed.
pub type DPoly = Vec<Rational>;

pub fn trim(mut p: DPoly) -> DPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative(p: &[Rational]) -> DPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
            .collect(),
    )
}

pub fn monic(p: &[Rational]) -> DPoly {
    match p.last() {
        None => Vec::new(),
        Some(l) => p.iter().map(|c| c / l).collect(),
    }
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> DPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = div_rem(&x, &y).1;
        x = y;
        y = r;
    }
    monic(&x)
}

pub fn quo(a: &[Rational], b: &[Rational]) -> DPoly {
    let (q, r) = div_rem(a, b);
    debug_assert!(r.is_empty());
    q
}

/// `p / gcd(p, p')`, made monic.
pub fn squarefree_part(p: &[Rational]) -> DPoly {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return monic(&p);
    }
    monic(&quo(&p, &gcd(&p, &derivative(&p))))
}

pub struct Sturm {
    seq: Vec<DPoly>,
}

impl Sturm {
    pub fn new(p: &[Rational]) -> Self {
        let mut seq = vec![trim(p.to_vec())];
        let d = derivative(p);
        if !d.is_empty() {
            seq.push(d);
            loop {
                let n = seq.len();
                let r = div_rem(&seq[n - 2], &seq[n - 1]).1;
                if r.is_empty() {
                    break;
                }
                seq.push(r.into_iter().map(|c| -c).collect());
            }
        }
        Sturm { seq }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.seq {
            let v = eval(p, x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct roots in `(a, b)`; `a`, `b` must not be roots.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Isolating intervals `(lo, hi)` for the roots of squarefree `p` inside
/// `(a, b)`, sorted ascending. Endpoints are never roots. `p` must not
/// vanish at `a` or `b`.
pub fn isolate(p: &[Rational], a: &Rational, b: &Rational) -> Vec<(Rational, Rational)> {
    let s = Sturm::new(p);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        match s.count(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let c = split_point(p, &lo, &hi);
                stack.push((lo, c.clone()));
                stack.push((c, hi));
            }
        }
    }
    out.sort();
    out
}

/// A non-root strictly inside `(lo, hi)`, as close to the midpoint as the
/// first few dyadic offsets allow.
fn split_point(p: &[Rational], lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    let mid = (lo + hi) / Rational::from_integer(2.into());
    let mut step = &w / Rational::from_integer(8.into());
    loop {
        for c in [mid.clone(), &mid + &step, &mid - &step] {
            if !eval(p, &c).is_zero() {
                return c;
            }
        }
        step = step / Rational::from_integer(3.into());
    }
}

/// Shrinks an isolating interval of a simple root by one bisection step.
/// Returns `Err(c)` if the midpoint `c` is the root itself.
pub fn bisect_root(
    p: &[Rational],
    lo: &Rational,
    hi: &Rational,
) -> Result<(Rational, Rational), Rational> {
    let c = (lo + hi) / Rational::from_integer(2.into());
    let vc = eval(p, &c);
    if vc.is_zero() {
        return Err(c);
    }
    let vl = eval(p, lo);
    if vl.is_positive() == vc.is_positive() {
        Ok((c, hi.clone()))
    } else {
        Ok((lo.clone(), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn poly(c: &[i64]) -> DPoly {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn counts_and_isolates() {
        // (x-1)(x+1/2)(x-3/2) scaled: 4x^3 - 8x^2 + x + 3 → roots -1/2, 1, 3/2
        let p = poly(&[3, 1, -8, 4]);
        let s = Sturm::new(&p);
        assert_eq!(s.count(&int(-2), &int(2)), 3);
        assert_eq!(s.count(&rat(1, 10), &int(2)), 2);
        let iv = isolate(&p, &int(-2), &int(2));
        assert_eq!(iv.len(), 3);
        for ((lo, hi), r) in iv.iter().zip([rat(-1, 2), int(1), rat(3, 2)]) {
            assert!(lo < &r && &r < hi);
        }
    }

    #[test]
    fn squarefree_part_drops_repeats() {
        // (x-1)^2 (x+2)
        let p = poly(&[2, -3, 0, 1]);
        assert_eq!(squarefree_part(&p), poly(&[-2, 1, 1]));
    }

    #[test]
    fn bisection_hits_rational_roots() {
        let p = poly(&[-1, 1]);
        assert_eq!(bisect_root(&p, &int(0), &int(2)), Err(int(1)));
    }
}
