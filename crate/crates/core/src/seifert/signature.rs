use std::fmt::Write as _;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::certified::{acos_over_pi, CertifiedReal};
use super::hermitian::{signature, Gauss};
use super::sturm::{self, DPoly};
use super::SeifertMatrix;
use crate::exactalg::{int, Rational};
use crate::{Error, Result};

/// A real algebraic number `x ∈ (−2, 2)`, the unique root of `poly` in the
/// closed interval `[lo, hi]` (a point when `lo == hi`). The associated
/// angle is `θ = arccos(x/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicAbscissa {
    pub poly: DPoly,
    pub lo: Rational,
    pub hi: Rational,
}

impl AlgebraicAbscissa {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn approx(&self) -> f64 {
        ((&self.lo + &self.hi) / int(2)).to_f64().unwrap()
    }

    fn refine(&mut self) {
        if self.is_exact() {
            return;
        }
        match sturm::bisect_root(&self.poly, &self.lo, &self.hi) {
            Ok((lo, hi)) => {
                self.lo = lo;
                self.hi = hi;
            }
            Err(c) => {
                self.lo = c.clone();
                self.hi = c;
            }
        }
    }

    fn refine_to(&mut self, w: &Rational) {
        while &self.hi - &self.lo > *w {
            self.refine();
        }
    }

    /// Bounds on `θ/π` with width roughly `w`.
    fn angle_fraction_bounds(&mut self, w: &Rational) -> (Rational, Rational) {
        self.refine_to(w);
        let two = int(2);
        if self.is_exact() {
            return acos_over_pi(&(&self.lo / &two), w);
        }
        let lo = acos_over_pi(&(&self.hi / &two), w).0;
        let hi = acos_over_pi(&(&self.lo / &two), w).1;
        (lo, hi)
    }
}

/// A jump of the signature function at `e^{±iθ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jump {
    pub abscissa: AlgebraicAbscissa,
    /// `θ ∈ (0, π)` when true, the conjugate `2π − θ` otherwise.
    pub upper_half: bool,
}

impl Jump {
    /// Approximate position as a fraction of the full turn.
    pub fn fraction_f64(&self) -> f64 {
        let u = (self.abscissa.approx() / 2.0).clamp(-1.0, 1.0).acos() / std::f64::consts::PI;
        if self.upper_half {
            u / 2.0
        } else {
            1.0 - u / 2.0
        }
    }
}

/// The Levine-Tristram signature function, piecewise constant on the circle.
///
/// Only the upper half circle is stored; values on the lower half follow by
/// conjugation symmetry.
#[derive(Clone, Debug)]
pub struct SignatureFunction {
    /// Roots of Δ on the open upper half circle, in order of increasing θ.
    roots: Vec<AlgebraicAbscissa>,
    /// σ on the upper arcs `(0, θ₁), (θ₁, θ₂), …, (θ_r, π)`.
    arc_values: Vec<i64>,
    /// Rational tangent parameter `s = tan(θ/2)` of the sample in each arc.
    arc_samples: Vec<Rational>,
}

/// Exact σ at `ω = ((1 − s²) + 2is)/(1 + s²)`, for rational `s > 0`.
///
/// After scaling by the positive factor `(1 + s²)/2s` the Hermitian form
/// becomes `s(V + Vᵀ) + i(Vᵀ − V)`.
pub fn signature_at_tangent(v: &SeifertMatrix, s: &Rational) -> i64 {
    let e = v.entries();
    let n = e.len();
    let h = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| Gauss::new(s * int(e[j][k] + e[k][j]), int(e[k][j] - e[j][k])))
                .collect()
        })
        .collect();
    signature(h)
}

fn x_of_tangent(s: &Rational) -> Rational {
    let s2 = s * s;
    int(2) * (Rational::one() - &s2) / (Rational::one() + s2)
}

/// A rational `s > 0` with `lo < x(s) < hi`; `x` decreases from 2 to −2.
fn tangent_between(lo: &Rational, hi: &Rational) -> Rational {
    let mut a = Rational::zero();
    let mut b = Rational::one();
    while x_of_tangent(&b) >= *hi {
        a = b.clone();
        b = &b * int(2);
    }
    loop {
        let xb = x_of_tangent(&b);
        if xb > *lo && xb < *hi {
            return b;
        }
        let m = (&a + &b) / int(2);
        let xm = x_of_tangent(&m);
        if xm >= *hi {
            a = m;
        } else if xm <= *lo {
            b = m;
        } else {
            return m;
        }
    }
}

/// Δ(t)·t^{−g} written as a polynomial in `x = t + t⁻¹`.
fn x_polynomial(v: &SeifertMatrix) -> DPoly {
    let raw = v.alexander_det();
    let g = v.genus() as i64;
    let a: Vec<Rational> = (0..=g).map(|k| raw.coeff(g + k)).collect();
    debug_assert!((0..=g).all(|k| raw.coeff(g + k) == raw.coeff(g - k)));
    // P_0 = 2, P_1 = x, P_{k+1} = x·P_k − P_{k−1}, and P_k = t^k + t^{−k}
    let mut q: DPoly = vec![a[0].clone()];
    let mut prev: DPoly = vec![int(2)];
    let mut cur: DPoly = vec![int(0), int(1)];
    for ak in a.iter().skip(1) {
        add_scaled(&mut q, &cur, ak);
        let mut next: DPoly = std::iter::once(Rational::zero()).chain(cur.iter().cloned()).collect();
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    sturm::trim(q)
}

fn add_scaled(acc: &mut DPoly, p: &[Rational], c: &Rational) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Rational::zero());
    }
    for (i, x) in p.iter().enumerate() {
        acc[i] += x * c;
    }
}

impl SignatureFunction {
    pub(crate) fn compute(v: &SeifertMatrix) -> Self {
        let q = x_polynomial(v);
        let mut roots: Vec<AlgebraicAbscissa> = Vec::new();
        if q.len() > 1 {
            let mut rest = sturm::squarefree_part(&q);
            for c in [int(1), int(0), int(-1)] {
                if sturm::eval(&rest, &c).is_zero() {
                    rest = sturm::quo(&rest, &[-c.clone(), Rational::one()]);
                    roots.push(AlgebraicAbscissa {
                        poly: vec![-c.clone(), Rational::one()],
                        lo: c.clone(),
                        hi: c,
                    });
                }
            }
            if rest.len() > 1 {
                let exact: Vec<Rational> = roots.iter().map(|r| r.lo.clone()).collect();
                for (lo, hi) in sturm::isolate(&rest, &int(-2), &int(2)) {
                    let mut a = AlgebraicAbscissa { poly: rest.clone(), lo, hi };
                    // keep isolating intervals clear of the rational roots split off above
                    while exact.iter().any(|c| a.lo <= *c && *c <= a.hi) {
                        a.refine();
                    }
                    roots.push(a);
                }
            }
        }
        // θ increases as x decreases
        roots.sort_by(|a, b| b.lo.cmp(&a.lo));
        separate(&mut roots);

        let r = roots.len();
        let mut arc_samples = Vec::with_capacity(r + 1);
        for k in 0..=r {
            let hi = if k == 0 { int(2) } else { roots[k - 1].lo.clone() };
            let lo = if k == r { int(-2) } else { roots[k].hi.clone() };
            arc_samples.push(tangent_between(&lo, &hi));
        }
        let arc_values: Vec<i64> = arc_samples.iter().map(|s| signature_at_tangent(v, s)).collect();
        debug_assert_eq!(arc_values[0], 0);
        SignatureFunction { roots, arc_values, arc_samples }
    }

    /// Jump locus in `(0, 2π)`, ordered by angle.
    pub fn jumps(&self) -> Vec<Jump> {
        let upper = self.roots.iter().map(|a| Jump { abscissa: a.clone(), upper_half: true });
        let lower = self.roots.iter().rev().map(|a| Jump { abscissa: a.clone(), upper_half: false });
        upper.chain(lower).collect()
    }

    /// Values on the open arcs between consecutive jumps, starting at the
    /// arc leaving ω = 1 counter-clockwise.
    pub fn values(&self) -> Vec<i64> {
        let r = self.roots.len();
        self.arc_values
            .iter()
            .cloned()
            .chain(self.arc_values[..r].iter().rev().cloned())
            .collect()
    }

    pub fn value_at_one(&self) -> i64 {
        0
    }

    pub fn upper_roots(&self) -> &[AlgebraicAbscissa] {
        &self.roots
    }

    pub fn upper_arc_values(&self) -> &[i64] {
        &self.arc_values
    }

    pub fn arc_samples(&self) -> &[Rational] {
        &self.arc_samples
    }

    pub fn is_identically_zero(&self) -> bool {
        self.arc_values.iter().all(|&v| v == 0)
    }

    /// σ at `e^{2πiu}` using approximate jump positions; only meaningful
    /// away from the jumps.
    pub fn value_at_fraction(&self, u: f64) -> i64 {
        let u = u.rem_euclid(1.0);
        if u == 0.0 {
            return 0;
        }
        let jumps = self.jumps();
        let values = self.values();
        let idx = jumps.iter().take_while(|j| j.fraction_f64() < u).count();
        values[idx]
    }

    /// `n` uniform samples as CSV with columns `theta_over_2pi,sigma`.
    pub fn to_csv(&self, n: usize) -> String {
        let mut out = String::from("theta_over_2pi,sigma\n");
        for i in 0..n {
            let u = i as f64 / n as f64;
            let _ = writeln!(out, "{u:.6},{}", self.value_at_fraction(u));
        }
        out
    }

    /// Certified `∫σ` over the circle of length one, with radius ≤ `tol`.
    ///
    /// Writing `u_k = θ_k/π` for the upper jumps,
    /// `ρ₀ = σ_r + Σ_k (σ_{k−1} − σ_k)·u_k`.
    pub fn rho0(&self, tol: &Rational) -> Result<CertifiedReal> {
        if !tol.is_positive() {
            return Err(Error::OutOfRange("rho0 tolerance must be positive".into()));
        }
        let r = self.roots.len();
        let sigma_r = int(self.arc_values[r]);
        let diffs: Vec<i64> = (1..=r).map(|k| self.arc_values[k - 1] - self.arc_values[k]).collect();
        let total: i64 = diffs.iter().map(|d| d.abs()).sum();
        if total == 0 {
            return Ok(CertifiedReal::exact(sigma_r));
        }
        let mut roots = self.roots.clone();
        let mut w = tol / int(4 * total);
        loop {
            let mut lo = sigma_r.clone();
            let mut hi = sigma_r.clone();
            for (root, &d) in roots.iter_mut().zip(&diffs) {
                if d == 0 {
                    continue;
                }
                let (ul, uh) = root.angle_fraction_bounds(&w);
                let (a, b) = (&ul * int(d), &uh * int(d));
                if d > 0 {
                    lo += a;
                    hi += b;
                } else {
                    lo += b;
                    hi += a;
                }
            }
            let c = CertifiedReal::from_bounds(lo, hi);
            if c.radius <= *tol {
                return Ok(c);
            }
            w = w / int(16);
        }
    }
}

/// Shrinks isolating intervals until consecutive roots have disjoint
/// closures strictly inside (−2, 2), so every arc has an open range of
/// sample abscissae.
fn separate(roots: &mut [AlgebraicAbscissa]) {
    if let Some(first) = roots.first_mut() {
        while first.hi >= int(2) {
            first.refine();
        }
    }
    if let Some(last) = roots.last_mut() {
        while last.lo <= int(-2) {
            last.refine();
        }
    }
    for k in 1..roots.len() {
        while roots[k].hi >= roots[k - 1].lo {
            let wa = &roots[k - 1].hi - &roots[k - 1].lo;
            let wb = &roots[k].hi - &roots[k].lo;
            if wa >= wb {
                roots[k - 1].refine();
            } else {
                roots[k].refine();
            }
        }
    }
}

impl Serialize for SignatureFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct J {
            fraction: f64,
            abscissa_lo: String,
            abscissa_hi: String,
            upper_half: bool,
        }
        let jumps: Vec<J> = self
            .jumps()
            .iter()
            .map(|j| J {
                fraction: j.fraction_f64(),
                abscissa_lo: j.abscissa.lo.to_string(),
                abscissa_hi: j.abscissa.hi.to_string(),
                upper_half: j.upper_half,
            })
            .collect();
        let mut st = s.serialize_struct("SignatureFunction", 3)?;
        st.serialize_field("jumps", &jumps)?;
        st.serialize_field("values", &self.values())?;
        st.serialize_field("value_at_one", &0)?;
        st.end()
    }
}
