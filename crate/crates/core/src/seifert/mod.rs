//! Seifert matrices and the abelian invariants they determine.
//!
//! Conventions: Δ(t) is the normalized `det(tV − Vᵀ)`, and the
//! Levine-Tristram signature at ω is the signature of
//! `(1 − ω)V + (1 − ω̄)Vᵀ`. With these, the right-handed trefoil
//! `[[−1, 1], [0, −1]]` has σ = −2 near ω = −1, and mirroring (`V ↦ −Vᵀ`)
//! negates both σ and ρ₀.

mod certified;
mod hermitian;
mod signature;
mod sturm;

pub use certified::{acos_over_pi, CertifiedReal};
pub use signature::{signature_at_tangent, AlgebraicAbscissa, Jump, SignatureFunction};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::exactalg::matrix::{det, LaurentMatrix};
use crate::exactalg::{LaurentPoly, Rational};
use crate::{Error, Exec, Result};

/// An integral Seifert matrix `V` with `det(V − Vᵀ) = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if let Some(r) = entries.iter().position(|row| row.len() != n) {
            return Err(Error::InvalidSeifert(format!(
                "row {r} has length {} in a {n}×{n} matrix",
                entries[r].len()
            )));
        }
        let v = SeifertMatrix { entries, name: None };
        let d = det(&v.constant_matrix(|i, j| v.entries[i][j] - v.entries[j][i]));
        let d0 = d.coeff(0);
        if !(d0.abs().is_integer() && d0.abs() == Rational::from_integer(1.into())) {
            return Err(Error::InvalidSeifert(format!("det(V − Vᵀ) = {d0}, expected ±1")));
        }
        Ok(v)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn unknot() -> Self {
        SeifertMatrix { entries: Vec::new(), name: Some("unknot".into()) }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    fn constant_matrix(&self, f: impl Fn(usize, usize) -> i64) -> LaurentMatrix {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| LaurentPoly::from(f(i, j))).collect())
            .collect()
    }

    /// The presentation matrix `tV − Vᵀ` of the Alexander module.
    pub fn presentation(&self) -> LaurentMatrix {
        let n = self.size();
        let v = &self.entries;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| LaurentPoly::from_ints(0, &[-v[j][i], v[i][j]]))
                    .collect()
            })
            .collect()
    }

    /// `det(tV − Vᵀ)` before normalisation; symmetric about `t^g`.
    pub fn alexander_det(&self) -> LaurentPoly {
        det(&self.presentation())
    }

    pub fn alexander_poly(&self) -> LaurentPoly {
        self.alexander_det().normalize()
    }

    /// Arf invariant from |Δ(−1)| mod 8.
    pub fn arf(&self) -> u8 {
        let d = self.alexander_poly().eval(&Rational::from_integer((-1).into()));
        let m = (d.to_integer().abs() % BigInt::from(8)).to_u8().unwrap();
        if m == 1 || m == 7 {
            0
        } else {
            1
        }
    }

    /// Block sum, a Seifert matrix for the connected sum.
    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let (a, b) = (self.size(), other.size());
        let mut e = vec![vec![0i64; a + b]; a + b];
        for i in 0..a {
            e[i][..a].copy_from_slice(&self.entries[i]);
        }
        for i in 0..b {
            e[a + i][a..].copy_from_slice(&other.entries[i]);
        }
        let name = match (&self.name, &other.name) {
            (Some(x), Some(y)) => Some(format!("{x} # {y}")),
            _ => None,
        };
        SeifertMatrix { entries: e, name }
    }

    /// `−Vᵀ`, a Seifert matrix for the mirror image.
    pub fn mirror(&self) -> SeifertMatrix {
        let n = self.size();
        SeifertMatrix {
            entries: (0..n).map(|i| (0..n).map(|j| -self.entries[j][i]).collect()).collect(),
            name: self.name.as_ref().map(|s| format!("-{s}")),
        }
    }

    pub fn signature_function(&self) -> SignatureFunction {
        SignatureFunction::compute(self)
    }

    pub fn rho0(&self, tol: &Rational) -> Result<CertifiedReal> {
        self.signature_function().rho0(tol)
    }
}

pub fn alexander_poly(v: &SeifertMatrix) -> LaurentPoly {
    v.alexander_poly()
}

pub fn signature_function(v: &SeifertMatrix) -> SignatureFunction {
    v.signature_function()
}

/// Certified ρ₀ with radius at most `tol`.
pub fn rho0(v: &SeifertMatrix, tol: &Rational) -> Result<CertifiedReal> {
    v.rho0(tol)
}

pub fn rho0_batch(vs: &[SeifertMatrix], tol: &Rational, exec: Exec) -> Result<Vec<CertifiedReal>> {
    exec.map(vs, |v| v.rho0(tol)).into_iter().collect()
}

pub fn arf(v: &SeifertMatrix) -> u8 {
    v.arf()
}

pub fn connected_sum(a: &SeifertMatrix, b: &SeifertMatrix) -> SeifertMatrix {
    a.connected_sum(b)
}
