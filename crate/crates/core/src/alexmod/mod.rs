//! The rational Alexander module `Λⁿ / (tV − Vᵀ)ᵀΛⁿ` (Λ = ℚ[t,t⁻¹]), its
//! Blanchfield form, and the lattice of self-annihilating submodules.
//!
//! Elements are stored in primary coordinates: after Smith reduction every
//! invariant factor `d` splits by the Chinese remainder theorem into
//! `⊕ Λ/(fᵉ)` over its irreducible factors. Each such summand is a
//! *component*, with a distinguished generator; an element is the list of
//! its residues, one per component.

mod snf;
mod submodule;

pub use submodule::{isotropic_submodules, submodule_membership, Submodule};

use serde::Serialize;

use crate::exactalg::matrix::{adjugate, det, transpose, LaurentMatrix};
use crate::exactalg::{factor_with_cap, FractionModLaurent, LaurentPoly, DEFAULT_DEGREE_CAP};
use crate::seifert::SeifertMatrix;
use crate::{Error, Result};

/// A primary summand `Λ/(primeᵉ)` of the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Index of the invariant factor this summand splits off from.
    pub factor_index: usize,
    pub prime: LaurentPoly,
    pub exponent: u32,
    pub order: LaurentPoly,
    /// CRT idempotent of this summand inside `Λ/(d)`.
    idempotent: LaurentPoly,
}

/// An element, as residues modulo each component order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModElement {
    coords: Vec<LaurentPoly>,
}

impl ModElement {
    pub fn coords(&self) -> &[LaurentPoly] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl Serialize for ModElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

#[derive(Clone, Debug)]
pub struct AlexModule {
    size: usize,
    /// `A = tV − Vᵀ`; relations are the columns of `Aᵀ`.
    presentation: LaurentMatrix,
    invariant_factors: Vec<LaurentPoly>,
    /// Row of the Smith form holding each invariant factor.
    factor_rows: Vec<usize>,
    p: LaurentMatrix,
    p_inv: LaurentMatrix,
    components: Vec<Component>,
    adj: LaurentMatrix,
    det: LaurentPoly,
    gram: Vec<Vec<FractionModLaurent>>,
}

impl AlexModule {
    pub fn from_seifert(v: &SeifertMatrix) -> Result<Self> {
        Self::from_seifert_with_cap(v, DEFAULT_DEGREE_CAP)
    }

    pub fn from_seifert_with_cap(v: &SeifertMatrix, cap: usize) -> Result<Self> {
        let a = v.presentation();
        let smith = snf::smith(&transpose(&a));
        let mut invariant_factors = Vec::new();
        let mut factor_rows = Vec::new();
        for (i, d) in smith.diagonal.iter().enumerate() {
            if d.is_zero() {
                return Err(Error::InvalidSeifert("Alexander module is not torsion".into()));
            }
            if !d.is_unit() {
                invariant_factors.push(d.clone());
                factor_rows.push(i);
            }
        }
        let mut components = Vec::new();
        for (fi, d) in invariant_factors.iter().enumerate() {
            let parts = factor_with_cap(d, cap)?;
            for (prime, e) in &parts {
                let order = prime.pow(*e);
                let idempotent = if parts.len() == 1 {
                    LaurentPoly::one()
                } else {
                    let m = d.exact_div(&order).unwrap();
                    let inv = m.inverse_mod(&order).expect("coprime primary parts");
                    (&m * &inv).residue(d)
                };
                components.push(Component {
                    factor_index: fi,
                    prime: prime.clone(),
                    exponent: *e,
                    order,
                    idempotent,
                });
            }
        }
        let mut m = AlexModule {
            size: v.size(),
            adj: adjugate(&a),
            det: det(&a),
            presentation: a,
            invariant_factors,
            factor_rows,
            p: smith.p,
            p_inv: smith.p_inv,
            components,
            gram: Vec::new(),
        };
        let gens: Vec<ModElement> = (0..m.components.len()).map(|j| m.generator(j)).collect();
        m.gram = gens
            .iter()
            .map(|x| gens.iter().map(|y| m.blanchfield_direct(x, y)).collect())
            .collect();
        Ok(m)
    }

    /// Invariant factors `d₁ | d₂ | …` (units dropped), normalized.
    pub fn invariant_factors(&self) -> &[LaurentPoly] {
        &self.invariant_factors
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Product of the invariant factors, which equals Δ up to units.
    pub fn order(&self) -> LaurentPoly {
        self.invariant_factors
            .iter()
            .fold(LaurentPoly::one(), |acc, d| &acc * d)
    }

    /// Dimension over ℚ.
    pub fn dimension(&self) -> usize {
        self.components.iter().map(|c| c.order.span()).sum()
    }

    pub fn presentation(&self) -> &LaurentMatrix {
        &self.presentation
    }

    pub fn zero(&self) -> ModElement {
        ModElement { coords: vec![LaurentPoly::zero(); self.components.len()] }
    }

    /// Generator of component `j`.
    pub fn generator(&self, j: usize) -> ModElement {
        let mut e = self.zero();
        e.coords[j] = LaurentPoly::one();
        e
    }

    /// Element with the given residues; each is reduced modulo its order.
    pub fn element(&self, coords: Vec<LaurentPoly>) -> Result<ModElement> {
        if coords.len() != self.components.len() {
            return Err(Error::Schema(format!(
                "module element needs {} coordinates, got {}",
                self.components.len(),
                coords.len()
            )));
        }
        Ok(ModElement {
            coords: coords
                .iter()
                .zip(&self.components)
                .map(|(c, comp)| c.residue(&comp.order))
                .collect(),
        })
    }

    /// Sum of `gᵢ` over every component: a generator of the module when it
    /// is cyclic.
    pub fn cyclic_generator(&self) -> ModElement {
        ModElement { coords: vec![LaurentPoly::one(); self.components.len()] }
    }

    pub fn add(&self, x: &ModElement, y: &ModElement) -> ModElement {
        ModElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.components)
                .map(|((a, b), c)| (a + b).residue(&c.order))
                .collect(),
        }
    }

    pub fn scale(&self, f: &LaurentPoly, x: &ModElement) -> ModElement {
        ModElement {
            coords: x
                .coords
                .iter()
                .zip(&self.components)
                .map(|(a, c)| (f * a).residue(&c.order))
                .collect(),
        }
    }

    /// Image of a vector of presentation coordinates.
    pub fn from_presentation(&self, x: &[LaurentPoly]) -> ModElement {
        assert_eq!(x.len(), self.size);
        let coords = self
            .components
            .iter()
            .map(|c| {
                let row = &self.p[self.factor_rows[c.factor_index]];
                let mut y = LaurentPoly::zero();
                for (a, b) in row.iter().zip(x) {
                    y += &(a * b);
                }
                y.residue(&c.order)
            })
            .collect();
        ModElement { coords }
    }

    /// A presentation-coordinate lift of an element.
    pub fn to_presentation(&self, x: &ModElement) -> Vec<LaurentPoly> {
        let mut y = vec![LaurentPoly::zero(); self.size];
        for (coord, c) in x.coords.iter().zip(&self.components) {
            y[self.factor_rows[c.factor_index]] += &(coord * &c.idempotent);
        }
        (0..self.size)
            .map(|i| {
                let mut acc = LaurentPoly::zero();
                for (k, yk) in y.iter().enumerate() {
                    if !yk.is_zero() {
                        acc += &(&self.p_inv[i][k] * yk);
                    }
                }
                acc
            })
            .collect()
    }

    /// `Bl(x, y) = (1 − t)·xᵀ·A⁻¹·ȳ mod Λ`, evaluated from the presentation.
    pub fn blanchfield_direct(&self, x: &ModElement, y: &ModElement) -> FractionModLaurent {
        if self.is_zero() {
            return FractionModLaurent::zero();
        }
        let xs = self.to_presentation(x);
        let ys: Vec<LaurentPoly> = self.to_presentation(y).iter().map(|f| f.conj()).collect();
        let mut num = LaurentPoly::zero();
        for (i, xi) in xs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in ys.iter().enumerate() {
                if !yj.is_zero() && !self.adj[i][j].is_zero() {
                    num += &(&(xi * &self.adj[i][j]) * yj);
                }
            }
        }
        let one_minus_t = LaurentPoly::from_ints(0, &[1, -1]);
        FractionModLaurent::new(&(&one_minus_t * &num), &self.det)
    }

    /// Blanchfield pairing via the Gram matrix of component generators.
    pub fn blanchfield(&self, x: &ModElement, y: &ModElement) -> FractionModLaurent {
        let mut acc = FractionModLaurent::zero();
        for (a, xa) in x.coords.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.coords.iter().enumerate() {
                if yb.is_zero() || self.gram[a][b].is_zero() {
                    continue;
                }
                acc = acc + self.gram[a][b].mul_laurent(&(xa * &yb.conj()));
            }
        }
        acc
    }

    /// `gram[a][b] = Bl(g_a, g_b)` on component generators.
    pub fn gram(&self) -> &[Vec<FractionModLaurent>] {
        &self.gram
    }

    /// True if `Bl` vanishes identically on the submodule generated by `xs`.
    pub fn form_vanishes_on(&self, xs: &[ModElement]) -> bool {
        xs.iter()
            .all(|x| xs.iter().all(|y| self.blanchfield(x, y).is_zero()))
    }

    /// Components have pairwise distinct primes, so every submodule splits
    /// as a direct sum of submodules of the components.
    pub fn splits_componentwise(&self) -> bool {
        let c = &self.components;
        (0..c.len()).all(|i| (i + 1..c.len()).all(|j| c[i].prime != c[j].prime))
    }

    pub fn isotropic_submodules(&self, exec: crate::Exec) -> Result<Vec<Submodule>> {
        submodule::isotropic_submodules(self, exec)
    }
}

pub fn module_from_seifert(v: &SeifertMatrix) -> Result<AlexModule> {
    AlexModule::from_seifert(v)
}
