//! Named knots with the topological annotations the rewrite rules consume.

use std::sync::Arc;

use serde::Serialize;

use crate::alexmod::AlexModule;
use crate::exactalg::LaurentPoly;
use crate::seifert::SeifertMatrix;
use crate::{Error, Result};

/// Where the flags of a record come from. Table data for the built-in knots
/// counts as certified; anything read from an input document is a user
/// assumption and is reported as such.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagSource {
    Builtin,
    Declared,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KnotFlags {
    /// Admits an orientation-reversing self-homeomorphism of the zero surgery
    ///.
    pub amphichiral: bool,
    pub ribbon: bool,
    pub slice: bool,
    /// Declared Arf invariant, used when there is no Seifert matrix.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arf: Option<u8>,
}

/// Module coordinates of one element, one residue per primary component.
pub type Coords = Vec<LaurentPoly>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnotRecord {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seifert: Option<SeifertMatrix>,
    pub flags: KnotFlags,
    pub source: FlagSource,
    /// Display names for the primary-component generators.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub basis_names: Vec<String>,
    /// Submodules known to be kernels into ribbon or slice disk exteriors,
    /// each given by generators.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub disk_kernels: Vec<Vec<Coords>>,
}

impl KnotRecord {
    pub fn opaque(name: impl Into<String>, flags: KnotFlags) -> Self {
        KnotRecord {
            name: name.into(),
            seifert: None,
            flags,
            source: FlagSource::Declared,
            basis_names: Vec::new(),
            disk_kernels: Vec::new(),
        }
    }

    pub fn with_seifert(name: impl Into<String>, v: SeifertMatrix, flags: KnotFlags) -> Self {
        let name = name.into();
        KnotRecord {
            seifert: Some(v.with_name(name.clone())),
            name,
            flags,
            source: FlagSource::Declared,
            basis_names: Vec::new(),
            disk_kernels: Vec::new(),
        }
    }

    pub fn is_opaque(&self) -> bool {
        self.seifert.is_none()
    }

    pub fn is_slice(&self) -> bool {
        self.flags.slice || self.flags.ribbon
    }

    /// Arf invariant from the Seifert matrix, else from the declared flag.
    pub fn arf(&self) -> Option<u8> {
        match &self.seifert {
            Some(v) => Some(v.arf()),
            None if self.is_slice() => Some(0),
            None => self.flags.arf,
        }
    }

    pub fn seifert(&self) -> Result<&SeifertMatrix> {
        self.seifert.as_ref().ok_or_else(|| {
            Error::Unsupported(format!("knot {} is opaque (no Seifert matrix)", self.name))
        })
    }

    pub fn module(&self) -> Result<AlexModule> {
        AlexModule::from_seifert(self.seifert()?)
    }

    /// Name of component `j`, falling back to `e{j}`.
    pub fn basis_name(&self, j: usize) -> String {
        self.basis_names.get(j).cloned().unwrap_or_else(|| format!("e{j}"))
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name).or_else(|| {
            name.strip_prefix('e').and_then(|k| k.parse().ok())
        })
    }

    /// The cyclic module of order `p·p̄` with `p` irreducible and `p ≠ p̄`:
    /// the shape of the Alexander module of 8₉.
    pub fn has_conjugate_swapped_cyclic_module(&self) -> Result<bool> {
        let m = self.module()?;
        let c = m.components();
        Ok(m.is_cyclic()
            && c.len() == 2
            && c.iter().all(|x| x.exponent == 1)
            && c[0].prime.conj().is_associate(&c[1].prime)
            && !c[0].prime.is_associate(&c[1].prime))
    }

    fn builtin(mut self) -> Self {
        self.source = FlagSource::Builtin;
        self
    }
}

fn seifert(rows: &[&[i64]]) -> SeifertMatrix {
    SeifertMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).expect("table matrix")
}

pub fn unknot() -> KnotRecord {
    let flags = KnotFlags { amphichiral: true, ribbon: true, slice: true, arf: Some(0) };
    KnotRecord::with_seifert("unknot", SeifertMatrix::unknot(), flags).builtin()
}

/// Right-handed trefoil.
pub fn trefoil() -> KnotRecord {
    KnotRecord::with_seifert("trefoil", seifert(&[&[-1, 1], &[0, -1]]), KnotFlags::default())
        .builtin()
}

pub fn figure_eight() -> KnotRecord {
    let flags = KnotFlags { amphichiral: true, ..KnotFlags::default() };
    KnotRecord::with_seifert("figure_eight", seifert(&[&[1, 1], &[0, -1]]), flags).builtin()
}

pub fn five2() -> KnotRecord {
    KnotRecord::with_seifert("five2", seifert(&[&[-1, 0], &[-1, -2]]), KnotFlags::default())
        .builtin()
}

/// The ribbon knot 9₄₆ with its band meridians α, β as component
/// generators. Cutting either band gives a ribbon disk whose kernel is the
/// corresponding line.
pub fn nine46() -> KnotRecord {
    let flags = KnotFlags { amphichiral: false, ribbon: true, slice: true, arf: Some(0) };
    let mut k = KnotRecord::with_seifert("nine46", seifert(&[&[0, 2], &[1, 0]]), flags).builtin();
    k.basis_names = vec!["α".into(), "β".into()];
    let one = LaurentPoly::one();
    let zero = LaurentPoly::zero();
    k.disk_kernels = vec![vec![vec![one.clone(), zero.clone()]], vec![vec![zero, one]]];
    k
}

/// A genus-3 Seifert matrix for 8₉, with Δ ≐ p·q for
/// `p = t³ − 2t² + t − 1`, `q = t³ − t² + 2t − 1`.
///
/// The component of prime `q` is named `p` because it is the submodule
/// `⟨p⟩ = p·𝒜` (and vice versa).
pub fn eight9() -> KnotRecord {
    let flags = KnotFlags { amphichiral: true, ribbon: true, slice: true, arf: Some(0) };
    let v = seifert(&[
        &[0, 1, 0, 0, 0, -1],
        &[0, 0, 0, -1, -1, -1],
        &[0, 0, -1, 0, -1, 0],
        &[0, -1, -1, 0, 0, 0],
        &[0, -1, -1, 0, 0, 1],
        &[-1, -1, 0, 0, 0, 0],
    ]);
    let mut k = KnotRecord::with_seifert("eight9", v, flags).builtin();
    let p = LaurentPoly::from_ints(0, &[-1, 1, -2, 1]);
    let m = k.module().expect("8₉ module");
    k.basis_names = m
        .components()
        .iter()
        .map(|c| if c.prime.is_associate(&p) { "q".into() } else { "p".into() })
        .collect();
    k
}

const ALIASES: &[(&str, &str)] = &[
    ("0_1", "unknot"),
    ("3_1", "trefoil"),
    ("4_1", "figure_eight"),
    ("figure-eight", "figure_eight"),
    ("5_2", "five2"),
    ("9_46", "nine46"),
    ("8_9", "eight9"),
];

pub const BUILTIN_NAMES: &[&str] = &["unknot", "trefoil", "figure_eight", "five2", "nine46", "eight9"];

/// Looks up a built-in knot by name or common alias.
pub fn builtin(name: &str) -> Option<Arc<KnotRecord>> {
    let canon = ALIASES
        .iter()
        .find(|(a, _)| *a == name)
        .map(|(_, c)| *c)
        .unwrap_or(name);
    let rec = match canon {
        "unknot" => unknot(),
        "trefoil" => trefoil(),
        "figure_eight" => figure_eight(),
        "five2" => five2(),
        "nine46" => nine46(),
        "eight9" => eight9(),
        _ => return None,
    };
    Some(Arc::new(rec))
}
