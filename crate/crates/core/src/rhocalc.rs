//! Symbolic ρ-invariant calculus.
//!
//! ρ¹ and Cheeger-Gromov constants have no algorithm at this level, so they
//! are opaque atoms. Terms are ℚ-linear combinations of atoms; the
//! additivity rule for infection and a handful of vanishing rules driven by
//! knot annotations reduce every first-order signature to such a term.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::alexmod::{AlexModule, Submodule};
use crate::exactalg::Rational;
use crate::infection::{ConstructionNode, CurveSpec};
use crate::knots::{self, KnotRecord};
use crate::seifert::CertifiedReal;
use crate::{Error, Exec, Result};

/// An unknown real number. Ordered by kind, then label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhoAtom {
    Rho0(String),
    Rho1(String),
    /// `ρ(M_K, φ_P)` for a nonzero self-annihilating `P`.
    Fos { knot: String, submodule: String },
    /// Cheeger-Gromov bound of a 3-manifold; only used in bound predicates.
    CG(String),
}

impl fmt::Display for RhoAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoAtom::Rho0(k) => write!(f, "rho0({k})"),
            RhoAtom::Rho1(k) => write!(f, "rho1({k})"),
            RhoAtom::Fos { knot, submodule } => write!(f, "rho({knot}; {submodule})"),
            RhoAtom::CG(m) => write!(f, "C({m})"),
        }
    }
}

impl FromStr for RhoAtom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected rho0(K), rho1(K), rho(K; P) or C(M), got {s:?}"));
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?.trim();
        if inner.is_empty() {
            return Err(bad());
        }
        match &s[..open] {
            "rho0" | "ρ₀" => Ok(RhoAtom::Rho0(inner.into())),
            "rho1" | "ρ¹" => Ok(RhoAtom::Rho1(inner.into())),
            "C" => Ok(RhoAtom::CG(inner.into())),
            "rho" | "ρ" => {
                let (k, p) = inner.split_once(';').ok_or_else(bad)?;
                Ok(RhoAtom::Fos { knot: k.trim().into(), submodule: p.trim().into() })
            }
            _ => Err(bad()),
        }
    }
}

/// `Σ cₐ·a + c` with rational coefficients; zero coefficients are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RhoTerm {
    coeffs: BTreeMap<RhoAtom, Rational>,
    constant: Rational,
}

impl RhoTerm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn atom(a: RhoAtom) -> Self {
        Self::zero().plus_atom(a, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RhoTerm { coeffs: BTreeMap::new(), constant: c }
    }

    pub fn rho0(k: &str) -> Self {
        Self::atom(RhoAtom::Rho0(k.into()))
    }

    pub fn rho1(k: &str) -> Self {
        Self::atom(RhoAtom::Rho1(k.into()))
    }

    pub fn plus_atom(mut self, a: RhoAtom, c: Rational) -> Self {
        let e = self.coeffs.entry(a).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
        self
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RhoTerm {
            coeffs: self.coeffs.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
            constant: &self.constant * c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn coeff(&self, a: &RhoAtom) -> Rational {
        self.coeffs.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &RhoAtom> {
        self.coeffs.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RhoAtom, &Rational)> {
        self.coeffs.iter()
    }

    /// Replaces each atom by a term.
    pub fn substitute(&self, mut f: impl FnMut(&RhoAtom) -> Option<RhoTerm>) -> Self {
        let mut out = RhoTerm::constant(self.constant.clone());
        for (a, c) in &self.coeffs {
            out = match f(a) {
                Some(t) => &out + &t.scale(c),
                None => out.plus_atom(a.clone(), c.clone()),
            };
        }
        out
    }

    /// Interval value when every atom has one.
    pub fn evaluate(&self, val: impl Fn(&RhoAtom) -> Option<CertifiedReal>) -> Option<CertifiedReal> {
        let mut acc = CertifiedReal::exact(self.constant.clone());
        for (a, c) in &self.coeffs {
            acc = &acc + &val(a)?.scale(c);
        }
        Some(acc)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "display": self.to_string(),
            "atoms": self.coeffs.iter().map(|(a, c)| json!({"atom": a.to_string(), "coeff": c.to_string()})).collect::<Vec<_>>(),
            "constant": self.constant.to_string(),
        })
    }
}

impl Add for &RhoTerm {
    type Output = RhoTerm;
    fn add(self, o: &RhoTerm) -> RhoTerm {
        let mut out = self.clone();
        for (a, c) in &o.coeffs {
            out = out.plus_atom(a.clone(), c.clone());
        }
        out.constant += &o.constant;
        out
    }
}

impl Sub for &RhoTerm {
    type Output = RhoTerm;
    fn sub(self, o: &RhoTerm) -> RhoTerm {
        self + &(-o)
    }
}

impl Neg for &RhoTerm {
    type Output = RhoTerm;
    fn neg(self) -> RhoTerm {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for RhoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut piece = |f: &mut fmt::Formatter<'_>, c: &Rational, body: Option<String>| -> fmt::Result {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            match body {
                Some(b) if a.is_one() => write!(f, "{b}"),
                Some(b) => write!(f, "{a} {b}"),
                None => write!(f, "{a}"),
            }
        };
        for (a, c) in &self.coeffs {
            piece(f, c, Some(a.to_string()))?;
        }
        if !self.constant.is_zero() {
            piece(f, &self.constant, None)?;
        }
        Ok(())
    }
}

/// User-declared ℚ-linear independence of atom sets. A singleton set says
/// the atom is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Axioms {
    pub independent: Vec<BTreeSet<RhoAtom>>,
}

impl Axioms {
    pub fn declare_independent(&mut self, atoms: impl IntoIterator<Item = RhoAtom>) {
        self.independent.push(atoms.into_iter().collect());
    }

    pub fn declare_nonzero(&mut self, a: RhoAtom) {
        self.declare_independent([a]);
    }

    /// The axiom set covering every atom of `t`, if `t` has no constant part.
    fn covering(&self, terms: &[&RhoTerm]) -> Option<&BTreeSet<RhoAtom>> {
        if terms.iter().any(|t| !t.constant.is_zero()) {
            return None;
        }
        self.independent
            .iter()
            .find(|s| terms.iter().all(|t| t.atoms().all(|a| s.contains(a))))
    }

    /// A nonzero combination of independent atoms is nonzero.
    pub fn certifies_nonzero(&self, t: &RhoTerm) -> bool {
        if t.coeffs.is_empty() {
            return !t.constant.is_zero();
        }
        self.covering(&[t]).is_some()
    }
}

/// True when the terms are ℚ-linearly independent as real numbers, which is
/// certified only when they all live in the span of one declared
/// independent set; then it is the exact rank of the coefficient matrix.
pub fn linearly_independent(terms: &[RhoTerm], axioms: &Axioms) -> bool {
    let refs: Vec<&RhoTerm> = terms.iter().collect();
    let Some(basis) = axioms.covering(&refs) else {
        return false;
    };
    let cols: Vec<&RhoAtom> = basis.iter().collect();
    let rows: Vec<Vec<Rational>> = terms.iter().map(|t| cols.iter().map(|a| t.coeff(a)).collect()).collect();
    rank(rows) == terms.len()
}

fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..ncols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Knot annotations, axioms and numeric options shared by the symbolic
/// rules and the verdict engine.
#[derive(Clone, Debug)]
pub struct Context {
    knots: BTreeMap<String, Arc<KnotRecord>>,
    pub axioms: Axioms,
    /// Radius bound for certified ρ₀ values.
    pub tol: Rational,
    pub exec: Exec,
    /// Use the constant of the 9₄₆ zero surgery in doubling verdicts.
    pub sharp_constant: bool,
}

impl Default for Context {
    fn default() -> Self {
        Context {
            knots: BTreeMap::new(),
            axioms: Axioms::default(),
            tol: Rational::new(1.into(), 1_000_000_000.into()),
            exec: Exec::default(),
            sharp_constant: false,
        }
    }
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, k: Arc<KnotRecord>) {
        self.knots.insert(k.name.clone(), k);
    }

    /// Document knots shadow built-in ones.
    pub fn knot(&self, name: &str) -> Option<Arc<KnotRecord>> {
        self.knots.get(name).cloned().or_else(|| knots::builtin(name))
    }

    pub fn knots(&self) -> impl Iterator<Item = &Arc<KnotRecord>> {
        self.knots.values()
    }

    /// A copy that also knows every base knot of `node`.
    pub fn with_tree(&self, node: &ConstructionNode) -> Context {
        let mut out = self.clone();
        collect_records(node, &mut out);
        out
    }

    /// Certified value of an atom, when it has one.
    pub fn value(&self, a: &RhoAtom) -> Option<CertifiedReal> {
        match a {
            RhoAtom::Rho0(k) => self.knot(k)?.seifert.as_ref()?.rho0(&self.tol).ok(),
            _ => None,
        }
    }

    pub fn evaluate(&self, t: &RhoTerm) -> Option<CertifiedReal> {
        t.evaluate(|a| self.value(a))
    }

    /// Why `a` vanishes, if a rule applies.
    pub fn vanishing_reason(&self, a: &RhoAtom) -> Option<String> {
        match a {
            RhoAtom::Rho0(k) => {
                let k = self.knot(k)?;
                if k.is_slice() {
                    Some(format!("rho0({}) = 0: slice knots have vanishing signature function", k.name))
                } else if k.flags.amphichiral {
                    Some(format!("rho0({}) = 0: amphichiral knot", k.name))
                } else if k.seifert.as_ref().is_some_and(|v| v.signature_function().is_identically_zero()) {
                    Some(format!("rho0({}) = 0: signature function identically zero", k.name))
                } else {
                    None
                }
            }
            RhoAtom::Rho1(k) => {
                let k = self.knot(k)?;
                if k.flags.amphichiral {
                    Some(format!(
                        "rho1({}) = 0: amphichiral, and the kernel G⁽²⁾ is characteristic",
                        k.name
                    ))
                } else {
                    all_fos_zero(&k).map(|why| format!("rho1({}) = 0: {why}", k.name))
                }
            }
            RhoAtom::Fos { knot, submodule } => {
                let k = self.knot(knot)?;
                if is_disk_kernel(&k, submodule) {
                    Some(format!("{a} = 0: {submodule} is the kernel of a ribbon disk exterior"))
                } else {
                    all_fos_zero(&k).map(|why| format!("{a} = 0: {why}"))
                }
            }
            RhoAtom::CG(_) => None,
        }
    }
}

fn collect_records(node: &ConstructionNode, ctx: &mut Context) {
    use ConstructionNode as N;
    match node {
        N::BaseKnot(k) => {
            ctx.knots.entry(k.name.clone()).or_insert_with(|| k.clone());
        }
        N::TrivialLink(_) | N::SliceLinkAssumed { .. } => {}
        N::Infect { parent, infectants, .. } => {
            collect_records(parent, ctx);
            for k in infectants {
                collect_records(k, ctx);
            }
        }
        N::BingDouble { parent, .. } | N::RDouble { parent, .. } | N::Multiple { parent, .. } => {
            collect_records(parent, ctx)
        }
        N::ConnectedSum(parts) => parts.iter().for_each(|p| collect_records(p, ctx)),
    }
}

/// The derived annotation for 8₉-type knots: ribbon, amphichiral, and a
/// cyclic module `Λ/(p·p̄)` has exactly three self-annihilating submodules.
/// `P = 0` vanishes by amphichirality, one of `⟨p⟩, ⟨p̄⟩` is a ribbon-disk
/// kernel, and the other is either the kernel of the mirrored disk or
/// invariant under the reflection.
pub fn all_fos_zero(k: &KnotRecord) -> Option<String> {
    if !(k.flags.ribbon && k.flags.amphichiral) {
        return None;
    }
    match k.has_conjugate_swapped_cyclic_module() {
        Ok(true) => Some(
            "all_fos_zero (ribbon + amphichiral + cyclic module of order p·p̄: \
             ribbon-disk kernel, its mirror image, and the amphichirality rule)"
                .into(),
        ),
        _ => None,
    }
}

fn is_disk_kernel(k: &KnotRecord, label: &str) -> bool {
    let Ok(m) = k.module() else { return false };
    k.disk_kernels.iter().any(|gens| {
        gens.iter()
            .map(|c| m.element(c.clone()))
            .collect::<Result<Vec<_>>>()
            .and_then(|g| Submodule::span(&m, &g))
            .is_ok_and(|p| p.label(&m, &k.basis_names) == label)
    })
}

/// Applies every vanishing rule.
pub fn simplify(term: &RhoTerm, ctx: &Context) -> RhoTerm {
    simplify_logged(term, ctx).0
}

/// [`simplify`], also returning the rules that fired.
pub fn simplify_logged(term: &RhoTerm, ctx: &Context) -> (RhoTerm, Vec<String>) {
    let mut notes = Vec::new();
    let out = term.substitute(|a| {
        ctx.vanishing_reason(a).map(|why| {
            notes.push(why);
            RhoTerm::zero()
        })
    });
    (out, notes)
}

/// `base + Σ bitᵢ·termᵢ`.
pub fn rho_additivity(base: &RhoTerm, contributions: &[(u8, RhoTerm)]) -> RhoTerm {
    contributions
        .iter()
        .filter(|(b, _)| *b == 1)
        .fold(base.clone(), |acc, (_, t)| &acc + t)
}

/// A metabelian coefficient system `φ_P` on a knot with module `module`.
pub struct MetabelianSystem<'a> {
    pub module: &'a AlexModule,
    pub submodule: &'a Submodule,
}

/// 0 when the curve maps trivially under `φ_P` (its class lies in `P`), 1
/// otherwise.
pub fn eval_kernel(sys: &MetabelianSystem<'_>, curve: &CurveSpec) -> Result<u8> {
    let x = curve
        .alex_class
        .as_ref()
        .ok_or_else(|| Error::MissingAlexClass { curve: curve.name.clone() })?;
    if x.coords().len() != sys.module.components().len() {
        return Err(Error::Schema(format!("class of {} has the wrong number of coordinates", curve.name)));
    }
    Ok(u8::from(!sys.submodule.contains(x)))
}

/// `ρ₀` of a knot-valued tree, as a term. Infection along null-homologous
/// curves does not change the Seifert form, so only base knots contribute.
pub fn rho0_term(node: &ConstructionNode) -> Result<RhoTerm> {
    use ConstructionNode as N;
    match node {
        N::BaseKnot(k) => Ok(RhoTerm::rho0(&k.name)),
        N::Infect { parent, .. } if parent.is_knot() => rho0_term(parent),
        N::RDouble { .. } => Ok(RhoTerm::rho0("nine46")),
        N::ConnectedSum(parts) => parts.iter().try_fold(RhoTerm::zero(), |acc, p| Ok(&acc + &rho0_term(p)?)),
        N::Multiple { parent, count } if parent.is_knot() => {
            Ok(rho0_term(parent)?.scale(&Rational::from_integer((*count).into())))
        }
        other => Err(Error::Construction(format!("rho0 needs a knot, got {other}"))),
    }
}

#[derive(Clone, Debug)]
pub struct FosEntry {
    pub submodule: Submodule,
    pub label: String,
    /// Additivity output before the vanishing rules.
    pub raw: RhoTerm,
    pub term: RhoTerm,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct FosTable {
    pub base: Arc<KnotRecord>,
    pub module: AlexModule,
    pub entries: Vec<FosEntry>,
    /// Curves dropped from the metabelian computation, and similar.
    pub notes: Vec<String>,
}

impl FosTable {
    pub fn terms(&self) -> Vec<RhoTerm> {
        self.entries.iter().map(|e| e.term.clone()).collect()
    }

    pub fn to_json(&self, ctx: &Context) -> Value {
        json!({
            "base": self.base.name,
            "signatures": self.entries.iter().map(|e| json!({
                "submodule": e.label,
                "term": e.term.to_json(),
                "value": ctx.evaluate(&e.term).map(|v| serde_json::to_value(v).unwrap()),
                "rules": e.notes,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

fn flatten(node: &ConstructionNode) -> Result<(Arc<KnotRecord>, Vec<(CurveSpec, ConstructionNode)>)> {
    use ConstructionNode as N;
    match node {
        N::BaseKnot(k) => Ok((k.clone(), Vec::new())),
        N::Infect { parent, curves, infectants } if parent.is_knot() => {
            let (b, mut slots) = flatten(parent)?;
            slots.extend(curves.iter().cloned().zip(infectants.iter().cloned()));
            Ok((b, slots))
        }
        N::RDouble { .. } => flatten(&node.desugar_rdouble()?),
        N::Multiple { parent, count: 1 } => flatten(parent),
        other => Err(Error::Unsupported(format!(
            "first-order signatures need a base knot or an infection of one, got {other}"
        ))),
    }
}

/// One term per self-annihilating submodule `P` of the base module:
/// `ρ(M_R, φ_P) + Σ εᵢ ρ₀(Kᵢ)`, with `εᵢ = 0` exactly when the curve's
/// class lies in `P`, then simplified by the annotation rules.
pub fn first_order_signatures(knot: &ConstructionNode, ctx: &Context) -> Result<FosTable> {
    let (base, slots) = flatten(knot)?;
    let ctx = ctx.with_tree(knot);
    let module = base.module()?;
    let lattice = module.isotropic_submodules(ctx.exec)?;
    let mut notes = Vec::new();
    let mut live = Vec::new();
    for (c, k) in &slots {
        if c.alex_class.is_none() {
            if c.depth_lower_bound().is_some_and(|d| d >= 2) {
                notes.push(format!(
                    "curve {} lies in the second derived subgroup; it maps trivially to every metabelian quotient and is dropped",
                    c.name
                ));
                continue;
            }
            return Err(Error::MissingAlexClass { curve: c.name.clone() });
        }
        live.push((c, rho0_term(k)?));
    }
    let entries = ctx.exec.map(&lattice, |p| -> Result<FosEntry> {
        let label = p.label(&module, &base.basis_names);
        let base_term = if p.is_zero(&module) {
            RhoTerm::rho1(&base.name)
        } else {
            RhoTerm::atom(RhoAtom::Fos { knot: base.name.clone(), submodule: label.clone() })
        };
        let sys = MetabelianSystem { module: &module, submodule: p };
        let contributions = live
            .iter()
            .map(|(c, t)| Ok((eval_kernel(&sys, c)?, t.clone())))
            .collect::<Result<Vec<_>>>()?;
        let raw = rho_additivity(&base_term, &contributions);
        let (term, notes) = simplify_logged(&raw, &ctx);
        Ok(FosEntry { submodule: p.clone(), label, raw, term, notes })
    });
    let entries = entries.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(FosTable { base, module, entries, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::knots::KnotFlags;

    fn opaque(name: &str) -> ConstructionNode {
        ConstructionNode::knot(Arc::new(KnotRecord::opaque(name, KnotFlags { arf: Some(0), ..Default::default() })))
    }

    fn a0(k: &str) -> RhoAtom {
        RhoAtom::Rho0(k.into())
    }

    #[test]
    fn atoms_parse_and_print() {
        for s in ["rho0(K1)", "rho1(nine46)", "C(M_T)", "rho(eight9; ⟨p⟩)"] {
            assert_eq!(s.parse::<RhoAtom>().unwrap().to_string(), s);
        }
        assert!("rho2(K)".parse::<RhoAtom>().is_err());
        let t = &RhoTerm::rho1("nine46").scale(&rat(-1, 2)) + &RhoTerm::rho0("K1").scale(&rat(2, 1));
        assert_eq!(t.to_string(), "2 rho0(K1) - 1/2 rho1(nine46)");
    }

    #[test]
    fn additivity() {
        let k1 = RhoTerm::rho0("K1");
        let k2 = RhoTerm::rho0("K2");
        let s = rho_additivity(&RhoTerm::zero(), &[(1, k1.clone()), (1, k2.clone())]);
        assert_eq!(s, &k1 + &k2);
        let base = RhoTerm::rho1("R");
        assert_eq!(rho_additivity(&base, &[(0, k1), (0, k2)]), base);
    }

    #[test]
    fn kernel_bits_on_nine46() {
        let r = knots::nine46();
        let m = r.module().unwrap();
        let lattice = m.isotropic_submodules(Exec::Sequential).unwrap();
        let alpha = CurveSpec::linking_zero("α").with_class(m.generator(0));
        let beta = CurveSpec::linking_zero("β").with_class(m.generator(1));
        let bits: Vec<(u8, u8)> = lattice
            .iter()
            .map(|p| {
                let s = MetabelianSystem { module: &m, submodule: p };
                (eval_kernel(&s, &alpha).unwrap(), eval_kernel(&s, &beta).unwrap())
            })
            .collect();
        assert_eq!(bits, vec![(1, 1), (0, 1), (1, 0)]);
        let s = MetabelianSystem { module: &m, submodule: &lattice[0] };
        assert!(matches!(eval_kernel(&s, &CurveSpec::linking_zero("γ")), Err(Error::MissingAlexClass { .. })));
    }

    #[test]
    fn vanishing_rules() {
        let ctx = Context::new();
        assert!(simplify(&RhoTerm::rho1("figure_eight"), &ctx).is_zero());
        assert!(simplify(&RhoTerm::rho0("figure_eight"), &ctx).is_zero());
        let keep = RhoTerm::rho1("nine46");
        assert_eq!(simplify(&keep, &ctx), keep);
        let cg = RhoTerm::atom(RhoAtom::CG("M".into()));
        assert_eq!(simplify(&cg, &ctx), cg);
        let fos = RhoTerm::atom(RhoAtom::Fos { knot: "nine46".into(), submodule: "⟨α⟩".into() });
        assert!(simplify(&fos, &ctx).is_zero());
        let once = simplify(&(&keep + &fos), &ctx);
        assert_eq!(simplify(&once, &ctx), once);
    }

    #[test]
    fn independence() {
        let mut ax = Axioms::default();
        ax.declare_independent([a0("K1"), a0("K2"), RhoAtom::Rho1("R".into())]);
        let k1 = RhoTerm::rho0("K1");
        let k2 = RhoTerm::rho0("K2");
        assert!(linearly_independent(&[k1.clone(), k2.clone()], &ax));
        assert!(!linearly_independent(&[k1.clone(), k1.scale(&rat(2, 1))], &ax));
        assert!(linearly_independent(&[&k1 + &RhoTerm::rho1("R"), k1.clone()], &ax));
        assert!(!linearly_independent(&[RhoTerm::rho0("K3")], &ax));
        assert!(ax.certifies_nonzero(&(&k1 - &k2)));
        assert!(!ax.certifies_nonzero(&RhoTerm::zero()));
    }

    #[test]
    fn nine46_first_order_signatures() {
        let r = knots::nine46();
        let m = r.module().unwrap();
        let k = ConstructionNode::infect(
            ConstructionNode::knot(Arc::new(r)),
            vec![
                CurveSpec::linking_zero("α").with_class(m.generator(0)),
                CurveSpec::linking_zero("β").with_class(m.generator(1)),
            ],
            vec![opaque("K1"), opaque("K2")],
        );
        let t = first_order_signatures(&k, &Context::new()).unwrap();
        let got: Vec<(String, String)> = t.entries.iter().map(|e| (e.label.clone(), e.term.to_string())).collect();
        assert_eq!(
            got,
            vec![
                ("0".into(), "rho0(K1) + rho0(K2) + rho1(nine46)".into()),
                ("⟨α⟩".into(), "rho0(K2)".into()),
                ("⟨β⟩".into(), "rho0(K1)".into()),
            ]
        );
    }

    #[test]
    fn numeric_values_attach() {
        let r = knots::nine46();
        let m = r.module().unwrap();
        let tref = ConstructionNode::knot(Arc::new(knots::trefoil()));
        let k = ConstructionNode::infect(
            ConstructionNode::knot(Arc::new(r)),
            vec![CurveSpec::linking_zero("α").with_class(m.generator(0))],
            vec![tref],
        );
        let ctx = Context::new();
        let t = first_order_signatures(&k, &ctx).unwrap();
        // ⟨β⟩ does not contain α, and its base term vanishes
        let v = ctx.evaluate(&t.entries[2].term).unwrap();
        assert!(v.contains(&rat(-4, 3)));
        assert!(ctx.evaluate(&t.entries[0].term).is_none());
    }
}
