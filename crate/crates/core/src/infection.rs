//! Construction trees: knots and links built from base knots by infection,
//! Bing doubling, R-doubling, connected sum and string-link multiples.
//!
//! A curve carries only the algebraic facts the obstruction theorems use:
//! a certificate for its derived-series depth, linking number zero with the
//! link it infects, and optionally its class in the Alexander module of the
//! infected knot. No diagram geometry is modelled.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::alexmod::ModElement;
use crate::freegroup::{derived_depth, Depth, FreeWord};
use crate::knots::{self, KnotRecord};
use crate::{Error, Result};

/// How a curve's depth in the derived series of the ambient group is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DepthCertificate {
    /// A word in the free fundamental group of a trivial link complement;
    /// depth computed by the Magnus oracle.
    Word(FreeWord),
    /// Null-homologous in a knot complement, hence in the commutator
    /// subgroup.
    LinkingZero,
    /// One of the `2ⁱ` clones of the unknot meridian inside `Rᵢ`; lies in the
    /// `i`-th derived subgroup. `Clone(0)` is the meridian itself.
    Clone(u32),
    /// User-asserted lower bound.
    Assumed(u32),
}

impl DepthCertificate {
    pub fn is_assumed(&self) -> bool {
        matches!(self, DepthCertificate::Assumed(_))
    }

    pub fn describe(&self) -> String {
        match self {
            DepthCertificate::Word(w) => format!("word {w}"),
            DepthCertificate::LinkingZero => "linking number zero".into(),
            DepthCertificate::Clone(i) => format!("clone at level {i}"),
            DepthCertificate::Assumed(k) => format!("assumed depth {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub name: String,
    pub certificate: Option<DepthCertificate>,
    /// Resolved depth; `None` exactly when there is no certificate.
    pub depth: Option<Depth>,
    /// Class in the Alexander module of the infected knot.
    pub alex_class: Option<ModElement>,
    pub lk_zero: bool,
}

impl CurveSpec {
    /// Certifies the depth of `w` up to level `max_level`.
    pub fn word(name: impl Into<String>, w: FreeWord, max_level: u32) -> Result<Self> {
        let name = name.into();
        if w.abelianization().iter().any(|&e| e != 0) {
            return Err(Error::Construction(format!(
                "curve {name}: word {w} has nonzero linking number with the link"
            )));
        }
        let depth = derived_depth(&w, max_level)?;
        Ok(CurveSpec {
            name,
            certificate: Some(DepthCertificate::Word(w)),
            depth: Some(depth),
            alex_class: None,
            lk_zero: true,
        })
    }

    pub fn linking_zero(name: impl Into<String>) -> Self {
        Self::with_certificate(name, DepthCertificate::LinkingZero, Depth::AtLeast(1))
    }

    pub fn clone_curve(name: impl Into<String>, level: u32) -> Self {
        let mut c = Self::with_certificate(name, DepthCertificate::Clone(level), Depth::AtLeast(level));
        c.lk_zero = level > 0;
        c
    }

    pub fn assumed(name: impl Into<String>, k: u32) -> Self {
        Self::with_certificate(name, DepthCertificate::Assumed(k), Depth::AtLeast(k))
    }

    pub fn uncertified(name: impl Into<String>) -> Self {
        CurveSpec { name: name.into(), certificate: None, depth: None, alex_class: None, lk_zero: true }
    }

    fn with_certificate(name: impl Into<String>, c: DepthCertificate, d: Depth) -> Self {
        CurveSpec { name: name.into(), certificate: Some(c), depth: Some(d), alex_class: None, lk_zero: true }
    }

    pub fn with_class(mut self, x: ModElement) -> Self {
        self.alex_class = Some(x);
        self
    }

    pub fn depth_lower_bound(&self) -> Option<u32> {
        self.depth.map(Depth::lower_bound)
    }

    fn is_meridian(&self) -> bool {
        self.certificate == Some(DepthCertificate::Clone(0))
    }

    pub fn to_json(&self) -> Value {
        let mut o = serde_json::Map::new();
        o.insert("name".into(), json!(self.name));
        match &self.certificate {
            Some(DepthCertificate::Word(w)) => {
                o.insert("word".into(), json!(w.to_string()));
                o.insert("rank".into(), json!(w.rank()));
            }
            Some(DepthCertificate::LinkingZero) => {
                o.insert("linking_zero".into(), json!(true));
            }
            Some(DepthCertificate::Clone(i)) => {
                o.insert("clone".into(), json!(i));
            }
            Some(DepthCertificate::Assumed(k)) => {
                o.insert("assumed_depth".into(), json!(k));
            }
            None => {}
        }
        if let Some(d) = self.depth {
            o.insert("depth".into(), json!(d.to_string()));
        }
        if let Some(x) = &self.alex_class {
            o.insert("alex_class".into(), serde_json::to_value(x).unwrap());
        }
        Value::Object(o)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConstructionNode {
    BaseKnot(Arc<KnotRecord>),
    TrivialLink(usize),
    SliceLinkAssumed { label: String, components: usize },
    Infect { parent: Box<ConstructionNode>, curves: Vec<CurveSpec>, infectants: Vec<ConstructionNode> },
    BingDouble { parent: Box<ConstructionNode>, iterations: u32 },
    /// The 9₄₆ operator: infection along the band meridians α, β, both by
    /// `parent`.
    RDouble { label: String, parent: Box<ConstructionNode> },
    ConnectedSum(Vec<ConstructionNode>),
    Multiple { parent: Box<ConstructionNode>, count: u32 },
}

use ConstructionNode as N;

impl ConstructionNode {
    pub fn knot(k: Arc<KnotRecord>) -> Self {
        N::BaseKnot(k)
    }

    pub fn infect(parent: ConstructionNode, curves: Vec<CurveSpec>, infectants: Vec<ConstructionNode>) -> Self {
        N::Infect { parent: Box::new(parent), curves, infectants }
    }

    pub fn bing(parent: ConstructionNode, iterations: u32) -> Self {
        N::BingDouble { parent: Box::new(parent), iterations }
    }

    pub fn rdouble(parent: ConstructionNode) -> Self {
        N::RDouble { label: "R".into(), parent: Box::new(parent) }
    }

    pub fn multiple(parent: ConstructionNode, count: u32) -> Self {
        N::Multiple { parent: Box::new(parent), count }
    }

    /// `J_n(K)`: `n` nested R-doublings of `k`.
    pub fn rdouble_tower(k: ConstructionNode, n: u32) -> Self {
        (0..n).fold(k, |acc, _| Self::rdouble(acc))
    }

    pub fn components(&self) -> usize {
        match self {
            N::BaseKnot(_) | N::RDouble { .. } | N::ConnectedSum(_) => 1,
            N::TrivialLink(m) | N::SliceLinkAssumed { components: m, .. } => *m,
            N::Infect { parent, .. } | N::Multiple { parent, .. } => parent.components(),
            N::BingDouble { iterations, .. } => 1usize << iterations,
        }
    }

    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }

    /// Checks the structural invariants of the whole tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            N::BaseKnot(_) => Ok(()),
            N::TrivialLink(m) | N::SliceLinkAssumed { components: m, .. } => {
                if *m == 0 {
                    Err(Error::Construction("a link needs at least one component".into()))
                } else {
                    Ok(())
                }
            }
            N::Infect { parent, curves, infectants } => {
                parent.validate()?;
                if curves.len() != infectants.len() {
                    return Err(Error::Construction(format!(
                        "{} curves but {} infecting knots",
                        curves.len(),
                        infectants.len()
                    )));
                }
                for (c, k) in curves.iter().zip(infectants) {
                    k.validate()?;
                    if !k.is_knot() {
                        return Err(Error::Construction(format!("infectant along {} is not a knot", c.name)));
                    }
                    let meridian_of_unknot = c.is_meridian() && parent.is_unknot();
                    if !c.lk_zero && !meridian_of_unknot {
                        return Err(Error::Construction(format!(
                            "curve {} must have linking number zero with the infected link",
                            c.name
                        )));
                    }
                }
                Ok(())
            }
            N::BingDouble { parent, .. } => {
                parent.validate()?;
                if !parent.is_knot() {
                    return Err(Error::Construction("Bing doubling needs a knot".into()));
                }
                Ok(())
            }
            N::RDouble { parent, .. } => {
                parent.validate()?;
                if !parent.is_knot() {
                    return Err(Error::Construction("R-doubling needs a knot".into()));
                }
                Ok(())
            }
            N::ConnectedSum(parts) => {
                if parts.is_empty() {
                    return Err(Error::Construction("empty connected sum".into()));
                }
                for p in parts {
                    p.validate()?;
                    if !p.is_knot() {
                        return Err(Error::Construction("connected sum of links is not supported".into()));
                    }
                }
                Ok(())
            }
            N::Multiple { parent, count } => {
                if *count == 0 {
                    return Err(Error::Construction("multiple count must be at least 1".into()));
                }
                parent.validate()
            }
        }
    }

    fn is_unknot(&self) -> bool {
        matches!(self, N::BaseKnot(k) if k.name == "unknot")
    }

    /// The base knot whose Alexander module this knot shares: infection
    /// along null-homologous curves leaves the Seifert form unchanged.
    pub fn base_record(&self) -> Option<Arc<KnotRecord>> {
        match self {
            N::BaseKnot(k) => Some(k.clone()),
            N::Infect { parent, .. } => parent.base_record(),
            N::RDouble { .. } => Some(Arc::new(knots::nine46())),
            _ => None,
        }
    }

    /// Rewrites an R-doubling as the explicit infection of 9₄₆ along α and β.
    pub fn desugar_rdouble(&self) -> Result<ConstructionNode> {
        match self {
            N::RDouble { parent, .. } => {
                let r = knots::nine46();
                let m = r.module()?;
                let curves = vec![
                    CurveSpec::linking_zero("α").with_class(m.generator(0)),
                    CurveSpec::linking_zero("β").with_class(m.generator(1)),
                ];
                Ok(Self::infect(N::BaseKnot(Arc::new(r)), curves, vec![(**parent).clone(), (**parent).clone()]))
            }
            other => Ok(other.clone()),
        }
    }

    /// Canonical JSON form, with `op` tags matching the input format.
    pub fn to_json(&self) -> Value {
        match self {
            N::BaseKnot(k) => json!({"op": "knot", "name": k.name}),
            N::TrivialLink(m) => json!({"op": "trivial", "components": m}),
            N::SliceLinkAssumed { label, components } => {
                json!({"op": "slice_link", "label": label, "components": components})
            }
            N::Infect { parent, curves, infectants } => json!({
                "op": "infect",
                "parent": parent.to_json(),
                "curves": curves.iter().map(CurveSpec::to_json).collect::<Vec<_>>(),
                "infectants": infectants.iter().map(Self::to_json).collect::<Vec<_>>(),
            }),
            N::BingDouble { parent, iterations } => {
                json!({"op": "bing", "parent": parent.to_json(), "iterations": iterations})
            }
            N::RDouble { label, parent } => json!({"op": "rdouble", "label": label, "parent": parent.to_json()}),
            N::ConnectedSum(parts) => {
                json!({"op": "sum", "summands": parts.iter().map(Self::to_json).collect::<Vec<_>>()})
            }
            N::Multiple { parent, count } => json!({"op": "multiple", "parent": parent.to_json(), "count": count}),
        }
    }

    fn sort_key(&self) -> String {
        self.to_json().to_string()
    }
}

impl fmt::Display for ConstructionNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            N::BaseKnot(k) => write!(f, "{}", k.name),
            N::TrivialLink(m) => write!(f, "U^{m}"),
            N::SliceLinkAssumed { label, .. } => write!(f, "{label}"),
            N::Infect { parent, curves, infectants } => {
                write!(f, "{parent}(")?;
                for (i, (c, k)) in curves.iter().zip(infectants).enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{} ← {k}", c.name)?;
                }
                write!(f, ")")
            }
            N::BingDouble { parent, iterations } => write!(f, "BD^{iterations}({parent})"),
            N::RDouble { label, parent } => write!(f, "{label}({parent})"),
            N::ConnectedSum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " # ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            N::Multiple { parent, count } => write!(f, "{count}·[{parent}]"),
        }
    }
}

/// A stage of the solvable filtration, in half-integer steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SolvLevel {
    Unknown,
    /// Twice the level, so `Halves(3)` is (1.5)-solvable.
    Halves(u32),
    /// In every stage.
    Slice,
}

impl SolvLevel {
    pub fn integer(n: u32) -> Self {
        SolvLevel::Halves(2 * n)
    }

    /// Integral level, when the stage is a whole number.
    pub fn as_integer(self) -> Option<u32> {
        match self {
            SolvLevel::Halves(h) if h % 2 == 0 => Some(h / 2),
            _ => None,
        }
    }

    fn plus(self, depth: u32) -> Self {
        match self {
            SolvLevel::Halves(h) => SolvLevel::Halves(h + 2 * depth),
            other => other,
        }
    }
}

impl fmt::Display for SolvLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolvLevel::Unknown => write!(f, "unknown"),
            SolvLevel::Slice => write!(f, "slice (every level)"),
            SolvLevel::Halves(h) if h % 2 == 0 => write!(f, "({})-solvable", h / 2),
            SolvLevel::Halves(h) => write!(f, "({}.5)-solvable", h / 2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvDegree {
    pub level: SolvLevel,
    /// True when only rational solvability is established.
    pub rational: bool,
    /// Why the bound is not better: uncertified curves, missing Arf data.
    pub diagnostics: Vec<String>,
}

impl SolvDegree {
    fn new(level: SolvLevel) -> Self {
        SolvDegree { level, rational: false, diagnostics: Vec::new() }
    }

    fn unknown(why: String) -> Self {
        SolvDegree { level: SolvLevel::Unknown, rational: false, diagnostics: vec![why] }
    }

    fn meet(mut self, other: SolvDegree) -> Self {
        self.level = self.level.min(other.level);
        self.rational |= other.rational;
        self.diagnostics.extend(other.diagnostics);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": match self.level {
                SolvLevel::Unknown => Value::Null,
                SolvLevel::Slice => json!("slice"),
                SolvLevel::Halves(h) => json!(h as f64 / 2.0),
            },
            "display": self.level.to_string(),
            "rational": self.rational,
            "diagnostics": self.diagnostics,
        })
    }
}

impl fmt::Display for SolvDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.level)?;
        if self.rational {
            write!(f, " (rationally)")?;
        }
        Ok(())
    }
}

/// Best filtration level the construction provably reaches.
///
/// Base knots: slice ⇒ every level, Arf 0 ⇒ (0)-solvable. Infection of an
/// `(a)`-solvable link along curves of depth `pᵢ` by `(qᵢ)`-solvable knots is
/// `min(a, minᵢ(pᵢ + qᵢ))`-solvable, ignoring slice infectants; Bing doubling
/// `n` times is infection of the trivial link along a depth-`n` curve and
/// R-doubling is infection of the ribbon knot 9₄₆ along two depth-1 curves.
pub fn solvability_upper_bound(node: &ConstructionNode) -> SolvDegree {
    match node {
        N::BaseKnot(k) => {
            if k.is_slice() {
                SolvDegree::new(SolvLevel::Slice)
            } else {
                match k.arf() {
                    Some(0) => SolvDegree::new(SolvLevel::integer(0)),
                    Some(_) => SolvDegree::unknown(format!("{}: Arf invariant is 1, not (0)-solvable", k.name)),
                    None => SolvDegree::unknown(format!("{}: no Arf invariant or Seifert matrix", k.name)),
                }
            }
        }
        N::TrivialLink(_) | N::SliceLinkAssumed { .. } => SolvDegree::new(SolvLevel::Slice),
        N::Infect { parent, curves, infectants } => {
            let mut acc = solvability_upper_bound(parent);
            for (c, k) in curves.iter().zip(infectants) {
                let q = solvability_upper_bound(k);
                if q.level == SolvLevel::Slice {
                    continue;
                }
                let term = match c.depth_lower_bound() {
                    Some(p) => SolvDegree { level: q.level.plus(p), ..q },
                    None => {
                        let mut d = SolvDegree::unknown(format!("curve {} has no depth certificate", c.name));
                        d.diagnostics.extend(q.diagnostics);
                        d
                    }
                };
                acc = acc.meet(term);
            }
            acc
        }
        N::BingDouble { parent, iterations } => {
            let q = solvability_upper_bound(parent);
            SolvDegree { level: q.level.plus(*iterations), ..q }
        }
        N::RDouble { parent, .. } => {
            let q = solvability_upper_bound(parent);
            SolvDegree { level: q.level.plus(1), ..q }
        }
        N::ConnectedSum(parts) => parts
            .iter()
            .map(solvability_upper_bound)
            .fold(SolvDegree::new(SolvLevel::Slice), SolvDegree::meet),
        N::Multiple { parent, .. } => solvability_upper_bound(parent),
    }
}

/// Splits an R-doubling tower into its operator labels (outermost first)
/// and the knot at the bottom.
pub fn rdouble_tower(node: &ConstructionNode) -> (Vec<String>, &ConstructionNode) {
    let mut labels = Vec::new();
    let mut cur = node;
    while let N::RDouble { label, parent } = cur {
        labels.push(label.clone());
        cur = parent;
    }
    (labels, cur)
}

fn build_tower(labels: &[String], base: ConstructionNode) -> ConstructionNode {
    labels.iter().rev().fold(base, |acc, l| N::RDouble { label: l.clone(), parent: Box::new(acc) })
}

/// Re-expresses the tower `J_n(K)` as the ribbon knot `Rᵢ = Jᵢ(U)` infected
/// along its `2ⁱ` clones, each by a copy of `J_{n−i}(K)`.
pub fn expand_clones(node: &ConstructionNode, i: u32) -> Result<ConstructionNode> {
    let (labels, base) = rdouble_tower(node);
    let n = labels.len() as u32;
    if i > n {
        return Err(Error::OutOfRange(format!("expansion level {i} exceeds tower height {n}")));
    }
    let outer = &labels[..i as usize];
    let inner = &labels[i as usize..];
    let r_i = build_tower(outer, N::BaseKnot(Arc::new(knots::unknot())));
    let infectant = build_tower(inner, base.clone());
    let nine46 = knots::nine46().module()?;
    let mut curves = Vec::with_capacity(1 << i);
    for bits in 0..(1u32 << i) {
        let signs: String = (0..i).map(|b| if bits >> (i - 1 - b) & 1 == 0 { '+' } else { '-' }).collect();
        let name = if i == 0 { "η⁰".to_string() } else { format!("η[{signs}]") };
        let mut c = CurveSpec::clone_curve(name, i);
        c.alex_class = match i {
            0 => None,
            // first-level clones are the band meridians themselves
            1 => Some(nine46.generator(bits as usize)),
            _ => Some(nine46.zero()),
        };
        curves.push(c);
    }
    let infectants = vec![infectant; curves.len()];
    Ok(ConstructionNode::infect(r_i, curves, infectants))
}

/// Number of infection slots at the top of a tree.
pub fn infectant_slots(node: &ConstructionNode) -> usize {
    match node {
        N::Infect { infectants, .. } => infectants.len(),
        N::RDouble { .. } => 2,
        N::BingDouble { .. } => 1,
        _ => 0,
    }
}

/// Canonical form: connected sums flattened and sorted, multiples of knots
/// expanded into sums, trivial wrappers removed, infection slots sorted.
pub fn normalize_tree(node: &ConstructionNode) -> ConstructionNode {
    match node {
        N::BaseKnot(_) | N::TrivialLink(_) | N::SliceLinkAssumed { .. } => node.clone(),
        N::Infect { parent, curves, infectants } => {
            let mut slots: Vec<(CurveSpec, ConstructionNode)> = curves
                .iter()
                .cloned()
                .zip(infectants.iter().map(normalize_tree))
                .collect();
            slots.sort_by_cached_key(|(c, k)| (c.to_json().to_string(), k.sort_key()));
            let (curves, infectants) = slots.into_iter().unzip();
            N::Infect { parent: Box::new(normalize_tree(parent)), curves, infectants }
        }
        N::BingDouble { parent, iterations: 0 } => normalize_tree(parent),
        N::BingDouble { parent, iterations } => N::BingDouble { parent: Box::new(normalize_tree(parent)), iterations: *iterations },
        N::RDouble { label, parent } => N::RDouble { label: label.clone(), parent: Box::new(normalize_tree(parent)) },
        N::ConnectedSum(parts) => {
            let mut flat = Vec::new();
            for p in parts {
                match normalize_tree(p) {
                    N::ConnectedSum(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            finish_sum(flat)
        }
        N::Multiple { parent, count } => {
            let p = normalize_tree(parent);
            let count = *count;
            match p {
                _ if count == 1 => p,
                N::Multiple { parent, count: c } => N::Multiple { parent, count: c * count },
                p if p.is_knot() => {
                    let parts = match p {
                        N::ConnectedSum(inner) => {
                            let mut all = Vec::with_capacity(inner.len() * count as usize);
                            for _ in 0..count {
                                all.extend(inner.iter().cloned());
                            }
                            all
                        }
                        other => vec![other; count as usize],
                    };
                    finish_sum(parts)
                }
                p => N::Multiple { parent: Box::new(p), count },
            }
        }
    }
}

fn finish_sum(mut parts: Vec<ConstructionNode>) -> ConstructionNode {
    if parts.len() == 1 {
        return parts.pop().unwrap();
    }
    parts.sort_by_cached_key(ConstructionNode::sort_key);
    N::ConnectedSum(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::bing_curve;
    use crate::knots::KnotFlags;

    fn opaque(name: &str, arf: u8) -> ConstructionNode {
        N::BaseKnot(Arc::new(KnotRecord::opaque(name, KnotFlags { arf: Some(arf), ..Default::default() })))
    }

    #[test]
    fn j_n_is_n_solvable() {
        for n in 0..5 {
            let j = ConstructionNode::rdouble_tower(opaque("J0", 0), n);
            assert_eq!(solvability_upper_bound(&j).level, SolvLevel::integer(n));
        }
    }

    #[test]
    fn bing_double_adds_depth() {
        let k = ConstructionNode::rdouble(opaque("K", 0));
        for n in 1..=3 {
            let bd = ConstructionNode::bing(k.clone(), n);
            assert_eq!(solvability_upper_bound(&bd).level, SolvLevel::integer(n + 1));
            let explicit = ConstructionNode::infect(
                N::TrivialLink(1 << n),
                vec![CurveSpec::word("α", bing_curve(n).unwrap(), 4).unwrap()],
                vec![k.clone()],
            );
            assert_eq!(solvability_upper_bound(&explicit).level, SolvLevel::integer(n + 1));
        }
    }

    #[test]
    fn slice_and_unknown_bases() {
        let s = N::BaseKnot(Arc::new(knots::nine46()));
        assert_eq!(solvability_upper_bound(&s).level, SolvLevel::Slice);
        let bad = N::BaseKnot(Arc::new(KnotRecord::opaque("X", KnotFlags::default())));
        let d = solvability_upper_bound(&bad);
        assert_eq!(d.level, SolvLevel::Unknown);
        assert!(d.diagnostics[0].contains("X"));
        let uncert = ConstructionNode::infect(s, vec![CurveSpec::uncertified("γ")], vec![opaque("K", 0)]);
        let d = solvability_upper_bound(&uncert);
        assert_eq!(d.level, SolvLevel::Unknown);
        assert!(d.diagnostics.iter().any(|m| m.contains("γ")));
    }

    #[test]
    fn clone_expansion_counts_and_bounds() {
        let j3 = ConstructionNode::rdouble_tower(opaque("J0", 0), 3);
        let want = solvability_upper_bound(&j3).level;
        for i in 0..=3 {
            let e = expand_clones(&j3, i).unwrap();
            e.validate().unwrap();
            assert_eq!(infectant_slots(&e), 1 << i);
            assert_eq!(solvability_upper_bound(&e).level, want);
            if let N::Infect { curves, .. } = &e {
                assert!(curves.iter().all(|c| c.depth_lower_bound() == Some(i)));
            }
        }
        assert!(matches!(expand_clones(&j3, 4), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn normalization() {
        let a = opaque("a", 0);
        let b = opaque("b", 0);
        let c = opaque("c", 0);
        let nested = N::ConnectedSum(vec![N::ConnectedSum(vec![b.clone(), a.clone()]), c.clone()]);
        assert_eq!(normalize_tree(&nested), N::ConnectedSum(vec![a.clone(), b.clone(), c.clone()]));
        assert_eq!(normalize_tree(&ConstructionNode::multiple(a.clone(), 1)), a);
        assert_eq!(
            normalize_tree(&ConstructionNode::multiple(a.clone(), 3)),
            N::ConnectedSum(vec![a.clone(), a.clone(), a.clone()])
        );
        let link = ConstructionNode::bing(a.clone(), 2);
        let m = ConstructionNode::multiple(ConstructionNode::multiple(link.clone(), 2), 3);
        assert_eq!(normalize_tree(&m), ConstructionNode::multiple(link, 6));
    }

    #[test]
    fn validation() {
        let k = opaque("K", 0);
        let bad = ConstructionNode::infect(N::TrivialLink(2), vec![], vec![k.clone()]);
        assert!(bad.validate().is_err());
        assert!(ConstructionNode::bing(N::TrivialLink(2), 1).validate().is_err());
        assert!(ConstructionNode::multiple(k.clone(), 0).validate().is_err());
        let w = FreeWord::parse("x1", 2).unwrap();
        assert!(CurveSpec::word("η", w, 3).is_err());
    }
}
