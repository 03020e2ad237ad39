//! Obstruction verdicts with hypothesis ledgers.
//!
//! Every verdict records which theorem it applies (as a descriptive tag),
//! each hypothesis with its status, and, when the conclusion is
//! conditional, the exact residual predicate over ρ-terms.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::exactalg::Rational;
use crate::freegroup::{bing_curve, derived_depth, Depth, FreeWord, MAX_LEVEL};
use crate::infection::{normalize_tree, ConstructionNode, CurveSpec, DepthCertificate};
use crate::knots::{self, FlagSource, KnotFlags, KnotRecord};
use crate::rhocalc::{first_order_signatures, rho0_term, simplify, Context, RhoAtom, RhoTerm};
use crate::{Error, Result};

pub const TAG_BING: &str = "bing-double-first-order-obstruction";
pub const TAG_TRIVIAL_LINK: &str = "trivial-link-infection-obstruction";
pub const TAG_SLICE_LINK: &str = "slice-link-infection-cheeger-gromov-bound";
pub const TAG_DOUBLING: &str = "iterated-generalized-doubling";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    NotSlice,
    NotSliceConditional,
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::NotSlice => "NOT_SLICE",
            Conclusion::NotSliceConditional => "NOT_SLICE_CONDITIONAL",
            Conclusion::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Certified,
    Assumed,
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Certified => "certified",
            Status::Assumed => "assumed",
            Status::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub statement: String,
    pub status: Status,
    pub detail: String,
}

impl Hypothesis {
    fn new(statement: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Hypothesis { statement: statement.into(), status, detail: detail.into() }
    }
}

/// The residual predicate under which a conditional verdict holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `variable ∉ excluded`.
    NotIn { variable: RhoTerm, excluded: Vec<RhoTerm> },
    /// Every listed term is nonzero.
    AllNonzero(Vec<RhoTerm>),
    /// `min |tᵢ| ≥ bound`.
    MinAbsAtLeast { terms: Vec<RhoTerm>, bound: RhoAtom },
    /// `|term| > bound`.
    AbsGreater { term: RhoTerm, bound: RhoAtom },
    /// The assumed hypotheses of the ledger hold.
    Assumptions(Vec<String>),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ts: &[RhoTerm]| ts.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match self {
            Condition::NotIn { variable, excluded } => write!(f, "{variable} ∉ {{{}}}", list(excluded)),
            Condition::AllNonzero(ts) => write!(f, "each of {{{}}} is nonzero", list(ts)),
            Condition::MinAbsAtLeast { terms, bound } => write!(f, "min |FOS| ≥ {bound} over FOS = {{{}}}", list(terms)),
            Condition::AbsGreater { term, bound } => write!(f, "|{term}| > {bound}"),
            Condition::Assumptions(hs) => write!(f, "assumed: {}", hs.join("; ")),
        }
    }
}

impl Condition {
    fn kind(&self) -> &'static str {
        match self {
            Condition::NotIn { .. } => "not_in",
            Condition::AllNonzero(_) => "all_nonzero",
            Condition::MinAbsAtLeast { .. } => "min_abs_at_least",
            Condition::AbsGreater { .. } => "abs_greater",
            Condition::Assumptions(_) => "assumptions",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"kind": self.kind(), "display": self.to_string()});
        let o = v.as_object_mut().unwrap();
        match self {
            Condition::NotIn { variable, excluded } => {
                o.insert("variable".into(), variable.to_json());
                o.insert("excluded".into(), excluded.iter().map(RhoTerm::to_json).collect());
            }
            Condition::AllNonzero(ts) => {
                o.insert("terms".into(), ts.iter().map(RhoTerm::to_json).collect());
            }
            Condition::MinAbsAtLeast { terms, bound } => {
                o.insert("terms".into(), terms.iter().map(RhoTerm::to_json).collect());
                o.insert("bound".into(), json!(bound.to_string()));
            }
            Condition::AbsGreater { term, bound } => {
                o.insert("term".into(), term.to_json());
                o.insert("bound".into(), json!(bound.to_string()));
            }
            Condition::Assumptions(hs) => {
                o.insert("assumptions".into(), json!(hs));
            }
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// What the conclusion is about, e.g. `BDⁿ(K) for every n ≥ 1`.
    pub subject: String,
    pub conclusion: Conclusion,
    /// Filtration level the construction is shown to reach.
    pub solvable_upper_bound: Option<u32>,
    pub theorem: &'static str,
    /// Equivalent readings of the same statement.
    pub variants: Vec<String>,
    pub hypotheses: Vec<Hypothesis>,
    pub condition: Option<Condition>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(theorem: &'static str, subject: String) -> Self {
        Verdict {
            subject,
            conclusion: Conclusion::Inconclusive,
            solvable_upper_bound: None,
            theorem,
            variants: Vec::new(),
            hypotheses: Vec::new(),
            condition: None,
            notes: Vec::new(),
        }
    }

    pub fn has_failed_hypothesis(&self) -> bool {
        self.hypotheses.iter().any(|h| h.status == Status::Failed)
    }

    /// `NOT_SLICE` only with a fully certified ledger; conditional verdicts
    /// always carry a predicate.
    pub fn is_sound(&self) -> bool {
        match self.conclusion {
            Conclusion::NotSlice => self.hypotheses.iter().all(|h| h.status == Status::Certified),
            Conclusion::NotSliceConditional => self.condition.is_some() && !self.has_failed_hypothesis(),
            Conclusion::Inconclusive => true,
        }
    }

    /// Downgrades a conclusion the ledger does not support.
    fn gate(mut self) -> Self {
        let mut seen = BTreeSet::new();
        self.notes.retain(|n| seen.insert(n.clone()));
        if self.has_failed_hypothesis() {
            self.conclusion = Conclusion::Inconclusive;
            self.solvable_upper_bound = None;
            return self;
        }
        if self.conclusion == Conclusion::NotSlice {
            let assumed: Vec<String> = self
                .hypotheses
                .iter()
                .filter(|h| h.status == Status::Assumed)
                .map(|h| h.statement.clone())
                .collect();
            if !assumed.is_empty() {
                self.conclusion = Conclusion::NotSliceConditional;
                self.condition = Some(Condition::Assumptions(assumed));
            }
        }
        debug_assert!(self.is_sound());
        self
    }

    pub fn headline(&self) -> String {
        match self.solvable_upper_bound {
            Some(n) => format!("SOLVABLE_UPPER_BOUND({n}) + {}", self.conclusion),
            None => self.conclusion.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject,
            "conclusion": self.conclusion.to_string(),
            "solvable_upper_bound": self.solvable_upper_bound,
            "theorem": self.theorem,
            "variants": self.variants,
            "hypotheses": self.hypotheses.iter().map(|h| json!({
                "hypothesis": h.statement,
                "status": h.status.to_string(),
                "detail": h.detail,
            })).collect::<Vec<_>>(),
            "condition": self.condition.as_ref().map(Condition::to_json),
            "notes": self.notes,
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.headline())?;
        writeln!(f, "subject: {}", self.subject)?;
        writeln!(f, "theorem: {}", self.theorem)?;
        for v in &self.variants {
            writeln!(f, "  variant: {v}")?;
        }
        if let Some(c) = &self.condition {
            writeln!(f, "condition: {c}")?;
        }
        writeln!(f, "hypotheses:")?;
        for h in &self.hypotheses {
            writeln!(f, "  [{}] {}: {}", h.status, h.statement, h.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

enum Nonvanishing {
    Zero,
    Interval(String),
    Axiom,
    Unknown,
}

fn classify(t: &RhoTerm, ctx: &Context) -> Nonvanishing {
    if t.is_zero() {
        return Nonvanishing::Zero;
    }
    if let Some(v) = ctx.evaluate(t) {
        if v.is_certainly_nonzero() {
            return Nonvanishing::Interval(v.to_string());
        }
        if v.is_exact() {
            return Nonvanishing::Zero;
        }
    }
    if ctx.axioms.certifies_nonzero(t) {
        Nonvanishing::Axiom
    } else {
        Nonvanishing::Unknown
    }
}

fn atom_knot(a: &RhoAtom) -> Option<&str> {
    match a {
        RhoAtom::Rho0(k) | RhoAtom::Rho1(k) | RhoAtom::Fos { knot: k, .. } => Some(k),
        RhoAtom::CG(_) => None,
    }
}

/// Knots whose declared (not table) flags fired a vanishing rule.
fn declared_rules(raw: &[RhoTerm], ctx: &Context) -> BTreeSet<String> {
    raw.iter()
        .flat_map(|t| t.atoms())
        .filter(|a| ctx.vanishing_reason(a).is_some())
        .filter_map(atom_knot)
        .filter(|k| ctx.knot(k).is_some_and(|r| r.source == FlagSource::Declared))
        .map(str::to_string)
        .collect()
}

/// `NotIn` over an atom shared by every residual term, else `AllNonzero`.
fn residual_condition(unknown: Vec<RhoTerm>) -> Condition {
    let mut common: Option<BTreeSet<RhoAtom>> = None;
    for t in &unknown {
        let s: BTreeSet<RhoAtom> = t.atoms().cloned().collect();
        common = Some(match common {
            None => s,
            Some(c) => c.intersection(&s).cloned().collect(),
        });
    }
    let Some(x) = common.and_then(|c| {
        c.iter().find(|a| matches!(a, RhoAtom::Rho0(_))).or_else(|| c.iter().next()).cloned()
    }) else {
        return Condition::AllNonzero(unknown);
    };
    let var = RhoTerm::atom(x.clone());
    let excluded: BTreeSet<RhoTerm> = unknown
        .iter()
        .map(|t| {
            let a = t.coeff(&x);
            let rest = t - &var.scale(&a);
            rest.scale(&(-Rational::from_integer(1.into()) / a))
        })
        .collect();
    Condition::NotIn { variable: var, excluded: excluded.into_iter().collect() }
}

/// The common core: some first-order signature of `k` must vanish.
fn first_order_core(v: &mut Verdict, k: &ConstructionNode, ctx: &Context) -> Option<Vec<RhoTerm>> {
    let table = match first_order_signatures(k, ctx) {
        Ok(t) => t,
        Err(e) => {
            v.hypotheses.push(Hypothesis::new("first-order signatures computable", Status::Failed, e.to_string()));
            return None;
        }
    };
    v.hypotheses.push(Hypothesis::new(
        "first-order signatures computable",
        Status::Certified,
        format!("{} self-annihilating submodules of the module of {}", table.entries.len(), table.base.name),
    ));
    let ctx = ctx.with_tree(k);
    let raw: Vec<RhoTerm> = table.entries.iter().map(|e| e.raw.clone()).collect();
    for name in declared_rules(&raw, &ctx) {
        v.hypotheses.push(Hypothesis::new(
            format!("annotations of {name}"),
            Status::Assumed,
            "vanishing rules used declared flags",
        ));
    }
    v.notes.extend(table.notes.iter().cloned());
    let mut unknown = Vec::new();
    let mut reasons = Vec::new();
    for e in &table.entries {
        v.notes.extend(e.notes.iter().cloned());
        match classify(&e.term, &ctx) {
            Nonvanishing::Zero => {
                v.notes.push(format!("first-order signature at {} is 0; no obstruction", e.label));
                return None;
            }
            Nonvanishing::Interval(s) => reasons.push(format!("{}: {} = {s}", e.label, e.term)),
            Nonvanishing::Axiom => reasons.push(format!("{}: {} ≠ 0 by declared independence", e.label, e.term)),
            Nonvanishing::Unknown => unknown.push(e.term.clone()),
        }
    }
    if unknown.is_empty() {
        v.hypotheses.push(Hypothesis::new(
            "every first-order signature is nonzero",
            Status::Certified,
            reasons.join("; "),
        ));
        v.conclusion = Conclusion::NotSlice;
    } else {
        v.conclusion = Conclusion::NotSliceConditional;
        v.condition = Some(residual_condition(unknown));
    }
    Some(table.terms())
}

fn bing_variants() -> Vec<String> {
    vec![
        "no iterated Bing double is slice in a rational homology 4-ball".into(),
        "BDⁿ(K) is not rationally (n+1.5)-solvable".into(),
    ]
}

/// Sliceness of every iterated Bing double of `knot` via its first-order
/// signatures.
pub fn bing_obstruction(knot: &ConstructionNode, ctx: &Context) -> Verdict {
    let mut v = Verdict::new(TAG_BING, format!("BDⁿ({knot}) for every n ≥ 1"));
    v.variants = bing_variants();
    if let Err(e) = knot.validate() {
        v.hypotheses.push(Hypothesis::new("construction valid", Status::Failed, e.to_string()));
        return v.gate();
    }
    if !knot.is_knot() {
        v.hypotheses.push(Hypothesis::new("input is a knot", Status::Failed, format!("{} components", knot.components())));
        return v.gate();
    }
    first_order_core(&mut v, knot, ctx);
    v.gate()
}

enum Ambient {
    Trivial(usize),
    SliceAssumed(String),
    SliceKnot(std::sync::Arc<KnotRecord>),
}

struct TopInfection<'a> {
    ambient: Ambient,
    /// `None` for the Bing curve, which is built rather than supplied.
    curve: Option<&'a CurveSpec>,
    bing_level: Option<u32>,
    infectant: &'a ConstructionNode,
}

fn top_infection(tree: &ConstructionNode) -> Option<TopInfection<'_>> {
    use ConstructionNode as N;
    match tree {
        N::BingDouble { parent, iterations } if *iterations >= 1 => Some(TopInfection {
            ambient: Ambient::Trivial(1 << iterations),
            curve: None,
            bing_level: Some(*iterations),
            infectant: parent,
        }),
        N::Infect { parent, curves, infectants } if curves.len() == 1 => {
            let ambient = match &**parent {
                N::TrivialLink(m) => Ambient::Trivial(*m),
                N::SliceLinkAssumed { label, .. } => Ambient::SliceAssumed(label.clone()),
                N::BaseKnot(k) if k.is_slice() => Ambient::SliceKnot(k.clone()),
                _ => return None,
            };
            Some(TopInfection { ambient, curve: Some(&curves[0]), bing_level: None, infectant: &infectants[0] })
        }
        _ => None,
    }
}

fn ambient_hypothesis(a: &Ambient) -> Hypothesis {
    match a {
        Ambient::Trivial(m) => Hypothesis::new("ambient link is slice", Status::Certified, format!("trivial {m}-component link")),
        Ambient::SliceAssumed(l) => Hypothesis::new("ambient link is slice", Status::Assumed, format!("{l} declared slice")),
        Ambient::SliceKnot(k) => Hypothesis::new(
            "ambient link is slice",
            if k.source == FlagSource::Builtin { Status::Certified } else { Status::Assumed },
            format!("{} flagged ribbon/slice", k.name),
        ),
    }
}

/// Exact depth of the `n`-fold Bing curve when the oracle can reach level
/// `n + 1`.
fn bing_depth(n: u32) -> Result<Depth> {
    let w = bing_curve(n)?;
    derived_depth(&w, (n + 1).min(MAX_LEVEL))
}

/// The curve lies in `F⁽ⁿ⁾ − F⁽ⁿ⁺¹⁾` for some `n ≥ 1` of the free ambient
/// group. For a free group this only needs a nontrivial null-homologous
/// word, since free groups are residually solvable.
fn free_depth_hypothesis(top: &TopInfection<'_>) -> Hypothesis {
    const S: &str = "curve lies in F⁽ⁿ⁾ − F⁽ⁿ⁺¹⁾ for some n ≥ 1";
    if let Some(n) = top.bing_level {
        return Hypothesis::new(S, Status::Certified, format!("{n}-fold Bing curve {}", depth_detail(bing_depth(n))));
    }
    let c = top.curve.expect("curve");
    match (&c.certificate, c.depth) {
        (Some(DepthCertificate::Word(w)), Some(d)) => word_hypothesis(S, w, d),
        (Some(DepthCertificate::Assumed(k)), _) if *k >= 1 => {
            Hypothesis::new(S, Status::Assumed, format!("curve {} assumed at depth {k}", c.name))
        }
        (Some(cert), Some(d)) if d.lower_bound() >= 1 => Hypothesis::new(
            S,
            Status::Assumed,
            format!("curve {}: {} gives depth ≥ {} but not nontriviality", c.name, cert.describe(), d.lower_bound()),
        ),
        (None, _) => Hypothesis::new(S, Status::Failed, format!("curve {} has no depth certificate", c.name)),
        _ => Hypothesis::new(S, Status::Failed, format!("curve {} has depth 0", c.name)),
    }
}

fn word_hypothesis(s: &str, w: &FreeWord, d: Depth) -> Hypothesis {
    if w.is_identity() {
        Hypothesis::new(s, Status::Failed, "curve word is trivial")
    } else if d.lower_bound() == 0 {
        Hypothesis::new(s, Status::Failed, format!("word {w} has depth 0"))
    } else {
        Hypothesis::new(s, Status::Certified, format!("word {w}: {d}"))
    }
}

fn depth_detail(d: Result<Depth>) -> String {
    match d {
        Ok(d) => format!("({d})"),
        Err(e) => format!("(depth not recomputed: {e})"),
    }
}

/// Infection of a trivial or slice link along one deep curve: the infected
/// knot's first-order signatures must include a zero (trivial ambient), or
/// one must be below the Cheeger-Gromov constant of the ambient zero
/// surgery (slice ambient).
pub fn infection_obstruction(tree: &ConstructionNode, ctx: &Context) -> Verdict {
    let Some(top) = top_infection(tree) else {
        let mut v = Verdict::new(TAG_TRIVIAL_LINK, tree.to_string());
        v.hypotheses.push(Hypothesis::new(
            "tree is a single-curve infection of a trivial or slice link",
            Status::Failed,
            format!("got {tree}"),
        ));
        return v.gate();
    };
    let tag = match top.ambient {
        Ambient::Trivial(_) => TAG_TRIVIAL_LINK,
        _ => TAG_SLICE_LINK,
    };
    let mut v = Verdict::new(tag, tree.to_string());
    v.variants = match top.ambient {
        Ambient::Trivial(_) => vec!["not slice in a rational homology 4-ball".into(), "not rationally (n+1.5)-solvable".into()],
        _ => vec!["not slice in a rational homology 4-ball".into()],
    };
    if let Err(e) = tree.validate() {
        v.hypotheses.push(Hypothesis::new("construction valid", Status::Failed, e.to_string()));
        return v.gate();
    }
    v.hypotheses.push(ambient_hypothesis(&top.ambient));
    let depth = match top.ambient {
        Ambient::Trivial(_) => free_depth_hypothesis(&top),
        _ => {
            let c = top.curve.expect("curve");
            match c.depth_lower_bound() {
                Some(d) if d >= 1 => Hypothesis::new(
                    "curve lies in the n-th derived subgroup, n ≥ 1",
                    if c.certificate.as_ref().is_some_and(DepthCertificate::is_assumed) { Status::Assumed } else { Status::Certified },
                    format!("curve {}: depth ≥ {d}", c.name),
                ),
                _ => Hypothesis::new("curve lies in the n-th derived subgroup, n ≥ 1", Status::Failed, format!("curve {} has depth 0 or no certificate", c.name)),
            }
        }
    };
    v.hypotheses.push(depth);
    if v.has_failed_hypothesis() {
        return v.gate();
    }
    let terms = first_order_core(&mut v, top.infectant, ctx);
    if let (Some(terms), Ambient::SliceAssumed(_) | Ambient::SliceKnot(_)) = (terms, &top.ambient) {
        if v.conclusion != Conclusion::Inconclusive {
            let label = match &top.ambient {
                Ambient::SliceAssumed(l) => format!("M_{l}"),
                Ambient::SliceKnot(k) => format!("M_{}", k.name),
                Ambient::Trivial(_) => unreachable!(),
            };
            v.conclusion = Conclusion::NotSliceConditional;
            v.condition = Some(Condition::MinAbsAtLeast { terms, bound: RhoAtom::CG(label) });
        }
    }
    v.gate()
}

/// One operator level `R_j` of a doubling tower.
struct Level<'a> {
    record: std::sync::Arc<KnotRecord>,
    curves: Vec<CurveSpec>,
    below: &'a ConstructionNode,
    is_nine46: bool,
}

fn peel_level(node: &ConstructionNode) -> Option<Level<'_>> {
    use ConstructionNode as N;
    match node {
        N::RDouble { parent, .. } => {
            let N::Infect { parent: r, curves, .. } = node.desugar_rdouble().ok()? else { return None };
            let N::BaseKnot(record) = *r else { return None };
            Some(Level { record, curves, below: parent, is_nine46: true })
        }
        N::Infect { parent, curves, infectants } if !infectants.is_empty() => {
            let N::BaseKnot(record) = &**parent else { return None };
            if !record.is_slice() {
                return None;
            }
            let first = normalize_tree(&infectants[0]);
            if infectants.iter().skip(1).any(|k| normalize_tree(k) != first) {
                return None;
            }
            Some(Level { record: record.clone(), curves: curves.clone(), below: &infectants[0], is_nine46: record.name == "nine46" })
        }
        _ => None,
    }
}

/// Some pair in the submodule generated by the curves pairs nontrivially.
fn blanchfield_hypothesis(j: usize, level: &Level<'_>) -> Hypothesis {
    let s = format!("level {j} ({}): curves generate x, y with Bl(x, y) ≠ 0", level.record.name);
    let module = match level.record.module() {
        Ok(m) => m,
        Err(e) => return Hypothesis::new(s, Status::Failed, e.to_string()),
    };
    let mut classes = Vec::new();
    for c in &level.curves {
        match &c.alex_class {
            Some(x) => classes.push(x.clone()),
            None => return Hypothesis::new(s, Status::Failed, Error::MissingAlexClass { curve: c.name.clone() }.to_string()),
        }
    }
    let gens = match crate::alexmod::Submodule::span(&module, &classes) {
        Ok(p) => p.generators(&module),
        Err(e) => return Hypothesis::new(s, Status::Failed, e.to_string()),
    };
    let names = &level.record.basis_names;
    for (a, x) in gens.iter().enumerate() {
        for y in &gens[a..] {
            let b = module.blanchfield(x, y);
            if !b.is_zero() {
                let show = |e: &crate::alexmod::ModElement| {
                    crate::alexmod::Submodule::span(&module, std::slice::from_ref(e))
                        .map(|p| p.label(&module, names))
                        .unwrap_or_default()
                };
                return Hypothesis::new(s, Status::Certified, format!("Bl on generators of {} and {} is {b}", show(x), show(y)));
            }
        }
    }
    Hypothesis::new(s, Status::Failed, "the curves generate a self-annihilating submodule; Bl vanishes on it")
}

fn arf_of(node: &ConstructionNode) -> Option<(u8, bool)> {
    use ConstructionNode as N;
    match node {
        N::BaseKnot(k) => k.arf().map(|a| (a, k.seifert.is_some() || k.source == FlagSource::Builtin)),
        N::Infect { parent, .. } if parent.is_knot() => arf_of(parent),
        N::RDouble { .. } => Some((0, true)),
        N::ConnectedSum(parts) => parts.iter().try_fold((0u8, true), |(a, c), p| {
            let (b, d) = arf_of(p)?;
            Some(((a + b) % 2, c && d))
        }),
        N::Multiple { parent, count } => arf_of(parent).map(|(a, c)| ((a * (*count % 2) as u8) % 2, c)),
        _ => None,
    }
}

/// `T_α ∘ R_{n−k} ∘ … ∘ R₁(K)` lies in `F_n`; if `|ρ₀(K)|` exceeds a
/// constant depending only on the operators, no positive multiple lies in
/// `F_{n+1}`.
pub fn doubling_operator_verdict(tree: &ConstructionNode, ctx: &Context) -> Verdict {
    let mut multiple = 1;
    let mut cur = tree;
    while let ConstructionNode::Multiple { parent, count } = cur {
        multiple *= *count;
        cur = parent;
    }
    let mut v = Verdict::new(TAG_DOUBLING, tree.to_string());
    v.variants = vec![
        "not rationally (n+1)-solvable".into(),
        "infinite order in the topological concordance group".into(),
    ];
    if let Err(e) = tree.validate() {
        v.hypotheses.push(Hypothesis::new("construction valid", Status::Failed, e.to_string()));
        return v.gate();
    }
    if multiple > 1 {
        v.notes.push(format!("multiple m = {multiple}: the conclusion holds for every positive multiple"));
    }
    let Some(top) = top_infection(cur) else {
        v.hypotheses.push(Hypothesis::new(
            "tree matches T_α ∘ R_{n−k} ∘ … ∘ R₁(K)",
            Status::Failed,
            format!("top level {cur} is not a single-curve infection of a slice link"),
        ));
        return v.gate();
    };
    v.hypotheses.push(ambient_hypothesis(&top.ambient));
    let (k, depth_h) = top_depth(&top);
    v.hypotheses.push(depth_h);

    let mut levels = Vec::new();
    let mut x = top.infectant;
    while let Some(level) = peel_level(x) {
        x = level.below;
        levels.push(level);
    }
    // innermost operator is R₁
    levels.reverse();
    for (j, level) in levels.iter().enumerate() {
        let j = j + 1;
        let status = if level.record.source == FlagSource::Builtin { Status::Certified } else { Status::Assumed };
        v.hypotheses.push(Hypothesis::new(format!("R_{j} = {} is slice", level.record.name), status, "ribbon/slice flag"));
        v.hypotheses.push(blanchfield_hypothesis(j, level));
    }
    let knot = x;
    v.hypotheses.push(match arf_of(knot) {
        Some((0, true)) => Hypothesis::new("Arf(K) = 0", Status::Certified, format!("K = {knot}")),
        Some((0, false)) => Hypothesis::new("Arf(K) = 0", Status::Assumed, format!("declared for K = {knot}")),
        Some(_) => Hypothesis::new("Arf(K) = 0", Status::Failed, format!("Arf({knot}) = 1")),
        None => Hypothesis::new("Arf(K) = 0", Status::Failed, format!("no Arf data for {knot}")),
    });
    if v.has_failed_hypothesis() {
        return v.gate();
    }
    let n = k + levels.len() as u32;
    v.solvable_upper_bound = Some(n);
    let ctx = ctx.with_tree(tree);
    let rho = match rho0_term(knot) {
        Ok(t) => simplify(&t, &ctx),
        Err(e) => {
            v.hypotheses.push(Hypothesis::new("ρ₀(K) defined", Status::Failed, e.to_string()));
            return v.gate();
        }
    };
    let all_nine46 = !levels.is_empty() && levels.iter().all(|l| l.is_nine46);
    let bound = if ctx.sharp_constant && all_nine46 {
        v.variants.push("constant independent of n and k: Cheeger-Gromov constant of the zero surgery on 9₄₆".into());
        RhoAtom::CG("M_nine46".into())
    } else {
        if ctx.sharp_constant {
            v.notes.push("sharp constant needs every operator level to be the 9₄₆ operator; using the generic constant".into());
        }
        RhoAtom::CG(operator_label(cur, knot))
    };
    if rho.is_zero() {
        v.notes.push("ρ₀(K) = 0, so |ρ₀(K)| > C cannot hold".into());
        v.conclusion = Conclusion::Inconclusive;
    } else {
        v.conclusion = Conclusion::NotSliceConditional;
        v.condition = Some(Condition::AbsGreater { term: rho.clone(), bound });
        if let Some(val) = ctx.evaluate(&rho) {
            v.notes.push(format!("{rho} = {val}"));
        }
    }
    v.gate()
}

fn top_depth(top: &TopInfection<'_>) -> (u32, Hypothesis) {
    const S: &str = "α lies in the k-th derived subgroup but not the (k+1)-st";
    if let Some(n) = top.bing_level {
        return match bing_depth(n) {
            Ok(Depth::Exact(d)) if d == n => (n, Hypothesis::new(S, Status::Certified, format!("{n}-fold Bing curve: depth = {n}"))),
            Ok(d) => (n, Hypothesis::new(S, Status::Assumed, format!("{n}-fold Bing curve: oracle reached {d}"))),
            Err(e) => (n, Hypothesis::new(S, Status::Assumed, format!("{n}-fold Bing curve: {e}"))),
        };
    }
    let c = top.curve.expect("curve");
    let free = matches!(top.ambient, Ambient::Trivial(_));
    match (&c.certificate, c.depth) {
        (Some(DepthCertificate::Word(w)), Some(Depth::Exact(d))) if free && d >= 1 => {
            (d, Hypothesis::new(S, Status::Certified, format!("word {w}: depth = {d}")))
        }
        (Some(DepthCertificate::Word(_)), Some(Depth::AtLeast(d))) if free => {
            (d, Hypothesis::new(S, Status::Failed, format!("curve {}: depth ≥ {d}, exact depth not reached", c.name)))
        }
        (Some(DepthCertificate::Assumed(d)), _) if *d >= 1 => {
            (*d, Hypothesis::new(S, Status::Assumed, format!("curve {} assumed at depth {d}", c.name)))
        }
        (Some(cert), Some(d)) if d.lower_bound() >= 1 => (
            d.lower_bound(),
            Hypothesis::new(S, Status::Assumed, format!("curve {}: {}", c.name, cert.describe())),
        ),
        _ => (0, Hypothesis::new(S, Status::Failed, format!("curve {} has depth 0 or no certificate", c.name))),
    }
}

/// The operator with `K` replaced by a placeholder, naming the constant.
fn operator_label(top: &ConstructionNode, knot: &ConstructionNode) -> String {
    fn swap(n: &ConstructionNode, knot: &ConstructionNode, hole: &ConstructionNode) -> ConstructionNode {
        use ConstructionNode as N;
        if n == knot {
            return hole.clone();
        }
        match n {
            N::Infect { parent, curves, infectants } => N::Infect {
                parent: parent.clone(),
                curves: curves.clone(),
                infectants: infectants.iter().map(|k| swap(k, knot, hole)).collect(),
            },
            N::BingDouble { parent, iterations } => N::BingDouble { parent: Box::new(swap(parent, knot, hole)), iterations: *iterations },
            N::RDouble { label, parent } => N::RDouble { label: label.clone(), parent: Box::new(swap(parent, knot, hole)) },
            other => other.clone(),
        }
    }
    let hole = ConstructionNode::knot(std::sync::Arc::new(KnotRecord::opaque("-", KnotFlags::default())));
    swap(top, knot, &hole).to_string()
}

/// Checks a tree against each engine that applies and returns the verdicts.
pub fn verdicts_for(tree: &ConstructionNode, ctx: &Context) -> Vec<Verdict> {
    let mut out = Vec::new();
    let mut inner = tree;
    while let ConstructionNode::Multiple { parent, .. } = inner {
        inner = parent;
    }
    if inner.is_knot() {
        out.push(bing_obstruction(inner, ctx));
    }
    if top_infection(inner).is_some() {
        out.push(infection_obstruction(inner, ctx));
        out.push(doubling_operator_verdict(tree, ctx));
    }
    out
}

/// A built-in record by name, for tests and examples.
pub fn builtin_node(name: &str) -> Option<ConstructionNode> {
    knots::builtin(name).map(ConstructionNode::knot)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactalg::rat;
    use crate::knots::KnotFlags;

    fn opaque(name: &str) -> ConstructionNode {
        ConstructionNode::knot(Arc::new(KnotRecord::opaque(name, KnotFlags { arf: Some(0), ..Default::default() })))
    }

    fn nine46_knot(k1: ConstructionNode, k2: ConstructionNode) -> ConstructionNode {
        let r = knots::nine46();
        let m = r.module().unwrap();
        ConstructionNode::infect(
            ConstructionNode::knot(Arc::new(r)),
            vec![
                CurveSpec::linking_zero("α").with_class(m.generator(0)),
                CurveSpec::linking_zero("β").with_class(m.generator(1)),
            ],
            vec![k1, k2],
        )
    }

    #[test]
    fn equal_infectants_give_residual_set() {
        let k = nine46_knot(opaque("K1"), opaque("K1"));
        let v = bing_obstruction(&k, &Context::new());
        assert_eq!(v.conclusion, Conclusion::NotSliceConditional);
        let Some(Condition::NotIn { variable, excluded }) = &v.condition else { panic!("{v}") };
        assert_eq!(variable, &RhoTerm::rho0("K1"));
        assert_eq!(excluded, &vec![RhoTerm::zero(), RhoTerm::rho1("nine46").scale(&rat(-1, 2))]);
        assert!(v.is_sound());
    }

    #[test]
    fn certified_values_give_not_slice() {
        // ⟨α⟩ and ⟨β⟩ give ρ₀(trefoil) = −4/3; P = 0 keeps ρ¹(9₄₆) symbolic
        let t = builtin_node("trefoil").unwrap();
        let k = nine46_knot(t.clone(), t);
        let v = bing_obstruction(&k, &Context::new());
        assert_eq!(v.conclusion, Conclusion::NotSliceConditional);
        let mut ctx = Context::new();
        ctx.axioms.declare_nonzero(RhoAtom::Rho0("K".into()));
        let slice = bing_obstruction(&builtin_node("nine46").unwrap(), &ctx);
        assert_eq!(slice.conclusion, Conclusion::Inconclusive);
    }

    #[test]
    fn gate_downgrades_assumed() {
        let mut v = Verdict::new(TAG_BING, "x".into());
        v.conclusion = Conclusion::NotSlice;
        v.hypotheses.push(Hypothesis::new("h", Status::Assumed, ""));
        let v = v.gate();
        assert_eq!(v.conclusion, Conclusion::NotSliceConditional);
        assert!(v.is_sound());
    }

    #[test]
    fn isotropic_curves_fail_blanchfield_check() {
        let r = knots::nine46();
        let m = r.module().unwrap();
        let level = ConstructionNode::infect(
            ConstructionNode::knot(Arc::new(r)),
            vec![CurveSpec::linking_zero("α").with_class(m.generator(0))],
            vec![opaque("K")],
        );
        let v = doubling_operator_verdict(&ConstructionNode::bing(level, 1), &Context::new());
        assert_eq!(v.conclusion, Conclusion::Inconclusive);
        let failed: Vec<_> = v.hypotheses.iter().filter(|h| h.status == Status::Failed).collect();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].statement.starts_with("level 1"));
    }

    #[test]
    fn tower_verdict() {
        let tower = ConstructionNode::rdouble_tower(opaque("J0"), 2);
        let v = doubling_operator_verdict(&ConstructionNode::bing(tower, 1), &Context::new());
        assert_eq!(v.solvable_upper_bound, Some(3));
        assert_eq!(v.conclusion, Conclusion::NotSliceConditional);
        assert!(matches!(&v.condition, Some(Condition::AbsGreater { term, .. }) if *term == RhoTerm::rho0("J0")));
        assert!(v.to_string().contains("SOLVABLE_UPPER_BOUND(3)"));
    }
}
