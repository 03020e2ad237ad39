//! The JSON input document: named knots, independence axioms, named
//! construction trees and numeric options.
//!
//! ```json
//! {
//!   "knots":  { "K1": { "opaque": true, "flags": { "arf": 0 } } },
//!   "axioms": { "nonzero": ["rho0(K1)"] },
//!   "builds": { "L": { "op": "bing", "parent": "K1", "iterations": 2 } },
//!   "options": { "tol": "1e-9" }
//! }
//! ```
//!
//! The whole document is resolved and validated on load, so every later
//! lookup is infallible apart from unknown names given on the command line.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use crate::alexmod::ModElement;
use crate::exactalg::{LaurentPoly, Rational, DEFAULT_DEGREE_CAP};
use crate::freegroup::{FreeWord, MAX_LEVEL};
use crate::infection::{ConstructionNode, CurveSpec};
use crate::knots::{self, Coords, KnotFlags, KnotRecord};
use crate::rhocalc::{Context, RhoAtom};
use crate::seifert::SeifertMatrix;
use crate::{Error, Result};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    knots: BTreeMap<String, RawKnot>,
    #[serde(default)]
    axioms: RawAxioms,
    #[serde(default)]
    builds: BTreeMap<String, Value>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKnot {
    seifert: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    opaque: bool,
    #[serde(default)]
    flags: RawFlags,
    #[serde(default)]
    basis_names: Vec<String>,
    #[serde(default)]
    disk_kernels: Vec<Vec<Coords>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFlags {
    #[serde(default)]
    amphichiral: bool,
    #[serde(default)]
    ribbon: bool,
    #[serde(default)]
    slice: bool,
    arf: Option<u8>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxioms {
    #[serde(default)]
    independent: Vec<Vec<String>>,
    #[serde(default)]
    nonzero: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    tol: Option<Value>,
    degree_cap: Option<usize>,
    #[serde(default)]
    sharp_constant: bool,
    max_level: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub tol: Rational,
    /// The tolerance as written, for display.
    pub tol_text: String,
    pub degree_cap: usize,
    pub sharp_constant: bool,
    /// Highest derived-series level the depth oracle is asked to decide.
    pub max_level: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: parse_decimal("1e-9").expect("literal"),
            tol_text: "1e-9".into(),
            degree_cap: DEFAULT_DEGREE_CAP,
            sharp_constant: false,
            max_level: MAX_LEVEL,
        }
    }
}

/// A name resolved against the document, then the built-in table.
#[derive(Clone, Debug)]
pub enum Resolved {
    Knot(Arc<KnotRecord>),
    Build(ConstructionNode),
}

impl Resolved {
    pub fn node(&self) -> ConstructionNode {
        match self {
            Resolved::Knot(k) => ConstructionNode::knot(k.clone()),
            Resolved::Build(n) => n.clone(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub context: Context,
    pub builds: BTreeMap<String, ConstructionNode>,
    pub options: Options,
}

impl FromStr for Document {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("input document: {e}")))?;
        Self::from_json(v)
    }
}

impl Document {
    pub fn from_json(v: Value) -> Result<Self> {
        let raw: RawDocument = serde_json::from_value(v).map_err(|e| Error::Schema(e.to_string()))?;
        let options = resolve_options(&raw.options)?;
        let mut context = Context::new();
        context.tol = options.tol.clone();
        context.sharp_constant = options.sharp_constant;

        for (name, k) in &raw.knots {
            if raw.builds.contains_key(name) {
                return Err(Error::Schema(format!("{name} is both a knot and a build")));
            }
            context.insert(Arc::new(resolve_knot(name, k)?));
        }

        let atom = |s: &String| -> Result<RhoAtom> {
            let a: RhoAtom = s.parse()?;
            match &a {
                RhoAtom::Rho0(k) | RhoAtom::Rho1(k) | RhoAtom::Fos { knot: k, .. } => {
                    if context.knot(k).is_none() && !raw.builds.contains_key(k) {
                        return Err(Error::UnknownReference(format!("{k} in axiom {s}")));
                    }
                }
                RhoAtom::CG(_) => {}
            }
            Ok(a)
        };
        let mut axioms = context.axioms.clone();
        for set in &raw.axioms.independent {
            axioms.declare_independent(set.iter().map(atom).collect::<Result<Vec<_>>>()?);
        }
        for a in &raw.axioms.nonzero {
            axioms.declare_nonzero(atom(a)?);
        }
        context.axioms = axioms;

        let mut doc = Document { context, builds: BTreeMap::new(), options };
        let mut visiting = Vec::new();
        for name in raw.builds.keys() {
            doc.resolve_build(name, &raw.builds, &mut visiting)?;
        }
        Ok(doc)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        text.parse()
    }

    pub fn resolve(&self, name: &str) -> Result<Resolved> {
        if let Some(b) = self.builds.get(name) {
            return Ok(Resolved::Build(b.clone()));
        }
        self.context
            .knot(name)
            .map(Resolved::Knot)
            .ok_or_else(|| Error::UnknownReference(name.to_string()))
    }

    pub fn knot(&self, name: &str) -> Result<Arc<KnotRecord>> {
        match self.resolve(name)? {
            Resolved::Knot(k) => Ok(k),
            Resolved::Build(_) => Err(Error::Unsupported(format!("{name} is a build, not a knot record"))),
        }
    }

    /// Context extended with every base knot of `node`.
    pub fn context_for(&self, node: &ConstructionNode) -> Context {
        self.context.with_tree(node)
    }

    fn resolve_build(
        &mut self,
        name: &str,
        raw: &BTreeMap<String, Value>,
        visiting: &mut Vec<String>,
    ) -> Result<ConstructionNode> {
        if let Some(b) = self.builds.get(name) {
            return Ok(b.clone());
        }
        if visiting.iter().any(|v| v == name) {
            visiting.push(name.to_string());
            return Err(Error::Schema(format!("build cycle: {}", visiting.join(" → "))));
        }
        visiting.push(name.to_string());
        let node = self.parse_node(&raw[name], raw, visiting)?;
        node.validate()?;
        visiting.pop();
        self.builds.insert(name.to_string(), node.clone());
        Ok(node)
    }

    fn parse_node(
        &mut self,
        v: &Value,
        raw: &BTreeMap<String, Value>,
        visiting: &mut Vec<String>,
    ) -> Result<ConstructionNode> {
        if let Some(name) = v.as_str() {
            if raw.contains_key(name) {
                return self.resolve_build(name, raw, visiting);
            }
            return self
                .context
                .knot(name)
                .map(ConstructionNode::knot)
                .ok_or_else(|| Error::UnknownReference(name.to_string()));
        }
        let o = v.as_object().ok_or_else(|| Error::Schema(format!("expected a name or node object, got {v}")))?;
        let op = o.get("op").and_then(Value::as_str).ok_or_else(|| Error::Schema(format!("node without op: {v}")))?;
        let allowed: &[&str] = match op {
            "knot" => &["name"],
            "trivial" => &["components"],
            "slice_link" => &["label", "components"],
            "infect" => &["parent", "curves", "infectants"],
            "bing" => &["parent", "iterations"],
            "rdouble" => &["parent", "label", "times"],
            "sum" => &["summands"],
            "multiple" => &["parent", "count"],
            _ => return Err(Error::Schema(format!("unknown op {op:?}"))),
        };
        if let Some(k) = o.keys().find(|k| *k != "op" && !allowed.contains(&k.as_str())) {
            return Err(Error::Schema(format!("op {op}: unexpected field {k:?}")));
        }
        let field = |k: &str| o.get(k).ok_or_else(|| Error::Schema(format!("op {op}: missing field {k:?}")));
        let uint = |k: &str| -> Result<u64> {
            field(k)?.as_u64().ok_or_else(|| Error::Schema(format!("op {op}: {k} must be a non-negative integer")))
        };
        let list = |k: &str| -> Result<&Vec<Value>> {
            field(k)?.as_array().ok_or_else(|| Error::Schema(format!("op {op}: {k} must be a list")))
        };
        let string = |k: &str| -> Result<String> {
            field(k)?.as_str().map(str::to_string).ok_or_else(|| Error::Schema(format!("op {op}: {k} must be a string")))
        };
        Ok(match op {
            "knot" => {
                let name = string("name")?;
                ConstructionNode::knot(self.context.knot(&name).ok_or(Error::UnknownReference(name))?)
            }
            "trivial" => ConstructionNode::TrivialLink(uint("components")? as usize),
            "slice_link" => ConstructionNode::SliceLinkAssumed {
                label: string("label")?,
                components: uint("components")? as usize,
            },
            "infect" => {
                let parent = self.parse_node(field("parent")?, raw, visiting)?;
                let infectants = list("infectants")?
                    .iter()
                    .map(|k| self.parse_node(k, raw, visiting))
                    .collect::<Result<Vec<_>>>()?;
                let curves = list("curves")?
                    .iter()
                    .map(|c| self.parse_curve(c, &parent))
                    .collect::<Result<Vec<_>>>()?;
                ConstructionNode::infect(parent, curves, infectants)
            }
            "bing" => {
                let parent = self.parse_node(field("parent")?, raw, visiting)?;
                ConstructionNode::bing(parent, to_u32(uint("iterations")?)?)
            }
            "rdouble" => {
                let parent = self.parse_node(field("parent")?, raw, visiting)?;
                let times = if o.contains_key("times") { to_u32(uint("times")?)? } else { 1 };
                let label = if o.contains_key("label") { string("label")? } else { "R".into() };
                (0..times).fold(parent, |acc, _| ConstructionNode::RDouble { label: label.clone(), parent: Box::new(acc) })
            }
            "sum" => ConstructionNode::ConnectedSum(
                list("summands")?.iter().map(|k| self.parse_node(k, raw, visiting)).collect::<Result<_>>()?,
            ),
            "multiple" => {
                let parent = self.parse_node(field("parent")?, raw, visiting)?;
                ConstructionNode::multiple(parent, to_u32(uint("count")?)?)
            }
            _ => unreachable!(),
        })
    }

    fn parse_curve(&self, v: &Value, parent: &ConstructionNode) -> Result<CurveSpec> {
        const KEYS: &[&str] = &["name", "word", "rank", "assumed_depth", "clone", "linking_zero", "alex_class"];
        let o = v.as_object().ok_or_else(|| Error::Schema(format!("curve must be an object, got {v}")))?;
        if let Some(k) = o.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Error::Schema(format!("curve: unexpected field {k:?}")));
        }
        let name = o
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Schema(format!("curve without a name: {v}")))?;
        let certs = ["word", "assumed_depth", "clone", "linking_zero"].iter().filter(|k| o.contains_key(**k)).count();
        if certs > 1 {
            return Err(Error::Schema(format!("curve {name}: at most one of word, assumed_depth, clone, linking_zero")));
        }
        let level = |k: &str| -> Result<u32> {
            o[k].as_u64()
                .ok_or_else(|| Error::Schema(format!("curve {name}: {k} must be a non-negative integer")))
                .and_then(to_u32)
        };
        let mut c = if let Some(w) = o.get("word") {
            let w = w.as_str().ok_or_else(|| Error::Schema(format!("curve {name}: word must be a string")))?;
            let rank = match o.get("rank") {
                Some(r) => r.as_u64().ok_or_else(|| Error::Schema(format!("curve {name}: rank must be an integer")))? as usize,
                None => parent.components(),
            };
            CurveSpec::word(name, FreeWord::parse(w, rank)?, self.options.max_level)?
        } else if o.contains_key("assumed_depth") {
            CurveSpec::assumed(name, level("assumed_depth")?)
        } else if o.contains_key("clone") {
            CurveSpec::clone_curve(name, level("clone")?)
        } else if let Some(lz) = o.get("linking_zero") {
            if lz != &Value::Bool(true) {
                return Err(Error::Schema(format!("curve {name}: linking_zero must be true when given")));
            }
            CurveSpec::linking_zero(name)
        } else {
            CurveSpec::uncertified(name)
        };
        if let Some(cls) = o.get("alex_class") {
            c = c.with_class(self.parse_class(name, cls, parent)?);
        }
        Ok(c)
    }

    /// A basis name, `"cyclic"`, `"zero"`, or explicit component coordinates.
    fn parse_class(&self, curve: &str, v: &Value, parent: &ConstructionNode) -> Result<ModElement> {
        let rec = parent
            .base_record()
            .ok_or_else(|| Error::Schema(format!("curve {curve}: alex_class needs a knot parent")))?;
        let m = rec.module()?;
        match v {
            Value::String(s) if s == "cyclic" => {
                if !m.is_cyclic() {
                    return Err(Error::Schema(format!("curve {curve}: module of {} is not cyclic", rec.name)));
                }
                Ok(m.cyclic_generator())
            }
            Value::String(s) if s == "zero" => Ok(m.zero()),
            Value::String(s) => {
                let j = rec
                    .basis_index(s)
                    .filter(|&j| j < m.components().len())
                    .ok_or_else(|| Error::UnknownReference(format!("basis element {s} of {}", rec.name)))?;
                Ok(m.generator(j))
            }
            Value::Array(cs) => {
                let coords = cs
                    .iter()
                    .map(|c| LaurentPoly::from_json(c).map_err(|e| Error::Schema(format!("curve {curve}: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                m.element(coords)
            }
            _ => Err(Error::Schema(format!("curve {curve}: bad alex_class {v}"))),
        }
    }

    /// Every name the document defines, knots first.
    pub fn names(&self) -> Vec<String> {
        let mut out: Vec<String> = self.context.knots().map(|k| k.name.clone()).collect();
        out.extend(self.builds.keys().cloned());
        let seen: BTreeSet<_> = out.iter().cloned().collect();
        out.extend(knots::BUILTIN_NAMES.iter().filter(|n| !seen.contains(**n)).map(|n| n.to_string()));
        out
    }
}

fn to_u32(n: u64) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::Schema(format!("{n} is too large")))
}

fn resolve_knot(name: &str, k: &RawKnot) -> Result<KnotRecord> {
    let f = &k.flags;
    if let Some(a) = f.arf {
        if a > 1 {
            return Err(Error::Schema(format!("knot {name}: arf must be 0 or 1")));
        }
    }
    let flags = KnotFlags { amphichiral: f.amphichiral, ribbon: f.ribbon, slice: f.slice, arf: f.arf };
    let mut rec = match (&k.seifert, k.opaque) {
        (Some(_), true) => return Err(Error::Schema(format!("knot {name}: opaque knots have no Seifert matrix"))),
        (None, false) => return Err(Error::Schema(format!("knot {name}: give a seifert matrix or opaque: true"))),
        (None, true) => KnotRecord::opaque(name, flags),
        (Some(rows), false) => {
            let v = SeifertMatrix::new(rows.clone())?;
            let rec = KnotRecord::with_seifert(name, v, flags);
            if let (Some(a), Some(b)) = (f.arf, rec.arf()) {
                if a != b {
                    return Err(Error::Schema(format!("knot {name}: declared arf {a} but the Seifert matrix gives {b}")));
                }
            }
            rec
        }
    };
    if !k.basis_names.is_empty() || !k.disk_kernels.is_empty() {
        let m = rec.module()?;
        let n = m.components().len();
        if k.basis_names.len() > n {
            return Err(Error::Schema(format!("knot {name}: {} basis names for {n} components", k.basis_names.len())));
        }
        for gens in &k.disk_kernels {
            for g in gens {
                m.element(g.clone())?;
            }
        }
    }
    rec.basis_names = k.basis_names.clone();
    rec.disk_kernels = k.disk_kernels.clone();
    Ok(rec)
}

fn resolve_options(o: &RawOptions) -> Result<Options> {
    let mut out = Options::default();
    if let Some(t) = &o.tol {
        let text = match t {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(Error::Schema(format!("options.tol must be a number or string, got {t}"))),
        };
        out.tol = parse_decimal(&text)?;
        out.tol_text = text;
    }
    if let Some(c) = o.degree_cap {
        out.degree_cap = c;
    }
    if let Some(m) = o.max_level {
        if m == 0 || m > MAX_LEVEL {
            return Err(Error::Schema(format!("options.max_level must lie in 1..={MAX_LEVEL}")));
        }
        out.max_level = m;
    }
    out.sharp_constant = o.sharp_constant;
    Ok(out)
}

/// Parses a positive decimal such as `1e-9`, `0.001` or `3/1000` exactly.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("expected a positive number, got {s:?}"));
    let t = s.trim();
    let q = if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        Rational::new(n, d)
    } else {
        let (mant, exp) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let e = exp - frac.len() as i32;
        let ten = BigInt::from(10);
        if e >= 0 {
            Rational::from_integer(digits * num_traits::pow(ten, e as usize))
        } else {
            Rational::new(digits, num_traits::pow(ten, (-e) as usize))
        }
    };
    if q <= Rational::from_integer(0.into()) {
        return Err(bad());
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("1e-9").unwrap(), rat(1, 1_000_000_000));
        assert_eq!(parse_decimal("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_decimal("3/6").unwrap(), rat(1, 2));
        assert!(parse_decimal("-1").is_err());
        assert!(parse_decimal("abc").is_err());
    }

    #[test]
    fn resolves_nested_builds() {
        let doc: Document = r#"{
            "knots": {"K1": {"opaque": true, "flags": {"arf": 0}}},
            "axioms": {"nonzero": ["rho0(K1)"]},
            "builds": {
                "E": {"op": "infect", "parent": "nine46",
                      "curves": [{"name": "α", "linking_zero": true, "alex_class": "α"}],
                      "infectants": ["K1"]},
                "L": {"op": "bing", "parent": "E", "iterations": 2}
            }
        }"#
        .parse()
        .unwrap();
        let Resolved::Build(l) = doc.resolve("L").unwrap() else { panic!() };
        assert_eq!(l.components(), 4);
        assert!(matches!(doc.resolve("trefoil").unwrap(), Resolved::Knot(_)));
    }

    #[test]
    fn rejects_bad_documents() {
        let err = |s: &str| s.parse::<Document>().unwrap_err();
        assert!(matches!(err(r#"{"builds": {"A": "B", "B": "A"}}"#), Error::Schema(m) if m.contains("cycle")));
        assert!(matches!(err(r#"{"builds": {"A": "nope"}}"#), Error::UnknownReference(_)));
        assert!(matches!(err(r#"{"bogus": 1}"#), Error::Schema(_)));
        assert!(matches!(err(r#"{"knots": {"K": {"seifert": [[1]]}}}"#), Error::InvalidSeifert(_)));
        assert!(matches!(err(r#"{"axioms": {"nonzero": ["rho0(Z)"]}}"#), Error::UnknownReference(_)));
        assert!(matches!(err("{"), Error::Parse(_)));
    }
}
