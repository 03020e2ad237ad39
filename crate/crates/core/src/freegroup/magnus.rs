//! Iterated Magnus embeddings.
//!
//! Level `k` models `F/F⁽ᵏ⁾`. Level 1 is the abelianisation ℤᵐ. For
//! `k ≥ 2`, `F/F⁽ᵏ⁾ = F/[N, N]` with `N = F⁽ᵏ⁻¹⁾` embeds in `M ⋊ F/N`
//! where `M` is the free ℤ[F/N]-module of rank `m`, via
//! `xᵢ ↦ (xᵢ, eᵢ)` and `(g, a)(h, b) = (gh, a + g·b)`. Elements of each
//! level are hash-consed to integer ids, so equality is id equality and
//! products are memoised.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::{FreeWord, MAX_LEVEL};
use crate::{Error, Exec, Result};

type Id = u32;

/// Exact derived-series depth, or a lower bound when the search stopped at
/// the requested level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Depth {
    Exact(u32),
    AtLeast(u32),
}

impl Depth {
    /// Largest level known to contain the word.
    pub fn lower_bound(self) -> u32 {
        match self {
            Depth::Exact(n) | Depth::AtLeast(n) => n,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Depth::Exact(_))
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Exact(n) => write!(f, "depth = {n}"),
            Depth::AtLeast(n) => write!(f, "depth ≥ {n}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Node {
    Abelian(Vec<i64>),
    Wreath { quotient: Id, tail: Vec<(Id, Vec<i64>)> },
}

#[derive(Default)]
struct Level {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    mul: HashMap<(Id, Id), Id>,
    inv: HashMap<Id, Id>,
}

/// Hash-consed arena for levels `1..=depth`.
pub(crate) struct Magnus {
    rank: usize,
    levels: Vec<Level>,
    identity: Vec<Id>,
    node_cap: usize,
}

/// Upper bound on interned elements across all levels.
const NODE_CAP: usize = 4_000_000;

impl Magnus {
    pub(crate) fn new(rank: usize, depth: u32) -> Self {
        let mut m = Magnus { rank, levels: Vec::new(), identity: Vec::new(), node_cap: NODE_CAP };
        for k in 1..=depth as usize {
            m.levels.push(Level::default());
            let id = if k == 1 {
                m.intern(1, Node::Abelian(vec![0; rank]))
            } else {
                m.intern(k, Node::Wreath { quotient: m.identity[k - 2], tail: Vec::new() })
            };
            m.identity.push(id);
        }
        m
    }

    fn total_nodes(&self) -> usize {
        self.levels.iter().map(|l| l.nodes.len()).sum()
    }

    fn intern(&mut self, k: usize, node: Node) -> Id {
        let lvl = &mut self.levels[k - 1];
        if let Some(&id) = lvl.index.get(&node) {
            return id;
        }
        let id = lvl.nodes.len() as Id;
        lvl.nodes.push(node.clone());
        lvl.index.insert(node, id);
        id
    }

    fn node(&self, k: usize, id: Id) -> &Node {
        &self.levels[k - 1].nodes[id as usize]
    }

    fn identity(&self, k: usize) -> Id {
        self.identity[k - 1]
    }

    fn make_wreath(&mut self, k: usize, quotient: Id, tail: BTreeMap<Id, Vec<i64>>) -> Id {
        let tail = tail.into_iter().filter(|(_, v)| v.iter().any(|&c| c != 0)).collect();
        self.intern(k, Node::Wreath { quotient, tail })
    }

    pub(crate) fn mul(&mut self, k: usize, a: Id, b: Id) -> Id {
        if a == self.identity(k) {
            return b;
        }
        if b == self.identity(k) {
            return a;
        }
        if let Some(&r) = self.levels[k - 1].mul.get(&(a, b)) {
            return r;
        }
        let r = match (self.node(k, a).clone(), self.node(k, b).clone()) {
            (Node::Abelian(x), Node::Abelian(y)) => {
                let v = x.iter().zip(&y).map(|(p, q)| p + q).collect();
                self.intern(k, Node::Abelian(v))
            }
            (Node::Wreath { quotient: ga, tail: ta }, Node::Wreath { quotient: gb, tail: tb }) => {
                let q = self.mul(k - 1, ga, gb);
                let mut tail: BTreeMap<Id, Vec<i64>> = ta.into_iter().collect();
                for (key, v) in tb {
                    let nk = self.mul(k - 1, ga, key);
                    add_into(&mut tail, nk, &v, 1);
                }
                self.make_wreath(k, q, tail)
            }
            _ => unreachable!("mixed levels"),
        };
        self.levels[k - 1].mul.insert((a, b), r);
        r
    }

    pub(crate) fn inv(&mut self, k: usize, a: Id) -> Id {
        if let Some(&r) = self.levels[k - 1].inv.get(&a) {
            return r;
        }
        let r = match self.node(k, a).clone() {
            Node::Abelian(x) => self.intern(k, Node::Abelian(x.iter().map(|c| -c).collect())),
            Node::Wreath { quotient, tail } => {
                let gi = self.inv(k - 1, quotient);
                let mut out = BTreeMap::new();
                for (key, v) in tail {
                    let nk = self.mul(k - 1, gi, key);
                    add_into(&mut out, nk, &v, -1);
                }
                self.make_wreath(k, gi, out)
            }
        };
        self.levels[k - 1].inv.insert(a, r);
        r
    }

    pub(crate) fn generator(&mut self, k: usize, i: usize, sign: i8) -> Id {
        let g = if k == 1 {
            let mut v = vec![0; self.rank];
            v[i] = 1;
            self.intern(1, Node::Abelian(v))
        } else {
            let q = self.generator(k - 1, i, 1);
            let mut v = vec![0; self.rank];
            v[i] = 1;
            let id = self.identity(k - 1);
            self.make_wreath(k, q, BTreeMap::from([(id, v)]))
        };
        if sign > 0 {
            g
        } else {
            self.inv(k, g)
        }
    }

    /// Image of `w` at level `k`, by the Fox-derivative walk: each letter
    /// contributes `±eᵢ` at the current prefix in level `k − 1`.
    pub(crate) fn eval(&mut self, k: usize, w: &FreeWord) -> Result<Id> {
        if k == 1 {
            return Ok(self.intern(1, Node::Abelian(w.abelianization())));
        }
        let mut q = self.identity(k - 1);
        let mut tail: BTreeMap<Id, Vec<i64>> = BTreeMap::new();
        for &(i, e) in w.letters() {
            let mut v = vec![0; self.rank];
            v[i] = 1;
            if e > 0 {
                add_into(&mut tail, q, &v, 1);
                let g = self.generator(k - 1, i, 1);
                q = self.mul(k - 1, q, g);
            } else {
                let g = self.generator(k - 1, i, -1);
                q = self.mul(k - 1, q, g);
                add_into(&mut tail, q, &v, -1);
            }
            if self.total_nodes() > self.node_cap {
                return Err(Error::ResourceCap {
                    what: format!("Magnus model support at level {k} exceeds {} elements", self.node_cap),
                    lower_bound: 0,
                });
            }
        }
        Ok(self.make_wreath(k, q, tail))
    }

    fn export(&self, k: usize, id: Id) -> QuotientElement {
        match self.node(k, id) {
            Node::Abelian(v) => QuotientElement::Abelian(v.clone()),
            Node::Wreath { quotient, tail } => QuotientElement::Wreath(Box::new(WreathElement {
                level: (k - 1) as u32,
                quotient: self.export(k - 1, *quotient),
                tail: tail.iter().map(|(key, v)| (self.export(k - 1, *key), v.clone())).collect(),
            })),
        }
    }
}

fn add_into(tail: &mut BTreeMap<Id, Vec<i64>>, key: Id, v: &[i64], sign: i64) {
    let e = tail.entry(key).or_insert_with(|| vec![0; v.len()]);
    for (a, b) in e.iter_mut().zip(v) {
        *a += sign * b;
    }
}

/// Normal form of an element of `F/F⁽ⁿ⁾`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum QuotientElement {
    /// `n = 1`: exponent-sum vector.
    Abelian(Vec<i64>),
    Wreath(Box<WreathElement>),
}

impl QuotientElement {
    pub fn is_identity(&self) -> bool {
        match self {
            QuotientElement::Abelian(v) => v.iter().all(|&c| c == 0),
            QuotientElement::Wreath(w) => w.is_identity(),
        }
    }
}

/// Element `(quotient, tail)` of `ℤᵐ[F/F⁽ⁿ⁾] ⋊ F/F⁽ⁿ⁾`, modelling
/// `F/F⁽ⁿ⁺¹⁾`. The tail is finitely supported with no zero vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WreathElement {
    pub level: u32,
    pub quotient: QuotientElement,
    pub tail: BTreeMap<QuotientElement, Vec<i64>>,
}

impl WreathElement {
    pub fn is_identity(&self) -> bool {
        self.quotient.is_identity() && self.tail.is_empty()
    }

    /// Product in the same model, `(g, a)(h, b) = (gh, a + g·b)`.
    pub fn mul(&self, other: &WreathElement) -> WreathElement {
        assert_eq!(self.level, other.level);
        let quotient = qmul(&self.quotient, &other.quotient);
        let mut tail = self.tail.clone();
        for (k, v) in &other.tail {
            let nk = qmul(&self.quotient, k);
            let e = tail.entry(nk).or_insert_with(|| vec![0; v.len()]);
            for (a, b) in e.iter_mut().zip(v) {
                *a += b;
            }
        }
        tail.retain(|_, v| v.iter().any(|&c| c != 0));
        WreathElement { level: self.level, quotient, tail }
    }
}

fn qmul(a: &QuotientElement, b: &QuotientElement) -> QuotientElement {
    match (a, b) {
        (QuotientElement::Abelian(x), QuotientElement::Abelian(y)) => {
            QuotientElement::Abelian(x.iter().zip(y).map(|(p, q)| p + q).collect())
        }
        (QuotientElement::Wreath(x), QuotientElement::Wreath(y)) => QuotientElement::Wreath(Box::new(x.mul(y))),
        _ => panic!("mixed levels"),
    }
}

fn check_level(n: u32) -> Result<()> {
    if n > MAX_LEVEL {
        return Err(Error::ResourceCap {
            what: format!("derived-series level {n} exceeds the guard {MAX_LEVEL}"),
            lower_bound: 0,
        });
    }
    Ok(())
}

/// Image of `w` in the model of `F/F⁽ⁿ⁺¹⁾`; trivial iff `w ∈ F⁽ⁿ⁺¹⁾`.
pub fn magnus_embed(w: &FreeWord, n: u32) -> Result<WreathElement> {
    if n == 0 {
        return Err(Error::OutOfRange("magnus_embed needs n ≥ 1".into()));
    }
    check_level(n)?;
    let k = n as usize + 1;
    let mut m = Magnus::new(w.rank(), n + 1);
    let id = m.eval(k, w)?;
    match m.export(k, id) {
        QuotientElement::Wreath(b) => Ok(*b),
        QuotientElement::Abelian(_) => unreachable!(),
    }
}

/// Largest `n ≤ n_max` with `w ∈ F⁽ⁿ⁾`.
pub fn derived_depth(w: &FreeWord, n_max: u32) -> Result<Depth> {
    check_level(n_max)?;
    let mut m = Magnus::new(w.rank(), n_max);
    for k in 1..=n_max as usize {
        let id = match m.eval(k, w) {
            Ok(id) => id,
            Err(Error::ResourceCap { what, .. }) => {
                return Err(Error::ResourceCap { what, lower_bound: k as u32 - 1 })
            }
            Err(e) => return Err(e),
        };
        if id != m.identity(k) {
            return Ok(Depth::Exact(k as u32 - 1));
        }
    }
    Ok(Depth::AtLeast(n_max))
}

pub fn derived_depth_batch(words: &[FreeWord], n_max: u32, exec: Exec) -> Vec<Result<Depth>> {
    exec.map(words, |w| derived_depth(w, n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::bing_curve;

    fn w(s: &str, r: usize) -> FreeWord {
        FreeWord::parse(s, r).unwrap()
    }

    #[test]
    fn depths() {
        assert_eq!(derived_depth(&w("[x1,x2]", 2), 5).unwrap(), Depth::Exact(1));
        assert_eq!(derived_depth(&w("[[x1,x2],[x3,x4]]", 4), 5).unwrap(), Depth::Exact(2));
        assert_eq!(derived_depth(&w("x1", 2), 5).unwrap(), Depth::Exact(0));
        assert_eq!(derived_depth(&FreeWord::identity(2), 3).unwrap(), Depth::AtLeast(3));
        assert_eq!(derived_depth(&bing_curve(3).unwrap(), 4).unwrap(), Depth::Exact(3));
        // [x, y]·[x, z] has depth 1, a product of depth-1 commutators stays at 1
        assert_eq!(derived_depth(&w("[x1,x2][x1,x3]", 3), 4).unwrap(), Depth::Exact(1));
        assert!(matches!(derived_depth(&w("x1", 1), 6), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn embed_examples() {
        let id = magnus_embed(&FreeWord::identity(2), 2).unwrap();
        assert!(id.is_identity());
        let c = magnus_embed(&w("[x1,x2]", 2), 1).unwrap();
        assert!(c.quotient.is_identity());
        assert!(!c.tail.is_empty());
        assert!(magnus_embed(&w("[x1,x2][x2,x1]", 2), 1).unwrap().is_identity());
        // Fox derivatives of xyx⁻¹y⁻¹: ∂/∂x = 1 − xyx⁻¹, ∂/∂y = x − xyx⁻¹y⁻¹ → 4 support points
        let keys: usize = c.tail.values().map(|v| v.iter().filter(|&&x| x != 0).count()).sum();
        assert_eq!(keys, 4);
    }

    #[test]
    fn embedding_is_multiplicative() {
        let u = w("x1 x2^2 x1^-1 x3", 3);
        let v = w("[x3,x1] x2^-1", 3);
        for n in 1..=3 {
            let a = magnus_embed(&u, n).unwrap();
            let b = magnus_embed(&v, n).unwrap();
            assert_eq!(magnus_embed(&u.mul(&v), n).unwrap(), a.mul(&b));
        }
    }

    #[test]
    fn batch_modes_agree() {
        let words: Vec<FreeWord> = (1..=3).map(|n| bing_curve(n).unwrap()).collect();
        let a = derived_depth_batch(&words, 4, Exec::Sequential);
        let b = derived_depth_batch(&words, 4, Exec::Parallel);
        assert_eq!(a, b);
        assert_eq!(a[2], Ok(Depth::Exact(3)));
    }
}
