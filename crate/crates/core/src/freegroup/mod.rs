//! Free groups: reduced words, a small word parser, and exact derived-series
//! depth via iterated Magnus embeddings.

mod magnus;
mod parse;

pub use magnus::{derived_depth, derived_depth_batch, magnus_embed, Depth, QuotientElement, WreathElement};

use std::fmt;

use crate::{Error, Result};

/// Largest derived-series level the depth oracle will explore.
pub const MAX_LEVEL: u32 = 5;

/// A freely reduced word in `x1, …, xm`. Letters are `(generator, ±1)` with
/// zero-based generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    /// Generator `x_{i+1}`.
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i < rank, "generator index out of range");
        FreeWord { rank, letters: vec![(i, 1)] }
    }

    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = (usize, i8)>) -> Result<Self> {
        let mut w = FreeWord::identity(rank);
        for (g, e) in letters {
            if g >= rank || !(e == 1 || e == -1) {
                return Err(Error::OutOfRange(format!("letter ({g}, {e}) in rank {rank}")));
            }
            w.push(g, e);
        }
        Ok(w)
    }

    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        parse::parse(s, rank)
    }

    fn push(&mut self, g: usize, e: i8) {
        if self.letters.last() == Some(&(g, -e)) {
            self.letters.pop();
        } else {
            self.letters.push((g, e));
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(FreeWord::identity(self.rank), |acc, _| acc.mul(&base))
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> Self {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// `u w u⁻¹`.
    pub fn conjugate_by(&self, u: &FreeWord) -> Self {
        u.mul(self).mul(&u.inverse())
    }

    /// Image under the homomorphism `xᵢ ↦ images[i]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        assert_eq!(images.len(), self.rank);
        let rank = images.first().map_or(0, |w| w.rank);
        let mut out = FreeWord::identity(rank);
        for &(g, e) in &self.letters {
            let img = if e > 0 { images[g].clone() } else { images[g].inverse() };
            out = out.mul(&img);
        }
        out
    }

    /// Exponent sums, the image in the abelianisation.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &(g, e) in &self.letters {
            v[g] += e as i64;
        }
        v
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let (g, e) = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == (g, e) {
                j += 1;
            }
            let k = (j - i) as i64 * e as i64;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "x{}", g + 1)?;
            } else {
                write!(f, "x{}^{}", g + 1, k)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// The n-fold Bing-doubling curve: `[x1, x2]` for n = 1, and each generator
/// `xᵢ` replaced by `[x_{2i−1}, x_{2i}]` at every further step. Rank `2ⁿ`.
pub fn bing_curve(n: u32) -> Result<FreeWord> {
    if n == 0 {
        return Err(Error::OutOfRange("bing_curve needs n ≥ 1".into()));
    }
    if n > MAX_LEVEL {
        return Err(Error::ResourceCap { what: format!("bing_curve({n}) exceeds level {MAX_LEVEL}"), lower_bound: 0 });
    }
    let mut w = FreeWord::commutator(&FreeWord::generator(2, 0), &FreeWord::generator(2, 1));
    for level in 2..=n {
        let rank = 1usize << level;
        let images: Vec<FreeWord> = (0..rank / 2)
            .map(|i| FreeWord::commutator(&FreeWord::generator(rank, 2 * i), &FreeWord::generator(rank, 2 * i + 1)))
            .collect();
        w = w.substitute(&images);
    }
    Ok(w)
}
