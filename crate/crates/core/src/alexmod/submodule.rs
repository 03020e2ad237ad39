use std::fmt::Write as _;

use serde::Serialize;

use super::{AlexModule, ModElement};
use crate::exactalg::LaurentPoly;
use crate::{Error, Exec, Result};

/// A submodule of a module whose components have pairwise distinct primes,
/// in canonical form: `⊕ⱼ Dⱼ·Λ/(orderⱼ)` with each `Dⱼ` a normalized
/// divisor of `orderⱼ`. `Dⱼ = orderⱼ` means the component is absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    divisors: Vec<LaurentPoly>,
}

impl Submodule {
    pub fn zero(m: &AlexModule) -> Self {
        Submodule { divisors: m.components.iter().map(|c| c.order.clone()).collect() }
    }

    pub fn whole(m: &AlexModule) -> Self {
        Submodule { divisors: vec![LaurentPoly::one(); m.components.len()] }
    }

    /// The submodule generated by `gens`.
    pub fn span(m: &AlexModule, gens: &[ModElement]) -> Result<Self> {
        require_split(m)?;
        let divisors = m
            .components
            .iter()
            .enumerate()
            .map(|(j, c)| {
                gens.iter()
                    .fold(c.order.clone(), |acc, g| LaurentPoly::gcd(&acc, &g.coords[j]))
            })
            .collect();
        Ok(Submodule { divisors })
    }

    pub fn divisors(&self) -> &[LaurentPoly] {
        &self.divisors
    }

    /// Canonical generators `Dⱼ·gⱼ`, one per present component.
    pub fn generators(&self, m: &AlexModule) -> Vec<ModElement> {
        self.divisors
            .iter()
            .enumerate()
            .filter(|(j, d)| **d != m.components[*j].order)
            .map(|(j, d)| m.scale(d, &m.generator(j)))
            .collect()
    }

    /// Indices of components meeting the submodule nontrivially.
    pub fn support(&self, m: &AlexModule) -> Vec<usize> {
        (0..self.divisors.len())
            .filter(|&j| self.divisors[j] != m.components[j].order)
            .collect()
    }

    pub fn dimension(&self, m: &AlexModule) -> usize {
        self.divisors
            .iter()
            .zip(&m.components)
            .map(|(d, c)| c.order.span() - d.span())
            .sum()
    }

    pub fn is_zero(&self, m: &AlexModule) -> bool {
        self.support(m).is_empty()
    }

    pub fn contains(&self, x: &ModElement) -> bool {
        x.coords
            .iter()
            .zip(&self.divisors)
            .all(|(c, d)| d.is_unit() || c.residue(d).is_zero())
    }

    pub fn is_isotropic(&self, m: &AlexModule) -> bool {
        m.form_vanishes_on(&self.generators(m))
    }

    /// Renders as `0` or `⟨…⟩` with generators over the named basis.
    pub fn label(&self, m: &AlexModule, names: &[String]) -> String {
        let gens = self.support(m);
        if gens.is_empty() {
            return "0".into();
        }
        let mut s = String::from("⟨");
        for (i, j) in gens.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            let d = &self.divisors[*j];
            let name = names.get(*j).cloned().unwrap_or_else(|| format!("e{j}"));
            if d.is_one() {
                s.push_str(&name);
            } else {
                let _ = write!(s, "({d})·{name}");
            }
        }
        s.push('⟩');
        s
    }

    pub fn to_json(&self, m: &AlexModule) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out {
            generators: Vec<ModElement>,
            dimension: usize,
        }
        serde_json::to_value(Out { generators: self.generators(m), dimension: self.dimension(m) })
            .unwrap()
    }
}

pub fn submodule_membership(p: &Submodule, x: &ModElement) -> bool {
    p.contains(x)
}

fn require_split(m: &AlexModule) -> Result<()> {
    if m.splits_componentwise() {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "submodule lattice needs pairwise distinct irreducible factors across primary \
             components; this module has a repeated factor in two summands"
                .into(),
        ))
    }
}

/// Every submodule `P` with `P ⊆ P^⊥`, ordered by ℚ-dimension and then by
/// the components it meets.
pub fn isotropic_submodules(m: &AlexModule, exec: Exec) -> Result<Vec<Submodule>> {
    require_split(m)?;
    // divisors of primeᵉ are prime^k, 0 ≤ k ≤ e
    let choices: Vec<Vec<LaurentPoly>> = m
        .components
        .iter()
        .map(|c| (0..=c.exponent).map(|k| c.prime.pow(k)).collect())
        .collect();
    let total: usize = choices.iter().map(|c| c.len()).product();
    let found = exec.map_range(total, |mut idx| {
        let divisors: Vec<LaurentPoly> = choices
            .iter()
            .map(|opts| {
                let d = opts[idx % opts.len()].clone();
                idx /= opts.len();
                d
            })
            .collect();
        let p = Submodule { divisors };
        p.is_isotropic(m).then_some(p)
    });
    let mut out: Vec<Submodule> = found.into_iter().flatten().collect();
    out.sort_by_cached_key(|p| (p.dimension(m), p.support(m), p.divisors.iter().map(|d| d.sort_key()).collect::<Vec<_>>()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::SeifertMatrix;

    fn module(e: &[&[i64]]) -> AlexModule {
        AlexModule::from_seifert(&SeifertMatrix::new(e.iter().map(|r| r.to_vec()).collect()).unwrap())
            .unwrap()
    }

    #[test]
    fn nine46_lattice() {
        let m = module(&[&[0, 2], &[1, 0]]);
        let subs = isotropic_submodules(&m, Exec::Sequential).unwrap();
        assert_eq!(subs.len(), 3);
        let (a, b) = (m.generator(0), m.generator(1));
        assert!(subs[0].is_zero(&m));
        assert!(subs[1].contains(&a) && !subs[1].contains(&b));
        assert!(subs[2].contains(&b) && !subs[2].contains(&a));
        let names = vec!["α".to_string(), "β".to_string()];
        let labels: Vec<_> = subs.iter().map(|p| p.label(&m, &names)).collect();
        assert_eq!(labels, vec!["0", "⟨α⟩", "⟨β⟩"]);
        assert_eq!(isotropic_submodules(&m, Exec::Parallel).unwrap(), subs);
    }

    #[test]
    fn trefoil_lattice_is_trivial() {
        let m = module(&[&[-1, 1], &[0, -1]]);
        let subs = isotropic_submodules(&m, Exec::Sequential).unwrap();
        assert_eq!(subs, vec![Submodule::zero(&m)]);
    }

    #[test]
    fn span_is_componentwise_gcd() {
        let m = module(&[&[0, 2], &[1, 0]]);
        let a = m.generator(0);
        let p = Submodule::span(&m, &[m.scale(&LaurentPoly::from_ints(0, &[3, 1]), &a)]).unwrap();
        assert!(p.contains(&a));
        assert_eq!(p.dimension(&m), 1);
        assert!(Submodule::span(&m, &[]).unwrap().is_zero(&m));
        assert!(Submodule::whole(&m).contains(&m.cyclic_generator()));
    }

    #[test]
    fn repeated_primes_are_unsupported() {
        let t = SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        let m = AlexModule::from_seifert(&t.connected_sum(&t)).unwrap();
        assert!(matches!(isotropic_submodules(&m, Exec::Sequential), Err(Error::Unsupported(_))));
    }
}
