use std::collections::BTreeMap;

use super::bits::{self, Mask};
use super::FinCofEvent;
use crate::error::{Error, Result};
use crate::verdict::{SymWitness, SymWorld, Witness};

/// The finite Boolean algebra generated by a list of finite/cofinite events.
///
/// Its atoms partition ℕ; an operator that maps the algebra into itself can be
/// tabulated over atom masks and checked with the finite-table checkers.
#[derive(Debug, Clone)]
pub struct ProbeAlgebra {
    atoms: Vec<FinCofEvent>,
}

impl ProbeAlgebra {
    pub fn generated_by(generators: &[FinCofEvent], cap: usize) -> Result<Self> {
        let bound = generators
            .iter()
            .filter_map(FinCofEvent::support_bound)
            .max()
            .map_or(0, |b| b + 1);
        let signature = |k: u64| -> Vec<bool> { generators.iter().map(|g| g.contains(k)).collect() };
        let tail = signature(bound);
        let mut groups: BTreeMap<Vec<bool>, Vec<u64>> = BTreeMap::new();
        for k in 0..bound {
            groups.entry(signature(k)).or_default().push(k);
        }
        let mut atoms: Vec<FinCofEvent> = Vec::new();
        let mut tail_atom_present = false;
        for (sig, points) in &groups {
            if *sig == tail {
                tail_atom_present = true;
                let others = (0..bound).filter(|k| !points.contains(k));
                atoms.push(FinCofEvent::cofinite(others));
            } else {
                atoms.push(FinCofEvent::finite(points.iter().copied()));
            }
        }
        if !tail_atom_present {
            atoms.push(FinCofEvent::cofinite(0..bound));
        }
        atoms.sort_by_key(|a| a.min_element());
        if atoms.len() > cap {
            return Err(Error::ProbeAlgebraTooLarge {
                atoms: atoms.len(),
                cap,
            });
        }
        Ok(ProbeAlgebra { atoms })
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[FinCofEvent] {
        &self.atoms
    }

    pub fn to_mask(&self, e: &FinCofEvent) -> Result<Mask> {
        let mut m = 0;
        for (i, a) in self.atoms.iter().enumerate() {
            if a.is_subset(e) {
                m |= bits::bit(i);
            } else if !a.intersect(e).is_empty() {
                return Err(Error::OutsideProbeAlgebra);
            }
        }
        Ok(m)
    }

    pub fn from_mask(&self, m: Mask) -> FinCofEvent {
        bits::members(m).fold(FinCofEvent::empty(), |acc, i| acc.union(&self.atoms[i]))
    }

    /// Translates a witness found on atom masks back to symbolic events; a
    /// witness world becomes the least number of its atom.
    pub fn lift_witness(&self, w: &Witness) -> SymWitness {
        SymWitness {
            world: w
                .world
                .and_then(|a| self.atoms[a].min_element())
                .map(SymWorld::Nat),
            sets: w.sets.iter().map(|&(n, m)| (n, self.from_mask(m))).collect(),
        }
    }

    /// Tabulates a unary operator over all `2^atoms` elements.
    pub fn tabulate_unary<F>(&self, op: F) -> Result<Vec<Mask>>
    where
        F: Fn(&FinCofEvent) -> FinCofEvent,
    {
        let elems: Vec<FinCofEvent> = (0..1u32 << self.atom_count()).map(|m| self.from_mask(m)).collect();
        elems.iter().map(|e| self.to_mask(&op(e))).collect()
    }

    /// Tabulates a binary operator; row `a * 2^atoms + b` holds `op(a, b)`.
    pub fn tabulate_binary<F>(&self, op: F) -> Result<Vec<Mask>>
    where
        F: Fn(&FinCofEvent, &FinCofEvent) -> FinCofEvent,
    {
        let elems: Vec<FinCofEvent> = (0..1u32 << self.atom_count()).map(|m| self.from_mask(m)).collect();
        let mut out = Vec::with_capacity(elems.len() * elems.len());
        for a in &elems {
            for b in &elems {
                out.push(self.to_mask(&op(a, b))?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singletons_generate_grid() {
        let gens: Vec<_> = (1..=6).map(|k| FinCofEvent::finite([k])).collect();
        let alg = ProbeAlgebra::generated_by(&gens, 8).unwrap();
        assert_eq!(alg.atom_count(), 7);
        let e = FinCofEvent::cofinite([2, 5]);
        let m = alg.to_mask(&e).unwrap();
        assert_eq!(alg.from_mask(m), e);
        assert_eq!(alg.to_mask(&FinCofEvent::finite([9])), Err(Error::OutsideProbeAlgebra));
    }

    #[test]
    fn single_cofinite_probe() {
        let alg = ProbeAlgebra::generated_by(&[FinCofEvent::co_singleton(1)], 4).unwrap();
        assert_eq!(alg.atom_count(), 2);
        assert!(alg.atoms().contains(&FinCofEvent::finite([1])));
    }

    #[test]
    fn cap_is_enforced() {
        let gens: Vec<_> = (0..10).map(|k| FinCofEvent::finite([k])).collect();
        assert!(matches!(
            ProbeAlgebra::generated_by(&gens, 4),
            Err(Error::ProbeAlgebraTooLarge { atoms: 11, cap: 4 })
        ));
    }
}
