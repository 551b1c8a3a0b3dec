use std::fmt;

use super::operator::{check_table, EpistemicAxiom};
use crate::error::{Error, Result};
use crate::sets::{FinCofEvent, ProbeAlgebra, WitnessFamily};
use crate::verdict::{SymWitness, SymWorld, Verdict};

/// Atom cap for tabulating a symbolic knowledge operator.
pub const KNOWLEDGE_ATOM_CAP: usize = 12;

/// Knowledge operators over the finite/cofinite subsets of ℕ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolicKnowledgeOperator {
    /// `E ↦ E` for cofinite `E`, `∅` otherwise.
    K1Cofinite,
    /// `E ↦ ℕ` for cofinite `E`, `∅` otherwise.
    K2Cofinite,
}

impl SymbolicKnowledgeOperator {
    pub fn name(self) -> &'static str {
        match self {
            SymbolicKnowledgeOperator::K1Cofinite => "K1",
            SymbolicKnowledgeOperator::K2Cofinite => "K2",
        }
    }

    pub fn apply(self, e: &FinCofEvent) -> FinCofEvent {
        match (self, e.is_cofinite()) {
            (_, false) => FinCofEvent::empty(),
            (SymbolicKnowledgeOperator::K1Cofinite, true) => e.clone(),
            (SymbolicKnowledgeOperator::K2Cofinite, true) => FinCofEvent::full(),
        }
    }

    /// Checks `axiom` on the Boolean algebra generated by the family's probes.
    /// For `A5fin` with an infinite family the intersection over the whole
    /// family is checked as well.
    pub fn check(self, axiom: EpistemicAxiom, family: Option<&WitnessFamily>) -> Result<Verdict<SymWitness>> {
        let family = family.ok_or_else(|| Error::MissingWitnessFamily(axiom.name().to_string()))?;
        let alg = ProbeAlgebra::generated_by(&family.probes(), KNOWLEDGE_ATOM_CAP)?;
        let table = alg.tabulate_unary(|e| self.apply(e))?;
        if let Some(w) = check_table(alg.atom_count(), &table, axiom) {
            return Ok(Verdict::Fails(alg.lift_witness(&w)));
        }
        if axiom == EpistemicAxiom::A5Fin {
            return Ok(Verdict::from_option(self.family_meet_violation(family)));
        }
        Ok(Verdict::Holds)
    }

    /// Compares `∩_j K(E_j)` with `K(∩_j E_j)` pointwise.
    fn family_meet_violation(self, family: &WitnessFamily) -> Option<SymWitness> {
        let meet = family.intersection();
        let known_meet = self.apply(&meet);
        let horizon = family.horizon();
        let members = family.members_up_to(horizon + 1);
        let known: Vec<FinCofEvent> = members.iter().map(|e| self.apply(e)).collect();
        (0..=horizon).find_map(|k| {
            let lhs = known.iter().all(|e| e.contains(k));
            (lhs != known_meet.contains(k)).then(|| SymWitness {
                world: Some(SymWorld::Nat(k)),
                sets: vec![("meet", meet.clone()), ("K(meet)", known_meet.clone())],
            })
        })
    }
}

impl fmt::Display for SymbolicKnowledgeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SymbolicKnowledgeOperator::*;

    fn single(e: FinCofEvent) -> WitnessFamily {
        WitnessFamily::Events(vec![e])
    }

    #[test]
    fn application() {
        assert_eq!(K1Cofinite.apply(&FinCofEvent::finite([5])), FinCofEvent::empty());
        assert_eq!(K1Cofinite.apply(&FinCofEvent::cofinite([3])), FinCofEvent::cofinite([3]));
        assert_eq!(K2Cofinite.apply(&FinCofEvent::full()), FinCofEvent::full());
        assert_eq!(K2Cofinite.apply(&FinCofEvent::cofinite([1])), FinCofEvent::full());
    }

    #[test]
    fn k1_fails_negative_introspection_at_one() {
        let fam = single(FinCofEvent::co_singleton(1));
        let v = K1Cofinite.check(EpistemicAxiom::A4, Some(&fam)).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.set("E"), Some(&FinCofEvent::co_singleton(1)));
        assert_eq!(w.world, Some(SymWorld::Nat(1)));
        assert!(K1Cofinite.check(EpistemicAxiom::A2, Some(&fam)).unwrap().holds());
        assert!(K1Cofinite.check(EpistemicAxiom::A3, Some(&fam)).unwrap().holds());
    }

    #[test]
    fn k2_fails_truth_axiom() {
        let fam = single(FinCofEvent::co_singleton(1));
        let v = K2Cofinite.check(EpistemicAxiom::A2, Some(&fam)).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.set("E"), Some(&FinCofEvent::co_singleton(1)));
        assert_eq!(w.world, Some(SymWorld::Nat(1)));
    }

    #[test]
    fn finitary_axioms_hold_on_default_probes() {
        let fam = WitnessFamily::default();
        for op in [K1Cofinite, K2Cofinite] {
            for a in [EpistemicAxiom::A1Prime, EpistemicAxiom::A1] {
                assert!(op.check(a, Some(&fam)).unwrap().holds(), "{op} {a}");
            }
        }
    }

    #[test]
    fn infinite_intersections_break_a5() {
        let fam = WitnessFamily::default();
        for op in [K1Cofinite, K2Cofinite] {
            let v = op.check(EpistemicAxiom::A5Fin, Some(&fam)).unwrap();
            let w = v.witness().expect("A5 fails");
            assert_eq!(w.world, Some(SymWorld::Nat(0)));
            assert_eq!(w.set("meet"), Some(&FinCofEvent::finite([0])));
            assert_eq!(w.set("K(meet)"), Some(&FinCofEvent::empty()));
        }
        // a finite family cannot exhibit the failure
        let finite = WitnessFamily::Events(WitnessFamily::default().probes());
        assert!(K1Cofinite.check(EpistemicAxiom::A5Fin, Some(&finite)).unwrap().holds());
    }

    #[test]
    fn family_is_required() {
        assert_eq!(
            K1Cofinite.check(EpistemicAxiom::A1, None),
            Err(Error::MissingWitnessFamily("A1".into()))
        );
    }
}
