use std::fmt;

use super::operator::{check_conditional_table, ConditionalAxiom};
use crate::error::{Error, Result};
use crate::sets::{FinCofEvent, ProbeAlgebra, WitnessFamily};
use crate::verdict::{SymWitness, SymWorld, Verdict};

/// Atom cap for tabulating a symbolic conditional operator.
pub const CONDITIONAL_ATOM_CAP: usize = 8;

/// Conditional operators over the finite/cofinite subsets of ℕ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolicConditionalOperator {
    /// `H ⇝ E = (H ∩ E) ∪ ¬H` when `H ∩ ¬E` is empty, or `H` is infinite
    /// and `H ∩ ¬E` finite; `H ∩ E` otherwise.
    Example5,
    /// Evaluation at the extra world `∞` of the frame `ℕ ∪ {∞}` in which
    /// `i+1` is closer to `∞` than `i`.
    OmegaLewis,
}

impl SymbolicConditionalOperator {
    pub fn name(self) -> &'static str {
        match self {
            SymbolicConditionalOperator::Example5 => "example5",
            SymbolicConditionalOperator::OmegaLewis => "omega-lewis",
        }
    }

    /// The event `H ⇝ E` as a subset of ℕ. Only defined for `Example5`.
    pub fn apply(self, h: &FinCofEvent, e: &FinCofEvent) -> Result<FinCofEvent> {
        match self {
            SymbolicConditionalOperator::Example5 => {
                let exceptions = h.difference(e);
                let tolerant = exceptions.is_empty() || (h.is_cofinite() && exceptions.is_finite());
                let base = h.intersect(e);
                Ok(if tolerant { base.union(&h.complement()) } else { base })
            }
            SymbolicConditionalOperator::OmegaLewis => Err(Error::UndefinedWorld(self.name().into())),
        }
    }

    /// Whether `world ∈ H ⇝ E`.
    pub fn holds_at(self, world: SymWorld, h: &FinCofEvent, e: &FinCofEvent) -> Result<bool> {
        match (self, world) {
            (SymbolicConditionalOperator::Example5, SymWorld::Nat(k)) => Ok(self.apply(h, e)?.contains(k)),
            (SymbolicConditionalOperator::OmegaLewis, SymWorld::Infinity) => Ok(omega_lewis_holds(h, e)),
            _ => Err(Error::UndefinedWorld(self.name().into())),
        }
    }

    /// Checks `axiom` on the Boolean algebra generated by the family's probes.
    /// `C0fin` is instead checked against the family itself: for every
    /// antecedent among the probes, `∅` and `ℕ`, the meet of `H ⇝ E_j` over
    /// the whole family must equal `H ⇝ ∩ E_j`.
    pub fn check(self, axiom: ConditionalAxiom, family: Option<&WitnessFamily>) -> Result<Verdict<SymWitness>> {
        if self == SymbolicConditionalOperator::OmegaLewis {
            return Err(Error::UndefinedWorld(self.name().into()));
        }
        let family = family.ok_or_else(|| Error::MissingWitnessFamily(axiom.name().to_string()))?;
        if axiom == ConditionalAxiom::C0Fin {
            return self.family_meet_violation(family).map(Verdict::from_option);
        }
        let alg = ProbeAlgebra::generated_by(&family.probes(), CONDITIONAL_ATOM_CAP)?;
        let table = alg.tabulate_binary(|h, e| self.apply(h, e).expect("defined on ℕ"))?;
        Ok(Verdict::from_option(
            check_conditional_table(alg.atom_count(), &table, axiom).map(|w| alg.lift_witness(&w)),
        ))
    }

    fn family_meet_violation(self, family: &WitnessFamily) -> Result<Option<SymWitness>> {
        let meet = family.intersection();
        let horizon = family.horizon();
        let members = family.members_up_to(horizon + 1);
        let mut antecedents = family.probes();
        antecedents.extend([FinCofEvent::empty(), FinCofEvent::full()]);
        for h in antecedents {
            let to_meet = self.apply(&h, &meet)?;
            let each: Vec<FinCofEvent> = members.iter().map(|e| self.apply(&h, e)).collect::<Result<_>>()?;
            for k in 0..=horizon {
                let lhs = each.iter().all(|c| c.contains(k));
                if lhs != to_meet.contains(k) {
                    return Ok(Some(SymWitness {
                        world: Some(SymWorld::Nat(k)),
                        sets: vec![("H", h), ("meet", meet), ("H~>meet", to_meet)],
                    }));
                }
            }
        }
        Ok(None)
    }
}

impl fmt::Display for SymbolicConditionalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lewis's evaluation at `∞`: every `H`-world has an `H ∩ E`-world at least
/// as close, beyond which all `H`-worlds are in `E`.
fn omega_lewis_holds(h: &FinCofEvent, e: &FinCofEvent) -> bool {
    match h.max_element() {
        _ if h.is_empty() => true,
        Some(top) => e.contains(top),
        None => h.difference(e).is_finite(),
    }
}

/// The order-minimal selection at `∞`: the greatest element of a finite `H`,
/// and nothing for an infinite `H`, which has no closest element.
pub fn omega_minimal_selection(h: &FinCofEvent) -> FinCofEvent {
    match h.max_element() {
        Some(top) => FinCofEvent::finite([top]),
        None => FinCofEvent::empty(),
    }
}

/// `∞ ∈ H ⇝ E` under the order-minimal selection, `f(∞, H) ⊆ E`.
pub fn omega_minimal_holds(h: &FinCofEvent, e: &FinCofEvent) -> bool {
    omega_minimal_selection(h).is_subset(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use SymbolicConditionalOperator::*;

    fn ej(j: u64) -> FinCofEvent {
        FinCofEvent::co_singleton(j)
    }

    #[test]
    fn example5_membership() {
        assert!(Example5.holds_at(SymWorld::Nat(1), &ej(1), &ej(2)).unwrap());
        assert_eq!(Example5.apply(&ej(1), &ej(5)).unwrap(), ej(5));
        assert_eq!(Example5.apply(&ej(1), &FinCofEvent::empty()).unwrap(), FinCofEvent::empty());
        let h = FinCofEvent::finite([1, 2]);
        let one = FinCofEvent::finite([1]);
        let a = Example5.apply(&h, &one).unwrap();
        let b = Example5.apply(&h, &one.complement()).unwrap();
        assert_eq!(a.union(&b), h);
        assert!(Example5.holds_at(SymWorld::Infinity, &h, &one).is_err());
    }

    #[test]
    fn example5_breaks_the_infinite_meet_at_one() {
        let v = Example5.check(ConditionalAxiom::C0Fin, Some(&WitnessFamily::default())).unwrap();
        let w = v.witness().expect("C0' fails");
        assert_eq!(w.world, Some(SymWorld::Nat(1)));
        assert_eq!(w.set("H"), Some(&ej(1)));
        assert_eq!(w.set("H~>meet"), Some(&FinCofEvent::finite([0])));
    }

    #[test]
    fn example5_on_a_small_grid() {
        let fam = WitnessFamily::Events((1..=3).map(|k| FinCofEvent::finite([k])).collect());
        for a in [ConditionalAxiom::C1, ConditionalAxiom::C3, ConditionalAxiom::C8, ConditionalAxiom::C10] {
            assert!(Example5.check(a, Some(&fam)).unwrap().holds(), "{a}");
        }
        assert!(!Example5.check(ConditionalAxiom::C4, Some(&fam)).unwrap().holds());
    }

    #[test]
    fn omega_frame() {
        let h0 = FinCofEvent::tail_from(0);
        for k in 1..=10 {
            assert!(OmegaLewis.holds_at(SymWorld::Infinity, &h0, &FinCofEvent::tail_from(k)).unwrap());
        }
        assert!(!OmegaLewis.holds_at(SymWorld::Infinity, &h0, &FinCofEvent::empty()).unwrap());
        assert!(omega_minimal_holds(&h0, &FinCofEvent::empty()));
        assert!(OmegaLewis.holds_at(SymWorld::Nat(0), &h0, &h0).is_err());
        let h = FinCofEvent::finite([2, 7]);
        assert_eq!(omega_minimal_selection(&h), FinCofEvent::finite([7]));
        assert!(OmegaLewis.holds_at(SymWorld::Infinity, &h, &FinCofEvent::finite([7])).unwrap());
        assert!(OmegaLewis.holds_at(SymWorld::Infinity, &FinCofEvent::empty(), &FinCofEvent::empty()).unwrap());
    }
}
