// The builtin operators that satisfy most axioms but not all of them.

use eventlogic::conditional::{ConditionalAxiom, SymbolicConditionalOperator};
use eventlogic::epistemic::{builtin_k0, EpistemicAxiom, SymbolicKnowledgeOperator};
use eventlogic::sets::{FinCofEvent, WitnessFamily};
use eventlogic::Result;

pub fn run() -> Result<()> {
    let k0 = builtin_k0();
    for axiom in EpistemicAxiom::ALL {
        println!("K0 {axiom}: {}", k0.satisfies(axiom));
    }

    // A5 fails on the co-singletons: each E_j is known, their meet is not.
    let family = WitnessFamily::default();
    for k in [SymbolicKnowledgeOperator::K1Cofinite, SymbolicKnowledgeOperator::K2Cofinite] {
        let v = k.check(EpistemicAxiom::A5Fin, Some(&family))?;
        println!("{k} A5: {}", v.witness().map_or("holds".into(), |w| w.to_json().to_string()));
    }

    let ex5 = SymbolicConditionalOperator::Example5;
    let c0 = ex5.check(ConditionalAxiom::C0Fin, Some(&family))?;
    assert!(!c0.holds());
    println!("example5 C0': {}", c0.witness().unwrap().to_json());
    let e1 = FinCofEvent::co_singleton(1);
    println!("E1 ~> E5 = {}", ex5.apply(&e1, &FinCofEvent::co_singleton(5))?);
    println!("E1 ~> {{}} = {}", ex5.apply(&e1, &FinCofEvent::empty())?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
