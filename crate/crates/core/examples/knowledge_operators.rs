// Knowledge operators from relations and back.

use eventlogic::epistemic::{EpistemicAxiom, KnowledgeOperator, KripkeRelation, RelationProperty};
use eventlogic::sets::Universe;
use eventlogic::Result;

pub fn run() -> Result<()> {
    let u = Universe::new(["a", "b", "c"])?;
    let rel = KripkeRelation::from_partition(&u, &[u.mask_of(&["a", "b"])?, u.mask_of(&["c"])?])?;
    assert!(rel.has(RelationProperty::Equivalence));

    let k = KnowledgeOperator::derive(&rel)?;
    for e in u.events() {
        println!("K({e}) = {}", k.apply(&e)?);
    }
    for axiom in EpistemicAxiom::ALL {
        println!("{axiom}: {}", k.satisfies(axiom));
    }
    assert_eq!(k.synthesize_relation(), rel);

    // Dropping the loop at `c` breaks reflexivity, and with it A2.
    let bent = KripkeRelation::from_edges(&u, &[("a", "a"), ("a", "b"), ("b", "a"), ("b", "b"), ("c", "a")])?;
    let v = KnowledgeOperator::derive(&bent)?.check(EpistemicAxiom::A2);
    println!("A2 on the bent relation: {:?}", v.witness().map(|w| w.render(&u)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
