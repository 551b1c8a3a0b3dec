// Satisfiability of event formulas over small universes.

use eventlogic::epistemic::EpistemicAxiom;
use eventlogic::io::relation_to_json;
use eventlogic::sets::Universe;
use eventlogic::syntax::{event_formula_satisfiable, EventFormula};
use eventlogic::Result;

pub fn run() -> Result<()> {
    let w0 = Universe::numbered(2)?;
    let cases = [
        ("Kop({w1}) == {w1}", vec![EpistemicAxiom::A2]),
        ("!(Kop({w1}) <= {w1})", vec![EpistemicAxiom::A2]),
        ("!(Kop({w1}) <= {w1})", vec![]),
        ("Kop({w1,w2}) == {}", vec![]),
    ];
    for (text, axioms) in cases {
        let ef = EventFormula::parse(text)?;
        let names: Vec<_> = axioms.iter().map(|a| a.name()).collect();
        match event_formula_satisfiable(&ef, &w0, &axioms)? {
            Some(rel) => println!("{text} under {names:?}: {}", relation_to_json(&rel)),
            None => println!("{text} under {names:?}: unsatisfiable"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
