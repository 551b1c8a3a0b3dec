// Formulas over Kripke and counterfactual structures.

use eventlogic::conditional::SelectionFunction;
use eventlogic::epistemic::KripkeRelation;
use eventlogic::sets::{bits, Universe};
use eventlogic::syntax::{parse_formula, Frame, Scheme, Structure};
use eventlogic::Result;

pub fn run() -> Result<()> {
    let u = Universe::new(["s", "t", "v"])?;
    let rel = KripkeRelation::from_partition(&u, &[u.mask_of(&["s", "t"])?, u.mask_of(&["v"])?])?;
    let m = Structure::from_names(Frame::Kripke(rel), &[("p", vec!["s", "t"]), ("q", vec!["t", "v"])])?;
    for text in ["K(p)", "K(q)", "K(p) => p", "!K(q) => K(!K(q))"] {
        let phi = parse_formula(text)?;
        println!("[[{phi}]] = {}", m.intension_of(&phi)?);
    }
    println!("s |= K(p | q): {}", m.model_check("s", &parse_formula("K(p | q)")?)?);
    for s in [Scheme::K1, Scheme::K2, Scheme::K3, Scheme::K4] {
        println!("{s} valid: {}", m.scheme_validity(s)?.holds());
    }

    // Closest p-worlds: the world itself when possible, otherwise everything.
    let f = SelectionFunction::from_fn(&u, |w, h| if h & bits::bit(w) != 0 { bits::bit(w) } else { h })?;
    let c = Structure::from_names(Frame::Counterfactual(f), &[("p", vec!["s"]), ("q", vec!["s", "v"])])?;
    let phi = parse_formula("p ~> q")?;
    println!("[[{phi}]] = {}", c.intension_of(&phi)?);
    if let Err(e) = parse_formula("p ~> q ~> p") {
        println!("rejected: {e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
