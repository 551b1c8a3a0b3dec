// Selection functions, the conditional operators they induce, and the
// conditions each side satisfies.

use eventlogic::conditional::{ConditionalAxiom, ConditionalOperator, SelectionCondition, SelectionFunction};
use eventlogic::sets::{bits, Universe};
use eventlogic::Result;

pub fn run() -> Result<()> {
    let u = Universe::new(["x", "y", "z"])?;
    // Nearest world by distance on a line x - y - z, ties kept.
    let pos = [0i32, 1, 2];
    let f = SelectionFunction::from_fn(&u, |w, h| {
        let best = bits::members(h).map(|v| (pos[v] - pos[w]).abs()).min();
        bits::members(h)
            .filter(|&v| Some((pos[v] - pos[w]).abs()) == best)
            .fold(0, |m, v| m | bits::bit(v))
    })?;
    for c in SelectionCondition::ALL {
        println!("{c}: {}", f.satisfies(c));
    }

    let op = ConditionalOperator::derive(&f);
    let h = u.event(&["x", "z"])?;
    let e = u.event(&["z"])?;
    println!("{h} ~> {e} = {}", op.apply(&h, &e)?);
    for a in [ConditionalAxiom::C0Fin, ConditionalAxiom::C10] {
        println!("{a}: {}", op.satisfies(a));
    }
    assert_eq!(op.synthesize_selection(), f);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
