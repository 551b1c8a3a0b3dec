// A preferential frame, its selection function, and synthesis of the
// frame back from the conditional operator.

use eventlogic::conditional::{ConditionalAxiom, ConditionalOperator};
use eventlogic::preferential::{synthesize_preorder, PreferentialFrame, PreferentialProperty};
use eventlogic::sets::Universe;
use eventlogic::Result;

pub fn run() -> Result<()> {
    let u = Universe::new(["home", "work", "away"])?;
    let all = vec!["home", "work", "away"];
    // Each world prefers itself, then lists its other preferences.
    let order = |pairs: &[(&'static str, &'static str)]| {
        let mut leq: Vec<_> = all.iter().map(|&w| (w, w)).collect();
        leq.extend_from_slice(pairs);
        leq
    };
    let frame = PreferentialFrame::from_pairs(
        &u,
        &[
            ("home", all.clone(), order(&[("home", "work"), ("work", "away"), ("home", "away")])),
            ("work", all.clone(), order(&[("work", "home"), ("work", "away")])),
            ("away", all.clone(), order(&[("away", "home"), ("away", "work"), ("home", "work"), ("work", "home")])),
        ],
    )?;
    for p in PreferentialProperty::ALL {
        println!("{p}: {}", frame.satisfies(p));
    }

    let f = frame.derive_selection();
    let op = ConditionalOperator::derive(&f);
    let h = u.event(&["work", "away"])?;
    println!("f(home, {h}) = {}", f.select(0, &h)?);
    println!("lewis at home, {h} ~> {{work}}: {}", frame.lewis_evaluate(0, h.mask(), u.mask_of(&["work"])?));

    let back = synthesize_preorder(&op, &[ConditionalAxiom::C7])?;
    assert_eq!(ConditionalOperator::derive(&back.derive_selection()), op);
    println!("synthesized orders reproduce the operator");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
