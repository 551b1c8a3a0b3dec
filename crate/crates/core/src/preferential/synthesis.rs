use super::frame::{PreferentialFrame, WorldOrder};
use crate::conditional::{ConditionalAxiom, ConditionalOperator};
use crate::error::{Error, Result};
use crate::sets::bits::{self, Mask};
use crate::sets::Event;

/// Axioms the order construction relies on, whatever else is asserted.
pub const SYNTHESIS_BASE_AXIOMS: [ConditionalAxiom; 6] = [
    ConditionalAxiom::C1,
    ConditionalAxiom::C2,
    ConditionalAxiom::C5,
    ConditionalAxiom::C6,
    ConditionalAxiom::C9,
    ConditionalAxiom::C10,
];

/// `{x : ω ∉ {x} ⇝ ∅}`.
pub fn domain_of_world(op: &ConditionalOperator, w: usize) -> Event {
    Event::from_mask(op.universe(), domain_mask(op, w))
}

fn domain_mask(op: &ConditionalOperator, w: usize) -> Mask {
    (0..op.universe().len())
        .filter(|&x| op.apply_mask(bits::bit(x), 0) & bits::bit(w) == 0)
        .fold(0, |m, x| m | bits::bit(x))
}

/// Builds a frame from a conditional operator: on the domain of `ω`,
/// `x ≼ y` iff `ω ∈ {x,y} ⇝ {x}` and `ω ∉ {x,y} ⇝ ∅`.
///
/// The base axioms and every asserted axiom are checked first. When `C7'` is
/// asserted the strict part is modular and each order is completed to a
/// total preorder.
pub fn synthesize_preorder(op: &ConditionalOperator, asserted: &[ConditionalAxiom]) -> Result<PreferentialFrame> {
    let u = op.universe();
    for &axiom in SYNTHESIS_BASE_AXIOMS.iter().chain(asserted) {
        if let Some(w) = op.check(axiom)?.witness() {
            return Err(Error::AxiomFails {
                axiom: axiom.name().to_string(),
                witness: w.render(u),
            });
        }
    }
    let n = u.len();
    let mut orders = Vec::with_capacity(n);
    for w in 0..n {
        let domain = domain_mask(op, w);
        let wb = bits::bit(w);
        let mut leq = vec![0; n];
        for x in bits::members(domain) {
            for y in bits::members(domain) {
                let pair = bits::bit(x) | bits::bit(y);
                if op.apply_mask(pair, bits::bit(x)) & wb != 0 && op.apply_mask(pair, 0) & wb == 0 {
                    leq[x] |= bits::bit(y);
                }
            }
        }
        orders.push(WorldOrder::new(n, domain, leq)?);
    }
    let frame = PreferentialFrame::new(u, orders)?;
    if asserted.contains(&ConditionalAxiom::C7) {
        frame.complete_modular_order()
    } else {
        Ok(frame)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epistemic::Provenance;
    use crate::preferential::PreferentialProperty;
    use crate::sets::Universe;

    fn ab() -> Universe {
        Universe::new(["a", "b"]).unwrap()
    }

    #[test]
    fn recovers_a_strict_preference() {
        let u = ab();
        let frame = PreferentialFrame::new(&u, vec![WorldOrder::new(2, 3, vec![3, 2]).unwrap(), WorldOrder::flat(2, 3)])
            .unwrap();
        let op = ConditionalOperator::derive(&frame.derive_selection());
        let back = synthesize_preorder(&op, &[]).unwrap();
        assert!(back.order(0).less(0, 1));
        assert_eq!(ConditionalOperator::derive(&back.derive_selection()), op);
    }

    #[test]
    fn asserted_axioms_are_checked() {
        let u = ab();
        let full = u.full_mask();
        let op = ConditionalOperator::from_fn(&u, |h, e| if bits::subset(h, e) { full } else { 0 }, Provenance::User)
            .unwrap();
        match synthesize_preorder(&op, &[ConditionalAxiom::C3]) {
            Err(Error::AxiomFails { axiom, .. }) => assert_eq!(axiom, "C3'"),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn domains() {
        let u = ab();
        let op = ConditionalOperator::from_fn(&u, |h, e| if h == 0b10 && e == 0 { 0b11 } else { 0b11 & (!h | e) }, Provenance::User)
            .unwrap();
        assert_eq!(domain_of_world(&op, 0).mask(), 0b01);

        let frame = PreferentialFrame::new(&u, vec![WorldOrder::flat(2, 0b01), WorldOrder::flat(2, 0b11)]).unwrap();
        let derived = ConditionalOperator::derive(&frame.derive_selection());
        assert_eq!(domain_of_world(&derived, 0).mask(), 0b01);
        assert_eq!(domain_of_world(&derived, 1).mask(), 0b11);
        let back = synthesize_preorder(&derived, &[ConditionalAxiom::C7]).unwrap();
        assert!(back.satisfies(PreferentialProperty::P2));
    }
}
