//! Preferential frames: a preorder of closeness for every world.

mod frame;
mod synthesis;

pub use frame::{PreferentialFrame, PreferentialProperty, WorldOrder};
pub use synthesis::{domain_of_world, synthesize_preorder, SYNTHESIS_BASE_AXIOMS};

use crate::conditional::{ConditionalAxiom, SelectionCondition};

/// The conditions a frame property guarantees: `P1` gives `S3'`, `P2` gives
/// `S7'`, `P3` gives `S4'` and `P4` gives `S8'`.
pub fn selection_condition_for(p: PreferentialProperty) -> Option<SelectionCondition> {
    match p {
        PreferentialProperty::P1 => Some(SelectionCondition::S3),
        PreferentialProperty::P2 => Some(SelectionCondition::S7),
        PreferentialProperty::P3 => Some(SelectionCondition::S4),
        PreferentialProperty::P4 => Some(SelectionCondition::S8),
        PreferentialProperty::Modular => None,
    }
}

/// The conditional axiom matching a frame property.
pub fn axiom_for(p: PreferentialProperty) -> Option<ConditionalAxiom> {
    selection_condition_for(p).and_then(|c| ConditionalAxiom::matching(c.index()))
}
