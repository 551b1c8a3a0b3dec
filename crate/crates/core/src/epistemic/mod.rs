//! Knowledge relations and the operators they induce on events.

mod operator;
mod relation;
mod symbolic;

pub use operator::{EpistemicAxiom, KnowledgeOperator, Provenance, KNOWLEDGE_TABLE_CAP};
pub use relation::{KripkeRelation, RelationProperty};
pub use symbolic::{SymbolicKnowledgeOperator, KNOWLEDGE_ATOM_CAP};

use crate::error::{Error, Result};
use crate::sets::Universe;

/// A table operator or one of the symbolic builtins.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyKnowledgeOperator {
    Table(KnowledgeOperator),
    Symbolic(SymbolicKnowledgeOperator),
}

/// The operator on `Ω = {1,2,3}` that maps `{1}` and `{2,3}` to `∅` and
/// every other event to itself.
pub fn builtin_k0() -> KnowledgeOperator {
    let u = Universe::new(["1", "2", "3"]).expect("three worlds");
    let one = 0b001;
    let two_three = 0b110;
    KnowledgeOperator::from_fn(
        &u,
        |e| if e == one || e == two_three { 0 } else { e },
        Provenance::Builtin,
    )
    .expect("within cap")
}

pub fn builtin_epistemic_example(name: &str) -> Result<AnyKnowledgeOperator> {
    match name {
        "K0" => Ok(AnyKnowledgeOperator::Table(builtin_k0())),
        "K1" => Ok(AnyKnowledgeOperator::Symbolic(SymbolicKnowledgeOperator::K1Cofinite)),
        "K2" => Ok(AnyKnowledgeOperator::Symbolic(SymbolicKnowledgeOperator::K2Cofinite)),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}
