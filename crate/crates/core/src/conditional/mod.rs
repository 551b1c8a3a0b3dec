//! Selection functions and the conditional operators they induce.

mod operator;
mod selection;
mod symbolic;

pub use operator::{ConditionalAxiom, ConditionalOperator};
pub use selection::{SelectionCondition, SelectionFunction, CONDITIONAL_TABLE_CAP, SPLIT_SEARCH_CAP};
pub use symbolic::{
    omega_minimal_holds, omega_minimal_selection, SymbolicConditionalOperator, CONDITIONAL_ATOM_CAP,
};

use crate::error::{Error, Result};

pub fn builtin_conditional_example(name: &str) -> Result<SymbolicConditionalOperator> {
    match name {
        "example5" => Ok(SymbolicConditionalOperator::Example5),
        "omega-lewis" => Ok(SymbolicConditionalOperator::OmegaLewis),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}
