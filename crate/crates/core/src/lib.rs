//! Finite-model semantics for epistemic and conditional logic.
//!
//! Events are subsets of a finite universe of worlds. Knowledge operators,
//! selection functions, conditional operators and preferential frames are all
//! materialized as tables over events, so every axiom can be decided by
//! exhaustive search. A small symbolic layer over the finite and cofinite
//! subsets of ℕ covers operators that only misbehave on infinite domains.

pub mod cli;
pub mod conditional;
pub mod epistemic;
pub mod error;
pub mod harness;
pub mod io;
pub mod preferential;
pub mod sets;
pub mod syntax;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::{SymWitness, SymWorld, Verdict, Witness};
