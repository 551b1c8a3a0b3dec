//! Verification campaigns: generators of finite candidates, named
//! properties, and line-delimited JSON reports.

mod campaign;
mod generator;
mod property;
mod suites;

pub use campaign::{
    run_campaign, Campaign, PropertyTally, Record, Report, RunConfig, DEFAULT_SAMPLES, DEFAULT_SEED,
    RECORDS_PER_PROPERTY,
};
pub use generator::{
    sample_formula, sample_frame, sample_relation, sample_selection, sample_structure, builtin, Candidate, Generator,
    BUILTIN_NAMES,
};
pub use property::{Outcome, Property, EXAMPLE5_GRID, FORMULAS_PER_STRUCTURE, FORMULA_DEPTH, OMEGA_TAIL_PROBES};
pub use suites::{
    counterexample_campaigns, run_suite, suite_campaigns, SuiteReport, LEMMA2_PROPERTIES, STRUCTURE_SAMPLES, SUITES,
    THM2_CORRESPONDENCES,
};
