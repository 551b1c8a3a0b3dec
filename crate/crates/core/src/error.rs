use thiserror::Error;

/// Errors raised by the toolkit. Property failures are not errors; they are
/// reported through [`crate::Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one world")]
    EmptyUniverse,
    #[error("duplicate world name `{0}`")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("universe of size {size} exceeds the cap of {cap} for {what}")]
    UniverseTooLarge {
        size: usize,
        cap: usize,
        what: &'static str,
    },
    #[error("events belong to different universes")]
    UniverseMismatch,
    #[error("unbound event name `{0}`")]
    UnboundName(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("unknown axiom or property `{0}`")]
    UnknownProperty(String),
    #[error("{0} needs a witness family for symbolic operators")]
    MissingWitnessFamily(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("asserted axiom {axiom} fails: {witness}")]
    AxiomFails { axiom: String, witness: String },
    #[error("strict order is not modular: {0}")]
    NotModular(String),
    #[error("operator `{0}` is only defined at the world at infinity")]
    UndefinedWorld(String),
    #[error("probe algebra has {atoms} atoms, above the cap of {cap}")]
    ProbeAlgebraTooLarge { atoms: usize, cap: usize },
    #[error("operator output leaves the probe algebra")]
    OutsideProbeAlgebra,
    #[error("undeclared atom `{0}`")]
    UndeclaredAtom(String),
    #[error("{0} is not supported by this structure")]
    UnsupportedOperator(&'static str),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("format error: {0}")]
    Format(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
