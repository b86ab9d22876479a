use thiserror::Error;

/// Errors raised by validators, enumerators, and builders.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LabError {
    #[error("probe list is empty")]
    EmptyProbe,
    #[error("compose returned a morphism with wrong endpoints: {0}")]
    PartialComposition(String),
    #[error("functor produced an object outside the target category: {0}")]
    ObjectOutsideTarget(String),
    #[error("natural transformation component has wrong endpoints: {0}")]
    ComponentTypeMismatch(String),
    #[error("hom-set size {size} exceeds cap {cap} for hom({dom}, {cod})")]
    HomBoundExceeded {
        dom: String,
        cod: String,
        size: u64,
        cap: u64,
    },
    #[error("search space size {size} exceeds cap {cap} ({what})")]
    SearchBoundExceeded { what: String, size: u64, cap: u64 },
    #[error("monoidal unit lies outside the probe closure")]
    UnitOutsideProbeClosure,
    #[error("chosen cone is not a product: {0}")]
    NotAProduct(String),
    #[error("chosen cocone is not a coproduct: {0}")]
    NotACoproduct(String),
    #[error("Kleisli lifting square does not commute: {0}")]
    LiftingSquareBroken(String),
    #[error("no unique mediating morphism: {0}")]
    NoMediator(String),
    #[error("derived diagram failed although the window preconditions hold: {0}")]
    Item3DiagramFailed(String),
    #[error("transposed comparison morphism is not an isomorphism: {0}")]
    ComparisonNotIso(String),
    #[error("no braiding available on this monoidal structure")]
    NoBraiding,
    #[error("laxity laws failed although commutativity holds: {0}")]
    LaxLawFailed(String),
    #[error("unknown builtin instance: {0}")]
    UnknownInstance(String),
    #[error("instance parameter out of bounds: {0}")]
    ParamOutOfBounds(String),
    #[error("random category generation failed after retry budget")]
    GenerationFailed,
    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("type error at {path}: {msg}")]
    TypeError { path: String, msg: String },
    #[error("letlang requires a Cartesian instance: {0}")]
    NonCartesianInstance(String),
    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, LabError>;
