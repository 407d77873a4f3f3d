use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error; usage
/// errors belong to the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge `{edge}` names unknown vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("invalid id `{0}`: ids must be nonempty and contain no whitespace or `[`, `]`, `|`, `;`")]
    InvalidId(String),
    #[error("enumeration is not a permutation of the edge ids: {0}")]
    BadEnumeration(String),
    #[error("invalid ladder preset: {0}")]
    InvalidLadder(String),
    #[error("graph has edges of multiplicity omega; algebra elements cannot be built on it")]
    OmegaEdgesUnsupported,
    #[error("operation needs a finite graph, got a ladder preset (use a truncation)")]
    LadderUnsupported,
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("path is not composable: {0}")]
    NotComposable(String),
    #[error("legs have different sources: s({alpha}) != s({beta})")]
    SourceMismatch { alpha: String, beta: String },
    #[error("elements are bound to different graphs")]
    GraphMismatch,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("vertex `{0}` is not regular, so the Cuntz-Krieger expansion cannot pass through it")]
    IrregularVertexOnExpansion(String),
    #[error("element is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: i64 },
    #[error("element is not of degree zero")]
    NotDegreeZero,
    #[error("graph admits no infinite path")]
    NoInfinitePath,
    #[error("invalid lasso: {0}")]
    InvalidLasso(String),
    #[error("tails are not equivalent with the requested lag: {0}")]
    NotComposableTails(String),
    #[error("boundary-path constructions need a row-finite graph without sources: {0}")]
    UnsupportedGraph(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("vertex `{0}` is not in E^0_J for the requested cutoff")]
    VertexNotInCutoff(String),
    #[error("ladder depth {needed} exceeds the materialized truncation {available}")]
    DepthExceeded { needed: usize, available: usize },
    #[error("certificate rejected: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax { line, column, message: message.into() }
    }
}
