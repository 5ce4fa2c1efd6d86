use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("feature table line {line}, column {column}: {message}")]
    TableSyntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("factor notation at byte {offset}: {message}")]
    FactorSyntax { offset: usize, message: String },
    #[error("grammar file: {0}")]
    GrammarSyntax(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("property `{0}` declared twice")]
    DuplicateProperty(String),
    #[error("symbol `{0}` declared twice")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` has an empty property set")]
    EmptySymbol(String),
    #[error("symbols `{0}` and `{1}` have identical property sets")]
    IndistinctSymbols(String, String),
    #[error("property `{0}` belongs to more than one incompatibility class")]
    OverlappingClasses(String),
    #[error("at most {max} properties are supported, got {got}")]
    TooManyProperties { max: usize, got: usize },
    #[error("position {position} holds incompatible properties `{first}` and `{second}`")]
    Incompatible {
        position: usize,
        first: String,
        second: String,
    },

    #[error("unknown symbol `{symbol}` at position {position}")]
    UnknownSymbol { symbol: String, position: usize },
    #[error("factors use different order relations")]
    OrderMismatch,
    #[error("factor of length {len} exceeds the bound k = {k}")]
    FactorTooLong { len: usize, k: usize },
    #[error("k must be at least 1")]
    InvalidK,
    #[error("{what}: {size} exceeds the limit of {limit}")]
    BoundExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("structure is not connected")]
    NotConnected,
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
}

impl Error {
    /// True for malformed input text, as opposed to well-formed input that
    /// fails a semantic check.
    pub fn is_syntax(&self) -> bool {
        matches!(
            self,
            Error::TableSyntax { .. } | Error::FactorSyntax { .. } | Error::GrammarSyntax(_)
        )
    }
}
