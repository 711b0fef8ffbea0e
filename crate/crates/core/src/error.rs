use thiserror::Error;

use crate::dictionary::DictionaryKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: duplicate axiom label `{label}`")]
    DuplicateLabel { line: usize, label: String },

    #[error("line {line}: sign `{sign}` is not in the {dictionary} dictionary")]
    SignNotInDictionary {
        line: usize,
        sign: String,
        dictionary: DictionaryKind,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("formula `{0}` is not ground")]
    NotGround(String),

    #[error("formula `{0}` is outside the searchable fragment (contains `|`)")]
    OutsideFragment(String),

    #[error("expected a {expected} database, found {found}")]
    WrongDictionary {
        expected: String,
        found: DictionaryKind,
    },

    #[error("sign `{sign}` does not belong to the {dictionary} dictionary")]
    ForeignSign {
        sign: String,
        dictionary: DictionaryKind,
    },

    #[error("search limits must be positive (depth {depth}, max arguments {max_args})")]
    InvalidLimits { depth: usize, max_args: usize },

    #[error("arguments to flatten have different conclusions: `{0}` and `{1}`")]
    MixedConclusions(String, String),

    #[error("flattener `{flattener}` cannot aggregate the signs {signs}")]
    IncompatibleSigns { flattener: String, signs: String },

    #[error("proof node {path}: {message}")]
    RuleMismatch { path: String, message: String },

    #[error("proof node {path}: hypothesis `{name}` is not discharged by an enclosing rule")]
    UndischargedHypothesis { path: String, name: String },

    #[error("proof node {path}: unknown axiom label `{label}`")]
    UnknownLabel { path: String, label: String },
}

impl Error {
    /// Broad classification used for process exit codes.
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Syntax { .. }
            | Error::DuplicateLabel { .. }
            | Error::SignNotInDictionary { .. } => ErrorClass::Parse,
            Error::NotGround(_)
            | Error::OutsideFragment(_)
            | Error::WrongDictionary { .. }
            | Error::ForeignSign { .. }
            | Error::InvalidLimits { .. }
            | Error::MixedConclusions(..)
            | Error::IncompatibleSigns { .. }
            | Error::UnboundVariable(_) => ErrorClass::Mismatch,
            Error::RuleMismatch { .. }
            | Error::UndischargedHypothesis { .. }
            | Error::UnknownLabel { .. } => ErrorClass::Proof,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input text.
    Parse,
    /// Well-formed input used with the wrong dictionary, fragment or limits.
    Mismatch,
    /// A proof term that does not check.
    Proof,
}
