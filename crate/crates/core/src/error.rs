use thiserror::Error;

use crate::homog::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Elements and terms are carried in
/// their text syntax so errors stay cheap to clone and print.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("natural number out of range at byte {pos}")]
    Overflow { pos: usize },

    #[error("term `{0}` contains R and supports classification only")]
    SymbolicTerm(String),

    #[error("`{elem}` is not an element of `{term}`")]
    InvalidElement { term: String, elem: String },

    #[error("enumeration index of `{0}` is too large to represent")]
    IndexTooLarge(String),

    #[error("term `{0}` has uncountably many jumps")]
    UncountableJumps(String),

    #[error("term `{0}` is not separable")]
    NotSeparable(String),

    #[error("term `{0}` does not order embed into the reals")]
    NotEmbeddable(String),

    #[error("set is not dense: nothing from it lies strictly between `{lo}` and `{hi}`")]
    NotDense { lo: String, hi: String },

    #[error("rational table is not order preserving: `{lo}` < `{hi}` but images are {lo_image} and {hi_image}")]
    TableNotMonotone {
        lo: String,
        hi: String,
        lo_image: String,
        hi_image: String,
    },

    #[error("rational table has no value for `{0}`")]
    TableMissing(String),

    #[error("no element of the dense set below `{0}` has been enumerated yet")]
    NoLowerWitness(String),

    #[error("duplicate source `{0}` in partial map")]
    DuplicateSource(String),

    #[error("duplicate target `{0}` in partial map")]
    DuplicateTarget(String),

    #[error("partial map violates {0}")]
    InvalidMap(Violation),
}

impl Error {
    /// Name of the module the error originates from, as reported by the CLI.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Syntax { .. }
            | Error::Overflow { .. }
            | Error::SymbolicTerm(_)
            | Error::InvalidElement { .. }
            | Error::IndexTooLarge(_) => "order-term-core",
            Error::UncountableJumps(_) | Error::NotSeparable(_) => "order-analysis",
            Error::NotEmbeddable(_)
            | Error::NotDense { .. }
            | Error::TableNotMonotone { .. }
            | Error::TableMissing(_)
            | Error::NoLowerWitness(_) => "order-embed",
            Error::DuplicateSource(_) | Error::DuplicateTarget(_) | Error::InvalidMap(_) => {
                "order-homog"
            }
        }
    }

    /// Stable machine-readable kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::Overflow { .. } => "overflow",
            Error::SymbolicTerm(_) => "symbolic_term",
            Error::InvalidElement { .. } => "invalid_element",
            Error::IndexTooLarge(_) => "index_too_large",
            Error::UncountableJumps(_) => "uncountable_jumps",
            Error::NotSeparable(_) => "not_separable",
            Error::NotEmbeddable(_) => "not_embeddable",
            Error::NotDense { .. } => "not_dense",
            Error::TableNotMonotone { .. } => "table_not_monotone",
            Error::TableMissing(_) => "table_missing",
            Error::NoLowerWitness(_) => "no_lower_witness",
            Error::DuplicateSource(_) => "duplicate_source",
            Error::DuplicateTarget(_) => "duplicate_target",
            Error::InvalidMap(_) => "invalid_map",
        }
    }
}
