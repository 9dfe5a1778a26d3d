use thiserror::Error;

/// Errors raised by the algebra modules.
///
/// Variant names are part of the CLI contract: they are printed verbatim when
/// a command fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("UnknownElement: `{0}` is not an element of the semigroup")]
    UnknownElement(String),

    #[error("EmptyWord: operation requires a nonempty word")]
    EmptyWord,

    #[error("NotLyndon: `{0}` is not a Lyndon word")]
    NotLyndon(String),

    #[error("SingleLetter: standard factorization needs a word of length at least 2")]
    SingleLetter,

    #[error("NotAugmentationKernel: counit of the argument is {0}, expected 0")]
    NotAugmentationKernel(String),

    #[error("SingularBasis: the family is not a basis of the grade-{grade} component")]
    SingularBasis { grade: u32 },

    #[error("IndexMismatch: {0}")]
    IndexMismatch(String),

    #[error("GradeOutOfRange: grade {grade} exceeds the alphabet truncation grade {max}")]
    GradeOutOfRange { grade: u32, max: u32 },

    #[error("WrongSemigroup: `{op}` requires the {expected} semigroup")]
    WrongSemigroup {
        op: &'static str,
        expected: &'static str,
    },

    #[error("InvalidOrder: {0}")]
    InvalidOrder(String),

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    #[error("Parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
