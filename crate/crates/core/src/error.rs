use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Structured failures (`CostExceeded`, `Ambiguous`, `DecodeFailure`,
/// `NotEquivalent`) are normal outcomes of the attack and decoding routines,
/// not bugs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("cannot puncture every coordinate of a length-{0} code")]
    AllPunctured(usize),

    /// Exhaustive enumeration over `2^dimension` codewords was refused.
    #[error("cost exceeded: dimension {dimension} is above the enumeration cap {cap}")]
    CostExceeded { dimension: usize, cap: usize },

    #[error("decoding failed: {0}")]
    DecodeFailure(String),

    #[error("codes are not equivalent")]
    NotEquivalent,

    #[error("signature multisets differ")]
    SignatureMismatch,

    /// Refinement stopped before every coordinate was distinguished.
    /// `blocks` is the final partition of the first code's coordinates.
    #[error("ambiguous: refinement left {} non-singleton block(s)", blocks.iter().filter(|b| b.len() > 1).count())]
    Ambiguous { blocks: Vec<Vec<usize>> },

    #[error("S * (M * P) != M': the supplied permutation is not consistent")]
    NotConsistent,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for the failures the command-line driver reports with exit code 2.
    pub fn is_structured_failure(&self) -> bool {
        matches!(
            self,
            Error::CostExceeded { .. }
                | Error::Ambiguous { .. }
                | Error::DecodeFailure(_)
                | Error::NotEquivalent
                | Error::SignatureMismatch
                | Error::NotConsistent
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Singular => "Singular",
            Error::InvalidParams(_) => "InvalidParams",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::AllPunctured(_) => "AllPunctured",
            Error::CostExceeded { .. } => "CostExceeded",
            Error::DecodeFailure(_) => "DecodeFailure",
            Error::NotEquivalent => "NotEquivalent",
            Error::SignatureMismatch => "SignatureMismatch",
            Error::Ambiguous { .. } => "Ambiguous",
            Error::NotConsistent => "NotConsistent",
            Error::Parse(_) => "Parse",
        }
    }
}
