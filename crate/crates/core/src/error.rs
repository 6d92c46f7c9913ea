use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A precondition on the arguments does not hold.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The request is well formed but outside what the operation supports.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Float-mode probability mass drifted away from 1.
    #[error("probability mass drifted by {drift:e} (limit {limit:e})")]
    NormalizationDrift { drift: f64, limit: f64 },
    /// An invariant of a closed form was violated; indicates a transcription bug.
    #[error("internal error: {0}")]
    Internal(String),
}

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidArgument(alloc::format!($($arg)*))
    };
}

macro_rules! unsupported {
    ($($arg:tt)*) => {
        $crate::Error::Unsupported(alloc::format!($($arg)*))
    };
}

pub(crate) use invalid;
pub(crate) use unsupported;
