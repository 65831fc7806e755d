//! Error type shared across the crate.
//!
//! Every variant carries a stable machine-readable code (see [`Error::code`])
//! so that the CLI and the C API can report failures without parsing display
//! strings. Codes are part of the public contract and never change meaning.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A CSV data row could not be parsed.
    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },

    /// CSV dates are not strictly increasing at the expected stride.
    #[error("non-contiguous dates at line {line}: {reason}")]
    NonContiguous { line: usize, reason: String },

    /// The input contained a header but no data rows.
    #[error("input contains no data rows")]
    Empty,

    /// A series is too short for the requested operation.
    #[error("series too short: {0}")]
    TooShort(String),

    /// Two sequences that must have equal lengths do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Panel sizes must be odd so a strict majority always exists.
    #[error("panel size must be an odd positive integer, got {0}")]
    EvenPanel(u64),

    /// The panel-size search hit its cap before reaching the target.
    #[error("no panel of size <= {cap} reaches the target probability")]
    CapExceeded { cap: u64 },

    /// More convictions than accusations.
    #[error("convicted count {convicted} exceeds accused count {accused}")]
    Inconsistent { convicted: u64, accused: u64 },

    /// A conviction rate needs at least one accused person.
    #[error("accused count must be positive")]
    ZeroAccused,

    /// Every prior-likelihood product is zero, so no posterior exists.
    #[error("all prior-likelihood products are zero")]
    ZeroEvidence,

    /// An opinion level outside the supported scale.
    #[error("opinion level must be an integer in 0..=5, got {0}")]
    OutOfRange(i64),

    /// Association counts where a term occurs in no document or in all of
    /// them; the association magnitude is undefined there.
    #[error("degenerate association counts: {0}")]
    DegenerateTerm(String),

    /// The continuity correction absorbs the whole deviation, so the
    /// corrected numerator is not positive.
    #[error("continuity correction dominates: |f*n - a*b| <= n/2")]
    CorrectionDominates,

    /// A regression design matrix with no usable solution at any order.
    #[error("singular design matrix")]
    SingularDesign,

    /// Every candidate model was demoted during selection.
    #[error("all candidate models failed: {0}")]
    AllModelsFailed(String),

    /// CSV serialization only covers monthly and yearly cadences.
    #[error("unsupported frequency {0} for CSV serialization (expected 12 or 1)")]
    UnsupportedFrequency(u32),

    /// A precondition on plain arguments was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An underlying I/O operation failed.
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code for this error.
    ///
    /// The CLI prints `error[CODE]: message` on stderr and the C API maps
    /// codes onto its status enum, so these strings must never change.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedRow { .. } => "MALFORMED_ROW",
            Error::NonContiguous { .. } => "NON_CONTIGUOUS",
            Error::Empty => "EMPTY",
            Error::TooShort(_) => "TOO_SHORT",
            Error::LengthMismatch { .. } => "LENGTH_MISMATCH",
            Error::EvenPanel(_) => "EVEN_PANEL",
            Error::CapExceeded { .. } => "CAP_EXCEEDED",
            Error::Inconsistent { .. } => "INCONSISTENT",
            Error::ZeroAccused => "ZERO_ACCUSED",
            Error::ZeroEvidence => "ZERO_EVIDENCE",
            Error::OutOfRange(_) => "OUT_OF_RANGE",
            Error::DegenerateTerm(_) => "DEGENERATE_TERM",
            Error::CorrectionDominates => "CORRECTION_DOMINATES",
            Error::SingularDesign => "SINGULAR_DESIGN",
            Error::AllModelsFailed(_) => "ALL_MODELS_FAILED",
            Error::UnsupportedFrequency(_) => "UNSUPPORTED_FREQUENCY",
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::Io(e) if e.kind() == std::io::ErrorKind::NotFound => "FILE_NOT_FOUND",
            Error::Io(_) => "IO_FAILURE",
        }
    }
}
