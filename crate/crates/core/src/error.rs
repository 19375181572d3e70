use alloc::string::String;

/// Failures raised by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid band ({i}, {j}) for {strands} strands")]
    InvalidBand { i: usize, j: usize, strands: usize },
    #[error("invalid letter index {index} for {strands} strands")]
    InvalidLetter { index: usize, strands: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("braid word contains a negative letter at position {0}")]
    NotPositive(usize),
    #[error("band representation contains a negative band at position {0}")]
    NotQuasipositive(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not full")]
    NotFull,
    #[error("site is not eligible for a Whitehead move: {0}")]
    SiteNotEligible(String),
    #[error("simple cycle enumeration exceeded the budget of {0} cycles")]
    CycleEnumerationBudgetExceeded(usize),
    #[error("graph has free ends on the surface boundary")]
    HasFreeEnds,
    #[error("graph host is not S(q_{0})")]
    NotOnQ(usize),
    #[error("summary mismatch: {0}")]
    SummaryMismatch(String),
    #[error("non-exact polynomial division")]
    NonExactDivision,
    #[error("fiber verification failed: {0}")]
    FiberVerificationFailed(String),
}

impl Error {
    /// Errors that indicate a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::SummaryMismatch(_) | Error::NonExactDivision | Error::FiberVerificationFailed(_)
        )
    }

    /// Errors raised because an otherwise well-formed input violates a precondition.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotPositive(_)
                | Error::NotQuasipositive(_)
                | Error::NotFull
                | Error::SiteNotEligible(_)
                | Error::CycleEnumerationBudgetExceeded(_)
                | Error::HasFreeEnds
                | Error::NotOnQ(_)
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
