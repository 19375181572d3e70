use thiserror::Error;

/// Everything that can stop a command.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Core(#[from] qpsurf_core::Error),
    #[error("self-test failed: {0}")]
    SelfTest(String),
}

impl CliError {
    /// 1 malformed input, 2 precondition violation, 3 internal inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Json(_) | CliError::Malformed(_) => 1,
            CliError::Core(e) if e.is_internal() => 3,
            CliError::Core(e) if e.is_precondition() => 2,
            CliError::Core(_) => 1,
            CliError::SelfTest(_) => 3,
        }
    }

    /// Short machine-readable name used in error documents.
    pub fn kind(&self) -> &'static str {
        use qpsurf_core::Error as E;
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Io(_) => "Io",
            CliError::Json(_) => "MalformedJson",
            CliError::Malformed(_) => "MalformedDocument",
            CliError::SelfTest(_) => "SelfTestFailed",
            CliError::Core(e) => match e {
                E::InvalidBand { .. } => "InvalidBand",
                E::InvalidLetter { .. } => "InvalidLetter",
                E::InvalidParameter(_) => "InvalidParameter",
                E::NotPositive(_) => "NotPositive",
                E::NotQuasipositive(_) => "NotQuasipositive",
                E::InvalidGraph(_) => "InvalidGraph",
                E::NotFull => "NotFull",
                E::SiteNotEligible(_) => "SiteNotEligible",
                E::CycleEnumerationBudgetExceeded(_) => "CycleEnumerationBudgetExceeded",
                E::HasFreeEnds => "HasFreeEnds",
                E::NotOnQ(_) => "NotOnQ",
                E::SummaryMismatch(_) => "SummaryMismatch",
                E::NonExactDivision => "NonExactDivision",
                E::FiberVerificationFailed(_) => "FiberVerificationFailed",
            },
        }
    }
}
