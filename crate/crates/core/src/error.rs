use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Breakpoint list that cannot describe a single continuous function.
    MalformedFunction(String),
    /// A point or breakpoint outside `[0, 1]`, or a missing endpoint.
    DomainError(String),
    /// Regulator is negative somewhere or vanishes on `(0, 1]`.
    InvalidRegulator(String),
    DegenerateInput(String),
    /// Tail parameters break the ordering `0 < a_{n+1} < b_{n+1} < a_n < b_n`.
    ConditionIViolated(String),
    /// The tail oscillates, so no germ approximation exists.
    NotInH(String),
    RefutationNotGuaranteed(String),
    StrictInclusionNotWitnessed(String),
}

impl Error {
    /// Stable machine-readable code, used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedFunction(_) => "malformed_function",
            Error::DomainError(_) => "domain_error",
            Error::InvalidRegulator(_) => "invalid_regulator",
            Error::DegenerateInput(_) => "degenerate_input",
            Error::ConditionIViolated(_) => "condition_i_violated",
            Error::NotInH(_) => "not_in_h",
            Error::RefutationNotGuaranteed(_) => "refutation_not_guaranteed",
            Error::StrictInclusionNotWitnessed(_) => "strict_inclusion_not_witnessed",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Error::MalformedFunction(m)
            | Error::DomainError(m)
            | Error::InvalidRegulator(m)
            | Error::DegenerateInput(m)
            | Error::ConditionIViolated(m)
            | Error::NotInH(m)
            | Error::RefutationNotGuaranteed(m)
            | Error::StrictInclusionNotWitnessed(m) => m,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code(), self.message())
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
