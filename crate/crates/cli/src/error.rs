//! Exit-code classification of failures.

use std::fmt;

use semiglue::Error;

#[derive(Debug)]
pub enum CliError {
    /// Malformed document, bad flag values, size limits. Exit code 2.
    Invalid(String),
    /// The input is well formed but the command does not apply to it. Exit code 3.
    NotApplicable(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::NotApplicable(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Invalid(_) => "invalid_input",
            CliError::NotApplicable(_) => "not_applicable",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::NotApplicable(m) => m,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::DimensionMismatch { .. }
            | Error::InconsistentRows
            | Error::DimensionTooLarge { .. }
            | Error::NoGenerators
            | Error::NegativeCoordinate(_)
            | Error::InvalidPartition(_)
            | Error::InvalidCertificate(_)
            | Error::SearchLimit { .. }
            | Error::OutOfRange(_)
            | Error::InvalidArgument(_) => CliError::Invalid(msg),
            Error::NotInSemigroup(_)
            | Error::ZeroBase
            | Error::RankNotOne(_)
            | Error::NotSimplicial
            | Error::NotFree
            | Error::IncompleteApery
            | Error::IncompleteBetti
            | Error::GluingRejected(_)
            | Error::NotUnivariate
            | Error::NotFactored
            | Error::OverlappingGenerators
            | Error::GcdNotOne => CliError::NotApplicable(msg),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
