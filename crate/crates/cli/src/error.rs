use std::fmt;
use std::io;

use deficit::census::CensusError;
use deficit::format::FormatError;
use deficit::nearly_flat::NearlyFlatError;
use deficit::regge::ActionError;
use deficit::spectrum::SpectrumError;

pub const EXIT_IO: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_OUT_OF_RANGE: u8 = 3;
pub const EXIT_NOT_BRACKETABLE: u8 = 4;
pub const EXIT_UNKNOWN: u8 = 5;
pub const EXIT_NUMERIC: u8 = 6;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub name: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, name: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            name,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(EXIT_INVALID, "InvalidArgument", message)
    }

    pub fn io(path: &std::path::Path, err: io::Error) -> Self {
        Self::new(EXIT_IO, "IoError", format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.message)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        Self::new(EXIT_INVALID, e.name(), e.to_string())
    }
}

impl From<ActionError> for CliError {
    fn from(e: ActionError) -> Self {
        Self::new(EXIT_INVALID, e.name(), e.to_string())
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        let code = match &e {
            SpectrumError::TargetOutOfRange { .. } => EXIT_OUT_OF_RANGE,
            SpectrumError::NotBracketable { .. } => EXIT_NOT_BRACKETABLE,
            SpectrumError::ScanLimit(_) => EXIT_NUMERIC,
            SpectrumError::InvalidGamma(_) | SpectrumError::Action(_) => EXIT_INVALID,
        };
        Self::new(code, e.name(), e.to_string())
    }
}

impl From<NearlyFlatError> for CliError {
    fn from(e: NearlyFlatError) -> Self {
        let code = match e {
            NearlyFlatError::NotFinite | NearlyFlatError::NoLevels => EXIT_NUMERIC,
            _ => EXIT_INVALID,
        };
        Self::new(code, e.name(), e.to_string())
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Spectrum(s) => s.into(),
            CensusError::BudgetExceeded { .. } => Self::new(EXIT_UNKNOWN, e.name(), e.to_string()),
            CensusError::SizeOutOfRange { .. } => Self::new(EXIT_INVALID, e.name(), e.to_string()),
            CensusError::Undefined { .. } => Self::new(EXIT_NUMERIC, e.name(), e.to_string()),
        }
    }
}
