use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;
use ultravote::additive::AdditiveError;
use ultravote::banach::BanachError;
use ultravote::coalitions::CoalitionError;
use ultravote::family::MAX_GROUND;
use ultravote::filters::FilterError;
use ultravote::fintop::FintopError;
use ultravote::los::LosError;
use ultravote::profiles::ProfileError;
use ultravote::setlimits::SetLimitError;

/// Failures that end a command with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("refused: {0}")]
    Guard(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn invalid(e: impl fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

impl From<CoalitionError> for CliError {
    fn from(e: CoalitionError) -> Self {
        match e {
            CoalitionError::Format(m) => CliError::Malformed(m),
            CoalitionError::ResourceGuard(m) => CliError::Guard(m),
            CoalitionError::AssemblySize(n) if n > MAX_GROUND => CliError::Guard(e.to_string()),
            other => invalid(other),
        }
    }
}

impl From<ProfileError> for CliError {
    fn from(e: ProfileError) -> Self {
        match e {
            ProfileError::Format(m) => CliError::Malformed(m),
            ProfileError::ResourceGuard(m) => CliError::Guard(m),
            ProfileError::Coalition(c) => c.into(),
            other => invalid(other),
        }
    }
}

impl From<FilterError> for CliError {
    fn from(e: FilterError) -> Self {
        match e {
            FilterError::Format(m) => CliError::Malformed(m),
            FilterError::GroundSize(..) => CliError::Guard(e.to_string()),
            other => invalid(other),
        }
    }
}

impl From<LosError> for CliError {
    fn from(e: LosError) -> Self {
        match e {
            LosError::Format(m) => CliError::Malformed(m),
            LosError::ResourceGuard(m) => CliError::Guard(m),
            other => invalid(other),
        }
    }
}

impl From<SetLimitError> for CliError {
    fn from(e: SetLimitError) -> Self {
        match e {
            SetLimitError::Format(m) => CliError::Malformed(m),
            SetLimitError::UniverseSize(_) | SetLimitError::IndexSize(_) => CliError::Guard(e.to_string()),
            other => invalid(other),
        }
    }
}

impl From<AdditiveError> for CliError {
    fn from(e: AdditiveError) -> Self {
        match e {
            AdditiveError::Format(m) => CliError::Malformed(m),
            other => invalid(other),
        }
    }
}

impl From<FintopError> for CliError {
    fn from(e: FintopError) -> Self {
        match e {
            FintopError::Format(m) => CliError::Malformed(m),
            FintopError::ResourceGuard(_) | FintopError::TooManyPoints(_) => CliError::Guard(e.to_string()),
            other => invalid(other),
        }
    }
}

impl From<BanachError> for CliError {
    fn from(e: BanachError) -> Self {
        match e {
            BanachError::Format(m) => CliError::Malformed(m),
            other => invalid(other),
        }
    }
}
