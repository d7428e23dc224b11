//! Error to exit-code mapping. Every library error kind gets its own code;
//! 2 is left to clap for malformed command lines.

use std::fmt;
use std::io;
use std::path::PathBuf;

use piotp::Error;

pub enum CliError {
    Usage(String),
    Io { path: PathBuf, source: io::Error },
    Lib(Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Lib(e) => match e {
                Error::Io { .. } => 3,
                Error::InvalidHexDigit { .. } => 10,
                Error::OddNibbleCount(_) => 11,
                Error::InvalidDigest => 12,
                Error::PositionOutOfRange { .. } => 20,
                Error::BlockOutOfBounds { .. } => 21,
                Error::ModulusOutOfRange { .. } => 22,
                Error::SourceTooSmall { .. } => 23,
                Error::MissingPath(_) => 24,
                Error::ZeroCount => 25,
                Error::InvalidConfig(_) => 26,
                Error::InvalidSeriesIndex(_) => 27,
                Error::EmptyPassphrase => 30,
                Error::RoundMismatch { .. } => 31,
                Error::InvalidPadConfig(_) => 32,
                Error::PadTooShort { .. } => 33,
                Error::LengthMismatch { .. } => 34,
                Error::NoBlocks => 35,
                Error::CapacityExceeded { .. } => 36,
                Error::WordRange { .. } => 40,
                Error::PageOutOfRange { .. } => 41,
                Error::InvalidPageBreaks(_) => 42,
                Error::EmptyHistogram => 50,
                Error::InsufficientSample { .. } => 51,
                Error::ChooseOutOfRange { .. } => 52,
            },
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}
