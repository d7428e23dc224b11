use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {modulus} exceeds the floating-point exponentiation bound of 2^24 ({limit})")]
    ModulusOutOfRange { modulus: u64, limit: u64 },

    #[error("series index m = {0} is not one of 1, 4, 5, 6")]
    InvalidSeriesIndex(u32),

    #[error("digits {position}..{end} exceed the engine validity bound of {limit}", end = .position.saturating_add(*.count as u64))]
    PositionOutOfRange {
        position: u64,
        count: usize,
        limit: u64,
    },

    #[error("requested digit count must be positive")]
    ZeroCount,

    #[error("invalid engine configuration: {0}")]
    InvalidConfig(String),

    #[error("digit source of kind {0} requires a file path")]
    MissingPath(&'static str),

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("non-hex character {found:?} at byte offset {offset}")]
    InvalidHexDigit { offset: usize, found: char },

    #[error("block {position}+{length} lies beyond the source limit of {limit} digits")]
    BlockOutOfBounds {
        position: u64,
        length: usize,
        limit: u64,
    },

    #[error("passphrase must not be empty")]
    EmptyPassphrase,

    #[error("digest must be 64 lowercase hex characters")]
    InvalidDigest,

    #[error("pad has {actual} nibbles, at least {needed} required")]
    PadTooShort { needed: usize, actual: usize },

    #[error("cannot combine blocks of different lengths ({expected} vs {found})")]
    LengthMismatch { expected: usize, found: usize },

    #[error("no blocks to combine")]
    NoBlocks,

    #[error("digit source holds {limit} digits, pad generation needs {needed}")]
    SourceTooSmall { needed: u64, limit: u64 },

    #[error("{rounds} rounds configured but {passphrases} passphrases supplied")]
    RoundMismatch { rounds: usize, passphrases: usize },

    #[error("invalid pad configuration: {0}")]
    InvalidPadConfig(String),

    #[error("message of {message} bytes exceeds pad capacity of {capacity} bytes")]
    CapacityExceeded { message: usize, capacity: usize },

    #[error("words {start}..{end} are outside the {available} available words")]
    WordRange {
        start: usize,
        end: usize,
        available: usize,
    },

    #[error("page {page} is out of range (document has {pages} pages)")]
    PageOutOfRange { page: usize, pages: usize },

    #[error("invalid page breaks: {0}")]
    InvalidPageBreaks(String),

    #[error("histogram is empty")]
    EmptyHistogram,

    #[error("chi-square needs at least {needed} samples, got {total}")]
    InsufficientSample { needed: u64, total: u64 },

    #[error("cannot choose {k} from {n}")]
    ChooseOutOfRange { n: u64, k: u64 },

    #[error("hex stream has an odd number of digits ({0})")]
    OddNibbleCount(usize),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
