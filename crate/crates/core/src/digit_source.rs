//! Block reads over the three digit pools: the BBP engine, a file holding
//! pi's hex digits, and a shared random-pool file.
//!
//! Digit files are plain ASCII hex, either case, with any whitespace
//! ignored and no header. Pi files start at the first fractional digit
//! (`243f6a88…`), without the leading `3.`.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;

use crate::bbp::{BbpEngine, DigitBlock};
use crate::error::{Error, Result};
use crate::hex;
use crate::scalar::BbpFloat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SourceKind {
    Computed,
    PiFile,
    PoolFile,
}

impl SourceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceKind::Computed => "computed",
            SourceKind::PiFile => "pi-file",
            SourceKind::PoolFile => "pool-file",
        }
    }
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Anything blocks of hex digits can be read from.
pub trait DigitPool: Sync {
    fn kind(&self) -> SourceKind;

    /// Exclusive bound on `position + length` for [`read_block`](Self::read_block).
    fn validity_limit(&self) -> u64;

    fn read_block(&self, position: u64, length: usize) -> Result<DigitBlock>;
}

impl<F: BbpFloat> DigitPool for BbpEngine<F> {
    fn kind(&self) -> SourceKind {
        SourceKind::Computed
    }

    fn validity_limit(&self) -> u64 {
        BbpEngine::validity_limit(self)
    }

    fn read_block(&self, position: u64, length: usize) -> Result<DigitBlock> {
        check_bounds(position, length, self.validity_limit())?;
        self.pi_hex_at(position, length)
    }
}

fn check_bounds(position: u64, length: usize, limit: u64) -> Result<()> {
    if length == 0 {
        return Err(Error::ZeroCount);
    }
    match position.checked_add(length as u64) {
        Some(end) if end <= limit => Ok(()),
        _ => Err(Error::BlockOutOfBounds {
            position,
            length,
            limit,
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSourceSpec {
    pub kind: SourceKind,
    pub path: Option<PathBuf>,
}

impl DigitSourceSpec {
    pub fn computed() -> Self {
        DigitSourceSpec {
            kind: SourceKind::Computed,
            path: None,
        }
    }

    pub fn pi_file(path: impl Into<PathBuf>) -> Self {
        DigitSourceSpec {
            kind: SourceKind::PiFile,
            path: Some(path.into()),
        }
    }

    pub fn pool_file(path: impl Into<PathBuf>) -> Self {
        DigitSourceSpec {
            kind: SourceKind::PoolFile,
            path: Some(path.into()),
        }
    }
}

/// An opened digit pool. Immutable, cheap to clone, safe to share.
#[derive(Clone, Debug)]
pub enum DigitSource {
    Computed(BbpEngine<f64>),
    File { kind: SourceKind, digits: Arc<[u8]> },
}

impl DigitSource {
    /// Wraps an in-memory nibble stream as a file-kind source.
    pub fn from_nibbles(kind: SourceKind, digits: Vec<u8>) -> Self {
        assert!(
            kind != SourceKind::Computed,
            "in-memory sources are file kinds"
        );
        assert!(digits.iter().all(|&d| d < 16), "nibbles must be below 16");
        DigitSource::File {
            kind,
            digits: digits.into(),
        }
    }

    pub fn from_hex_text(kind: SourceKind, text: &[u8]) -> Result<Self> {
        Ok(DigitSource::from_nibbles(kind, hex::parse_nibbles(text)?))
    }
}

pub fn open_source(spec: &DigitSourceSpec) -> Result<DigitSource> {
    match spec.kind {
        SourceKind::Computed => Ok(DigitSource::Computed(BbpEngine::default())),
        kind => {
            let path = spec
                .path
                .as_deref()
                .ok_or(Error::MissingPath(kind.as_str()))?;
            let text = fs::read(path).map_err(|e| Error::io(path, e))?;
            DigitSource::from_hex_text(kind, &text)
        }
    }
}

impl DigitPool for DigitSource {
    fn kind(&self) -> SourceKind {
        match self {
            DigitSource::Computed(_) => SourceKind::Computed,
            DigitSource::File { kind, .. } => *kind,
        }
    }

    fn validity_limit(&self) -> u64 {
        match self {
            DigitSource::Computed(engine) => engine.validity_limit(),
            DigitSource::File { digits, .. } => digits.len() as u64,
        }
    }

    fn read_block(&self, position: u64, length: usize) -> Result<DigitBlock> {
        match self {
            DigitSource::Computed(engine) => engine.read_block(position, length),
            DigitSource::File { digits, .. } => {
                check_bounds(position, length, digits.len() as u64)?;
                let start = position as usize;
                Ok(DigitBlock::new(
                    position,
                    digits[start..start + length].to_vec(),
                ))
            }
        }
    }
}

/// Writes the first `count` fractional hex digits of pi in digit-file
/// format, computing them with `engine` in chunks across the rayon pool.
/// Calls `progress` with the number of digits written so far.
pub fn write_pi_digits<F: BbpFloat, W: Write>(
    engine: &BbpEngine<F>,
    count: u64,
    mut out: W,
    mut progress: impl FnMut(u64),
) -> Result<()> {
    const CHUNK: u64 = 4096;
    if count == 0 {
        return Err(Error::ZeroCount);
    }
    if count > engine.validity_limit() {
        return Err(Error::PositionOutOfRange {
            position: 0,
            count: count as usize,
            limit: engine.validity_limit(),
        });
    }
    let step = engine.config().digits_per_evaluation as u64;
    let mut written = 0;
    while written < count {
        let n = CHUNK.min(count - written);
        let evals = n.div_ceil(step);
        let pieces: Vec<DigitBlock> = (0..evals)
            .into_par_iter()
            .map(|i| {
                let pos = written + i * step;
                engine.pi_hex_at(pos, step.min(written + n - pos) as usize)
            })
            .collect::<Result<_>>()?;
        let text: String = pieces.iter().map(DigitBlock::to_hex).collect();
        out.write_all(text.as_bytes()).map_err(write_err)?;
        written += n;
        progress(written);
    }
    out.write_all(b"\n").map_err(write_err)?;
    out.flush().map_err(write_err)
}

fn write_err(e: io::Error) -> Error {
    Error::io("<digit output>", e)
}

/// Loads a digit file without caring about its kind; used by tools that
/// just want the nibbles.
pub fn read_digit_file(path: &Path) -> Result<Vec<u8>> {
    let text = fs::read(path).map_err(|e| Error::io(path, e))?;
    hex::parse_nibbles(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_32: &str = "243f6a8885a308d313198a2e03707344";

    fn temp_file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn computed_source_limit() {
        let src = open_source(&DigitSourceSpec::computed()).unwrap();
        assert_eq!(src.validity_limit(), 1 << 24);
        assert_eq!(src.kind(), SourceKind::Computed);
    }

    #[test]
    fn pi_file_limit_is_digit_count() {
        let f = temp_file(PI_32);
        let src = open_source(&DigitSourceSpec::pi_file(f.path())).unwrap();
        assert_eq!(src.validity_limit(), 32);
        assert_eq!(src.read_block(0, 16).unwrap().to_hex(), "243f6a8885a308d3");
    }

    #[test]
    fn missing_and_bad_files() {
        let err = open_source(&DigitSourceSpec::pi_file("/nonexistent/pi.txt")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        let spec = DigitSourceSpec {
            kind: SourceKind::PoolFile,
            path: None,
        };
        assert!(matches!(open_source(&spec), Err(Error::MissingPath(_))));
        let f = temp_file("243f\n6a8z");
        assert!(matches!(
            open_source(&DigitSourceSpec::pool_file(f.path())),
            Err(Error::InvalidHexDigit {
                offset: 8,
                found: 'z'
            })
        ));
    }

    #[test]
    fn reads_past_the_limit_fail() {
        let f = temp_file(PI_32);
        let src = open_source(&DigitSourceSpec::pi_file(f.path())).unwrap();
        assert!(matches!(
            src.read_block(31, 2),
            Err(Error::BlockOutOfBounds { limit: 32, .. })
        ));
        assert_eq!(src.read_block(30, 2).unwrap().to_hex(), "44");
        let engine = open_source(&DigitSourceSpec::computed()).unwrap();
        assert!(matches!(
            engine.read_block((1 << 24) - 1, 2),
            Err(Error::BlockOutOfBounds { .. })
        ));
    }

    #[test]
    fn whitespace_is_ignored() {
        let f = temp_file("243f 6a88\n85a3\t08d3\r\n1319 8a2e 0370 7344\n");
        let src = open_source(&DigitSourceSpec::pi_file(f.path())).unwrap();
        assert_eq!(src.validity_limit(), 32);
        assert_eq!(src.read_block(6, 10).unwrap().to_hex(), &PI_32[6..16]);
    }

    #[test]
    fn computed_matches_file() {
        let f = temp_file(PI_32);
        let file = open_source(&DigitSourceSpec::pi_file(f.path())).unwrap();
        let computed = open_source(&DigitSourceSpec::computed()).unwrap();
        for pos in 0..16 {
            assert_eq!(
                file.read_block(pos, 16).unwrap(),
                computed.read_block(pos, 16).unwrap()
            );
        }
    }

    #[test]
    fn generated_digit_file_round_trips() {
        let engine = BbpEngine::<f64>::default();
        let mut buf = Vec::new();
        let mut seen = Vec::new();
        write_pi_digits(&engine, 37, &mut buf, |n| seen.push(n)).unwrap();
        assert_eq!(seen, vec![37]);
        let src = DigitSource::from_hex_text(SourceKind::PiFile, &buf).unwrap();
        assert_eq!(src.validity_limit(), 37);
        assert_eq!(src.read_block(0, 32).unwrap().to_hex(), PI_32);
    }
}
