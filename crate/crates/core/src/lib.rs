//! One-time pads assembled from blocks of the hexadecimal expansion of pi.
//!
//! A passphrase is hashed with SHA-256, the first 50 hex characters of the
//! digest become ten 20-bit addresses, and the digit blocks found at those
//! addresses are XORed together into a pad. Digits come either from the BBP
//! engine in [`bbp`], which computes them at any position below 2^24, or
//! from a digit file loaded by [`digit_source`].
//!
//! The numeric core is generic over [`BbpFloat`]; the aliases below name
//! the precisions in everyday use.

pub mod bbp;
pub mod digit_source;
pub mod error;
pub mod hex;
pub mod pad;
pub mod scalar;
pub mod stats;
pub mod stego;

pub use bbp::{BbpEngine, BbpEngineConfig, DigitBlock};
pub use digit_source::{open_source, DigitPool, DigitSource, DigitSourceSpec, SourceKind};
pub use error::{Error, Result};
pub use pad::{
    apply_pad, chain_addresses, derive_addresses, generate_pad, hash_passphrase, xor_combine,
    AddressSet, OneTimePad, PadConfig, Passphrase, PassphraseDigest, Provenance,
};
pub use scalar::BbpFloat;
pub use stats::{
    byte_histogram, chi_square_uniform, keyspace_size, summarize, ByteHistogram, HistogramSummary,
    Keyspace,
};
pub use stego::{extract_phrase, select_words, tokenize, DocumentText, PhraseSelector};

/// Double-precision digit engine, valid for positions below 2^24.
pub type PiEngine = BbpEngine<f64>;

/// Single-precision engine; one digit per evaluation, positions below 512.
pub type PiEngineF32 = BbpEngine<f32>;

pub type EngineConfig = BbpEngineConfig<f64>;

pub type Summary = HistogramSummary<f64>;
