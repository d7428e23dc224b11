//! Passphrase to pad pipeline.
//!
//! Each round hashes one passphrase, cuts the first 50 hex characters of
//! the digest into ten 5-character addresses, XORs those addresses with
//! values packed from the pad built so far, then XORs the ten digit blocks
//! at the resulting addresses into the pad. The first round starts from an
//! all-zero pad, so its addresses come straight from the digest.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::digit_source::{DigitPool, SourceKind};
use crate::error::{Error, Result};
use crate::hex;

/// Blocks combined per round.
pub const ADDRESS_COUNT: usize = 10;

/// Hex characters per address.
pub const ADDRESS_DIGITS: usize = 5;

/// Size of the address space, 16^5.
pub const ADDRESS_SPACE: u32 = 1 << (4 * ADDRESS_DIGITS);

pub const DEFAULT_PAD_NIBBLES: usize = 256;

/// Raw passphrase bytes. Hashed exactly as given, with no terminator or
/// newline appended. `Debug` does not reveal the contents.
#[derive(Clone, PartialEq, Eq)]
pub struct Passphrase(Vec<u8>);

impl Passphrase {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Self {
        Passphrase(bytes.into())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_string_lossy(&self) -> String {
        String::from_utf8_lossy(&self.0).into_owned()
    }
}

impl From<&str> for Passphrase {
    fn from(s: &str) -> Self {
        Passphrase(s.as_bytes().to_vec())
    }
}

impl From<String> for Passphrase {
    fn from(s: String) -> Self {
        Passphrase(s.into_bytes())
    }
}

impl fmt::Debug for Passphrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Passphrase(<{} bytes>)", self.0.len())
    }
}

/// SHA-256 digest of a passphrase.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PassphraseDigest([u8; 32]);

impl PassphraseDigest {
    pub fn from_bytes(bytes: [u8; 32]) -> Self {
        PassphraseDigest(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    /// 64 lowercase hex characters.
    pub fn to_hex(&self) -> String {
        hex::nibbles_to_string(&self.nibbles())
    }

    fn nibbles(&self) -> Vec<u8> {
        hex::bytes_to_nibbles(&self.0)
    }
}

impl fmt::Display for PassphraseDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for PassphraseDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PassphraseDigest({})", self.to_hex())
    }
}

impl FromStr for PassphraseDigest {
    type Err = Error;

    /// Accepts exactly 64 characters from `[0-9a-f]`.
    fn from_str(s: &str) -> Result<Self> {
        let ok = s.len() == 64 && s.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'));
        if !ok {
            return Err(Error::InvalidDigest);
        }
        let nibbles = hex::parse_nibbles(s.as_bytes())?;
        let mut bytes = [0u8; 32];
        bytes.copy_from_slice(&hex::nibbles_to_bytes(&nibbles));
        Ok(PassphraseDigest(bytes))
    }
}

pub fn hash_passphrase(passphrase: &Passphrase) -> Result<PassphraseDigest> {
    if passphrase.is_empty() {
        return Err(Error::EmptyPassphrase);
    }
    Ok(PassphraseDigest(
        Sha256::digest(passphrase.as_bytes()).into(),
    ))
}

/// The ten block addresses of one round, each below 16^5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AddressSet([u32; ADDRESS_COUNT]);

impl AddressSet {
    pub fn new(addresses: [u32; ADDRESS_COUNT]) -> Result<Self> {
        if let Some(&bad) = addresses.iter().find(|&&a| a >= ADDRESS_SPACE) {
            return Err(Error::InvalidPadConfig(format!(
                "address {bad:#x} is outside the 20-bit address space"
            )));
        }
        Ok(AddressSet(addresses))
    }

    pub fn as_array(&self) -> &[u32; ADDRESS_COUNT] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }
}

/// Big-endian value of five consecutive nibbles.
fn pack_address(nibbles: &[u8]) -> u32 {
    nibbles.iter().fold(0u32, |acc, &n| (acc << 4) | n as u32)
}

/// Splits the first 50 hex characters into ten 5-character addresses,
/// left to right. The last 14 characters are not used.
pub fn derive_addresses(digest: &PassphraseDigest) -> AddressSet {
    let nibbles = digest.nibbles();
    let mut out = [0u32; ADDRESS_COUNT];
    for (slot, chunk) in out.iter_mut().zip(nibbles.chunks_exact(ADDRESS_DIGITS)) {
        *slot = pack_address(chunk);
    }
    AddressSet(out)
}

/// XORs address `i` with nibbles `5i..5i+5` of `previous`, packed base 16.
pub fn chain_addresses(addresses: &AddressSet, previous: &OneTimePad) -> Result<AddressSet> {
    let needed = ADDRESS_COUNT * ADDRESS_DIGITS;
    let nibbles = previous.nibbles();
    if nibbles.len() < needed {
        return Err(Error::PadTooShort {
            needed,
            actual: nibbles.len(),
        });
    }
    let mut out = addresses.0;
    for (i, a) in out.iter_mut().enumerate() {
        *a ^= pack_address(&nibbles[ADDRESS_DIGITS * i..ADDRESS_DIGITS * (i + 1)]);
    }
    Ok(AddressSet(out))
}

/// Nibble-wise XOR of equal-length blocks.
pub fn xor_combine<B: AsRef<[u8]>>(blocks: &[B]) -> Result<Vec<u8>> {
    let (first, rest) = blocks.split_first().ok_or(Error::NoBlocks)?;
    let mut acc = first.as_ref().to_vec();
    for block in rest {
        xor_into(&mut acc, block.as_ref())?;
    }
    Ok(acc)
}

fn xor_into(acc: &mut [u8], block: &[u8]) -> Result<()> {
    if block.len() != acc.len() {
        return Err(Error::LengthMismatch {
            expected: acc.len(),
            found: block.len(),
        });
    }
    acc.iter_mut().zip(block).for_each(|(a, b)| *a ^= b);
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadConfig {
    pub pad_nibbles: usize,
    pub rounds: usize,
}

impl Default for PadConfig {
    fn default() -> Self {
        PadConfig {
            pad_nibbles: DEFAULT_PAD_NIBBLES,
            rounds: 1,
        }
    }
}

impl PadConfig {
    pub fn with_rounds(rounds: usize) -> Self {
        PadConfig {
            rounds,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.pad_nibbles == 0 {
            return Err(Error::InvalidPadConfig(
                "pad_nibbles must be at least 1".into(),
            ));
        }
        if self.rounds == 0 {
            return Err(Error::InvalidPadConfig("rounds must be at least 1".into()));
        }
        if self.rounds > 1 && self.pad_nibbles < ADDRESS_COUNT * ADDRESS_DIGITS {
            // later rounds pack addresses from the previous pad
            return Err(Error::InvalidPadConfig(format!(
                "chained rounds need pads of at least {} nibbles",
                ADDRESS_COUNT * ADDRESS_DIGITS
            )));
        }
        Ok(())
    }

    /// Digits a source must hold: the largest address plus one block.
    pub fn required_digits(&self) -> u64 {
        ADDRESS_SPACE as u64 + self.pad_nibbles as u64
    }
}

/// Where a generated pad came from. Never includes passphrases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub source: SourceKind,
    pub rounds: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct OneTimePad {
    nibbles: Vec<u8>,
    provenance: Option<Provenance>,
}

impl OneTimePad {
    /// A pad read back from storage; provenance is not recorded in files.
    pub fn from_nibbles(nibbles: Vec<u8>) -> Result<Self> {
        if let Some(pos) = nibbles.iter().position(|&n| n > 15) {
            return Err(Error::InvalidPadConfig(format!(
                "nibble {} at index {pos} exceeds 15",
                nibbles[pos]
            )));
        }
        Ok(OneTimePad {
            nibbles,
            provenance: None,
        })
    }

    pub fn zeroed(pad_nibbles: usize) -> Self {
        OneTimePad {
            nibbles: vec![0; pad_nibbles],
            provenance: None,
        }
    }

    pub fn nibbles(&self) -> &[u8] {
        &self.nibbles
    }

    pub fn len(&self) -> usize {
        self.nibbles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nibbles.is_empty()
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    /// Bytes the pad can encrypt.
    pub fn capacity(&self) -> usize {
        self.nibbles.len() / 2
    }

    /// Nibble pairs as bytes, high nibble first.
    pub fn to_bytes(&self) -> Vec<u8> {
        hex::nibbles_to_bytes(&self.nibbles)
    }

    pub fn to_hex(&self) -> String {
        hex::nibbles_to_string(&self.nibbles)
    }

    /// XOR of two pads of equal length; provenance is dropped.
    pub fn xor(&self, other: &OneTimePad) -> Result<OneTimePad> {
        OneTimePad::from_nibbles(xor_combine(&[&self.nibbles, &other.nibbles])?)
    }

    /// Pad file contents: lowercase hex, no separators, no newline.
    pub fn write_file(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_hex()).map_err(|e| Error::io(path, e))
    }

    /// Reads a pad file. Whitespace (including a trailing newline) is
    /// ignored.
    pub fn read_file(path: &Path) -> Result<Self> {
        let text = fs::read(path).map_err(|e| Error::io(path, e))?;
        OneTimePad::from_nibbles(hex::parse_nibbles(&text)?)
    }
}

impl fmt::Debug for OneTimePad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OneTimePad")
            .field("nibbles", &self.nibbles.len())
            .field("provenance", &self.provenance)
            .finish()
    }
}

/// Runs the full pipeline, one round per passphrase.
///
/// Block fetches within a round run on the rayon pool and are combined in
/// address order; rounds run in sequence because each round's addresses
/// depend on the pad so far.
pub fn generate_pad<S>(
    passphrases: &[Passphrase],
    config: &PadConfig,
    source: &S,
) -> Result<OneTimePad>
where
    S: DigitPool + ?Sized,
{
    config.validate()?;
    if passphrases.len() != config.rounds {
        return Err(Error::RoundMismatch {
            rounds: config.rounds,
            passphrases: passphrases.len(),
        });
    }
    let needed = config.required_digits();
    if source.validity_limit() < needed {
        return Err(Error::SourceTooSmall {
            needed,
            limit: source.validity_limit(),
        });
    }
    let digests = passphrases
        .iter()
        .map(hash_passphrase)
        .collect::<Result<Vec<_>>>()?;

    let mut pad = OneTimePad::zeroed(config.pad_nibbles);
    for (round, digest) in digests.iter().enumerate() {
        let own = derive_addresses(digest);
        let addresses = if round == 0 {
            own
        } else {
            chain_addresses(&own, &pad)?
        };
        let blocks = addresses
            .as_array()
            .par_iter()
            .map(|&a| source.read_block(a as u64, config.pad_nibbles))
            .collect::<Result<Vec<_>>>()?;
        for block in &blocks {
            xor_into(&mut pad.nibbles, block.nibbles())?;
        }
    }
    pad.provenance = Some(Provenance {
        source: source.kind(),
        rounds: config.rounds,
    });
    Ok(pad)
}

/// XORs `message` with the pad's bytes. Applying it twice restores the
/// message.
pub fn apply_pad(message: &[u8], pad: &OneTimePad) -> Result<Vec<u8>> {
    let capacity = pad.capacity();
    if message.len() > capacity {
        return Err(Error::CapacityExceeded {
            message: message.len(),
            capacity,
        });
    }
    Ok(message
        .iter()
        .zip(pad.nibbles.chunks_exact(2))
        .map(|(&m, pair)| m ^ ((pair[0] << 4) | pair[1]))
        .collect())
}
