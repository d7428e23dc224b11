//! Nibble <-> ASCII hex helpers shared by digit files, pad files and the
//! stats reader.

use crate::error::{Error, Result};

const HEX_LOWER: &[u8; 16] = b"0123456789abcdef";

/// Parses ASCII hex (either case), skipping ASCII whitespace anywhere.
///
/// Offsets in errors are byte offsets into `text`.
pub fn parse_nibbles(text: &[u8]) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(text.len());
    for (offset, &b) in text.iter().enumerate() {
        let nibble = match b {
            b'0'..=b'9' => b - b'0',
            b'a'..=b'f' => b - b'a' + 10,
            b'A'..=b'F' => b - b'A' + 10,
            b if b.is_ascii_whitespace() => continue,
            _ => {
                return Err(Error::InvalidHexDigit {
                    offset,
                    found: char_at(text, offset),
                })
            }
        };
        out.push(nibble);
    }
    Ok(out)
}

fn char_at(text: &[u8], offset: usize) -> char {
    let tail = &text[offset..];
    let end = tail.len().min(4);
    (1..=end)
        .find_map(|n| std::str::from_utf8(&tail[..n]).ok())
        .and_then(|s| s.chars().next())
        .unwrap_or(char::REPLACEMENT_CHARACTER)
}

#[inline]
pub fn nibble_char(n: u8) -> char {
    HEX_LOWER[(n & 0x0f) as usize] as char
}

pub fn nibbles_to_string(nibbles: &[u8]) -> String {
    nibbles.iter().map(|&n| nibble_char(n)).collect()
}

/// Pairs nibbles big-endian into bytes; a trailing odd nibble is dropped.
pub fn nibbles_to_bytes(nibbles: &[u8]) -> Vec<u8> {
    nibbles
        .chunks_exact(2)
        .map(|pair| (pair[0] << 4) | pair[1])
        .collect()
}

pub fn bytes_to_nibbles(bytes: &[u8]) -> Vec<u8> {
    bytes.iter().flat_map(|&b| [b >> 4, b & 0x0f]).collect()
}
