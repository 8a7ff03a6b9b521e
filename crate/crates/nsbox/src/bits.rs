//! Bit-string conventions shared by every module.
//!
//! An N-party setting or outcome is a string of N bits, one per party.
//! Party 0 owns the *leftmost* character, so the string maps to an index
//! with party 0 in the most significant position:
//!
//! ```text
//! "011" (N = 3)  ->  index 3,  party 0 = 0, party 1 = 1, party 2 = 1
//! ```
//!
//! All tables in this crate are indexed by these integers; the textual
//! form only appears at serialization and CLI boundaries.

use crate::error::{Error, Result};

/// Bit of party `party` (0-based, leftmost) in an `n`-bit index.
#[inline]
pub fn bit(index: usize, n: usize, party: usize) -> u8 {
    debug_assert!(party < n);
    ((index >> (n - 1 - party)) & 1) as u8
}

/// Parity of all bits: `x_0 ⊕ x_1 ⊕ ... ⊕ x_{n-1}`.
#[inline]
pub fn parity(index: usize) -> u8 {
    (index.count_ones() & 1) as u8
}

/// Parity of all pairwise products: `⊕_{i<j} x_i x_j`.
///
/// Only the number of set bits matters: exactly C(k, 2) of the products
/// are 1, so the sum mod 2 is k(k-1)/2 mod 2.
#[inline]
pub fn pairwise_parity(index: usize) -> u8 {
    let k = index.count_ones() as usize;
    ((k * k.saturating_sub(1) / 2) & 1) as u8
}

/// Parse an `n`-character bit string ("010...") into an index.
pub fn parse(s: &str, n: usize) -> Result<usize> {
    if s.len() != n || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::BadBitString {
            string: s.to_string(),
            expected_len: n,
        });
    }
    Ok(s.bytes().fold(0, |acc, b| (acc << 1) | (b - b'0') as usize))
}

/// Format an index as an `n`-character bit string, party 0 leftmost.
pub fn format(index: usize, n: usize) -> String {
    (0..n)
        .map(|p| char::from(b'0' + bit(index, n, p)))
        .collect()
}
