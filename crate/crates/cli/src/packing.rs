//! Byte streams to message blocks and back.
//!
//! The stream is an 8-byte little-endian length followed by the payload.
//! Bit `i` of the stream is bit `i % 8` of byte `i / 8`; each block takes the
//! next `k·N` bits, element `l` holding bits `l·N .. (l+1)·N` with the first
//! bit as the constant coefficient. The last block is zero padded.

use rankgpt_core::field::{Elem, Field};
use thiserror::Error;

pub const HEADER_BYTES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("stream shorter than its length header")]
    Truncated,
    #[error("header claims {claimed} bytes but only {available} are present")]
    LengthMismatch { claimed: u64, available: usize },
    #[error("padding bits are not zero")]
    DirtyPadding,
    #[error("block holds {found} elements, expected {expected}")]
    BlockSize { found: usize, expected: usize },
}

pub fn block_count(payload_len: usize, degree: u32, k: usize) -> usize {
    let bits = (HEADER_BYTES + payload_len) * 8;
    bits.div_ceil(k * degree as usize)
}

pub fn pack(field: &Field, k: usize, payload: &[u8]) -> Vec<Vec<Elem>> {
    let mut stream = Vec::with_capacity(HEADER_BYTES + payload.len());
    stream.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    stream.extend_from_slice(payload);

    let degree = field.degree() as usize;
    let bit = |i: usize| stream.get(i / 8).is_some_and(|b| b >> (i % 8) & 1 == 1);
    (0..block_count(payload.len(), field.degree(), k))
        .map(|b| {
            (0..k)
                .map(|l| {
                    let start = (b * k + l) * degree;
                    let value = (0..degree).filter(|&j| bit(start + j)).fold(0u64, |acc, j| acc | 1 << j);
                    field.from_coordinates(value)
                })
                .collect()
        })
        .collect()
}

pub fn unpack(field: &Field, k: usize, blocks: &[Vec<Elem>]) -> Result<Vec<u8>, PackingError> {
    let degree = field.degree() as usize;
    let mut stream = vec![0u8; (blocks.len() * k * degree).div_ceil(8)];
    let mut pos = 0;
    for block in blocks {
        if block.len() != k {
            return Err(PackingError::BlockSize { found: block.len(), expected: k });
        }
        for e in block {
            for j in 0..degree {
                if e.bit(j as u32) {
                    stream[pos / 8] |= 1 << (pos % 8);
                }
                pos += 1;
            }
        }
    }
    let header: [u8; HEADER_BYTES] = stream.get(..HEADER_BYTES).ok_or(PackingError::Truncated)?.try_into().expect("sliced to 8");
    let claimed = u64::from_le_bytes(header);
    let available = stream.len() - HEADER_BYTES;
    if claimed > available as u64 {
        return Err(PackingError::LengthMismatch { claimed, available });
    }
    let end = HEADER_BYTES + claimed as usize;
    // A valid stream fills every block it does not need with zeros.
    if blocks.len() != block_count(claimed as usize, field.degree(), k) || stream[end..].iter().any(|&b| b != 0) {
        return Err(PackingError::DirtyPadding);
    }
    Ok(stream[HEADER_BYTES..end].to_vec())
}
