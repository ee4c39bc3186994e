//! Packed bit sequences and the zero/one balance check.

use crate::error::{Error, Result};

/// An ordered sequence of bits, stored 8 per byte (MSB first) with an
/// explicit length so million-bit calibration streams stay compact.
///
/// Immutable once built; padding bits in the final byte are always zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSequence {
    bytes: Vec<u8>,
    n_bits: usize,
}

impl BitSequence {
    /// Packs an ordered slice of `{0,1}` values, rejecting anything else.
    pub fn pack_bits(values: &[u64]) -> Result<Self> {
        let mut seq = Self::with_capacity(values.len());
        for (index, &value) in values.iter().enumerate() {
            match value {
                0 => seq.push(false),
                1 => seq.push(true),
                _ => return Err(Error::NonBinaryValue { value, index }),
            }
        }
        Ok(seq)
    }

    pub fn with_capacity(n_bits: usize) -> Self {
        Self {
            bytes: Vec::with_capacity(n_bits.div_ceil(8)),
            n_bits: 0,
        }
    }

    pub fn from_bools(values: &[bool]) -> Self {
        let mut seq = Self::with_capacity(values.len());
        for &v in values {
            seq.push(v);
        }
        seq
    }

    /// Parses ASCII `0`/`1` characters; whitespace (including newlines) is
    /// ignored, anything else is rejected.
    pub fn from_ascii(text: &str) -> Result<Self> {
        let mut seq = Self::with_capacity(text.len());
        for (index, c) in text.chars().filter(|c| !c.is_whitespace()).enumerate() {
            match c {
                '0' => seq.push(false),
                '1' => seq.push(true),
                _ => {
                    return Err(Error::NonBinaryValue {
                        value: c as u64,
                        index,
                    })
                }
            }
        }
        Ok(seq)
    }

    /// Reinterprets raw bytes as a bit stream, MSB first, keeping the first
    /// `n_bits` bits. Used to wrap generator output without re-packing.
    pub fn from_bytes(bytes: &[u8], n_bits: usize) -> Result<Self> {
        if n_bits > bytes.len() * 8 {
            return Err(Error::InvalidConfig(format!(
                "{} bits requested from {} bytes",
                n_bits,
                bytes.len()
            )));
        }
        let mut bytes = bytes[..n_bits.div_ceil(8)].to_vec();
        // zero the padding so equality and popcounts stay well-defined
        if n_bits % 8 != 0 {
            if let Some(last) = bytes.last_mut() {
                *last &= 0xFFu8 << (8 - n_bits % 8);
            }
        }
        Ok(Self { bytes, n_bits })
    }

    pub fn push(&mut self, bit: bool) {
        if self.n_bits % 8 == 0 {
            self.bytes.push(0);
        }
        if bit {
            let byte = self.n_bits / 8;
            self.bytes[byte] |= 1 << (7 - self.n_bits % 8);
        }
        self.n_bits += 1;
    }

    #[inline]
    pub fn bit(&self, index: usize) -> u8 {
        debug_assert!(index < self.n_bits);
        (self.bytes[index / 8] >> (7 - index % 8)) & 1
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn is_empty(&self) -> bool {
        self.n_bits == 0
    }

    pub fn count_ones(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.n_bits - self.count_ones()
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.n_bits).map(move |i| self.bit(i))
    }

    /// Unpacks into one `0`/`1` value per bit. Inverse of [`pack_bits`].
    ///
    /// [`pack_bits`]: Self::pack_bits
    pub fn to_vec(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n_bits);
        for &byte in &self.bytes {
            for shift in (0..8).rev() {
                out.push((byte >> shift) & 1);
            }
        }
        out.truncate(self.n_bits);
        out
    }

    pub fn to_ascii(&self) -> String {
        self.iter().map(|b| if b == 1 { '1' } else { '0' }).collect()
    }

    /// Bitwise complement of the sequence (0s and 1s swapped).
    pub fn complement(&self) -> Self {
        let flipped: Vec<u8> = self.bytes.iter().map(|b| !b).collect();
        Self::from_bytes(&flipped, self.n_bits).expect("same length")
    }
}

/// Fraction of zeros and of ones in the sequence.
///
/// Both fractions come from the integer bit counts; `fraction_ones` is
/// computed as `1 - fraction_zeros` so the pair sums to exactly 1.
pub fn bit_balance(seq: &BitSequence) -> Result<(f64, f64)> {
    if seq.is_empty() {
        return Err(Error::EmptyBitstream);
    }
    let n = seq.n_bits() as f64;
    let fraction_zeros = seq.count_zeros() as f64 / n;
    Ok((fraction_zeros, 1.0 - fraction_zeros))
}
