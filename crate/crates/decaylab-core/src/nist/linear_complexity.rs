//! Linear complexity test: Berlekamp-Massey LFSR length per block, binned
//! around the theoretical mean.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::special::igamc;
use crate::report::TestResult;

/// Class probabilities for the T statistic, SP 800-22 Rev 1a section 2.10.
const LC_PROBS: [f64; 7] = [0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833];

/// Recommended minimum number of blocks.
const MIN_BLOCKS: usize = 200;

/// Shortest LFSR generating `block`, via Berlekamp-Massey over GF(2).
///
/// Connection polynomial and its backup are kept as packed 64-bit words;
/// each discrepancy is a word-wise AND/popcount against a reversed copy of
/// the block, so the whole run is O(M^2 / 64) per block.
pub fn berlekamp_massey(block: &[u8]) -> usize {
    let len = block.len();
    if len == 0 {
        return 0;
    }
    let words = len / 64 + 2;

    // reversed bit image: bit k holds block[len - 1 - k]
    let mut reversed = vec![0u64; words];
    for (k, &b) in block.iter().rev().enumerate() {
        if b == 1 {
            reversed[k >> 6] |= 1 << (k & 63);
        }
    }

    let mut conn = vec![0u64; words];
    let mut backup = vec![0u64; words];
    let mut stash = vec![0u64; words];
    conn[0] = 1;
    backup[0] = 1;
    let mut complexity = 0usize;
    let mut last_update = -1i64;
    for i in 0..len {
        // discrepancy: parity of sum_j conn[j] * block[i - j] for j = 0..=L;
        // block[i - j] is bit (len - 1 - i + j) of the reversed image
        let base = len - 1 - i;
        let word_off = base >> 6;
        let bit_off = base & 63;
        let active_words = complexity / 64 + 1;
        let mut acc = 0u64;
        for w in 0..active_words {
            let shifted = if bit_off == 0 {
                reversed[word_off + w]
            } else {
                (reversed[word_off + w] >> bit_off) | (reversed[word_off + w + 1] << (64 - bit_off))
            };
            acc ^= conn[w] & shifted;
        }
        if acc.count_ones() & 1 == 1 {
            stash.copy_from_slice(&conn);
            let shift = (i as i64 - last_update) as usize;
            xor_shifted(&mut conn, &backup, shift);
            if 2 * complexity <= i {
                complexity = i + 1 - complexity;
                last_update = i as i64;
                backup.copy_from_slice(&stash);
            }
        }
    }
    complexity
}

/// dst ^= src << shift (bitwise over the packed words).
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let word_off = shift >> 6;
    let bit_off = shift & 63;
    for w in word_off..dst.len() {
        let lo = src[w - word_off] << bit_off;
        let hi = if bit_off > 0 && w > word_off {
            src[w - word_off - 1] >> (64 - bit_off)
        } else {
            0
        };
        dst[w] ^= lo | hi;
    }
}

/// Linear complexity test with block length `block_len` (default 500 in the
/// battery): deviations T of per-block complexity from the expected mean,
/// binned into seven classes.
pub fn linear_complexity_test(seq: &BitSequence, block_len: usize, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    if block_len == 0 {
        return Err(Error::InvalidConfig("block length must be positive".into()));
    }
    let n_blocks = n / block_len;
    if n_blocks == 0 {
        return TestResult::new("linear_complexity", vec![0.0], false, alpha);
    }

    let m = block_len as f64;
    let sign_m = if block_len % 2 == 0 { 1.0 } else { -1.0 };
    let mu = m / 2.0 + (9.0 - sign_m) / 36.0 - (m / 3.0 + 2.0 / 9.0) / 2f64.powf(m);

    let bits = seq.to_vec();
    let mut nu = [0usize; 7];
    for block in bits.chunks_exact(block_len).take(n_blocks) {
        let complexity = berlekamp_massey(block) as f64;
        let t = sign_m * (complexity - mu) + 2.0 / 9.0;
        let class = if t <= -2.5 {
            0
        } else if t <= -1.5 {
            1
        } else if t <= -0.5 {
            2
        } else if t <= 0.5 {
            3
        } else if t <= 1.5 {
            4
        } else if t <= 2.5 {
            5
        } else {
            6
        };
        nu[class] += 1;
    }

    let mut chi = 0.0;
    for (count, &prob) in nu.iter().zip(LC_PROBS.iter()) {
        let expected = n_blocks as f64 * prob;
        chi += (*count as f64 - expected).powi(2) / expected;
    }
    let p = igamc(3.0, chi / 2.0)?;
    TestResult::new("linear_complexity", vec![p], n_blocks >= MIN_BLOCKS, alpha)
}
