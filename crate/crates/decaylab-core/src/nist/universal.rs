//! Maurer's universal statistical test: compressibility via log distances
//! between repeated L-bit blocks.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::special::erfc;
use crate::report::TestResult;

/// Expected value and variance of the per-block log distance for block
/// lengths 1..=16 (Maurer/Coron reference table).
const TABLE: [(f64, f64); 16] = [
    (0.7326495, 0.690),
    (1.5374383, 1.338),
    (2.4016068, 1.901),
    (3.3112247, 2.358),
    (4.2534266, 2.705),
    (5.2177052, 2.954),
    (6.1962507, 3.125),
    (7.1836656, 3.238),
    (8.1764248, 3.311),
    (9.1723243, 3.356),
    (10.170032, 3.384),
    (11.168765, 3.401),
    (12.168070, 3.410),
    (13.167693, 3.416),
    (14.167488, 3.419),
    (15.167379, 3.421),
];

/// Smallest sequence length for which the recommended parameters exist.
pub const UNIVERSAL_MIN_BITS: usize = 387_840;

/// Block length by sequence size, per the recommendation thresholds
/// n >= 387840 -> L = 6, then one more bit per roughly doubled length.
fn recommended_block_len(n: usize) -> Option<usize> {
    const THRESHOLDS: [(usize, usize); 11] = [
        (1_059_061_760, 16),
        (496_435_200, 15),
        (231_669_760, 14),
        (107_560_960, 13),
        (49_643_520, 12),
        (22_753_280, 11),
        (10_342_400, 10),
        (4_654_080, 9),
        (2_068_480, 8),
        (904_960, 7),
        (387_840, 6),
    ];
    THRESHOLDS.iter().find(|&&(min, _)| n >= min).map(|&(_, l)| l)
}

/// Universal test with parameters chosen from the sequence length
/// (L from the threshold table, Q = 10 * 2^L initialization blocks).
pub fn universal_test(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    // Below the recommended minimum, fall back to the smallest table entry
    // so a (non-applicable) P-value can still be reported when it exists.
    let l = recommended_block_len(n).unwrap_or(6);
    let q = 10 * (1usize << l);
    if n / l <= q {
        return TestResult::new("universal", vec![0.0], false, alpha);
    }
    let p = universal_p_value(seq, l, q)?;
    TestResult::new("universal", vec![p], n >= UNIVERSAL_MIN_BITS, alpha)
}

/// Universal test with explicit block length and initialization count.
pub fn universal_test_with_params(
    seq: &BitSequence,
    l: usize,
    q: usize,
    alpha: f64,
) -> Result<TestResult> {
    let p = universal_p_value(seq, l, q)?;
    let n = seq.n_bits();
    let applicable =
        n >= UNIVERSAL_MIN_BITS && recommended_block_len(n) == Some(l) && q == 10 * (1usize << l);
    TestResult::new("universal", vec![p], applicable, alpha)
}

fn universal_p_value(seq: &BitSequence, l: usize, q: usize) -> Result<f64> {
    let n = seq.n_bits();
    if !(1..=16).contains(&l) {
        return Err(Error::InvalidConfig(format!(
            "universal block length {l} outside 1..=16"
        )));
    }
    let total_blocks = n / l;
    if q == 0 || total_blocks <= q {
        return Err(Error::InvalidConfig(format!(
            "universal needs more than {q} blocks of {l} bits, have {total_blocks}"
        )));
    }
    let k = total_blocks - q;

    let bits = seq.to_vec();
    let block_value = |idx: usize| -> usize {
        bits[idx * l..(idx + 1) * l]
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | b as usize)
    };

    let mut last_seen = vec![0usize; 1 << l];
    for i in 0..q {
        last_seen[block_value(i)] = i + 1;
    }
    let mut sum = 0.0f64;
    for i in q..total_blocks {
        let pattern = block_value(i);
        sum += ((i + 1 - last_seen[pattern]) as f64).log2();
        last_seen[pattern] = i + 1;
    }
    let fn_stat = sum / k as f64;

    let (expected, variance) = TABLE[l - 1];
    let c = 0.7 - 0.8 / l as f64 + (4.0 + 32.0 / l as f64) * (k as f64).powf(-3.0 / l as f64) / 15.0;
    let sigma = c * (variance / k as f64).sqrt();
    Ok(erfc((fn_stat - expected).abs() / (std::f64::consts::SQRT_2 * sigma)))
}
