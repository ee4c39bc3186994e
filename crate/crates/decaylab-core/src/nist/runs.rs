//! Runs test (oscillation rate) and longest-run-of-ones test.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::special::{erfc, igamc};
use crate::report::TestResult;

/// Runs test: V_n = number of maximal runs, compared with the expectation
/// for the observed ones fraction.
///
/// When the ones fraction already fails the mono-bit precondition
/// |pi - 1/2| >= 2/sqrt(n) the run count carries no extra information; the
/// result is reported with P = 0 and flagged not applicable.
pub fn runs_test(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    // pi(1 - pi) and |pi - 1/2| from the integer counts, so complementing
    // the sequence changes nothing
    let ones = seq.count_ones();
    let zeros = n - ones;
    let imbalance = ones.abs_diff(zeros) as f64 / (2.0 * n as f64);
    if imbalance >= 2.0 / (n as f64).sqrt() {
        return TestResult::new("runs", vec![0.0], false, alpha);
    }
    let pq = ones as f64 * zeros as f64 / (n as f64 * n as f64);
    let bits = seq.to_vec();
    let v_n = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count();
    let numerator = (v_n as f64 - 2.0 * n as f64 * pq).abs();
    let denominator = 2.0 * (2.0 * n as f64).sqrt() * pq;
    let p = erfc(numerator / denominator);
    TestResult::new("runs", vec![p], n >= 100, alpha)
}

struct LongestRunTable {
    block_len: usize,
    degrees: usize,
    class_lo: usize,
    class_hi: usize,
    probs: &'static [f64],
}

// Class probabilities from SP 800-22 Rev 1a section 2.4.
fn longest_run_table(n: usize) -> Option<LongestRunTable> {
    if n >= 750_000 {
        Some(LongestRunTable {
            block_len: 10_000,
            degrees: 6,
            class_lo: 10,
            class_hi: 16,
            probs: &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727],
        })
    } else if n >= 6272 {
        Some(LongestRunTable {
            block_len: 128,
            degrees: 5,
            class_lo: 4,
            class_hi: 9,
            probs: &[0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124],
        })
    } else if n >= 128 {
        Some(LongestRunTable {
            block_len: 8,
            degrees: 3,
            class_lo: 1,
            class_hi: 4,
            probs: &[0.2148, 0.3672, 0.2305, 0.1875],
        })
    } else {
        None
    }
}

/// Longest run of ones within fixed blocks, binned against the reference
/// class distribution for the block size chosen by the sequence length.
pub fn longest_run_test(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    let Some(table) = longest_run_table(n) else {
        // below 128 bits no parameter set exists
        return TestResult::new("longest_run", vec![0.0], false, alpha);
    };

    let bits = seq.to_vec();
    let n_blocks = n / table.block_len;
    let mut nu = vec![0usize; table.degrees + 1];
    for block in bits.chunks_exact(table.block_len) {
        let mut longest = 0usize;
        let mut run = 0usize;
        for &b in block {
            run = if b == 1 { run + 1 } else { 0 };
            longest = longest.max(run);
        }
        let class = longest.clamp(table.class_lo, table.class_hi) - table.class_lo;
        nu[class] += 1;
    }

    let mut chi = 0.0;
    for (count, &prob) in nu.iter().zip(table.probs) {
        let expected = n_blocks as f64 * prob;
        chi += (*count as f64 - expected).powi(2) / expected;
    }
    let p = igamc(table.degrees as f64 / 2.0, chi / 2.0)?;
    TestResult::new("longest_run", vec![p], true, alpha)
}
