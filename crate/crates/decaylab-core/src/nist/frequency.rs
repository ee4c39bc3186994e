//! Frequency within a block: chi-square of per-block ones proportions.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::special::igamc;
use crate::report::TestResult;

/// Block-frequency test with block length `m`: the sequence is cut into
/// N = n/m full blocks, chi^2 = 4m * sum (pi_j - 1/2)^2, P = Q(N/2, chi^2/2).
pub fn block_frequency_test(seq: &BitSequence, m: usize, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    if m == 0 || m > n {
        return Err(Error::InvalidConfig(format!(
            "block length {m} invalid for {n}-bit sequence"
        )));
    }
    let bits = seq.to_vec();
    let n_blocks = n / m;
    let mut chi = 0.0;
    for block in bits.chunks_exact(m) {
        let ones: usize = block.iter().map(|&b| b as usize).sum();
        let dev = ones as f64 / m as f64 - 0.5;
        chi += dev * dev;
    }
    chi *= 4.0 * m as f64;
    let p = igamc(n_blocks as f64 / 2.0, chi / 2.0)?;

    let applicable = n >= 100 && m >= 20 && (m as f64) > 0.01 * n as f64 && n_blocks < 100;
    TestResult::new("block_frequency", vec![p], applicable, alpha)
}
