//! Approximate entropy test: regularity measured by the gap between
//! m-bit and (m+1)-bit pattern entropies.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::patterns::overlapping_pattern_counts;
use crate::nist::special::igamc;
use crate::report::TestResult;

/// ApEn(m) = phi(m) - phi(m+1) with overlapping cyclic pattern counts;
/// chi^2 = 2n (ln 2 - ApEn), P = Q(2^(m-1), chi^2/2).
pub fn approximate_entropy_test(seq: &BitSequence, m: usize, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    if m == 0 || m + 1 >= n {
        return Err(Error::InvalidConfig(format!(
            "pattern length {m} invalid for {n} bits"
        )));
    }
    let bits = seq.to_vec();
    let phi = |mm: usize| -> f64 {
        let counts = overlapping_pattern_counts(&bits, mm);
        let term = |c: u32| {
            if c == 0 {
                return 0.0;
            }
            let f = c as f64 / n as f64;
            f * f.ln()
        };
        // summed pattern-with-complement so a global bit flip, which swaps
        // the two counts of each pair, reproduces the sum bit for bit
        let mask = (1usize << mm) - 1;
        (0..=mask)
            .filter(|&v| v < !v & mask)
            .map(|v| term(counts[v]) + term(counts[!v & mask]))
            .sum()
    };

    let apen = phi(m) - phi(m + 1);
    let chi = (2.0 * n as f64 * (std::f64::consts::LN_2 - apen)).max(0.0);
    let p = igamc(2f64.powi(m as i32 - 1), chi / 2.0)?;

    // recommendation: m below floor(log2 n) - 5
    let applicable = n >= 100 && (m as u32) < n.ilog2().saturating_sub(5);
    TestResult::new("approximate_entropy", vec![p], applicable, alpha)
}
