//! Serial test: uniformity of overlapping m-bit patterns via first and
//! second differences of the psi-square statistic.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::patterns::overlapping_pattern_counts;
use crate::nist::special::igamc;
use crate::report::TestResult;

/// Serial test with pattern length `m >= 2`; yields two P-values, one for
/// the first difference of psi^2 and one for the second.
pub fn serial_test(seq: &BitSequence, m: usize, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    if m < 2 {
        return Err(Error::InvalidConfig(format!(
            "serial test needs m >= 2, got {m}"
        )));
    }
    if m >= n {
        return Err(Error::InvalidConfig(format!(
            "pattern length {m} too large for {n} bits"
        )));
    }
    let bits = seq.to_vec();
    let psi = |mm: usize| -> f64 {
        if mm == 0 {
            return 0.0;
        }
        let counts = overlapping_pattern_counts(&bits, mm);
        let sum_sq: f64 = counts.iter().map(|&c| (c as f64) * (c as f64)).sum();
        (1u64 << mm) as f64 / n as f64 * sum_sq - n as f64
    };

    let psi_m = psi(m);
    let psi_m1 = psi(m - 1);
    let psi_m2 = psi(m - 2);
    let d1 = (psi_m - psi_m1).max(0.0);
    let d2 = (psi_m - 2.0 * psi_m1 + psi_m2).max(0.0);

    let p1 = igamc(2f64.powi(m as i32 - 2), d1 / 2.0)?;
    let p2 = igamc(2f64.powi(m as i32 - 3), d2 / 2.0)?;

    // recommendation: m below floor(log2 n) - 2
    let applicable = n >= 100 && (m as u32) < n.ilog2().saturating_sub(2);
    TestResult::new("serial", vec![p1, p2], applicable, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_small_example() {
        let seq = BitSequence::from_ascii("0011011101").unwrap();
        let r = serial_test(&seq, 3, 0.01).unwrap();
        assert!((r.p_values[0] - 0.808_792_135).abs() < 1e-6);
        assert!((r.p_values[1] - 0.670_320_046).abs() < 1e-6);
    }

    #[test]
    fn periodic_sequence_fails() {
        let mut seq = BitSequence::with_capacity(5000);
        for i in 0..5000 {
            seq.push(i % 2 == 0);
        }
        let r = serial_test(&seq, 5, 0.01).unwrap();
        assert!(r.p_values.iter().any(|&p| p < 0.01));
        assert!(!r.passed);
    }

    #[test]
    fn rejects_m_below_two() {
        let seq = BitSequence::from_ascii("0101").unwrap();
        assert!(serial_test(&seq, 1, 0.01).is_err());
    }

    #[test]
    fn applicability_follows_length() {
        let seq = BitSequence::from_bools(&vec![true; 5000]);
        // floor(log2 5000) = 12, so m = 9 is allowed, m = 10 is not
        assert!(serial_test(&seq, 9, 0.01).unwrap().applicable);
        assert!(!serial_test(&seq, 10, 0.01).unwrap().applicable);
    }
}
