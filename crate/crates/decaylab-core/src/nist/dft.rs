//! Discrete Fourier transform (spectral) test: periodic features show up
//! as excess spectral peaks above the 95% threshold.

use rustfft::{num_complex::Complex, FftPlanner};

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::special::erfc;
use crate::report::TestResult;

/// Spectral test with the corrected statistic: threshold
/// T = sqrt(n ln(1/0.05)) and variance n * 0.95 * 0.05 / 4.
///
/// Peaks are |X_k| for k = 1 .. n/2 - 1; the DC term is excluded, matching
/// the reference worked examples.
pub fn dft_test(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n < 2 {
        return Err(Error::EmptyBitstream);
    }

    let mut buffer: Vec<Complex<f64>> = seq
        .iter()
        .map(|b| Complex::new(2.0 * b as f64 - 1.0, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);

    let threshold = (n as f64 * (1.0 / 0.05f64).ln()).sqrt();
    let below = buffer[1..n / 2]
        .iter()
        .filter(|c| c.norm_sqr().sqrt() < threshold)
        .count();

    let n0 = 0.95 * n as f64 / 2.0;
    let d = (below as f64 - n0) / (n as f64 * 0.95 * 0.05 / 4.0).sqrt();
    let p = erfc(d.abs() / std::f64::consts::SQRT_2);
    TestResult::new("dft", vec![p], n >= 1000, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_small_example() {
        let seq = BitSequence::from_ascii("1001010011").unwrap();
        let r = dft_test(&seq, 0.01).unwrap();
        assert!((r.p_values[0] - 0.029_523_2).abs() < 1e-6);
        assert!(!r.applicable);
    }

    #[test]
    fn constant_sequence_fails() {
        let seq = BitSequence::from_bools(&vec![false; 5000]);
        let r = dft_test(&seq, 0.01).unwrap();
        assert!(r.applicable);
        assert!(r.p_values[0] < 1e-10);
    }

    #[test]
    fn complement_invariant() {
        let seq = BitSequence::from_ascii("110010010000111111011010101000100010000101101000110000100011").unwrap();
        let a = dft_test(&seq, 0.01).unwrap();
        let b = dft_test(&seq.complement(), 0.01).unwrap();
        // flipping every bit negates the signal, leaving all |X_k| unchanged
        assert_eq!(a.p_values, b.p_values);
    }
}
