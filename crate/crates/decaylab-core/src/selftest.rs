//! Quick health checks run before the full battery: the mono-bit
//! frequency test and sliding-window Shannon entropy.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::special::erfc;
use crate::report::{TestResult, DEFAULT_ALPHA};

/// Sliding-window entropy values over a bit sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyProfile {
    pub window_size: usize,
    pub stride: usize,
    /// One H(X) value per window position, in window order.
    pub entropies: Vec<f64>,
    pub mean_entropy: f64,
}

impl EntropyProfile {
    pub fn n_windows(&self) -> usize {
        self.entropies.len()
    }
}

/// Default window: a tenth of the data, but never below 10 bits.
pub fn default_window_size(n_bits: usize) -> usize {
    (n_bits / 10).max(10)
}

/// Shannon entropy of a binary window, in bits per symbol:
/// H = -sum p_i log2 p_i over the symbols present (0 log 0 = 0).
pub fn shannon_entropy(window: &BitSequence) -> Result<f64> {
    if window.is_empty() {
        return Err(Error::EmptyBitstream);
    }
    let ones = window.count_ones();
    Ok(binary_entropy(ones, window.n_bits()))
}

#[inline]
fn binary_entropy(ones: usize, n: usize) -> f64 {
    if ones == 0 || ones == n {
        return 0.0;
    }
    // computed from the minority count so complementing the bits gives a
    // bit-identical result
    let minority = ones.min(n - ones);
    let p = minority as f64 / n as f64;
    let q = 1.0 - p;
    -(p * p.log2() + q * q.log2())
}

/// Entropy of every window of `window_size` bits advanced by `stride`.
pub fn entropy_profile(
    seq: &BitSequence,
    window_size: usize,
    stride: usize,
) -> Result<EntropyProfile> {
    let n = seq.n_bits();
    if window_size == 0 || stride == 0 {
        return Err(Error::InvalidConfig(
            "window_size and stride must be positive".into(),
        ));
    }
    if window_size > n {
        return Err(Error::WindowTooLarge {
            window: window_size,
            n,
        });
    }

    let bits = seq.to_vec();
    let n_windows = (n - window_size) / stride + 1;
    let mut entropies = Vec::with_capacity(n_windows);

    let mut ones: usize = bits[..window_size].iter().map(|&b| b as usize).sum();
    entropies.push(binary_entropy(ones, window_size));
    for w in 1..n_windows {
        let start = w * stride;
        // slide: drop the bits that left the window, add the ones that entered
        for &b in &bits[start - stride..start] {
            ones -= b as usize;
        }
        for &b in &bits[start + window_size - stride..start + window_size] {
            ones += b as usize;
        }
        entropies.push(binary_entropy(ones, window_size));
    }

    let mean_entropy = entropies.iter().sum::<f64>() / entropies.len() as f64;
    Ok(EntropyProfile {
        window_size,
        stride,
        entropies,
        mean_entropy,
    })
}

/// Mono-bit frequency test: P = erfc(|S_n| / sqrt(n) / sqrt(2)).
///
/// Below 100 bits the asymptotic P-value is not meaningful and the result
/// is flagged not applicable (the P-value is still reported).
pub fn monobit_test(seq: &BitSequence) -> Result<TestResult> {
    monobit_test_with_alpha(seq, DEFAULT_ALPHA)
}

pub fn monobit_test_with_alpha(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    let ones = seq.count_ones() as i64;
    let s_n = 2 * ones - n as i64;
    let s_obs = (s_n.unsigned_abs() as f64) / (n as f64).sqrt();
    let p = erfc(s_obs / std::f64::consts::SQRT_2);
    TestResult::new("frequency", vec![p], n >= 100, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_single_symbol_is_zero() {
        let seq = BitSequence::from_ascii("000000").unwrap();
        assert_eq!(shannon_entropy(&seq).unwrap(), 0.0);
    }

    #[test]
    fn entropy_balanced_is_one() {
        let seq = BitSequence::from_ascii("0101101001").unwrap();
        assert_eq!(shannon_entropy(&seq).unwrap(), 1.0);
    }

    #[test]
    fn entropy_quarter() {
        let seq = BitSequence::from_ascii("1000").unwrap();
        let h = shannon_entropy(&seq).unwrap();
        assert!((h - 0.811_278_124_459_132_8).abs() < 1e-12);
    }

    #[test]
    fn entropy_empty_is_error() {
        let seq = BitSequence::pack_bits(&[]).unwrap();
        assert!(shannon_entropy(&seq).is_err());
    }

    #[test]
    fn profile_window_count() {
        let bits = BitSequence::from_bools(&vec![true; 5000]);
        let profile = entropy_profile(&bits, 500, 1).unwrap();
        assert_eq!(profile.n_windows(), 4501);
    }

    #[test]
    fn alternating_stream_every_window_balanced() {
        let mut seq = BitSequence::with_capacity(5000);
        for i in 0..5000 {
            seq.push(i % 2 == 0);
        }
        let profile = entropy_profile(&seq, 500, 1).unwrap();
        assert!(profile.entropies.iter().all(|&h| h == 1.0));
        assert_eq!(profile.mean_entropy, 1.0);
    }

    #[test]
    fn profile_whole_sequence_window() {
        let seq = BitSequence::from_ascii("1011000101").unwrap();
        let profile = entropy_profile(&seq, seq.n_bits(), 1).unwrap();
        assert_eq!(profile.n_windows(), 1);
        assert_eq!(profile.entropies[0], shannon_entropy(&seq).unwrap());
    }

    #[test]
    fn profile_strided_matches_direct_recount() {
        let seq = BitSequence::from_ascii("110100111000101101001110").unwrap();
        let profile = entropy_profile(&seq, 5, 3).unwrap();
        let bits = seq.to_vec();
        for (w, &h) in profile.entropies.iter().enumerate() {
            let start = w * 3;
            let ones: usize = bits[start..start + 5].iter().map(|&b| b as usize).sum();
            assert_eq!(h, binary_entropy(ones, 5));
        }
    }

    #[test]
    fn profile_rejects_oversized_window() {
        let seq = BitSequence::from_ascii("101").unwrap();
        assert!(matches!(
            entropy_profile(&seq, 4, 1),
            Err(Error::WindowTooLarge { window: 4, n: 3 })
        ));
    }

    #[test]
    fn monobit_balanced_is_one() {
        let mut seq = BitSequence::with_capacity(200);
        for i in 0..200 {
            seq.push(i % 2 == 0);
        }
        let result = monobit_test(&seq).unwrap();
        assert_eq!(result.p_values[0], 1.0);
        assert!(result.applicable);
        assert!(result.passed);
    }

    #[test]
    fn monobit_small_sample_flagged() {
        let seq = BitSequence::from_ascii("1011010101").unwrap();
        let result = monobit_test(&seq).unwrap();
        assert!(!result.applicable);
        assert!((result.p_values[0] - 0.527_089_256_865_538).abs() < 1e-9);
    }

    #[test]
    fn monobit_all_ones_fails() {
        let seq = BitSequence::from_bools(&vec![true; 5000]);
        let result = monobit_test(&seq).unwrap();
        assert!(result.p_values[0] < 1e-10);
        assert!(!result.passed);
    }
}
