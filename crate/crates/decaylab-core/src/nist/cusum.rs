//! Cumulative-sums test: maximal partial-sum excursion of the +/-1 walk,
//! evaluated forward and backward.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::special::normal_cdf;
use crate::report::TestResult;

/// Forward and backward cumulative-sums P-values, in that order.
pub fn cumulative_sums_test(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    let bits = seq.to_vec();
    let forward = max_excursion(bits.iter().copied());
    let backward = max_excursion(bits.iter().rev().copied());
    let p_values = vec![excursion_p(forward, n), excursion_p(backward, n)];
    TestResult::new("cumulative_sums", p_values, n >= 100, alpha)
}

fn max_excursion(bits: impl Iterator<Item = u8>) -> i64 {
    let mut sum = 0i64;
    let mut z = 0i64;
    for b in bits {
        sum += 2 * b as i64 - 1;
        z = z.max(sum.abs());
    }
    z
}

/// P-value for a maximal excursion z over n steps; sums run over the
/// integer k in the real interval bounds given by the statistic.
fn excursion_p(z: i64, n: usize) -> f64 {
    let z = z as f64;
    let n_f = n as f64;
    let sqrt_n = n_f.sqrt();

    let sum_range = |lo: f64, hi: f64, f: &dyn Fn(f64) -> f64| -> f64 {
        let lo = lo.ceil() as i64;
        let hi = hi.floor() as i64;
        (lo..=hi).map(|k| f(k as f64)).sum()
    };

    let t1 = sum_range((-n_f / z + 1.0) / 4.0, (n_f / z - 1.0) / 4.0, &|k| {
        normal_cdf((4.0 * k + 1.0) * z / sqrt_n) - normal_cdf((4.0 * k - 1.0) * z / sqrt_n)
    });
    let t2 = sum_range((-n_f / z - 3.0) / 4.0, (n_f / z - 1.0) / 4.0, &|k| {
        normal_cdf((4.0 * k + 3.0) * z / sqrt_n) - normal_cdf((4.0 * k + 1.0) * z / sqrt_n)
    });
    (1.0 - t1 + t2).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_small_example_forward() {
        let seq = BitSequence::from_ascii("1011010111").unwrap();
        let r = cumulative_sums_test(&seq, 0.01).unwrap();
        assert!((r.p_values[0] - 0.411_658_6).abs() < 1e-6);
    }

    #[test]
    fn tiny_excursion_yields_p_near_one() {
        // the statistic is one-sided: it flags walks that stray too far,
        // so a pinned alternating walk scores P close to 1
        let mut seq = BitSequence::with_capacity(5000);
        for i in 0..5000 {
            seq.push(i % 2 == 0);
        }
        let r = cumulative_sums_test(&seq, 0.01).unwrap();
        assert!(r.p_values[0] > 0.99);
        assert!(r.p_values[1] > 0.99);
    }

    #[test]
    fn maximal_excursion_fails() {
        let seq = BitSequence::from_bools(&vec![false; 5000]);
        let r = cumulative_sums_test(&seq, 0.01).unwrap();
        assert!(r.p_values[0] < 1e-10);
    }

    #[test]
    fn forward_and_backward_differ_in_general() {
        let seq = BitSequence::from_ascii("1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000").unwrap();
        let r = cumulative_sums_test(&seq, 0.01).unwrap();
        assert!((r.p_values[0] - 0.219_194).abs() < 1e-6);
        assert!((r.p_values[1] - 0.114_866).abs() < 1e-6);
    }
}
