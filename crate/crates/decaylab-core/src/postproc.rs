//! Mean-threshold bit extraction: one bit per count, 1 when the count
//! exceeds the series mean, 0 otherwise.

use serde::{Deserialize, Serialize};

use crate::bits::BitSequence;
use crate::counts::CountSeries;
use crate::error::Result;

/// Threshold statistics from one binarization pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSummary {
    /// Arithmetic mean of all counts.
    pub mean: f64,
    pub n_counts: usize,
    pub ones_emitted: usize,
    pub zeros_emitted: usize,
}

/// Converts counts to bits against the whole-series mean.
///
/// The comparison `x_i > mean` is carried out on integers
/// (`x_i * n > sum`), so boundary counts can never flip with the order of
/// floating-point rounding: a count exactly equal to the mean always emits 0.
pub fn binarize_mean_threshold(series: &CountSeries) -> Result<(BitSequence, ThresholdSummary)> {
    let counts = series.counts();
    let n = counts.len() as u128;
    let sum: u128 = series.total();

    let mut seq = BitSequence::with_capacity(counts.len());
    let mut ones = 0usize;
    for &x in counts {
        let one = (x as u128) * n > sum;
        seq.push(one);
        ones += one as usize;
    }

    let summary = ThresholdSummary {
        mean: sum as f64 / counts.len() as f64,
        n_counts: counts.len(),
        ones_emitted: ones,
        zeros_emitted: counts.len() - ones,
    };
    Ok((seq, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(counts: Vec<u64>) -> CountSeries {
        CountSeries::new(counts, 1.0, "test", 2.0, 900.0).unwrap()
    }

    #[test]
    fn counts_at_mean_emit_zero() {
        // mean = 4; 3 -> 0, 5 -> 1, 4 (== mean) -> 0
        let (bits, summary) = binarize_mean_threshold(&series(vec![3, 5, 4])).unwrap();
        assert_eq!(bits.to_ascii(), "010");
        assert_eq!(summary.mean, 4.0);
        assert_eq!(summary.ones_emitted, 1);
        assert_eq!(summary.zeros_emitted, 2);
    }

    #[test]
    fn constant_counts_are_all_zero() {
        let (bits, _) = binarize_mean_threshold(&series(vec![7, 7, 7, 7])).unwrap();
        assert_eq!(bits.to_ascii(), "0000");
    }

    #[test]
    fn one_each_side() {
        let (bits, summary) = binarize_mean_threshold(&series(vec![0, 10])).unwrap();
        assert_eq!(bits.to_ascii(), "01");
        assert_eq!(summary.mean, 5.0);
    }

    #[test]
    fn one_bit_per_count() {
        let (bits, summary) = binarize_mean_threshold(&series(vec![1, 9, 4, 4, 2])).unwrap();
        assert_eq!(bits.n_bits(), 5);
        assert_eq!(summary.ones_emitted + summary.zeros_emitted, 5);
    }

    #[test]
    fn minimum_count_maps_to_zero() {
        let counts = vec![3, 9, 12, 3, 8];
        let min = *counts.iter().min().unwrap();
        let (bits, _) = binarize_mean_threshold(&series(counts.clone())).unwrap();
        for (i, &c) in counts.iter().enumerate() {
            if c == min {
                assert_eq!(bits.bit(i), 0);
            }
        }
    }
}
