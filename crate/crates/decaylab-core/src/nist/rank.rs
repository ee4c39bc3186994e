//! Binary matrix rank test: linear dependence among fixed-size 32x32
//! submatrices of the sequence.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::special::igamc;
use crate::report::TestResult;

const DIM: usize = 32;
const MATRIX_BITS: usize = DIM * DIM;
/// Recommended minimum number of matrices.
const MIN_MATRICES: usize = 38;

/// Rank of a DIM x DIM binary matrix given as one u32 row mask per row.
fn rank_gf2(rows: &mut [u32; DIM]) -> usize {
    let mut rank = 0;
    for col in 0..DIM {
        let bit = 1u32 << (DIM - 1 - col);
        if let Some(pivot) = (rank..DIM).find(|&i| rows[i] & bit != 0) {
            rows.swap(rank, pivot);
            let pivot_row = rows[rank];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            rank += 1;
        }
    }
    rank
}

/// P(rank = r) for a random m x q binary matrix, exact product formula:
/// 2^(r(m+q-r) - mq) * prod_{i<r} (1 - 2^(i-m))(1 - 2^(i-q)) / (1 - 2^(i-r)).
fn rank_probability(r: usize, m: usize, q: usize) -> f64 {
    let exponent = (r * (m + q - r)) as i32 - (m * q) as i32;
    let mut p = (exponent as f64).exp2();
    for i in 0..r {
        p *= (1.0 - ((i as f64) - m as f64).exp2()) * (1.0 - ((i as f64) - q as f64).exp2());
        p /= 1.0 - ((i as f64) - r as f64).exp2();
    }
    p
}

/// Rank test over N = n/1024 matrices filled row-major from the sequence,
/// classed as full rank, one less, or anything lower.
pub fn rank_test(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    let n_matrices = n / MATRIX_BITS;
    if n_matrices == 0 {
        return TestResult::new("rank", vec![0.0], false, alpha);
    }

    let bits = seq.to_vec();
    let mut full = 0usize;
    let mut one_less = 0usize;
    for k in 0..n_matrices {
        let block = &bits[k * MATRIX_BITS..(k + 1) * MATRIX_BITS];
        let mut rows = [0u32; DIM];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..DIM {
                *row = (*row << 1) | block[i * DIM + j] as u32;
            }
        }
        match rank_gf2(&mut rows) {
            r if r == DIM => full += 1,
            r if r == DIM - 1 => one_less += 1,
            _ => {}
        }
    }
    let rest = n_matrices - full - one_less;

    let p_full = rank_probability(DIM, DIM, DIM);
    let p_one_less = rank_probability(DIM - 1, DIM, DIM);
    let p_rest = 1.0 - p_full - p_one_less;

    let nn = n_matrices as f64;
    let chi = (full as f64 - nn * p_full).powi(2) / (nn * p_full)
        + (one_less as f64 - nn * p_one_less).powi(2) / (nn * p_one_less)
        + (rest as f64 - nn * p_rest).powi(2) / (nn * p_rest);
    let p = igamc(1.0, chi / 2.0)?;
    TestResult::new("rank", vec![p], n_matrices >= MIN_MATRICES, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_matrix_has_full_rank() {
        let mut rows = [0u32; DIM];
        for (i, row) in rows.iter_mut().enumerate() {
            *row = 1 << (DIM - 1 - i);
        }
        assert_eq!(rank_gf2(&mut rows), DIM);
    }

    #[test]
    fn duplicate_rows_drop_rank() {
        let mut rows = [0u32; DIM];
        for (i, row) in rows.iter_mut().enumerate() {
            *row = 1 << (DIM - 1 - i);
        }
        rows[31] = rows[0];
        assert_eq!(rank_gf2(&mut rows), DIM - 1);
        let mut zero = [0u32; DIM];
        assert_eq!(rank_gf2(&mut zero), 0);
    }

    #[test]
    fn rank_probabilities_match_known_values() {
        // classic constants for 32x32 random binary matrices
        assert!((rank_probability(32, 32, 32) - 0.288_8).abs() < 1e-4);
        assert!((rank_probability(31, 32, 32) - 0.577_6).abs() < 1e-4);
        let p_rest = 1.0 - rank_probability(32, 32, 32) - rank_probability(31, 32, 32);
        assert!((p_rest - 0.133_6).abs() < 1e-4);
    }

    #[test]
    fn all_zero_matrices_fail() {
        let seq = BitSequence::from_bools(&vec![false; MATRIX_BITS * 40]);
        let r = rank_test(&seq, 0.01).unwrap();
        assert!(r.applicable);
        assert!(r.p_values[0] < 1e-10);
    }

    #[test]
    fn short_sequence_is_inapplicable() {
        let seq = BitSequence::from_bools(&vec![true; 5000]);
        let r = rank_test(&seq, 0.01).unwrap();
        assert!(!r.applicable);
        assert_eq!(n_matrices_of(5000), 4);
    }

    fn n_matrices_of(n: usize) -> usize {
        n / MATRIX_BITS
    }
}
