//! Random excursions tests: visit statistics of the cumulative +/-1 walk,
//! split into zero-to-zero cycles.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::special::{erfc, igamc};
use crate::report::TestResult;

/// Recommended minimum cycle count for either excursions test.
const MIN_CYCLES: usize = 500;

/// States examined by the base test, in reporting order.
const STATES: [i64; 8] = [-4, -3, -2, -1, 1, 2, 3, 4];

struct Walk {
    /// Number of zero-to-zero cycles in the padded walk. Counted as the
    /// zeros after the starting zero of `0, S_1, ..., S_n, 0`, so a walk
    /// already ending at zero contributes one final empty cycle.
    cycles: usize,
    /// visits[state + 9] = number of cycles visiting `state` exactly k
    /// times, k clamped to 0..=5, for |state| <= 4.
    per_cycle_class: [[usize; 6]; 9],
    /// total visits to each state in -9..=9 across the whole walk
    total_visits: [usize; 19],
}

fn walk_statistics(bits: &[u8]) -> Walk {
    let mut per_cycle = [[0usize; 6]; 9]; // index: state + 4 for -4..=4
    let mut cycle_counts = [0usize; 9];
    let mut total_visits = [0usize; 19]; // index: state + 9 for -9..=9
    let mut cycles = 0usize;
    let mut sum = 0i64;

    let mut close_cycle = |counts: &mut [usize; 9]| {
        for (state_idx, &k) in counts.iter().enumerate() {
            per_cycle[state_idx][k.min(5)] += 1;
        }
        *counts = [0; 9];
    };

    for &b in bits {
        sum += 2 * b as i64 - 1;
        if (-9..=9).contains(&sum) {
            total_visits[(sum + 9) as usize] += 1;
        }
        if sum == 0 {
            cycles += 1;
            close_cycle(&mut cycle_counts);
        } else if (-4..=4).contains(&sum) {
            cycle_counts[(sum + 4) as usize] += 1;
        }
    }
    // terminal zero of the padded walk closes the final cycle
    cycles += 1;
    close_cycle(&mut cycle_counts);

    Walk {
        cycles,
        per_cycle_class: per_cycle,
        total_visits,
    }
}

/// Probability that a cycle visits state x exactly k times (k clamped at 5).
fn visit_probability(x: i64, k: usize) -> f64 {
    let ax = x.unsigned_abs() as f64;
    let pi0 = 1.0 - 1.0 / (2.0 * ax);
    match k {
        0 => pi0,
        5 => (1.0 / (2.0 * ax)) * pi0.powi(4),
        _ => (1.0 / (4.0 * ax * ax)) * pi0.powi(k as i32 - 1),
    }
}

/// Random excursions test: chi-square of per-cycle visit counts for the
/// eight states -4..=4 (excluding 0), one P-value per state.
pub fn random_excursions_test(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    let walk = walk_statistics(&seq.to_vec());
    let j = walk.cycles as f64;

    let mut p_values = Vec::with_capacity(STATES.len());
    for &x in &STATES {
        let observed = &walk.per_cycle_class[(x + 4) as usize];
        let mut chi = 0.0;
        for (k, &nu) in observed.iter().enumerate() {
            let expected = j * visit_probability(x, k);
            chi += (nu as f64 - expected).powi(2) / expected;
        }
        p_values.push(igamc(2.5, chi / 2.0)?);
    }
    TestResult::new(
        "random_excursions",
        p_values,
        walk.cycles >= MIN_CYCLES,
        alpha,
    )
}

/// Random excursions variant: total visit counts to the eighteen states
/// -9..=9 (excluding 0), P = erfc(|xi - J| / sqrt(2J(4|x| - 2))).
pub fn random_excursions_variant_test(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    let walk = walk_statistics(&seq.to_vec());
    let j = walk.cycles as f64;

    let mut p_values = Vec::with_capacity(18);
    for x in (-9..=9i64).filter(|&x| x != 0) {
        let xi = walk.total_visits[(x + 9) as usize] as f64;
        let denom = (2.0 * j * (4.0 * x.unsigned_abs() as f64 - 2.0)).sqrt();
        p_values.push(erfc((xi - j).abs() / denom));
    }
    TestResult::new(
        "random_excursions_variant",
        p_values,
        walk.cycles >= MIN_CYCLES,
        alpha,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_small_example() {
        let seq = BitSequence::from_ascii("0110110101").unwrap();
        let r = random_excursions_test(&seq, 0.01).unwrap();
        assert_eq!(r.p_values.len(), 8);
        // state x = +1 sits at index 4
        assert!((r.p_values[4] - 0.502_487_5).abs() < 1e-6);
        assert!(!r.applicable);

        let v = random_excursions_variant_test(&seq, 0.01).unwrap();
        assert_eq!(v.p_values.len(), 18);
        // state x = +1 sits at index 9
        assert!((v.p_values[9] - 0.683_091_4).abs() < 1e-6);
    }

    #[test]
    fn cycle_count_includes_terminal_zero() {
        // walk: -1, 0, 1, 0 -> padded zeros at start, two mid, one end
        let seq = BitSequence::from_ascii("0110").unwrap();
        let walk = walk_statistics(&seq.to_vec());
        assert_eq!(walk.cycles, 3);
    }

    #[test]
    fn visit_probabilities_sum_to_one() {
        for x in [-4i64, -2, 1, 3] {
            let total: f64 = (0..=5).map(|k| visit_probability(x, k)).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn million_bit_walk_usually_applicable() {
        use rand::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut bytes = vec![0u8; 125_000];
        rng.fill_bytes(&mut bytes);
        let seq = BitSequence::from_bytes(&bytes, 1_000_000).unwrap();
        let r = random_excursions_test(&seq, 0.01).unwrap();
        assert_eq!(r.p_values.len(), 8);
        for &p in &r.p_values {
            assert!((0.0..=1.0).contains(&p));
        }
    }
}
