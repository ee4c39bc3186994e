//! Template matching tests: occurrence counts of fixed patterns per block,
//! non-overlapping (aperiodic template set) and overlapping (all-ones).

use std::sync::OnceLock;

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::nist::special::igamc;
use crate::report::TestResult;

/// Template length used by both template tests.
pub const TEMPLATE_LEN: usize = 9;

/// Blocks used by the non-overlapping test.
const NONOVERLAP_BLOCKS: usize = 8;

/// Aperiodic 9-bit templates, shipped as a data file (one template per
/// line); 148 entries.
static TEMPLATE_FILE: &str = include_str!("../../data/templates_m9.txt");

fn templates_m9() -> &'static Vec<u16> {
    static CACHE: OnceLock<Vec<u16>> = OnceLock::new();
    CACHE.get_or_init(|| {
        TEMPLATE_FILE
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                debug_assert_eq!(l.len(), TEMPLATE_LEN);
                l.bytes().fold(0u16, |acc, b| (acc << 1) | (b - b'0') as u16)
            })
            .collect()
    })
}

/// The shipped aperiodic templates as bit strings, in file order.
pub fn template_set_m9() -> Vec<String> {
    templates_m9()
        .iter()
        .map(|&v| (0..TEMPLATE_LEN).map(|i| if v >> (TEMPLATE_LEN - 1 - i) & 1 == 1 { '1' } else { '0' }).collect())
        .collect()
}

/// Non-overlapping template test over the full aperiodic 9-bit set.
///
/// The sequence splits into 8 blocks; within each block the scanner jumps
/// a full template length on a hit and one bit otherwise. One P-value per
/// template, in template-file order; the test passes only when every
/// template's P-value clears `alpha` (the aggregate is their minimum).
pub fn non_overlapping_template_test(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    let block_len = n / NONOVERLAP_BLOCKS;
    if block_len < TEMPLATE_LEN {
        return TestResult::new("non_overlapping_template", vec![0.0], false, alpha);
    }

    let templates = templates_m9();
    // window value -> template index
    let mut lookup = [u16::MAX; 1 << TEMPLATE_LEN];
    for (idx, &tpl) in templates.iter().enumerate() {
        lookup[tpl as usize] = idx as u16;
    }

    let m = TEMPLATE_LEN;
    let mu = (block_len - m + 1) as f64 / (1u32 << m) as f64;
    let var = block_len as f64
        * (1.0 / (1u64 << m) as f64 - (2.0 * m as f64 - 1.0) / (1u64 << (2 * m)) as f64);

    let bits = seq.to_vec();
    let mut chi = vec![0.0f64; templates.len()];
    let mut hits = vec![0u32; templates.len()];
    let mut next_allowed = vec![0usize; templates.len()];

    for block_idx in 0..NONOVERLAP_BLOCKS {
        let start = block_idx * block_len;
        let block = &bits[start..start + block_len];

        hits.fill(0);
        next_allowed.fill(0);
        let mut window = 0u16;
        for (i, &b) in block.iter().enumerate() {
            window = ((window << 1) | b as u16) & ((1 << m) - 1) as u16;
            if i + 1 < m {
                continue;
            }
            let pos = i + 1 - m; // window now covers block[pos..pos+m]
            let t = lookup[window as usize];
            if t != u16::MAX && pos >= next_allowed[t as usize] {
                hits[t as usize] += 1;
                next_allowed[t as usize] = pos + m;
            }
        }
        for (c, &h) in chi.iter_mut().zip(hits.iter()) {
            *c += (h as f64 - mu).powi(2) / var;
        }
    }

    let half_blocks = NONOVERLAP_BLOCKS as f64 / 2.0;
    let p_values = chi
        .iter()
        .map(|&c| igamc(half_blocks, c / 2.0))
        .collect::<Result<Vec<_>>>()?;
    TestResult::new("non_overlapping_template", p_values, n >= 100, alpha)
}

/// Single-template non-overlapping statistic with an explicit block count;
/// the generalized form the known-answer fixtures exercise.
pub fn non_overlapping_single(
    seq: &BitSequence,
    template: &str,
    n_blocks: usize,
    alpha: f64,
) -> Result<TestResult> {
    let n = seq.n_bits();
    let m = template.len();
    if n == 0 || m == 0 || n_blocks == 0 {
        return Err(Error::EmptyBitstream);
    }
    let tpl: Vec<u8> = BitSequence::from_ascii(template)?.to_vec();
    let block_len = n / n_blocks;
    if block_len < m {
        return Err(Error::InvalidConfig(format!(
            "block of {block_len} bits cannot hold template of {m}"
        )));
    }
    let mu = (block_len - m + 1) as f64 / 2f64.powi(m as i32);
    let var = block_len as f64
        * (1.0 / 2f64.powi(m as i32) - (2.0 * m as f64 - 1.0) / 2f64.powi(2 * m as i32));

    let bits = seq.to_vec();
    let mut chi = 0.0;
    for block in bits.chunks_exact(block_len).take(n_blocks) {
        let mut hits = 0u32;
        let mut i = 0;
        while i + m <= block_len {
            if block[i..i + m] == tpl[..] {
                hits += 1;
                i += m;
            } else {
                i += 1;
            }
        }
        chi += (hits as f64 - mu).powi(2) / var;
    }
    let p = igamc(n_blocks as f64 / 2.0, chi / 2.0)?;
    TestResult::new("non_overlapping_template", vec![p], false, alpha)
}

/// Class probabilities for the overlapping test with m = 9, M = 1032
/// (lambda = 2), per SP 800-22 Rev 1a section 2.8.
const OVERLAP_PROBS: [f64; 6] = [0.364091, 0.185659, 0.139381, 0.100571, 0.070432, 0.139865];
const OVERLAP_BLOCK_LEN: usize = 1032;
const OVERLAP_CLASSES: usize = 5;

/// Overlapping template test for the all-ones 9-bit template: occurrences
/// per 1032-bit block (overlap allowed) binned into 0..=5+ classes.
pub fn overlapping_template_test(seq: &BitSequence, alpha: f64) -> Result<TestResult> {
    let n = seq.n_bits();
    if n == 0 {
        return Err(Error::EmptyBitstream);
    }
    let n_blocks = n / OVERLAP_BLOCK_LEN;
    if n_blocks == 0 {
        return TestResult::new("overlapping_template", vec![0.0], false, alpha);
    }

    let bits = seq.to_vec();
    let mut nu = [0usize; OVERLAP_CLASSES + 1];
    for block in bits.chunks_exact(OVERLAP_BLOCK_LEN).take(n_blocks) {
        let mut run = 0usize;
        let mut hits = 0usize;
        for &b in block {
            run = if b == 1 { run + 1 } else { 0 };
            if run >= TEMPLATE_LEN {
                hits += 1;
            }
        }
        nu[hits.min(OVERLAP_CLASSES)] += 1;
    }

    let mut chi = 0.0;
    for (count, &prob) in nu.iter().zip(OVERLAP_PROBS.iter()) {
        let expected = n_blocks as f64 * prob;
        chi += (*count as f64 - expected).powi(2) / expected;
    }
    let p = igamc(OVERLAP_CLASSES as f64 / 2.0, chi / 2.0)?;
    TestResult::new("overlapping_template", vec![p], n >= 1_000_000, alpha)
}
