//! Overlapping m-bit pattern counting shared by the serial and
//! approximate-entropy tests.

/// Counts every overlapping m-bit pattern of the cyclically extended
/// sequence (the first m-1 bits are appended), so exactly n windows are
/// counted. Returns 2^m counters indexed by the pattern value, MSB first.
pub(crate) fn overlapping_pattern_counts(bits: &[u8], m: usize) -> Vec<u32> {
    debug_assert!(m >= 1 && m <= 24);
    let n = bits.len();
    let mask = (1usize << m) - 1;
    let mut counts = vec![0u32; 1 << m];

    let mut window = 0usize;
    for &b in bits.iter().take(m - 1) {
        window = (window << 1) | b as usize;
    }
    for i in 0..n {
        let incoming = bits[(i + m - 1) % n];
        window = ((window << 1) | incoming as usize) & mask;
        counts[window] += 1;
    }
    counts
}
