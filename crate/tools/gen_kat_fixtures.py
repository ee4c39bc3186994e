#!/usr/bin/env python3
"""Known-answer fixture generator for the SP 800-22 battery.

Implements every test statistic directly from NIST SP 800-22 Rev 1a and
freezes the resulting P-values into plain-text fixture files consumed by
the Rust test suite. Keeping this generator separate from the Rust code
gives the KATs an independent derivation path: scipy provides erfc and
the regularized incomplete gamma, the statistics below follow the
standard's formulas line by line.

Run from the repository root:

    python3 tools/gen_kat_fixtures.py

Outputs:
    crates/decaylab-core/data/templates_m9.txt
    crates/decaylab-core/tests/fixtures/pi_100k.txt
    crates/decaylab-core/tests/fixtures/kat_<test>.txt  (15 files)

The script also prints a cross-check table against the worked examples
published in SP 800-22 Rev 1a sections 2.1-2.15.
"""

import math
import os
import sys
from fractions import Fraction

import mpmath as mp
from scipy.special import erfc, gammaincc

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA_DIR = os.path.join(ROOT, "crates", "decaylab-core", "data")
FIX_DIR = os.path.join(ROOT, "crates", "decaylab-core", "tests", "fixtures")

# ---------------------------------------------------------------------------
# bit-string helpers
# ---------------------------------------------------------------------------


def bits_of(s):
    return [1 if c == "1" else 0 for c in s if c in "01"]


def frac_bits(value, n_bits):
    """First n_bits binary digits of the fractional part of `value`."""
    mp.mp.prec = n_bits + 64
    x = mp.mpf(value) if not isinstance(value, mp.mpf) else value
    frac = x - mp.floor(x)
    scaled = int(mp.floor(mp.ldexp(frac, n_bits)))
    return [int(c) for c in bin(scaled)[2:].zfill(n_bits)]


# ---------------------------------------------------------------------------
# SP 800-22 test statistics (direct transcription of the formulas)
# ---------------------------------------------------------------------------


def frequency(eps):
    n = len(eps)
    s = sum(2 * e - 1 for e in eps)
    s_obs = abs(s) / math.sqrt(n)
    return [erfc(s_obs / math.sqrt(2))]


def block_frequency(eps, M):
    n = len(eps)
    N = n // M
    chi = 0.0
    for j in range(N):
        pi_j = sum(eps[j * M : (j + 1) * M]) / M
        chi += (pi_j - 0.5) ** 2
    chi *= 4.0 * M
    return [gammaincc(N / 2.0, chi / 2.0)]


def runs(eps):
    n = len(eps)
    pi = sum(eps) / n
    if abs(pi - 0.5) >= 2.0 / math.sqrt(n):
        return [0.0]
    v = 1 + sum(1 for i in range(n - 1) if eps[i] != eps[i + 1])
    num = abs(v - 2.0 * n * pi * (1.0 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1.0 - pi)
    return [erfc(num / den)]


def longest_run(eps):
    n = len(eps)
    if n >= 750000:
        M, K, lo, hi = 10000, 6, 10, 16
        pis = [0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727]
    elif n >= 6272:
        M, K, lo, hi = 128, 5, 4, 9
        pis = [0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124]
    else:
        M, K, lo, hi = 8, 3, 1, 4
        pis = [0.2148, 0.3672, 0.2305, 0.1875]
    N = n // M
    nu = [0] * (K + 1)
    for j in range(N):
        block = eps[j * M : (j + 1) * M]
        longest = run = 0
        for b in block:
            run = run + 1 if b == 1 else 0
            longest = max(longest, run)
        cls = min(max(longest, lo), hi) - lo
        nu[cls] += 1
    chi = sum((nu[i] - N * pis[i]) ** 2 / (N * pis[i]) for i in range(K + 1))
    return [gammaincc(K / 2.0, chi / 2.0)]


def gf2_rank(rows, ncols):
    rows = list(rows)
    rank = 0
    col = 0
    nrows = len(rows)
    while rank < nrows and col < ncols:
        bit = 1 << (ncols - 1 - col)
        pivot = next((i for i in range(rank, nrows) if rows[i] & bit), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(nrows):
            if i != rank and rows[i] & bit:
                rows[i] ^= rows[rank]
        rank += 1
        col += 1
    return rank


def rank_prob(r, R, Q):
    """P(rank = r) for a random R x Q binary matrix (exact product formula)."""
    p = mp.mpf(2) ** (r * (R + Q - r) - R * Q)
    for i in range(r):
        p *= (1 - mp.mpf(2) ** (i - R)) * (1 - mp.mpf(2) ** (i - Q))
        p /= 1 - mp.mpf(2) ** (i - r)
    return float(p)


def matrix_rank(eps, dim=32):
    n = len(eps)
    N = n // (dim * dim)
    full = fullm1 = 0
    for k in range(N):
        block = eps[k * dim * dim : (k + 1) * dim * dim]
        rows = []
        for i in range(dim):
            word = 0
            for j in range(dim):
                word = (word << 1) | block[i * dim + j]
            rows.append(word)
        r = gf2_rank(rows, dim)
        if r == dim:
            full += 1
        elif r == dim - 1:
            fullm1 += 1
    rest = N - full - fullm1
    p_full = rank_prob(dim, dim, dim)
    p_fullm1 = rank_prob(dim - 1, dim, dim)
    p_rest = 1.0 - p_full - p_fullm1
    chi = (
        (full - N * p_full) ** 2 / (N * p_full)
        + (fullm1 - N * p_fullm1) ** 2 / (N * p_fullm1)
        + (rest - N * p_rest) ** 2 / (N * p_rest)
    )
    return [gammaincc(1.0, chi / 2.0)]


def dft(eps):
    import numpy as np

    n = len(eps)
    x = np.array([2 * e - 1 for e in eps], dtype=float)
    spectrum = np.fft.fft(x)
    # Peaks k = 1 .. n/2 - 1; the worked examples in the standard exclude
    # the DC component from the below-threshold count.
    mods = np.abs(spectrum[1 : n // 2])
    threshold = math.sqrt(n * math.log(1.0 / 0.05))
    n1 = int(np.sum(mods < threshold))
    n0 = 0.95 * n / 2.0
    d = (n1 - n0) / math.sqrt(n * 0.95 * 0.05 / 4.0)
    return [erfc(abs(d) / math.sqrt(2))]


def non_overlapping(eps, template, n_blocks=8):
    n = len(eps)
    m = len(template)
    M = n // n_blocks
    mu = (M - m + 1) / 2.0**m
    var = M * (1.0 / 2.0**m - (2.0 * m - 1.0) / 2.0 ** (2 * m))
    chi = 0.0
    for j in range(n_blocks):
        block = eps[j * M : (j + 1) * M]
        w = 0
        i = 0
        while i <= M - m:
            if block[i : i + m] == template:
                w += 1
                i += m
            else:
                i += 1
        chi += (w - mu) ** 2 / var
    return [gammaincc(n_blocks / 2.0, chi / 2.0)]


# Corrected class probabilities for the overlapping-template test with
# m = 9, M = 1032 (lambda = 2, eta = 1); SP 800-22 Rev 1a section 2.8.
OVERLAP_PIS = [0.364091, 0.185659, 0.139381, 0.100571, 0.070432, 0.139865]


def overlapping(eps, m=9, M=1032, K=5):
    n = len(eps)
    N = n // M
    template = [1] * m
    nu = [0] * (K + 1)
    for j in range(N):
        block = eps[j * M : (j + 1) * M]
        w = sum(1 for i in range(M - m + 1) if block[i : i + m] == template)
        nu[min(w, K)] += 1
    chi = sum((nu[i] - N * OVERLAP_PIS[i]) ** 2 / (N * OVERLAP_PIS[i]) for i in range(K + 1))
    return [gammaincc(K / 2.0, chi / 2.0)]


UNIVERSAL_TABLE = {
    1: (0.7326495, 0.690),
    2: (1.5374383, 1.338),
    3: (2.4016068, 1.901),
    4: (3.3112247, 2.358),
    5: (4.2534266, 2.705),
    6: (5.2177052, 2.954),
    7: (6.1962507, 3.125),
    8: (7.1836656, 3.238),
    9: (8.1764248, 3.311),
    10: (9.1723243, 3.356),
    11: (10.170032, 3.384),
    12: (11.168765, 3.401),
    13: (12.168070, 3.410),
    14: (13.167693, 3.416),
    15: (14.167488, 3.419),
    16: (15.167379, 3.421),
}


def universal(eps, L, Q):
    n = len(eps)
    K = n // L - Q
    table = [0] * (1 << L)
    for i in range(Q):
        pat = 0
        for j in range(L):
            pat = (pat << 1) | eps[i * L + j]
        table[pat] = i + 1
    total = 0.0
    for i in range(Q, Q + K):
        pat = 0
        for j in range(L):
            pat = (pat << 1) | eps[i * L + j]
        total += math.log2(i + 1 - table[pat])
        table[pat] = i + 1
    fn = total / K
    expected, variance = UNIVERSAL_TABLE[L]
    c = 0.7 - 0.8 / L + (4.0 + 32.0 / L) * K ** (-3.0 / L) / 15.0
    sigma = c * math.sqrt(variance / K)
    return [erfc(abs(fn - expected) / (math.sqrt(2) * sigma))]


def _pattern_counts_wrap(eps, m):
    if m == 0:
        return None
    n = len(eps)
    ext = eps + eps[: m - 1]
    counts = [0] * (1 << m)
    for i in range(n):
        pat = 0
        for j in range(m):
            pat = (pat << 1) | ext[i + j]
        counts[pat] += 1
    return counts


def approximate_entropy(eps, m):
    n = len(eps)

    def phi(mm):
        if mm == 0:
            return 0.0
        counts = _pattern_counts_wrap(eps, mm)
        return sum(c / n * math.log(c / n) for c in counts if c > 0)

    apen = phi(m) - phi(m + 1)
    chi = 2.0 * n * (math.log(2.0) - apen)
    return [gammaincc(2.0 ** (m - 1), chi / 2.0)]


def serial(eps, m):
    n = len(eps)

    def psi2(mm):
        if mm == 0:
            return 0.0
        counts = _pattern_counts_wrap(eps, mm)
        return (2.0**mm / n) * sum(c * c for c in counts) - n

    d1 = psi2(m) - psi2(m - 1)
    d2 = psi2(m) - 2.0 * psi2(m - 1) + psi2(m - 2)
    p1 = gammaincc(2.0 ** (m - 2), d1 / 2.0)
    p2 = gammaincc(2.0 ** (m - 3), d2 / 2.0)
    return [p1, p2]


def phi_cdf(x):
    return 0.5 * erfc(-x / math.sqrt(2))


def cusum(eps, forward=True):
    n = len(eps)
    xs = [2 * e - 1 for e in eps]
    if not forward:
        xs = xs[::-1]
    s = 0
    z = 0
    for x in xs:
        s += x
        z = max(z, abs(s))
    sq = math.sqrt(n)
    t1 = 0.0
    for k in range(math.ceil((-n / z + 1) / 4), math.floor((n / z - 1) / 4) + 1):
        t1 += phi_cdf((4 * k + 1) * z / sq) - phi_cdf((4 * k - 1) * z / sq)
    t2 = 0.0
    for k in range(math.ceil((-n / z - 3) / 4), math.floor((n / z - 1) / 4) + 1):
        t2 += phi_cdf((4 * k + 3) * z / sq) - phi_cdf((4 * k + 1) * z / sq)
    return [1.0 - t1 + t2]


def berlekamp_massey(block):
    n = len(block)
    c = [0] * n
    b = [0] * n
    c[0] = b[0] = 1
    L, m_ = 0, -1
    for i in range(n):
        d = block[i]
        for j in range(1, L + 1):
            d ^= c[j] & block[i - j]
        if d == 1:
            t = c[:]
            for j in range(i - m_, n):
                c[j] ^= b[j - (i - m_)]
            if 2 * L <= i:
                L = i + 1 - L
                m_ = i
                b = t
    return L


LC_PIS = [0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833]


def linear_complexity(eps, M):
    n = len(eps)
    N = n // M
    mu = M / 2.0 + (9.0 + (-1.0) ** (M + 1)) / 36.0 - (M / 3.0 + 2.0 / 9.0) / 2.0**M
    nu = [0] * 7
    sign = 1.0 if M % 2 == 0 else -1.0
    for j in range(N):
        L = berlekamp_massey(eps[j * M : (j + 1) * M])
        t = sign * (L - mu) + 2.0 / 9.0
        if t <= -2.5:
            nu[0] += 1
        elif t <= -1.5:
            nu[1] += 1
        elif t <= -0.5:
            nu[2] += 1
        elif t <= 0.5:
            nu[3] += 1
        elif t <= 1.5:
            nu[4] += 1
        elif t <= 2.5:
            nu[5] += 1
        else:
            nu[6] += 1
    chi = sum((nu[i] - N * LC_PIS[i]) ** 2 / (N * LC_PIS[i]) for i in range(7))
    return [gammaincc(3.0, chi / 2.0)]


def _walk_cycles(eps):
    partial = []
    s = 0
    for e in eps:
        s += 2 * e - 1
        partial.append(s)
    walk = [0] + partial + [0]
    cycles = []
    start = 0
    for i in range(1, len(walk)):
        if walk[i] == 0:
            cycles.append(walk[start : i + 1])
            start = i
    return cycles


def random_excursions(eps):
    cycles = _walk_cycles(eps)
    J = len(cycles)
    pvals = []
    for x in [-4, -3, -2, -1, 1, 2, 3, 4]:
        ax = abs(x)
        pi0 = 1.0 - 1.0 / (2.0 * ax)
        pis = [pi0]
        for k in range(1, 5):
            pis.append(1.0 / (4.0 * ax * ax) * pi0 ** (k - 1))
        pis.append(1.0 / (2.0 * ax) * pi0**4)
        nu = [0] * 6
        for cyc in cycles:
            visits = sum(1 for v in cyc if v == x)
            nu[min(visits, 5)] += 1
        chi = sum((nu[k] - J * pis[k]) ** 2 / (J * pis[k]) for k in range(6))
        pvals.append(gammaincc(2.5, chi / 2.0))
    return pvals


def random_excursions_variant(eps):
    cycles = _walk_cycles(eps)
    J = len(cycles)
    counts = {}
    for cyc in cycles:
        for v in cyc[1:]:
            counts[v] = counts.get(v, 0) + 1
    pvals = []
    for x in list(range(-9, 0)) + list(range(1, 10)):
        xi = counts.get(x, 0)
        pvals.append(erfc(abs(xi - J) / math.sqrt(2.0 * J * (4.0 * abs(x) - 2.0))))
    return pvals


# ---------------------------------------------------------------------------
# template generation
# ---------------------------------------------------------------------------


def aperiodic_templates(m):
    out = []
    for v in range(1 << m):
        b = [(v >> (m - 1 - j)) & 1 for j in range(m)]
        if all(b[j:] != b[: m - j] for j in range(1, m)):
            out.append("".join(str(x) for x in b))
    return out


# ---------------------------------------------------------------------------
# fixture emission
# ---------------------------------------------------------------------------

FIXTURE_HEADER = """\
# Known-answer fixtures, one record per line:
#   test_name, input_bits_or_file, params, expected_p_values
# - input is either a literal 0/1 string or file:<name> relative to this dir
# - params are ;-separated key=value pairs, '-' when the test takes none
# - multiple expected P-values are ;-separated, given to 9 decimal places
# Generated by tools/gen_kat_fixtures.py (scipy-based reference).
"""


def fmt_p(ps):
    return ";".join(f"{p:.9f}" for p in ps)


def main():
    os.makedirs(DATA_DIR, exist_ok=True)
    os.makedirs(FIX_DIR, exist_ok=True)

    templates = aperiodic_templates(9)
    assert len(templates) == 148, f"expected 148 aperiodic templates, got {len(templates)}"
    with open(os.path.join(DATA_DIR, "templates_m9.txt"), "w") as f:
        f.write("# Aperiodic 9-bit templates for the non-overlapping template test.\n")
        f.write("# A template is aperiodic when no proper prefix equals the suffix\n")
        f.write("# of the same length, so occurrences cannot overlap. One per line.\n")
        f.write("\n".join(templates) + "\n")
    print(f"templates_m9.txt: {len(templates)} templates")

    pi100k = frac_bits(mp.pi, 100_000)
    with open(os.path.join(FIX_DIR, "pi_100k.txt"), "w") as f:
        s = "".join(str(b) for b in pi100k)
        for i in range(0, len(s), 80):
            f.write(s[i : i + 80] + "\n")
    print("pi_100k.txt written")

    # Classic strings from the standard's worked examples.
    s10_freq = "1011010101"
    s100_pi = (
        "11001001000011111101101010100010001000010110100011"
        "00001000110100110001001100011001100010100010111000"
    )
    s10_bf = "0110011010"
    s10_runs = "1001101011"
    s128_lr = (
        "11001100000101010110110001001100111000000000001001"
        "00110101010001000100111101011010000000110101111100"
        "1100111001101101100010110010"
    )
    s10_dft = "1001010011"
    s20_nov = "10100100101110010110"
    s20_univ = "01011010011101010111"
    s10_apen = "0100110101"
    s10_serial = "0011011101"
    s10_cusum = "1011010111"
    s10_rex = "0110110101"

    pi = pi100k
    checks = []

    def record(fname, rows):
        with open(os.path.join(FIX_DIR, fname), "w") as f:
            f.write(FIXTURE_HEADER)
            for r in rows:
                f.write(", ".join(r) + "\n")

    # frequency ------------------------------------------------------------
    p1 = frequency(bits_of(s10_freq))
    p2 = frequency(bits_of(s100_pi))
    p3 = frequency(pi)
    checks.append(("frequency 2.1.4", p1[0], 0.527089))
    checks.append(("frequency 2.1.8", p2[0], 0.109599))
    record(
        "kat_frequency.txt",
        [
            ("frequency", s10_freq, "-", fmt_p(p1)),
            ("frequency", s100_pi, "-", fmt_p(p2)),
            ("frequency", "file:pi_100k.txt", "-", fmt_p(p3)),
        ],
    )

    # block frequency --------------------------------------------------------
    p1 = block_frequency(bits_of(s10_bf), 3)
    p2 = block_frequency(bits_of(s100_pi), 10)
    p3 = block_frequency(pi, 1250)
    checks.append(("block_frequency 2.2.4", p1[0], 0.801252))
    checks.append(("block_frequency 2.2.8", p2[0], 0.706438))
    record(
        "kat_block_frequency.txt",
        [
            ("block_frequency", s10_bf, "M=3", fmt_p(p1)),
            ("block_frequency", s100_pi, "M=10", fmt_p(p2)),
            ("block_frequency", "file:pi_100k.txt", "M=1250", fmt_p(p3)),
        ],
    )

    # runs -------------------------------------------------------------------
    p1 = runs(bits_of(s10_runs))
    p2 = runs(bits_of(s100_pi))
    p3 = runs(pi)
    checks.append(("runs 2.3.4", p1[0], 0.147232))
    checks.append(("runs 2.3.8", p2[0], 0.500798))
    record(
        "kat_runs.txt",
        [
            ("runs", s10_runs, "-", fmt_p(p1)),
            ("runs", s100_pi, "-", fmt_p(p2)),
            ("runs", "file:pi_100k.txt", "-", fmt_p(p3)),
        ],
    )

    # longest run ------------------------------------------------------------
    p1 = longest_run(bits_of(s128_lr))
    p2 = longest_run(pi)
    # The standard's worked example rounds its chi-square to 4.882457; exact
    # arithmetic on the same nu counts gives 4.882605, hence the 2e-5 slack.
    checks.append(("longest_run 2.4.8", p1[0], 0.180609, 2e-5))
    record(
        "kat_longest_run.txt",
        [
            ("longest_run", s128_lr, "-", fmt_p(p1)),
            ("longest_run", "file:pi_100k.txt", "-", fmt_p(p2)),
        ],
    )

    # rank ---------------------------------------------------------------
    p1 = matrix_rank(pi)
    record("kat_rank.txt", [("rank", "file:pi_100k.txt", "-", fmt_p(p1))])

    # dft ----------------------------------------------------------------
    p1 = dft(bits_of(s10_dft))
    p2 = dft(bits_of(s100_pi))
    p3 = dft(pi)
    checks.append(("dft 2.6.4 (revised)", p1[0], 0.029523))
    # 2.6.8 works on the first 100 fractional bits of pi (not the 2.1.8
    # string, which starts at pi's integer part).
    checks.append(("dft 2.6.8 (revised)", dft(pi[:100])[0], 0.168669))
    record(
        "kat_dft.txt",
        [
            ("dft", s10_dft, "-", fmt_p(p1)),
            ("dft", s100_pi, "-", fmt_p(p2)),
            ("dft", "file:pi_100k.txt", "-", fmt_p(p3)),
        ],
    )

    # non-overlapping template ---------------------------------------------
    p1 = non_overlapping(bits_of(s20_nov), bits_of("001"), n_blocks=2)
    p2 = non_overlapping(pi, bits_of("000000001"), n_blocks=8)
    p3 = non_overlapping(pi, bits_of("101100111"), n_blocks=8)
    checks.append(("non_overlapping 2.7.4", p1[0], 0.344154))
    record(
        "kat_non_overlapping_template.txt",
        [
            ("non_overlapping_template", s20_nov, "template=001;N=2", fmt_p(p1)),
            ("non_overlapping_template", "file:pi_100k.txt", "template=000000001;N=8", fmt_p(p2)),
            ("non_overlapping_template", "file:pi_100k.txt", "template=101100111;N=8", fmt_p(p3)),
        ],
    )

    # overlapping template ---------------------------------------------------
    p1 = overlapping(pi)
    record(
        "kat_overlapping_template.txt",
        [("overlapping_template", "file:pi_100k.txt", "m=9;M=1032", fmt_p(p1))],
    )

    # universal ----------------------------------------------------------
    p1 = universal(bits_of(s20_univ), 2, 4)
    p2 = universal(pi, 6, 640)
    # The toy example in 2.9.4 uses sigma = sqrt(variance) for illustration;
    # the operational statistic uses sigma = c*sqrt(variance/K) as here.
    checks.append(("universal 2.9.4 (operational sigma)", p1[0], 0.063454, 1e-6))
    record(
        "kat_universal.txt",
        [
            ("universal", s20_univ, "L=2;Q=4", fmt_p(p1)),
            ("universal", "file:pi_100k.txt", "L=6;Q=640", fmt_p(p2)),
        ],
    )

    # approximate entropy --------------------------------------------------
    p1 = approximate_entropy(bits_of(s10_apen), 3)
    p2 = approximate_entropy(bits_of(s100_pi), 2)
    p3 = approximate_entropy(pi, 10)
    checks.append(("approx_entropy 2.12.4", p1[0], 0.261961))
    checks.append(("approx_entropy 2.12.8", p2[0], 0.235301))
    record(
        "kat_approximate_entropy.txt",
        [
            ("approximate_entropy", s10_apen, "m=3", fmt_p(p1)),
            ("approximate_entropy", s100_pi, "m=2", fmt_p(p2)),
            ("approximate_entropy", "file:pi_100k.txt", "m=10", fmt_p(p3)),
        ],
    )

    # serial -----------------------------------------------------------------
    p1 = serial(bits_of(s10_serial), 3)
    p2 = serial(pi, 16)
    record(
        "kat_serial.txt",
        [
            ("serial", s10_serial, "m=3", fmt_p(p1)),
            ("serial", "file:pi_100k.txt", "m=16", fmt_p(p2)),
        ],
    )

    # linear complexity ------------------------------------------------------
    p1 = linear_complexity(pi, 500)
    record(
        "kat_linear_complexity.txt",
        [("linear_complexity", "file:pi_100k.txt", "M=500", fmt_p(p1))],
    )
    checks.append(("berlekamp_massey('1101011110001')", berlekamp_massey(bits_of("1101011110001")), 4))

    # cumulative sums ----------------------------------------------------
    pf = cusum(bits_of(s10_cusum), True)
    pb = cusum(bits_of(s10_cusum), False)
    pf2 = cusum(bits_of(s100_pi), True)
    pb2 = cusum(bits_of(s100_pi), False)
    pf3 = cusum(pi, True)
    pb3 = cusum(pi, False)
    checks.append(("cusum-forward 2.13.4", pf[0], 0.4116588, 1e-6))
    checks.append(("cusum-forward 2.13.8", pf2[0], 0.219194))
    checks.append(("cusum-backward 2.13.8", pb2[0], 0.114866))
    record(
        "kat_cumulative_sums.txt",
        [
            ("cumulative_sums", s10_cusum, "-", fmt_p(pf + pb)),
            ("cumulative_sums", s100_pi, "-", fmt_p(pf2 + pb2)),
            ("cumulative_sums", "file:pi_100k.txt", "-", fmt_p(pf3 + pb3)),
        ],
    )

    # random excursions ----------------------------------------------------
    pv = random_excursions(bits_of(s10_rex))
    # 2.14.4 rounds the state probabilities to four decimals; exact pi_k
    # values shift the P-value by ~4e-5.
    checks.append(("random_excursions 2.14.4 (x=1)", pv[4], 0.502529, 1e-4))
    pv2 = random_excursions(pi)
    record(
        "kat_random_excursions.txt",
        [
            ("random_excursions", s10_rex, "-", fmt_p(pv)),
            ("random_excursions", "file:pi_100k.txt", "-", fmt_p(pv2)),
        ],
    )

    # random excursions variant ---------------------------------------------
    pv = random_excursions_variant(bits_of(s10_rex))
    checks.append(("re_variant 2.15.4 (x=1)", pv[9], 0.683091))
    pv2 = random_excursions_variant(pi)
    record(
        "kat_random_excursions_variant.txt",
        [
            ("random_excursions_variant", s10_rex, "-", fmt_p(pv)),
            ("random_excursions_variant", "file:pi_100k.txt", "-", fmt_p(pv2)),
        ],
    )

    # high-precision scalar constants -----------------------------------------
    mp.mp.dps = 40
    h_quarter = -(mp.mpf(1) / 4 * mp.log(mp.mpf(1) / 4, 2) + mp.mpf(3) / 4 * mp.log(mp.mpf(3) / 4, 2))
    igamc_15_05 = mp.gammainc(mp.mpf("1.5"), mp.mpf("0.5"), mp.inf, regularized=True)
    monobit_p10 = mp.erfc(mp.mpf(2) / mp.sqrt(10) / mp.sqrt(2))
    print("\nscalar constants:")
    print(f"  H(1/4)            = {mp.nstr(h_quarter, 20)}")
    print(f"  igamc(1.5, 0.5)   = {mp.nstr(igamc_15_05, 20)}")
    print(f"  monobit P (n=10)  = {mp.nstr(monobit_p10, 20)}")

    print("\ncross-checks against SP 800-22 Rev 1a worked examples:")
    bad = 0
    for entry in checks:
        name, got, want = entry[0], entry[1], entry[2]
        tol = entry[3] if len(entry) > 3 else 5e-6
        ok = abs(got - want) < tol if isinstance(want, float) else got == want
        bad += 0 if ok else 1
        print(f"  {'OK ' if ok else 'FAIL'} {name}: got {got!r}, published {want!r}")
    if bad:
        print(f"\n{bad} cross-checks FAILED")
        sys.exit(1)
    print("\nall cross-checks passed")


if __name__ == "__main__":
    main()
