"""
Linear complexity over GF(2): Berlekamp-Massey, the complexity profile
L(1..n), jump statistics and the jump-count test.

Sequences are packed into Python integers so the discrepancy of each
step is a single AND plus a popcount over machine words. A full profile
of n bits costs O(n^2 / 64) word operations in one pass.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm

from config import settings
from generators.base import WorkbenchError
from generators.bitstream import Bitstream


logger = logging.getLogger(__name__)


class EmptySequence(WorkbenchError):
    """Raised when an analysis receives no bits."""
    pass


class SequenceTooShort(WorkbenchError):
    """Raised when a test needs more bits than it was given."""
    pass


@dataclass
class TestVerdict:
    """
    Outcome of one statistical test.

    With rejects_upper_tail the pass band is [alpha, 1 - alpha]; otherwise
    the p-value already folds both tails and pass means p >= alpha.
    """
    __test__ = False  # not a test case

    name: str
    statistic: float
    p_value: float
    alpha: float
    rejects_upper_tail: bool = True
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        if self.p_value < self.alpha:
            return False
        if self.rejects_upper_tail and self.p_value > 1.0 - self.alpha:
            return False
        return True

    def to_dict(self):
        """Convert to dictionary."""
        return {
            'name': self.name,
            'statistic': self.statistic,
            'p_value': self.p_value,
            'alpha': self.alpha,
            'pass': self.passed,
            'details': dict(self.details),
        }


@dataclass
class LfsrSolution:
    """Shortest LFSR: its length and connection polynomial (bit i = c_i)."""
    length: int
    connection_poly: int

    def __iter__(self):
        return iter((self.length, self.connection_poly))


@dataclass
class ComplexityProfile:
    """L(k) for every prefix length k = 1..n plus the final connection polynomial."""
    lengths: np.ndarray
    connection_poly: int

    @property
    def n(self):
        return int(self.lengths.size)

    @property
    def linear_complexity(self):
        return int(self.lengths[-1])

    def rows(self):
        """Yield (k, L(k)) pairs."""
        for k, value in enumerate(self.lengths, 1):
            yield k, int(value)


@dataclass
class JumpStatistics:
    """Positions and heights of the strict increases of a profile."""
    positions: np.ndarray
    heights: np.ndarray
    max_height: int
    deviation: float
    perfect_jumps: int

    @property
    def count(self):
        return int(self.positions.size)

    def to_dict(self):
        """Convert to dictionary."""
        return {
            'count': self.count,
            'max_height': self.max_height,
            'deviation': self.deviation,
            'perfect_jumps': self.perfect_jumps,
            'positions': self.positions.tolist(),
            'heights': self.heights.tolist(),
        }


def as_bit_array(bits):
    """
    Normalise a bit source to a uint8 numpy array.

    Args:
        bits: Bitstream, numpy array, sequence of ints or '01' string

    Returns:
        np.ndarray: uint8 array of 0/1
    """
    if isinstance(bits, Bitstream):
        return bits.bits
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits if ch in '01']
    return Bitstream.from_bits(bits).bits


def _massey(bits, record_profile):
    arr = as_bit_array(bits)
    n = int(arr.size)
    if n == 0:
        raise EmptySequence("Berlekamp-Massey needs at least one bit")

    # bit (n - 1 - t) of rev is s_t, so rev >> (n - 1 - N) has bit i = s_{N-i}
    rev = Bitstream(arr).to_reversed_int()
    c = 1
    b = 1
    length = 0
    m = 1
    lengths = [0] * n if record_profile else None

    for N in range(n):
        window = rev >> (n - 1 - N)
        if (c & window).bit_count() & 1:
            if 2 * length <= N:
                t = c
                c ^= b << m
                length = N + 1 - length
                b = t
                m = 1
            else:
                c ^= b << m
                m += 1
        else:
            m += 1
        if record_profile:
            lengths[N] = length

    return length, c, lengths


def berlekamp_massey(bits):
    """
    Find the shortest LFSR generating a binary sequence.

    Args:
        bits: Bitstream or sequence of 0/1

    Returns:
        LfsrSolution: (length L, connection polynomial with c_0 = 1)

    Raises:
        EmptySequence: If bits is empty
    """
    length, poly, _ = _massey(bits, record_profile=False)
    return LfsrSolution(length, poly)


def complexity_profile(bits):
    """
    Compute L(k) for every prefix in a single pass.

    Args:
        bits: Bitstream or sequence of 0/1

    Returns:
        ComplexityProfile: Profile and final connection polynomial

    Raises:
        EmptySequence: If bits is empty
    """
    _, poly, lengths = _massey(bits, record_profile=True)
    profile = ComplexityProfile(np.asarray(lengths, dtype=np.int64), poly)
    logger.debug(f"Profile of {profile.n} bits: L = {profile.linear_complexity}")
    return profile


def lfsr_regenerate(solution, seed_bits, n):
    """
    Run an LFSR forward from its first L bits.

    s_t = sum_{i=1..L} c_i s_{t-i} for t >= L.

    Args:
        solution (LfsrSolution): Length and connection polynomial
        seed_bits: The first L bits
        n (int): Total number of bits to produce

    Returns:
        list: n bits
    """
    length, poly = solution
    out = [int(b) for b in as_bit_array(seed_bits)[:length]]
    taps = [i for i in range(1, length + 1) if (poly >> i) & 1]
    for t in range(length, n):
        v = 0
        for i in taps:
            v ^= out[t - i]
        out.append(v)
    return out[:n]


def jump_statistics(profile):
    """
    Summarise the jumps of a complexity profile.

    Args:
        profile (ComplexityProfile): Profile to analyse

    Returns:
        JumpStatistics: Jump positions, heights and derived figures
    """
    lengths = profile.lengths
    diffs = np.diff(lengths, prepend=0)
    positions = np.nonzero(diffs > 0)[0] + 1
    heights = diffs[positions - 1]
    k = np.arange(1, lengths.size + 1)
    deviation = float(np.max(np.abs(lengths - k / 2.0))) if lengths.size else 0.0
    return JumpStatistics(
        positions=positions,
        heights=heights,
        max_height=int(heights.max()) if heights.size else 0,
        deviation=deviation,
        perfect_jumps=int(np.count_nonzero(heights < 2)),
    )


def jump_trace(profile):
    """
    Cumulative jump count at every prefix length.

    Args:
        profile (ComplexityProfile): Profile to analyse

    Returns:
        np.ndarray: Number of jumps among the first k bits, k = 1..n
    """
    diffs = np.diff(profile.lengths, prepend=0)
    return np.cumsum(diffs > 0)


def saturation_point(profile, margin=None):
    """
    Detect a plateau of the profile backed by enough trailing bits.

    Args:
        profile (ComplexityProfile): Profile to analyse
        margin (int): Require n - k >= margin * L(k) (default: from settings)

    Returns:
        int|None: Smallest k with L(j) = L(k) for all j >= k, or None
    """
    if margin is None:
        margin = settings.SATURATION_MARGIN
    diffs = np.diff(profile.lengths, prepend=0)
    positions = np.nonzero(diffs > 0)[0]
    k = int(positions[-1]) + 1 if positions.size else 1
    level = int(profile.lengths[k - 1])
    if profile.n - k >= margin * level:
        return k
    return None


def jump_expectation(n_bits, calibration=None):
    """
    Mean and variance of the jump count of a random n-bit sequence.

    Args:
        n_bits (int): Sequence length
        calibration: JumpCalibration (default: shipped constants)

    Returns:
        tuple: (mean, variance)
    """
    if calibration is None:
        from core.calibration import get_calibration
        calibration = get_calibration()
    return (calibration.mean_scale * n_bits / 4.0,
            calibration.variance_scale * n_bits / 8.0)


def jump_test_from_profile(profile, alpha=None, calibration=None):
    """
    Jump-count test on an already computed profile.

    Args:
        profile (ComplexityProfile): Profile of the bits under test
        alpha (float): Significance level (default: from settings)
        calibration: JumpCalibration (default: shipped constants)

    Returns:
        TestVerdict: p = Phi(z) of the jump count, pass iff alpha <= p <= 1 - alpha
    """
    if alpha is None:
        alpha = settings.DEFAULT_ALPHA
    n = profile.n
    if n < settings.JUMP_TEST_MIN_BITS:
        raise SequenceTooShort(f"Jump test needs {settings.JUMP_TEST_MIN_BITS} bits, got {n}")

    jumps = int(np.count_nonzero(np.diff(profile.lengths, prepend=0) > 0))
    mean, variance = jump_expectation(n, calibration)
    z = (jumps - mean) / math.sqrt(variance)
    # lower-tail CDF: saturation drives p to 0, excess jumps to 1
    p_value = float(norm.cdf(z))
    return TestVerdict(
        name="jump",
        statistic=float(z),
        p_value=p_value,
        alpha=alpha,
        rejects_upper_tail=True,
        details={'jumps': jumps, 'expected': mean, 'n_bits': n,
                 'linear_complexity': profile.linear_complexity},
    )


def jump_test(bits, alpha=None, calibration=None):
    """
    Test the jump count of a bitstream against the random-sequence null.

    Args:
        bits: Bitstream or sequence of 0/1 (at least 512 bits)
        alpha (float): Significance level (default: from settings)
        calibration: JumpCalibration (default: shipped constants)

    Returns:
        TestVerdict: Jump test verdict

    Raises:
        SequenceTooShort: If fewer than 512 bits are given
    """
    n = int(as_bit_array(bits).size)
    if n < settings.JUMP_TEST_MIN_BITS:
        raise SequenceTooShort(f"Jump test needs {settings.JUMP_TEST_MIN_BITS} bits, got {n}")
    return jump_test_from_profile(complexity_profile(bits), alpha, calibration)


def write_profile_csv(profile, stream):
    """
    Write a profile as CSV with header "k,L".

    Args:
        profile (ComplexityProfile): Profile to export
        stream: Writable text stream

    Returns:
        int: Number of data rows written
    """
    stream.write("k,L\n")
    for k, value in profile.rows():
        stream.write(f"{k},{value}\n")
    return profile.n


def read_profile_csv(stream):
    """
    Read a profile CSV written by write_profile_csv.

    Args:
        stream: Readable text stream

    Returns:
        np.ndarray: L(k) values
    """
    lines = [line.strip() for line in stream if line.strip()]
    if not lines or lines[0] != "k,L":
        raise ValueError("Not a profile CSV (missing 'k,L' header)")
    return np.asarray([int(line.split(",")[1]) for line in lines[1:]], dtype=np.int64)


def linear_complexity(bits) -> int:
    """Shortcut returning only L."""
    return berlekamp_massey(bits).length
