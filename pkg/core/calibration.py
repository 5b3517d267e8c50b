"""
Jump-test calibration against a high-quality reference stream.

The shipped constants live in data/jump_calibration.json and scale the
n/4 mean and n/8 variance of the jump count of a random sequence. The
calibrate-jump subcommand regenerates them by Monte Carlo.
"""

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.stats import norm

from config import settings


logger = logging.getLogger(__name__)


class ReferenceSource:
    """
    Counter-based reference stream: Philox applied to a counter.

    Behaves like a 64-bit generator (next(), output_width) so it can be
    fed to the battery as a known-good source.
    """

    output_width = 64
    BATCH = 4096

    def __init__(self, seed=0):
        self.seed_value = seed
        self.rng = np.random.Generator(np.random.Philox(seed))
        self._buffer = []

    @property
    def label(self):
        return f"reference (Philox, seed {self.seed_value})"

    def next(self):
        if not self._buffer:
            batch = self.rng.integers(0, 2 ** 64, size=self.BATCH, dtype=np.uint64, endpoint=False)
            self._buffer = batch.tolist()[::-1]
        return self._buffer.pop()


def reference_bits(seed, n_bits):
    """
    Draw n_bits reference bits.

    Args:
        seed (int): Philox key
        n_bits (int): Number of bits

    Returns:
        np.ndarray: uint8 array of 0/1
    """
    rng = np.random.Generator(np.random.Philox(seed))
    return rng.integers(0, 2, size=n_bits, dtype=np.uint8)


@dataclass
class JumpCalibration:
    """Scale factors for the jump-count null distribution."""
    mean_scale: float = 1.0
    variance_scale: float = 1.0
    n_bits: int = 0
    n_streams: int = 0
    # None until a Monte Carlo run has measured them
    observed_mean: Optional[float] = None
    observed_variance: Optional[float] = None
    false_positive_rate: Optional[float] = None
    alpha: float = settings.DEFAULT_ALPHA

    @property
    def validated(self):
        """True when the scales come from at least CALIBRATION_MIN_STREAMS measured streams."""
        return self.n_streams >= settings.CALIBRATION_MIN_STREAMS and self.false_positive_rate is not None

    def to_dict(self):
        """Convert to dictionary."""
        return asdict(self)


def load_calibration(path=None):
    """
    Load calibration constants, falling back to the analytic values.

    Args:
        path (Path): JSON file (default: from settings)

    Returns:
        JumpCalibration: Loaded constants
    """
    path = Path(path or settings.CALIBRATION_FILE)
    try:
        with open(path, 'r') as f:
            data = json.load(f)
        return JumpCalibration(**data)
    except FileNotFoundError:
        logger.warning(f"No calibration file at {path}; using mean n/4, variance n/8")
        return JumpCalibration()
    except (ValueError, TypeError) as e:
        logger.warning(f"Could not read calibration {path}: {e}")
        return JumpCalibration()


def save_calibration(calibration, path=None):
    """
    Write calibration constants as JSON.

    Args:
        calibration (JumpCalibration): Constants to store
        path (Path): JSON file (default: from settings)

    Returns:
        Path: Path written
    """
    path = Path(path or settings.CALIBRATION_FILE)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(calibration.to_dict(), f, indent=2)
    logger.info(f"Saved jump calibration to {path}")
    return path


def _jump_count(args):
    seed, n_bits = args
    from core.lincomplex import complexity_profile
    lengths = complexity_profile(reference_bits(seed, n_bits)).lengths
    return int(np.count_nonzero(np.diff(lengths, prepend=0) > 0))


def measure_jump_counts(n_streams, n_bits, workers=1):
    """
    Jump counts of independent reference streams.

    Args:
        n_streams (int): Number of streams (stream i uses Philox key i)
        n_bits (int): Bits per stream
        workers (int): Worker processes (1 runs inline)

    Returns:
        np.ndarray: Jump count per stream, ordered by stream index
    """
    jobs = [(i, n_bits) for i in range(n_streams)]
    if workers <= 1:
        counts = [_jump_count(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_jump_count, jobs, chunksize=max(1, n_streams // (workers * 8))))
    return np.asarray(counts, dtype=np.float64)


def calibrate(n_streams=None, n_bits=None, workers=1, alpha=None):
    """
    Estimate the jump-count mean and variance by Monte Carlo.

    Args:
        n_streams (int): Number of reference streams (default: from settings)
        n_bits (int): Bits per stream (default: from settings)
        workers (int): Worker processes
        alpha (float): Level at which the false-positive rate is reported

    Returns:
        JumpCalibration: Fitted constants and diagnostics
    """
    n_streams = settings.CALIBRATION_STREAMS if n_streams is None else n_streams
    n_bits = settings.CALIBRATION_BITS if n_bits is None else n_bits
    alpha = settings.DEFAULT_ALPHA if alpha is None else alpha
    if n_streams < 2:
        raise ValueError("Calibration needs at least two streams")
    if n_bits < 1:
        raise ValueError("Calibration needs at least one bit per stream")
    if n_streams < settings.CALIBRATION_MIN_STREAMS:
        logger.warning(
            f"{n_streams} streams is below {settings.CALIBRATION_MIN_STREAMS}; "
            "the jump test will keep the analytic n/4, n/8 until a full run is saved"
        )

    logger.info(f"Calibrating jump test on {n_streams} streams of {n_bits} bits")
    counts = measure_jump_counts(n_streams, n_bits, workers)
    mean = float(counts.mean())
    variance = float(counts.var(ddof=1))

    z = (counts - mean) / math.sqrt(variance)
    p_values = norm.cdf(z)
    rejected = np.count_nonzero((p_values < alpha) | (p_values > 1.0 - alpha))

    calibration = JumpCalibration(
        mean_scale=mean / (n_bits / 4.0),
        variance_scale=variance / (n_bits / 8.0),
        n_bits=n_bits,
        n_streams=n_streams,
        observed_mean=mean,
        observed_variance=variance,
        false_positive_rate=float(rejected / n_streams),
        alpha=alpha,
    )
    logger.info(
        f"Jump count mean {mean:.2f} (n/4 = {n_bits / 4:.1f}), "
        f"variance {variance:.2f} (n/8 = {n_bits / 8:.1f}), "
        f"false positives {calibration.false_positive_rate:.4f}"
    )
    return calibration


# Global calibration
_calibration = None


def enabled_calibration(calibration):
    """
    The constants the jump test may use.

    Unvalidated scales are dropped in favour of the analytic n/4, n/8.

    Args:
        calibration (JumpCalibration): Loaded constants

    Returns:
        JumpCalibration: calibration itself if validated, otherwise unit scales
    """
    if calibration.validated:
        return calibration
    logger.debug(
        f"Jump calibration measured on {calibration.n_streams} streams "
        f"(< {settings.CALIBRATION_MIN_STREAMS}); using mean n/4, variance n/8"
    )
    return JumpCalibration(n_bits=calibration.n_bits, alpha=calibration.alpha)


def get_calibration():
    """
    Get the shipped calibration (loaded once, gated by enabled_calibration).

    Returns:
        JumpCalibration: Global constants
    """
    global _calibration
    if _calibration is None:
        _calibration = enabled_calibration(load_calibration())
    return _calibration
