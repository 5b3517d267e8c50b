"""
Desk-scale statistical battery and raw stream export.

The battery runs the monobit, runs, jump and saturation tests on one
bitstream. It is not a replacement for an external battery: export_stream
writes the raw output words so those can be piped to one.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from config import settings
from core.calibration import ReferenceSource
from core.cipost import CombinationId, make_combiner
from core.lincomplex import (
    SequenceTooShort, TestVerdict, complexity_profile, jump_test_from_profile,
)
from generators.base import WorkbenchError
from generators.bitstream import ExtractionPolicy, bitstream
from generators.registry import GeneratorRegistry
from validators.statistical_tests import PrerequisiteFailed, monobit_test, runs_test, saturation_verdict


logger = logging.getLogger(__name__)

REFERENCE_NAME = "reference"


class SinkError(WorkbenchError):
    """Raised when the export sink stops accepting bytes."""

    def __init__(self, message, bytes_written=0):
        super().__init__(message)
        self.bytes_written = bytes_written


def open_source(name, seed=0):
    """
    Resolve a name to a seeded output source.

    Args:
        name (str): Generator id, combination triplet such as "011", or "reference"
        seed (int): 64-bit seed

    Returns:
        Generator, CiCombiner or ReferenceSource

    Raises:
        UnknownGenerator: If the name matches nothing
    """
    name = str(name).strip()
    if name.lower() == REFERENCE_NAME:
        return ReferenceSource(seed)
    if CombinationId.is_combination(name):
        return make_combiner(name, seed)
    return GeneratorRegistry.create(name, seed)


@dataclass
class BatteryReport:
    """Verdicts of one battery run; overall_pass iff every verdict passes."""
    source: str
    seed: int
    n_bits: int
    alpha: float
    extraction_policy: str
    verdicts: List[TestVerdict] = field(default_factory=list)
    label: str = ""

    @property
    def overall_pass(self):
        return all(v.passed for v in self.verdicts)

    def verdict(self, name):
        """Look up a verdict by test name."""
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def to_dict(self):
        """Convert to dictionary for JSON serialization."""
        return {
            'source': self.source,
            'label': self.label,
            'seed': self.seed,
            'n_bits': self.n_bits,
            'alpha': self.alpha,
            'extraction_policy': self.extraction_policy,
            'overall_pass': self.overall_pass,
            'verdicts': [v.to_dict() for v in self.verdicts],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def render_text(self):
        """Plain-text report, one line per test."""
        lines = [
            f"source: {self.source} ({self.label})" if self.label else f"source: {self.source}",
            f"seed: {self.seed}",
            f"n_bits: {self.n_bits}",
            f"alpha: {self.alpha:g}",
            f"policy: {self.extraction_policy}",
        ]
        for v in self.verdicts:
            status = "PASS" if v.passed else "FAIL"
            lines.append(f"{v.name:<12} statistic={v.statistic:>12.4f}  p={v.p_value:.6f}  {status}")
        lines.append(f"overall: {'PASS' if self.overall_pass else 'FAIL'}")
        return "\n".join(lines) + "\n"


def run_battery(source, n_bits, alpha=None, policy=None, name=None, seed=0, strict=True):
    """
    Run every desk-scale test on one bitstream of a source.

    Args:
        source: Anything with next() and output_width
        n_bits (int): Bits to test (at least 2^14)
        alpha (float): Significance level (default: from settings)
        policy (ExtractionPolicy|str): Bit extraction (default: most significant bit)
        name (str): Source name recorded in the report (default: source label)
        seed (int): Seed recorded in the report
        strict (bool): Raise on a failed runs prerequisite instead of
            recording it as a failing runs verdict

    Returns:
        BatteryReport: Aggregated verdicts

    Raises:
        SequenceTooShort: If n_bits is below 2^14
        PrerequisiteFailed: If the runs test precondition fails and strict is set
    """
    alpha = settings.DEFAULT_ALPHA if alpha is None else alpha
    policy = ExtractionPolicy.parse(policy or settings.BATTERY_POLICY)
    if n_bits < settings.BATTERY_MIN_BITS:
        raise SequenceTooShort(f"Battery needs {settings.BATTERY_MIN_BITS} bits, got {n_bits}")

    label = getattr(source, 'label', str(source))
    logger.info(f"Running battery on {label}: {n_bits} bits, policy {policy.value}")
    bits = bitstream(source, n_bits, policy)
    profile = complexity_profile(bits)

    report = BatteryReport(
        source=name or label,
        seed=seed,
        n_bits=n_bits,
        alpha=alpha,
        extraction_policy=policy.value,
        label=label,
        verdicts=[
            monobit_test(bits, alpha),
            _runs_verdict(bits, alpha, strict),
            jump_test_from_profile(profile, alpha),
            saturation_verdict(profile, alpha),
        ],
    )
    for v in report.verdicts:
        logger.debug(f"{v.name}: p={v.p_value:.6f} {'pass' if v.passed else 'fail'}")
    logger.info(f"Battery {'passed' if report.overall_pass else 'failed'} for {report.source}")
    return report


def _runs_verdict(bits, alpha, strict):
    try:
        return runs_test(bits, alpha)
    except PrerequisiteFailed as e:
        if strict:
            raise
        logger.warning(str(e))
        return TestVerdict(
            name="runs", statistic=0.0, p_value=0.0, alpha=alpha,
            rejects_upper_tail=False, details={'n_bits': len(bits), 'prerequisite_failed': str(e)},
        )


def export_stream(source, n_bytes, sink, unlimited=False):
    """
    Write raw little-endian output words to a binary sink.

    Args:
        source: Anything with next() and output_width
        n_bytes (int): Bytes to write; the last word is truncated if needed
        sink: Binary file-like object with write()
        unlimited (bool): Ignore n_bytes and write until the sink fails

    Returns:
        int: Bytes written

    Raises:
        SinkError: When a write fails; bytes_written carries the partial count
    """
    if not unlimited and n_bytes < 1:
        raise ValueError("n_bytes must be at least 1")
    dtype = np.dtype('<u4') if source.output_width == 32 else np.dtype('<u8')
    chunk = settings.EXPORT_CHUNK_OUTPUTS
    step = source.next
    written = 0

    while unlimited or written < n_bytes:
        if unlimited:
            count = chunk
        else:
            count = min(chunk, -(-(n_bytes - written) // dtype.itemsize))
        data = np.asarray([step() for _ in range(count)], dtype=dtype).tobytes()
        if not unlimited:
            data = data[:n_bytes - written]
        try:
            sink.write(data)
        except (OSError, ValueError) as e:
            logger.debug(f"Sink closed after {written} bytes: {e}")
            raise SinkError(f"Sink stopped accepting data after {written} bytes: {e}", written) from e
        written += len(data)

    flush = getattr(sink, 'flush', None)
    if flush is not None:
        try:
            flush()
        except (OSError, ValueError) as e:
            raise SinkError(f"Sink failed on flush after {written} bytes: {e}", written) from e
    return written
