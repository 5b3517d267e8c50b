"""
Software throughput benchmark for generators and combiners.
"""

import logging
import time
from dataclasses import dataclass

from config import settings
from generators.base import WorkbenchError


logger = logging.getLogger(__name__)


class DurationTooShort(WorkbenchError):
    """Raised when a benchmark duration is below the minimum."""
    pass


@dataclass
class BenchResult:
    """Timing of one benchmark run."""
    generator: str
    n_outputs: int
    wall_time: float
    output_width: int
    checksum: int = 0
    include_seeding: bool = False

    @property
    def outputs_per_second(self):
        return self.n_outputs / self.wall_time if self.wall_time > 0 else 0.0

    @property
    def throughput_gbps(self):
        return self.outputs_per_second * self.output_width / 1e9

    @property
    def valid(self):
        return self.n_outputs >= settings.BENCH_MIN_OUTPUTS

    def to_dict(self):
        """Convert to dictionary."""
        return {
            'generator': self.generator,
            'n_outputs': self.n_outputs,
            'wall_time': self.wall_time,
            'output_width': self.output_width,
            'outputs_per_second': self.outputs_per_second,
            'throughput_gbps': self.throughput_gbps,
            'include_seeding': self.include_seeding,
            'valid': self.valid,
            'checksum': self.checksum,
        }


def bench(name, duration=1.0, seed=0, include_seeding=False):
    """
    Measure steady-state output rate.

    Outputs are drawn in batches until the duration has elapsed and folded
    into a checksum. With include_seeding, every batch starts from a freshly
    seeded source inside the timed region.

    Args:
        name (str): Generator id or combination triplet
        duration (float): Seconds to run (at least 0.1)
        seed (int): 64-bit seed
        include_seeding (bool): Time seeding together with generation

    Returns:
        BenchResult: Measured rate

    Raises:
        DurationTooShort: If duration is below the minimum
        UnknownGenerator: If the name matches nothing
    """
    from core.battery import open_source

    if duration < settings.BENCH_MIN_SECONDS:
        raise DurationTooShort(f"Benchmark needs at least {settings.BENCH_MIN_SECONDS} s, got {duration}")

    source = open_source(name, seed)
    batch = settings.BENCH_BATCH
    checksum = 0
    n_outputs = 0
    batches = 0

    start = time.perf_counter()
    deadline = start + duration
    while True:
        if include_seeding:
            source = open_source(name, seed + batches)
        step = source.next
        for _ in range(batch):
            checksum ^= step()
        n_outputs += batch
        batches += 1
        if time.perf_counter() >= deadline:
            break
    wall_time = time.perf_counter() - start

    result = BenchResult(
        generator=str(name),
        n_outputs=n_outputs,
        wall_time=wall_time,
        output_width=source.output_width,
        checksum=checksum,
        include_seeding=include_seeding,
    )
    if not result.valid:
        logger.warning(
            f"{name}: only {n_outputs} outputs in {wall_time:.2f} s "
            f"(a valid run needs {settings.BENCH_MIN_OUTPUTS}); increase --seconds"
        )
    logger.info(f"{name}: {result.outputs_per_second:.0f} outputs/s, {result.throughput_gbps:.4f} Gbps")
    return result
