"""
Bitstream extraction from any output source.

A source is anything with next() and output_width: a roster generator
or a chaotic-iterations combiner.
"""

from dataclasses import dataclass
from enum import Enum
import numpy as np


class ExtractionPolicy(str, Enum):
    """How output words are turned into bits."""
    LSB_PER_OUTPUT = "lsb"
    MSB_PER_OUTPUT = "msb"
    ALL_BITS_LSB_FIRST = "all"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        wanted = str(value).strip().lower()
        for member in cls:
            if wanted in (member.value, member.name.lower()):
                return member
        raise ValueError(f"Unknown extraction policy: {value}")

    def bits_per_output(self, width):
        return width if self is ExtractionPolicy.ALL_BITS_LSB_FIRST else 1


@dataclass
class Bitstream:
    """Ordered bits (uint8 array of 0/1) and the policy that produced them."""
    bits: np.ndarray
    extraction_policy: ExtractionPolicy = ExtractionPolicy.LSB_PER_OUTPUT

    def __len__(self):
        return int(self.bits.size)

    @classmethod
    def from_bits(cls, bits, policy=ExtractionPolicy.LSB_PER_OUTPUT):
        """Build a bitstream from any iterable of 0/1 values."""
        if isinstance(bits, np.ndarray):
            arr = bits.astype(np.uint8)
        else:
            arr = np.fromiter((int(b) for b in bits), dtype=np.uint8)
        return cls(arr & 1, policy)

    def to_int(self):
        """Pack as an integer whose bit t is bits[t]."""
        packed = np.packbits(self.bits, bitorder='little')
        return int.from_bytes(packed.tobytes(), 'little')

    def to_reversed_int(self):
        """Pack as an integer whose bit (n - 1 - t) is bits[t]."""
        packed = np.packbits(self.bits[::-1], bitorder='little')
        return int.from_bytes(packed.tobytes(), 'little')


def words_to_bits(words, width, policy):
    """
    Convert output words to bits under an extraction policy.

    Args:
        words (list): Output words
        width (int): Output width (32 or 64)
        policy (ExtractionPolicy): Extraction policy

    Returns:
        np.ndarray: uint8 array of 0/1
    """
    dtype = np.uint32 if width == 32 else np.uint64
    arr = np.asarray(words, dtype=dtype)
    if policy is ExtractionPolicy.LSB_PER_OUTPUT:
        return (arr & dtype(1)).astype(np.uint8)
    if policy is ExtractionPolicy.MSB_PER_OUTPUT:
        return (arr >> dtype(width - 1)).astype(np.uint8)
    little = arr.astype(arr.dtype.newbyteorder('<'))
    return np.unpackbits(little.view(np.uint8), bitorder='little')


def bitstream(source, n_bits, policy=ExtractionPolicy.LSB_PER_OUTPUT):
    """
    Extract exactly n_bits bits, advancing the source by the implied steps.

    Args:
        source: Generator or combiner with next() and output_width
        n_bits (int): Number of bits (>= 1)
        policy (ExtractionPolicy|str): Extraction policy

    Returns:
        Bitstream: The extracted bits
    """
    if n_bits < 1:
        raise ValueError("n_bits must be at least 1")
    policy = ExtractionPolicy.parse(policy)
    width = source.output_width
    per_output = policy.bits_per_output(width)
    steps = -(-n_bits // per_output)
    step = source.next
    words = [step() for _ in range(steps)]
    bits = words_to_bits(words, width, policy)[:n_bits]
    return Bitstream(bits, policy)
