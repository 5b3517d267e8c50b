"""PRNG roster, seeding and bit extraction."""

from generators.base import GeneratorDescriptor, GeneratorId, UnknownGenerator, WorkbenchError
from generators.bitstream import Bitstream, ExtractionPolicy, bitstream
from generators.registry import GeneratorRegistry, create, list_generators
from generators.seeding import NotArraySeeded, seed_array_init

__all__ = [
    "Bitstream", "ExtractionPolicy", "GeneratorDescriptor", "GeneratorId",
    "GeneratorRegistry", "NotArraySeeded", "UnknownGenerator", "WorkbenchError",
    "bitstream", "create", "list_generators", "seed_array_init",
]
