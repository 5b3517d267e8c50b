"""
Base generator class for every PRNG in the roster.

A generator keeps its internal state x_i as Python integers (one per
machine word, plus family-specific scalars) and advances it one step per
call to next(), returning the output word y_i.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
import logging


logger = logging.getLogger(__name__)

MASK32 = 0xFFFFFFFF
MASK64 = 0xFFFFFFFFFFFFFFFF


class WorkbenchError(Exception):
    """Base class for every error raised by the workbench."""
    pass


class UnknownGenerator(WorkbenchError):
    """Raised when a generator id or name is not in the roster."""
    pass


class GeneratorId(str, Enum):
    """Roster of generator identities, in listing order."""
    LFSR113 = "LFSR113"
    LFSR258 = "LFSR258"
    TAUS88 = "Taus88"
    XORSHIFT64 = "xorshift64"
    XORSHIFT128 = "xorshift128"
    XORSHIFT128PLUS = "xorshift128plus"
    XORSHIFT1024STAR = "xorshift1024star"
    PCG32 = "PCG32"
    MWC256 = "MWC256"
    CMWC4096 = "CMWC4096"
    MRG32K3A = "MRG32k3a"
    MT19937 = "MT19937"
    TT800 = "TT800"
    WELL512 = "WELL512"
    CA32 = "CA32"
    KISS = "KISS"

    @classmethod
    def parse(cls, name):
        """
        Look up a generator id by case-insensitive name.

        Args:
            name (str|GeneratorId): Generator name

        Returns:
            GeneratorId: Matching id

        Raises:
            UnknownGenerator: If no roster entry matches
        """
        if isinstance(name, cls):
            return name
        wanted = str(name).strip().lower()
        for member in cls:
            if member.value.lower() == wanted:
                return member
        raise UnknownGenerator(f"Unknown generator: {name}")


@dataclass(frozen=True)
class GeneratorDescriptor:
    """Identity and published metadata of one roster generator."""
    id: GeneratorId
    name: str
    output_width: int
    period_exponent: int
    is_f2_linear_transition: bool
    is_f2_linear_output: bool
    state_bits: int
    family: str
    reference: str = ""

    def __post_init__(self):
        if self.output_width not in (32, 64):
            raise ValueError(f"Output width must be 32 or 64, got {self.output_width}")
        if self.state_bits <= 0:
            raise ValueError("state_bits must be positive")

    def to_dict(self):
        """Convert descriptor to dictionary."""
        return {
            'id': self.id.value,
            'name': self.name,
            'family': self.family,
            'output_width': self.output_width,
            'period_exponent': self.period_exponent,
            'is_f2_linear_transition': self.is_f2_linear_transition,
            'is_f2_linear_output': self.is_f2_linear_output,
            'state_bits': self.state_bits,
            'reference': self.reference,
        }


class BaseGenerator(ABC):
    """
    Abstract base class for all roster generators.

    Subclasses declare a class-level DESCRIPTOR and implement seed(),
    next(), get_state_int() and set_state_int(). The state-int pair maps
    the internal state onto a state_bits-wide vector (ring buffers are
    rotated so the current index comes first) and is what the matrix
    model probes.
    """

    DESCRIPTOR: GeneratorDescriptor = None

    def __init__(self, seed=0):
        """
        Initialize and seed the generator.

        Args:
            seed (int): 64-bit seed; values violating family constraints
                are remapped, never rejected
        """
        self.seed(seed)

    @property
    def descriptor(self):
        return self.DESCRIPTOR

    @property
    def output_width(self):
        return self.DESCRIPTOR.output_width

    @property
    def label(self):
        return self.DESCRIPTOR.name

    @abstractmethod
    def seed(self, seed):
        """
        Set the internal state from a 64-bit seed.

        Args:
            seed (int): Seed value (reduced modulo 2^64)

        Returns:
            BaseGenerator: self for method chaining
        """
        pass

    @abstractmethod
    def next(self):
        """
        Advance the state one step.

        Returns:
            int: Output word (output_width bits)
        """
        pass

    @abstractmethod
    def get_state_int(self):
        """
        Pack the state into one integer of state_bits bits.

        Returns:
            int: Packed state vector
        """
        pass

    @abstractmethod
    def set_state_int(self, value):
        """
        Load the state from a packed integer of state_bits bits.

        Args:
            value (int): Packed state vector
        """
        pass

    def next_batch(self, count):
        """
        Draw several outputs.

        Args:
            count (int): Number of outputs

        Returns:
            list: Output words
        """
        step = self.next
        return [step() for _ in range(count)]

    def __repr__(self):
        """String representation of generator."""
        d = self.DESCRIPTOR
        return f"<Generator {d.name}: {d.output_width}-bit, period 2^{d.period_exponent}>"


class ArraySeededGenerator(BaseGenerator):
    """
    Generator whose state is a word table filled by the Knuth recurrence.

    Subclasses set WORD_COUNT and WORD_BITS and implement load_words().
    """

    WORD_COUNT = 0
    WORD_BITS = 32

    def seed(self, seed):
        """Seed through the array recurrence."""
        from generators.seeding import fold_seed32, seed_array_init
        words = seed_array_init(self.DESCRIPTOR.id, fold_seed32(seed))
        self.seed_with_array(words)
        return self

    def seed_with_array(self, words):
        """
        Inject a prepared word table directly.

        Args:
            words (list): WORD_COUNT words of WORD_BITS bits

        Returns:
            ArraySeededGenerator: self for method chaining
        """
        if len(words) != self.WORD_COUNT:
            raise ValueError(f"{self.label} needs {self.WORD_COUNT} words, got {len(words)}")
        mask = (1 << self.WORD_BITS) - 1
        words = [w & mask for w in words]
        if not any(words):
            from generators.seeding import remap_component
            words[0] = remap_component(0, self.WORD_BITS)
            logger.debug(f"{self.label}: all-zero table remapped")
        self.load_words(words)
        return self

    @abstractmethod
    def load_words(self, words):
        """Install a validated word table and reset indices."""
        pass


def pack_words(words, word_bits):
    """
    Pack words into one integer, word 0 in the lowest bits.

    Args:
        words (iterable): Word values
        word_bits (int): Width of each word

    Returns:
        int: Packed value
    """
    value = 0
    for i, w in enumerate(words):
        value |= w << (i * word_bits)
    return value


def unpack_words(value, count, word_bits):
    """
    Split an integer into count words, word 0 from the lowest bits.

    Args:
        value (int): Packed value
        count (int): Number of words
        word_bits (int): Width of each word

    Returns:
        list: Word values
    """
    mask = (1 << word_bits) - 1
    return [(value >> (i * word_bits)) & mask for i in range(count)]
