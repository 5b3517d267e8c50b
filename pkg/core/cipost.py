"""
Chaotic-iterations post-processing.

General chaotic iterations update, at step n, only the components of a
boolean vector listed in a strategy subset S_n:

    x^n_i = f(x^{n-1})_i   if i in S_n
    x^n_i = x^{n-1}_i      otherwise

With f = negation this is XOR with the indicator mask of S_n. The
combiner below uses that form to mix two 64-bit generators under the
control of a third one.

Component i of a vector is bit i - 1 (LSB first).
"""

import logging
from dataclasses import dataclass

from config import settings
from generators.base import MASK32, MASK64, GeneratorId, WorkbenchError
from generators.registry import GeneratorRegistry


logger = logging.getLogger(__name__)


class IndexOutOfRange(WorkbenchError):
    """Raised when a strategy subset names a component outside 1..N."""
    pass


class UnknownCombination(WorkbenchError):
    """Raised for a combination id outside the encoded space."""
    pass


@dataclass
class CiState:
    """N-component boolean vector (bit i - 1 is component i) and iteration count."""
    x: int
    N: int
    n: int = 0

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"Chaotic iterations need N >= 2, got {self.N}")
        self.x &= (1 << self.N) - 1


def negation(x, N):
    """Vectorial negation on N components."""
    return ~x & ((1 << N) - 1)


def subset_mask(subset, N):
    """
    Indicator mask of a strategy subset.

    Args:
        subset (iterable): Component indices in 1..N
        N (int): Dimension

    Returns:
        int: Mask with bit i - 1 set for each i in subset

    Raises:
        IndexOutOfRange: If an index falls outside 1..N
    """
    mask = 0
    for i in subset:
        if not 1 <= i <= N:
            raise IndexOutOfRange(f"Component {i} outside 1..{N}")
        mask |= 1 << (i - 1)
    return mask


def mask_subset(mask, N):
    """Components selected by a mask, ascending."""
    return [i + 1 for i in range(N) if (mask >> i) & 1]


def general_ci_step(f, state, subset):
    """
    One general chaotic iteration.

    Args:
        f (callable): Iteration function f(x, N) -> int on N-bit vectors
        state (CiState): Current state
        subset (iterable): Strategy subset S_n of 1..N

    Returns:
        CiState: New state with the counter incremented

    Raises:
        IndexOutOfRange: If subset is not within 1..N
    """
    mask = subset_mask(subset, state.N)
    image = f(state.x, state.N)
    x = (state.x & ~mask) | (image & mask)
    return CiState(x, state.N, state.n + 1)


def xor_ci_step(x, s, N=None):
    """
    XOR form of a chaotic iteration with negation: x ^ s.

    Args:
        x (int|CiState): Current vector
        s (int|CiState): Indicator mask of the update subset
        N (int): Common dimension when both are plain ints

    Returns:
        int|CiState: x ^ s (a CiState with the counter incremented if x is one)

    Raises:
        DimensionMismatch: If the two vectors have different dimensions
    """
    from core.f2model import DimensionMismatch
    if isinstance(x, CiState):
        s_dim = s.N if isinstance(s, CiState) else (N or x.N)
        s_value = s.x if isinstance(s, CiState) else s
        if s_dim != x.N or s_value >> x.N:
            raise DimensionMismatch(f"Cannot XOR {x.N}-component state with {s_dim}-component mask")
        return CiState(x.x ^ s_value, x.N, x.n + 1)
    if N is not None and (x >> N or s >> N):
        raise DimensionMismatch(f"Operands exceed {N} components")
    return x ^ s


class CombinationId(str):
    """
    Combination triplet "ijk".

    i and j pick the 64-bit sources (0 xorshift64, 1 xorshift128plus);
    k picks the strategy source (1 LFSR113, 2 Taus88, 3 TT800, 4 WELL512, 5 MT19937).
    """

    SOURCES = {
        '0': GeneratorId.XORSHIFT64,
        '1': GeneratorId.XORSHIFT128PLUS,
    }
    SELECTORS = {
        '1': GeneratorId.LFSR113,
        '2': GeneratorId.TAUS88,
        '3': GeneratorId.TT800,
        '4': GeneratorId.WELL512,
        '5': GeneratorId.MT19937,
    }

    def __new__(cls, value):
        value = str(value).strip()
        if len(value) != 3 or value[0] not in cls.SOURCES or value[1] not in cls.SOURCES \
                or value[2] not in cls.SELECTORS:
            raise UnknownCombination(f"Unknown combination: {value!r} (expected [01][01][1-5])")
        return super().__new__(cls, value)

    @property
    def generators(self):
        """(gen1, gen2, gen3) ids."""
        return (self.SOURCES[self[0]], self.SOURCES[self[1]], self.SELECTORS[self[2]])

    @classmethod
    def is_combination(cls, value):
        try:
            cls(value)
            return True
        except UnknownCombination:
            return False


def all_combinations():
    """Every encoded combination id, in "ijk" order."""
    return [CombinationId(f"{i}{j}{k}")
            for i in CombinationId.SOURCES
            for j in CombinationId.SOURCES
            for k in CombinationId.SELECTORS]


def ci_strategy(z):
    """
    Update subset encoded by the three low bits of a strategy draw.

    Bit 0 selects the low half of x, bit 1 the high half of x and bit 2
    the low half of y.

    Args:
        z (int): Strategy generator output

    Returns:
        tuple: Names of the selected word halves
    """
    names = ("x_low", "x_high", "y_low")
    return tuple(name for bit, name in enumerate(names) if (z >> bit) & 1)


def ci_mix(s, x, y, z):
    """
    One combiner update on explicit inputs.

    Args:
        s (int): 32-bit accumulator
        x (int): 64-bit draw of the first source
        y (int): 64-bit draw of the second source
        z (int): Draw of the strategy source

    Returns:
        int: New 32-bit accumulator (also the output)
    """
    if z & 1:
        s ^= x & MASK32
    if z & 2:
        s ^= x >> 32
    if z & 4:
        s ^= y & MASK32
    return (s ^ (y >> 32)) & MASK32


def _mask_table(x, y):
    return [
        0,
        x & MASK32,
        x >> 32,
        (x ^ (x >> 32)) & MASK32,
        y & MASK32,
        (x ^ y) & MASK32,
        ((x >> 32) ^ y) & MASK32,
        (x ^ (x >> 32) ^ y) & MASK32,
    ]


def ci_mix_table(s, x, y, z):
    """Table-driven equivalent of ci_mix: s ^ M[z & 7] ^ high(y)."""
    return (s ^ _mask_table(x & MASK64, y & MASK64)[z & 7] ^ (y >> 32)) & MASK32


class CiCombiner:
    """
    Three-generator chaotic-iterations combiner producing 32-bit words.

    The accumulator s persists between draws.
    """

    output_width = 32

    def __init__(self, combination, gen1, gen2, gen3, s):
        self.combination = combination
        self.gen1 = gen1
        self.gen2 = gen2
        self.gen3 = gen3
        self.s = s & MASK32
        for gen in (gen1, gen2):
            if gen.output_width != 64:
                raise ValueError(f"{gen.label} is not a 64-bit source")

    @property
    def label(self):
        names = ", ".join(g.label for g in (self.gen1, self.gen2, self.gen3))
        return f"CI {self.combination} [{names}]"

    def ci_next(self):
        """Draw x, y, z and return the new accumulator."""
        x = self.gen1.next()
        y = self.gen2.next()
        z = self.gen3.next()
        self.s = ci_mix(self.s, x, y, z)
        return self.s

    next = ci_next

    def ci_next_table(self):
        """Same draw as ci_next through the mask table."""
        x = self.gen1.next()
        y = self.gen2.next()
        z = self.gen3.next()
        self.s = ci_mix_table(self.s, x, y, z)
        return self.s

    def next_batch(self, count):
        step = self.ci_next
        return [step() for _ in range(count)]

    def __repr__(self):
        return f"<CiCombiner {self.combination}>"


def make_combiner(combination, seed=0):
    """
    Build a combiner for a combination id.

    The inner generators are seeded with seed, seed ^ 0xA5A5... and
    seed ^ 0x5A5A...; s starts at the low 32 bits of seed.

    Args:
        combination (str|CombinationId): Triplet such as "011"
        seed (int): 64-bit seed

    Returns:
        CiCombiner: Ready combiner

    Raises:
        UnknownCombination: If the id is invalid
    """
    combination = CombinationId(combination)
    seed &= MASK64
    gens = [GeneratorRegistry.create(gen_id, seed ^ split)
            for gen_id, split in zip(combination.generators, settings.COMBINER_SPLIT)]
    logger.debug(f"Combiner {combination} seeded with {seed:#x}")
    return CiCombiner(combination, *gens, s=seed & MASK32)
