"""
Combined Tausworthe (LFSR) generators: LFSR113, LFSR258 and Taus88.

Each component is a shift-register recurrence written with word shifts
and masks; the output is the XOR of all components. Parameters are the
published maximally equidistributed ones.
"""

from generators.base import (
    MASK64, BaseGenerator, GeneratorDescriptor, GeneratorId,
    pack_words, unpack_words,
)
from generators.registry import GeneratorRegistry
from generators.seeding import derive_components, enforce_lower_bounds


class CombinedTausworthe(BaseGenerator):
    """
    Shared machinery for combined Tausworthe generators.

    COMPONENTS lists (mask, q, s, k_shift) per component so that one step is
        b = ((z << q) ^ z) >> s
        z = ((z & mask) << k_shift) ^ b
    LOWER_BOUNDS lists the published seed lower bounds.
    """

    WORD_BITS = 32
    COMPONENTS = ()
    LOWER_BOUNDS = ()

    def seed(self, seed):
        count = len(self.COMPONENTS)
        raw = derive_components(seed, count, self.WORD_BITS)
        self.z = enforce_lower_bounds(self.label, raw, self.LOWER_BOUNDS, self.WORD_BITS)
        return self

    def next(self):
        word_mask = (1 << self.WORD_BITS) - 1
        z = self.z
        out = 0
        for i, (mask, q, s, k_shift) in enumerate(self.COMPONENTS):
            v = z[i]
            b = (((v << q) & word_mask) ^ v) >> s
            v = (((v & mask) << k_shift) & word_mask) ^ b
            z[i] = v
            out ^= v
        return out

    def get_state_int(self):
        return pack_words(self.z, self.WORD_BITS)

    def set_state_int(self, value):
        self.z = unpack_words(value, len(self.COMPONENTS), self.WORD_BITS)


@GeneratorRegistry.register
class LFSR113(CombinedTausworthe):
    """Four-component 32-bit combined Tausworthe, period 2^113."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.LFSR113, name="LFSR113", output_width=32,
        period_exponent=113, is_f2_linear_transition=True, is_f2_linear_output=True,
        state_bits=128, family="LFSR",
        reference="L'Ecuyer 1999, lfsr113.c",
    )
    COMPONENTS = (
        (0xFFFFFFFE, 6, 13, 18),
        (0xFFFFFFF8, 2, 27, 2),
        (0xFFFFFFF0, 13, 21, 7),
        (0xFFFFFF80, 3, 12, 13),
    )
    LOWER_BOUNDS = (1, 7, 15, 127)


@GeneratorRegistry.register
class Taus88(CombinedTausworthe):
    """Three-component 32-bit combined Tausworthe, period 2^88."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.TAUS88, name="Taus88", output_width=32,
        period_exponent=88, is_f2_linear_transition=True, is_f2_linear_output=True,
        state_bits=96, family="LFSR",
        reference="L'Ecuyer 1996, taus88.c",
    )
    COMPONENTS = (
        (0xFFFFFFFE, 13, 19, 12),
        (0xFFFFFFF8, 2, 25, 4),
        (0xFFFFFFF0, 3, 11, 17),
    )
    LOWER_BOUNDS = (1, 7, 15)


@GeneratorRegistry.register
class LFSR258(CombinedTausworthe):
    """Five-component 64-bit combined Tausworthe, period 2^258."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.LFSR258, name="LFSR258", output_width=64,
        period_exponent=258, is_f2_linear_transition=True, is_f2_linear_output=True,
        state_bits=320, family="LFSR",
        reference="L'Ecuyer 1999, lfsr258.c",
    )
    WORD_BITS = 64
    COMPONENTS = (
        (MASK64 - 1, 1, 53, 10),
        (MASK64 - 511, 24, 50, 5),
        (MASK64 - 4095, 3, 23, 29),
        (MASK64 - 131071, 5, 24, 23),
        (MASK64 - 8388607, 3, 33, 8),
    )
    LOWER_BOUNDS = (1, 511, 4095, 131071, 8388607)
