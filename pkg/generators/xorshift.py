"""
Xorshift family: xorshift64, xorshift128, xorshift128plus, xorshift1024star.

All four transitions are compositions of (I ^ shift) maps and therefore
F2-linear; the plus and star variants scramble the output with a 64-bit
addition or multiplication.
"""

from generators.base import (
    MASK64, ArraySeededGenerator, BaseGenerator, GeneratorDescriptor,
    GeneratorId, pack_words, unpack_words,
)
from generators.registry import GeneratorRegistry
from generators.seeding import derive_components, enforce_nonzero


@GeneratorRegistry.register
class Xorshift64(BaseGenerator):
    """Marsaglia's 64-bit xorshift with the (13, 7, 17) triple."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.XORSHIFT64, name="xorshift64", output_width=64,
        period_exponent=64, is_f2_linear_transition=True, is_f2_linear_output=True,
        state_bits=64, family="xorshift",
        reference="Marsaglia 2003, xorshift64 (13, 7, 17)",
    )

    def seed(self, seed):
        self.x = enforce_nonzero(self.label, derive_components(seed, 1, 64), 64)[0]
        return self

    def next(self):
        x = self.x
        x ^= (x << 13) & MASK64
        x ^= x >> 7
        x ^= (x << 17) & MASK64
        self.x = x
        return x

    def get_state_int(self):
        return self.x

    def set_state_int(self, value):
        self.x = value & MASK64


class _Xorshift128Core(BaseGenerator):
    """Two-word xorshift transition with Vigna's (23, 17, 26) triple."""

    def seed(self, seed):
        self.s = enforce_nonzero(self.label, derive_components(seed, 2, 64), 64)
        return self

    def _advance(self):
        s = self.s
        s1 = s[0]
        s0 = s[1]
        s[0] = s0
        s1 ^= (s1 << 23) & MASK64
        s[1] = s1 ^ s0 ^ (s1 >> 17) ^ (s0 >> 26)
        return s0

    def get_state_int(self):
        return pack_words(self.s, 64)

    def set_state_int(self, value):
        self.s = unpack_words(value, 2, 64)


@GeneratorRegistry.register
class Xorshift128(_Xorshift128Core):
    """Unscrambled 128-bit-state xorshift emitting the new second word."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.XORSHIFT128, name="xorshift128", output_width=64,
        period_exponent=128, is_f2_linear_transition=True, is_f2_linear_output=True,
        state_bits=128, family="xorshift",
        reference="Vigna 2014, xorshift128+ transition without the sum",
    )

    def next(self):
        self._advance()
        return self.s[1]


@GeneratorRegistry.register
class Xorshift128Plus(_Xorshift128Core):
    """xorshift128+: the linear transition followed by a 64-bit sum."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.XORSHIFT128PLUS, name="xorshift128plus", output_width=64,
        period_exponent=128, is_f2_linear_transition=True, is_f2_linear_output=False,
        state_bits=128, family="xorshift",
        reference="Vigna 2014, xorshift128+ (23, 17, 26)",
    )

    def next(self):
        s0 = self._advance()
        return (self.s[1] + s0) & MASK64


@GeneratorRegistry.register
class Xorshift1024Star(ArraySeededGenerator):
    """xorshift1024*: sixteen-word ring with a multiplicative scrambler."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.XORSHIFT1024STAR, name="xorshift1024star", output_width=64,
        period_exponent=1024, is_f2_linear_transition=True, is_f2_linear_output=False,
        state_bits=1024, family="xorshift",
        reference="Vigna 2014, xorshift1024*",
    )
    WORD_COUNT = 16
    WORD_BITS = 64
    MULTIPLIER = 1181783497276652981

    def load_words(self, words):
        self.s = list(words)
        self.p = 0

    def next(self):
        s = self.s
        s0 = s[self.p]
        self.p = p = (self.p + 1) & 15
        s1 = s[p]
        s1 ^= (s1 << 31) & MASK64
        s[p] = s1 ^ s0 ^ (s1 >> 11) ^ (s0 >> 30)
        return (s[p] * self.MULTIPLIER) & MASK64

    def get_state_int(self):
        p = self.p
        return pack_words(self.s[p:] + self.s[:p], 64)

    def set_state_int(self, value):
        self.s = unpack_words(value, 16, 64)
        self.p = 0
