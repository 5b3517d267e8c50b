"""
Congruential family: PCG32, MWC256, CMWC4096, MRG32k3a and KISS.

These generators rely on integer multiplication and carries, so none of
their transitions is F2-linear.
"""

import logging
from generators.base import (
    MASK32, MASK64, ArraySeededGenerator, BaseGenerator, GeneratorDescriptor,
    GeneratorId, pack_words, unpack_words,
)
from generators.registry import GeneratorRegistry
from generators.seeding import derive_components, enforce_nonzero, remap_component


logger = logging.getLogger(__name__)


@GeneratorRegistry.register
class PCG32(BaseGenerator):
    """PCG-XSH-RR with 64-bit LCG state and 32-bit output."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.PCG32, name="PCG32", output_width=32,
        period_exponent=32, is_f2_linear_transition=False, is_f2_linear_output=False,
        state_bits=64, family="LCG",
        reference="O'Neill 2014, pcg_basic.c",
    )
    MULTIPLIER = 6364136223846793005
    DEFAULT_INCREMENT = 1442695040888963407

    def seed(self, seed):
        """Seed with the default increment (single-stream srandom)."""
        return self._seed_with_increment(seed & MASK64, self.DEFAULT_INCREMENT)

    def pcg32_seed(self, initstate, initseq):
        """
        Two-argument seeding of the reference implementation.

        Args:
            initstate (int): Starting state
            initseq (int): Stream selector; the increment is 2*initseq + 1

        Returns:
            PCG32: self for method chaining
        """
        return self._seed_with_increment(initstate & MASK64, ((initseq << 1) | 1) & MASK64)

    def _seed_with_increment(self, initstate, increment):
        self.inc = increment
        self.state = 0
        self._step()
        self.state = (self.state + initstate) & MASK64
        self._step()
        return self

    def _step(self):
        self.state = (self.state * self.MULTIPLIER + self.inc) & MASK64

    def next(self):
        old = self.state
        self._step()
        xorshifted = (((old >> 18) ^ old) >> 27) & MASK32
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & MASK32

    def get_state_int(self):
        return self.state

    def set_state_int(self, value):
        self.state = value & MASK64


class _MultiplyWithCarry(ArraySeededGenerator):
    """
    Lag-r multiply-with-carry over 32-bit words.

    The packed state is the ring read from the next index to be used,
    with the carry in the top 32 bits.
    """

    MULTIPLIER = 0
    INITIAL_CARRY = 362436

    def load_words(self, words):
        self.q = list(words)
        self.i = self.WORD_COUNT - 1
        self.c = self.INITIAL_CARRY % self.MULTIPLIER

    def get_state_int(self):
        start = (self.i + 1) % self.WORD_COUNT
        ring = self.q[start:] + self.q[:start]
        return pack_words(ring, 32) | (self.c << (32 * self.WORD_COUNT))

    def set_state_int(self, value):
        self.q = unpack_words(value, self.WORD_COUNT, 32)
        self.c = (value >> (32 * self.WORD_COUNT)) & MASK32
        self.i = self.WORD_COUNT - 1


@GeneratorRegistry.register
class MWC256(_MultiplyWithCarry):
    """Marsaglia's lag-256 multiply-with-carry."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.MWC256, name="MWC256", output_width=32,
        period_exponent=8222, is_f2_linear_transition=False, is_f2_linear_output=False,
        state_bits=256 * 32 + 32, family="LCG",
        reference="Marsaglia 2003, MWC256",
    )
    WORD_COUNT = 256
    MULTIPLIER = 809430660

    def next(self):
        self.i = i = (self.i + 1) & 255
        t = self.MULTIPLIER * self.q[i] + self.c
        self.c = t >> 32
        self.q[i] = t & MASK32
        return self.q[i]


@GeneratorRegistry.register
class CMWC4096(_MultiplyWithCarry):
    """Marsaglia's complementary multiply-with-carry, lag 4096."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.CMWC4096, name="CMWC4096", output_width=32,
        period_exponent=131086, is_f2_linear_transition=False, is_f2_linear_output=False,
        state_bits=4096 * 32 + 32, family="LCG",
        reference="Marsaglia 2003, CMWC4096",
    )
    WORD_COUNT = 4096
    MULTIPLIER = 18782
    R = 0xFFFFFFFE

    def next(self):
        self.i = i = (self.i + 1) & 4095
        t = self.MULTIPLIER * self.q[i] + self.c
        c = t >> 32
        x = (t + c) & MASK32
        if x < c:
            x += 1
            c += 1
        self.c = c
        self.q[i] = (self.R - x) & MASK32
        return self.q[i]


@GeneratorRegistry.register
class MRG32k3a(BaseGenerator):
    """L'Ecuyer's combined multiple recursive generator."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.MRG32K3A, name="MRG32k3a", output_width=32,
        period_exponent=191, is_f2_linear_transition=False, is_f2_linear_output=False,
        state_bits=192, family="LCG",
        reference="L'Ecuyer 1999, MRG32k3a.c",
    )
    M1 = 4294967087  # 2^32 - 209
    M2 = 4294944443  # 2^32 - 22853
    A12 = 1403580
    A13N = 810728
    A21 = 527612
    A23N = 1370589

    def seed(self, seed):
        raw = derive_components(seed, 6, 32)
        for k in range(6):
            modulus = self.M1 if k < 3 else self.M2
            if raw[k] >= modulus:
                raw[k] = remap_component(k, 32)
        first = enforce_nonzero(self.label, raw[:3], 32)
        second = raw[3:]
        if not any(second):
            second[0] = remap_component(3, 32)
            logger.debug(f"{self.label}: second component remapped from zero")
        self.s1 = first
        self.s2 = second
        return self

    def next(self):
        s1, s2 = self.s1, self.s2
        p1 = (self.A12 * s1[1] - self.A13N * s1[0]) % self.M1
        s1[0], s1[1], s1[2] = s1[1], s1[2], p1
        p2 = (self.A21 * s2[2] - self.A23N * s2[0]) % self.M2
        s2[0], s2[1], s2[2] = s2[1], s2[2], p2
        return (p1 - p2) % self.M1

    def get_state_int(self):
        return pack_words(self.s1 + self.s2, 32)

    def set_state_int(self, value):
        words = unpack_words(value, 6, 32)
        self.s1 = words[:3]
        self.s2 = words[3:]


@GeneratorRegistry.register
class KISS(BaseGenerator):
    """
    Marsaglia's 32-bit KISS (two 16-bit MWC halves, SHR3 xorshift, LCG).

    Each 64-bit output joins two 32-bit draws, the first in the high word.
    """

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.KISS, name="KISS", output_width=64,
        period_exponent=124, is_f2_linear_transition=False, is_f2_linear_output=False,
        state_bits=128, family="combined",
        reference="Marsaglia 1999, KISS",
    )

    def seed(self, seed):
        z, w, jsr, jcong = derive_components(seed, 4, 32)
        if z == 0:
            z = remap_component(0, 32)
        if w == 0:
            w = remap_component(1, 32)
        if jsr == 0:
            jsr = remap_component(2, 32)
        self.z, self.w, self.jsr, self.jcong = z, w, jsr, jcong
        return self

    def next32(self):
        """Draw one 32-bit KISS value."""
        self.z = 36969 * (self.z & 0xFFFF) + (self.z >> 16)
        self.w = 18000 * (self.w & 0xFFFF) + (self.w >> 16)
        mwc = ((self.z << 16) + self.w) & MASK32
        jsr = self.jsr
        jsr ^= (jsr << 17) & MASK32
        jsr ^= jsr >> 13
        jsr ^= (jsr << 5) & MASK32
        self.jsr = jsr
        self.jcong = (69069 * self.jcong + 1234567) & MASK32
        return ((mwc ^ self.jcong) + jsr) & MASK32

    def next(self):
        high = self.next32()
        return (high << 32) | self.next32()

    def get_state_int(self):
        return pack_words([self.z, self.w, self.jsr, self.jcong], 32)

    def set_state_int(self, value):
        self.z, self.w, self.jsr, self.jcong = unpack_words(value, 4, 32)
