"""
Twisted GFSR family: MT19937, TT800 and WELL512.

All three keep a ring of 32-bit words and update one word per output,
so a step is x_i = A x_{i-1} on the ring followed by an output map.
The MT and TT800 updates are written one word at a time, which produces
exactly the same sequence as the block-refill reference code.
"""

from generators.base import (
    MASK32, ArraySeededGenerator, GeneratorDescriptor, GeneratorId,
    pack_words, unpack_words,
)
from generators.registry import GeneratorRegistry


class _RingGenerator(ArraySeededGenerator):
    """Ring buffer of WORD_COUNT words with a current index."""

    def load_words(self, words):
        self.x = list(words)
        self.k = 0

    def get_state_int(self):
        k = self.k
        return pack_words(self.x[k:] + self.x[:k], 32)

    def set_state_int(self, value):
        self.x = unpack_words(value, self.WORD_COUNT, 32)
        self.k = 0


@GeneratorRegistry.register
class MT19937(_RingGenerator):
    """32-bit Mersenne Twister with the reference tempering."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.MT19937, name="MT19937", output_width=32,
        period_exponent=19937, is_f2_linear_transition=True, is_f2_linear_output=True,
        state_bits=624 * 32, family="TGFSR",
        reference="Matsumoto-Nishimura 1998, mt19937ar.c",
    )
    WORD_COUNT = 624
    M = 397
    MATRIX_A = 0x9908B0DF
    UPPER_MASK = 0x80000000
    LOWER_MASK = 0x7FFFFFFF

    def next(self):
        x = self.x
        k = self.k
        n = self.WORD_COUNT
        y = (x[k] & self.UPPER_MASK) | (x[(k + 1) % n] & self.LOWER_MASK)
        v = x[(k + self.M) % n] ^ (y >> 1)
        if y & 1:
            v ^= self.MATRIX_A
        x[k] = v
        self.k = (k + 1) % n

        # Tempering
        v ^= v >> 11
        v ^= (v << 7) & 0x9D2C5680
        v ^= (v << 15) & 0xEFC60000
        v ^= v >> 18
        return v


@GeneratorRegistry.register
class TT800(_RingGenerator):
    """Twisted GFSR with 25 words and the 1996 tempering."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.TT800, name="TT800", output_width=32,
        period_exponent=800, is_f2_linear_transition=True, is_f2_linear_output=True,
        state_bits=800, family="TGFSR",
        reference="Matsumoto-Kurita 1994/1996, tt800.c",
    )
    WORD_COUNT = 25
    M = 7
    MAG = 0x8EBFD028

    def next(self):
        x = self.x
        k = self.k
        n = self.WORD_COUNT
        v = x[(k + self.M) % n] ^ (x[k] >> 1)
        if x[k] & 1:
            v ^= self.MAG
        x[k] = v
        self.k = (k + 1) % n

        # Tempering
        v ^= (v << 7) & 0x2B5B2500
        v ^= (v << 15) & 0xDB8B0000
        v &= MASK32
        v ^= v >> 16
        return v


@GeneratorRegistry.register
class WELL512(_RingGenerator):
    """WELL512a of Panneton, L'Ecuyer and Matsumoto."""

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.WELL512, name="WELL512", output_width=32,
        period_exponent=512, is_f2_linear_transition=True, is_f2_linear_output=True,
        state_bits=512, family="TGFSR",
        reference="Panneton-L'Ecuyer-Matsumoto 2006, WELL512a.c",
    )
    WORD_COUNT = 16
    M1 = 13
    M2 = 9

    def next(self):
        x = self.x
        i = self.k
        v0 = x[i]
        vm1 = x[(i + self.M1) & 15]
        vm2 = x[(i + self.M2) & 15]
        z0 = x[(i + 15) & 15]
        z1 = (v0 ^ ((v0 << 16) & MASK32)) ^ (vm1 ^ ((vm1 << 15) & MASK32))
        z2 = vm2 ^ (vm2 >> 11)
        new_v1 = z1 ^ z2
        x[i] = new_v1
        i = (i + 15) & 15
        x[i] = (
            (z0 ^ ((z0 << 2) & MASK32))
            ^ (z1 ^ ((z1 << 18) & MASK32))
            ^ ((z2 << 28) & MASK32)
            ^ (new_v1 ^ (((new_v1 << 5) & MASK32) & 0xDA442D24))
        )
        self.k = i
        return x[i]
