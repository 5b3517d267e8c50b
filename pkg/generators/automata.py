"""
Cellular automaton generator: 32-cell cyclic Rule 30.
"""

from generators.base import MASK32, MASK64, BaseGenerator, GeneratorDescriptor, GeneratorId
from generators.registry import GeneratorRegistry


def rotl32(x, r):
    return ((x << r) | (x >> (32 - r))) & MASK32


def rotr32(x, r):
    return ((x >> r) | (x << (32 - r))) & MASK32


@GeneratorRegistry.register
class CA32(BaseGenerator):
    """
    Radius-1 Rule 30 on a ring of 32 cells; cell i is bit i.

    new_i = left ^ (center | right) with left = cell i+1, right = cell i-1.
    The full 32-cell row is the output of each step. Only the all-zero and
    all-one rows map to zero, so both are replaced by the single center cell:
    as seeds, and as a successor inside next().
    """

    DESCRIPTOR = GeneratorDescriptor(
        id=GeneratorId.CA32, name="CA32", output_width=32,
        period_exponent=32, is_f2_linear_transition=False, is_f2_linear_output=False,
        state_bits=32, family="CA",
        reference="Wolfram 1986, rule 30",
    )
    CENTER_CELL = 1 << 16

    def seed(self, seed):
        seed &= MASK64
        cells = (seed ^ (seed >> 32)) & MASK32
        if cells in (0, MASK32):
            cells = self.CENTER_CELL
        self.cells = cells
        return self

    def next(self):
        x = self.cells
        # all-ones steps to zero, a fixed point
        self.cells = (rotr32(x, 1) ^ (x | rotl32(x, 1))) or self.CENTER_CELL
        return self.cells

    def get_state_int(self):
        return self.cells

    def set_state_int(self, value):
        self.cells = value & MASK32
