"""
Seeding helpers: component derivation, constraint remapping and the
Knuth-multiplier array initialisation used for table-based generators.
"""

import logging
from config import settings
from generators.base import MASK32, MASK64, GeneratorId, WorkbenchError


logger = logging.getLogger(__name__)


class NotArraySeeded(WorkbenchError):
    """Raised when array seeding is requested for a scalar-seeded generator."""
    pass


# Table length per array-seeded generator
ARRAY_LENGTHS = {
    GeneratorId.MT19937: 624,
    GeneratorId.TT800: 25,
    GeneratorId.WELL512: 16,
    GeneratorId.MWC256: 256,
    GeneratorId.CMWC4096: 4096,
    GeneratorId.XORSHIFT1024STAR: 16,
}

# Entries of these tables are 64-bit words built from two recurrence values
WIDE_ARRAYS = {GeneratorId.XORSHIFT1024STAR}


def knuth_sequence(seed, count):
    """
    Run w_i = m * (w_{i-1} ^ (w_{i-1} >> 30)) + i modulo 2^32.

    Args:
        seed (int): 32-bit starting value w_0
        count (int): Number of values

    Returns:
        list: count 32-bit values, the first being the seed
    """
    m = settings.KNUTH_MULTIPLIER
    w = seed & MASK32
    out = [w]
    for i in range(1, count):
        w = (m * (w ^ (w >> 30)) + i) & MASK32
        out.append(w)
    return out


def seed_array_init(gen_id, seed):
    """
    Build the seed table of an array-seeded generator.

    Args:
        gen_id (GeneratorId|str): Generator id
        seed (int): 32-bit seed

    Returns:
        list: Table of the generator's required length

    Raises:
        NotArraySeeded: If the generator is scalar-seeded
    """
    gen_id = GeneratorId.parse(gen_id)
    if gen_id not in ARRAY_LENGTHS:
        raise NotArraySeeded(f"{gen_id.value} is not seeded from an array")

    length = ARRAY_LENGTHS[gen_id]
    if gen_id in WIDE_ARRAYS:
        raw = knuth_sequence(seed, 2 * length)
        return [raw[2 * i] | (raw[2 * i + 1] << 32) for i in range(length)]
    return knuth_sequence(seed, length)


def fold_seed32(seed):
    """Fold a 64-bit seed into 32 bits (low word XOR high word)."""
    seed &= MASK64
    return (seed ^ (seed >> 32)) & MASK32


def remap_component(index, width):
    """
    Deterministic replacement for a component violating its constraint.

    Args:
        index (int): Component index
        width (int): Component width in bits

    Returns:
        int: Replacement value
    """
    return (settings.SEED_REMAP_CONSTANT + index) & ((1 << width) - 1)


def derive_components(seed, count, width):
    """
    Spread a 64-bit seed over count components.

    Component k is the seed rotated left by 23*k bits, truncated to width.
    Seed 0 therefore yields all-zero components, which the callers remap.

    Args:
        seed (int): 64-bit seed
        count (int): Number of components
        width (int): Component width (32 or 64)

    Returns:
        list: Component values
    """
    seed &= MASK64
    mask = (1 << width) - 1
    out = []
    for k in range(count):
        r = (23 * k) % 64
        rotated = ((seed << r) | (seed >> (64 - r))) & MASK64 if r else seed
        out.append(rotated & mask)
    return out


def enforce_lower_bounds(name, components, bounds, width):
    """
    Replace components that are not above their published lower bound.

    Args:
        name (str): Generator name for logging
        components (list): Candidate values
        bounds (list): Component k must be strictly greater than bounds[k]
        width (int): Component width

    Returns:
        list: Valid components
    """
    valid = []
    for k, (value, bound) in enumerate(zip(components, bounds)):
        if value <= bound:
            value = remap_component(k, width)
            logger.debug(f"{name}: component {k} remapped (must exceed {bound})")
        valid.append(value)
    return valid


def enforce_nonzero(name, components, width):
    """
    Ensure a state vector is not all-zero by remapping component 0.

    Args:
        name (str): Generator name for logging
        components (list): Candidate values
        width (int): Component width

    Returns:
        list: Components with at least one nonzero entry
    """
    if any(components):
        return list(components)
    logger.debug(f"{name}: all-zero state remapped")
    return [remap_component(0, width)] + list(components[1:])
