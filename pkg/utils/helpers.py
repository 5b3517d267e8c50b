"""
Helper utility functions for the F2 PRNG workbench.
"""

import shutil
import uuid


_SIZE_SUFFIXES = {'k': 1 << 10, 'm': 1 << 20, 'g': 1 << 30}


def generate_id(prefix=""):
    """
    Generate a unique ID with optional prefix.

    Args:
        prefix (str): Optional prefix for the ID

    Returns:
        str: Unique ID string
    """
    unique_id = str(uuid.uuid4())[:8]
    if prefix:
        return f"{prefix}_{unique_id}"
    return unique_id


def parse_int(value):
    """
    Parse a seed or count given in decimal, hex (0x), octal (0o) or binary (0b).

    Args:
        value (str|int): Value to parse

    Returns:
        int: Parsed value

    Raises:
        ValueError: If value is not an integer literal
    """
    if isinstance(value, int):
        return value
    return int(str(value).strip().replace('_', ''), 0)


def parse_size(value):
    """
    Parse a bit or byte count with optional binary suffix (k, M, G) or 2^e form.

    Args:
        value (str|int): e.g. "65536", "64k", "2^16"

    Returns:
        int: Parsed count

    Raises:
        ValueError: If the value cannot be parsed or is negative
    """
    if isinstance(value, int):
        count = value
    else:
        text = str(value).strip().lower()
        if '^' in text:
            base, exp = text.split('^', 1)
            count = int(base) ** int(exp)
        elif text and text[-1] in _SIZE_SUFFIXES:
            count = parse_int(text[:-1]) * _SIZE_SUFFIXES[text[-1]]
        else:
            count = parse_int(text)
    if count < 0:
        raise ValueError(f"Size must be non-negative: {value}")
    return count


def format_time(seconds):
    """
    Format seconds into a short human-readable string.

    Args:
        seconds (float): Duration

    Returns:
        str: e.g. "850 ms", "12.3 s", "2m 05s"
    """
    if seconds < 0:
        return "0 s"
    if seconds < 1:
        return f"{seconds * 1000:.0f} ms"
    if seconds < 60:
        return f"{seconds:.1f} s"
    minutes, secs = divmod(int(seconds), 60)
    return f"{minutes}m {secs:02d}s"


def format_rate(per_second, unit="outputs"):
    """
    Format a rate with an SI prefix.

    Args:
        per_second (float): Rate
        unit (str): Unit name

    Returns:
        str: e.g. "12.50 M outputs/s"
    """
    for factor, prefix in ((1e9, "G"), (1e6, "M"), (1e3, "k")):
        if per_second >= factor:
            return f"{per_second / factor:.2f} {prefix} {unit}/s"
    return f"{per_second:.2f} {unit}/s"


def get_terminal_width():
    """
    Get the current terminal width.

    Returns:
        int: Terminal width in characters (default 80)
    """
    try:
        return shutil.get_terminal_size((80, 20)).columns
    except OSError:
        return 80

