"""
Output formatting utilities for the F2 PRNG workbench.

Everything here prints to stdout; log messages go to stderr.
"""

from config import settings
from utils.helpers import get_terminal_width


# ANSI color codes
class Colors:
    """ANSI color codes for terminal output."""
    RESET = '\033[0m'
    BOLD = '\033[1m'
    DIM = '\033[2m'

    RED = '\033[31m'
    GREEN = '\033[32m'
    YELLOW = '\033[33m'
    CYAN = '\033[36m'


def colorize(text, color_code):
    """
    Colorize text with ANSI color codes.

    Args:
        text (str): Text to colorize
        color_code (str): ANSI color code

    Returns:
        str: Colorized text (or plain if colors disabled)
    """
    if not settings.USE_COLOR:
        return text
    return f"{color_code}{text}{Colors.RESET}"


def success(text):
    """Format text as success (green)."""
    return colorize(text, Colors.GREEN)


def error(text):
    """Format text as error (red)."""
    return colorize(text, Colors.RED)


def warning(text):
    """Format text as warning (yellow)."""
    return colorize(text, Colors.YELLOW)


def bold(text):
    """Format text as bold."""
    return colorize(text, Colors.BOLD)


def dim(text):
    """Format text as dim."""
    return colorize(text, Colors.DIM)


def disable_color():
    """Turn off ANSI codes (non-terminal output)."""
    settings.USE_COLOR = False


def print_header(text, width=None, char='='):
    """
    Print a header with decorative lines.

    Args:
        text (str): Header text
        width (int): Width of header (default: DISPLAY_WIDTH, narrowed to the terminal)
        char (str): Character for decorative lines
    """
    width = width or min(settings.DISPLAY_WIDTH, get_terminal_width())
    print()
    print(colorize(char * width, Colors.CYAN))
    print(colorize(text.center(width), Colors.BOLD + Colors.CYAN))
    print(colorize(char * width, Colors.CYAN))
    print()


def print_section(text):
    """
    Print a section header.

    Args:
        text (str): Section text
    """
    print()
    print(bold(text))
    print("-" * len(text))


def print_table(headers, rows, col_widths=None):
    """
    Print a formatted table.

    Args:
        headers (list): List of header strings
        rows (list): List of row lists
        col_widths (list): Optional list of column widths
    """
    if not rows:
        return

    if col_widths is None:
        col_widths = []
        for i, header in enumerate(headers):
            max_width = len(header)
            for row in rows:
                if i < len(row):
                    max_width = max(max_width, len(_visible(str(row[i]))))
            col_widths.append(max_width + 2)

    header_row = "".join(h.ljust(w) for h, w in zip(headers, col_widths))
    print(bold(header_row))
    print("-" * sum(col_widths))

    for row in rows:
        cells = []
        for cell, w in zip(row, col_widths):
            text = str(cell)
            cells.append(text + " " * (w - len(_visible(text))))
        print("".join(cells))


def _visible(text):
    # ANSI codes take no columns
    for code in (Colors.RESET, Colors.BOLD, Colors.DIM, Colors.RED,
                 Colors.GREEN, Colors.YELLOW, Colors.CYAN):
        text = text.replace(code, "")
    return text


def format_flag(value):
    """Render a boolean as yes/no."""
    return success("yes") if value else dim("no")


def format_p_value(p_value, alpha):
    """
    Format a p-value, coloured by where it sits relative to alpha.

    Args:
        p_value (float): p-value
        alpha (float): Significance level

    Returns:
        str: Formatted p-value
    """
    text = f"{p_value:.6f}" if p_value >= 1e-6 else f"{p_value:.2e}"
    if p_value < alpha or p_value > 1.0 - alpha:
        return warning(text)
    return text


def print_verdict(verdict):
    """
    Print one test verdict line.

    Args:
        verdict (TestVerdict): Verdict to show
    """
    if verdict.passed:
        symbol = colorize("✓", Colors.GREEN)
        status = success("PASS")
    else:
        symbol = colorize("✗", Colors.RED)
        status = error("FAIL")
    p_text = format_p_value(verdict.p_value, verdict.alpha)
    print(f"  {symbol} {verdict.name:<12} statistic {verdict.statistic:>12.4f}   p = {p_text}   {status}")


def print_report(report):
    """
    Print a battery report.

    Args:
        report (BatteryReport): Report to show
    """
    print_section(f"Battery: {report.source}")
    if report.label and report.label != report.source:
        print(f"  {dim(report.label)}")
    print(f"  seed {report.seed}, {report.n_bits} bits, policy {report.extraction_policy}, alpha {report.alpha:g}")
    print()
    for verdict in report.verdicts:
        print_verdict(verdict)
    print()
    status = success("PASS") if report.overall_pass else error("FAIL")
    print(f"  Overall: {status}")
