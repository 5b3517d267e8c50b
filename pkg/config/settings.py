"""
Global configuration settings for the F2 PRNG workbench.
"""

from pathlib import Path

# Installation paths
INSTALL_DIR = Path("/opt/f2prng")
DATA_DIR = INSTALL_DIR / "data"
RESULTS_DIR = DATA_DIR / "results"

# Development mode (use local paths if not installed)
if not INSTALL_DIR.exists():
    INSTALL_DIR = Path(__file__).parent.parent
    DATA_DIR = INSTALL_DIR / "data"
    RESULTS_DIR = DATA_DIR / "results"

# Create data directories if they don't exist
RESULTS_DIR.mkdir(parents=True, exist_ok=True)

# Statistical configuration
DEFAULT_ALPHA = 1e-3  # jump test passes on [alpha, 1 - alpha], the rest on p >= alpha
MONOBIT_MIN_BITS = 100
RUNS_MIN_BITS = 100
JUMP_TEST_MIN_BITS = 512
BATTERY_MIN_BITS = 2 ** 14
SATURATION_MARGIN = 4  # n - k >= margin * L(k)

# Bit extraction ("lsb", "msb", "all")
ANALYSIS_POLICY = "lsb"
BATTERY_POLICY = "msb"

# Jump test calibration
CALIBRATION_FILE = DATA_DIR / "jump_calibration.json"
CALIBRATION_BITS = 4096
CALIBRATION_STREAMS = 10_000
# fewer measured streams leave the jump test on the analytic n/4, n/8
CALIBRATION_MIN_STREAMS = 10_000

# Seeding
DEFAULT_SEED = 0
SEED_REMAP_CONSTANT = 0x9E3779B97F4A7C15
KNUTH_MULTIPLIER = 1812433253
COMBINER_SPLIT = (0, 0xA5A5A5A5A5A5A5A5, 0x5A5A5A5A5A5A5A5A)

# Matrix model
MATRIX_MAX_STATE_BITS = 1024  # above this, extraction needs allow_large
EXTRACTION_PROBE_PAIRS = 64
MATRIX_CHUNK_ROWS = 2048

# Benchmark configuration
BENCH_MIN_SECONDS = 0.1
BENCH_MIN_OUTPUTS = 10 ** 7
BENCH_BATCH = 4096

# Raw stream export
EXPORT_CHUNK_OUTPUTS = 8192

# Logging configuration
LOG_DIR = DATA_DIR / "logs"
LOG_DIR.mkdir(parents=True, exist_ok=True)
LOG_FILE = LOG_DIR / "f2prng.log"
LOG_LEVEL = "INFO"  # DEBUG, INFO, WARNING, ERROR, CRITICAL
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Display configuration
USE_COLOR = True  # ANSI color codes for terminal output
DISPLAY_WIDTH = 80  # Characters

# Result file configuration
RESULT_FILE_PREFIX = "battery_"
RESULT_FILE_SUFFIX = ".json"
MAX_STORED_RESULTS = 100

# Version
VERSION = "1.0.0"
APP_NAME = "F2 PRNG Workbench"
