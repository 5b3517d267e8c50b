#!/usr/bin/env python3
"""
F2 PRNG Workbench - Main Entry Point

Generators, linear-complexity analysis, chaotic-iterations combiners and
a desk-scale statistical battery behind one command line.
"""

import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.cli import main


if __name__ == '__main__':
    sys.exit(main())
