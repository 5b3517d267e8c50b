"""Utility modules for the F2 PRNG workbench."""
