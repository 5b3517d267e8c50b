"""Configuration package for the F2 PRNG workbench."""
