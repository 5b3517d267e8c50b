"""Statistical tests for the F2 PRNG workbench battery."""
