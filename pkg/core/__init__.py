"""Analysis, post-processing, battery and command-line modules for the F2 PRNG workbench."""
