"""Exact coset, kappa and Hecke computations on based fusion rings."""
