"""Exact syzygy, Igusa-Todorov and pullback-diagram computations over GF(p)."""
