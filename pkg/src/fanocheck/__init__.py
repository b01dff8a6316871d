"""Exact verification of intersection-theoretic and invariant-theoretic claims on two Fano threefolds."""
__version__ = "0.1.0"
