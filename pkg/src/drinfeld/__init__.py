"""Exact arithmetic for Drinfeld modules, t-modules and special L-values."""
