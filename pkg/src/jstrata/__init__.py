"""Exact invariants of lattices over F_q((t)): relative positions, probe profiles,
semi-module charts, a-numbers and level-1 truncations."""

__version__ = "0.1.0"
