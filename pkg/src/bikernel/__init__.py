"""Finite bicategories: coherence checking, univalence and displayed constructions."""

__version__ = "0.1.0"
