"""Mod-2 loop space homology: presented Hopf algebras, Steenrod actions, spectral sequence pages and cobar complexes over GF(2)."""

__version__ = "0.1.0"
