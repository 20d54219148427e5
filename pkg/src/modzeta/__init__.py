"""Eisenstein q-series, period polynomials, Epstein zeta functions and the
thermal free energy they compute on odd spheres.

Subpackages are organized by layer: ``exactnum`` (exact scalars and
float zeta/gamma), ``qseries`` (all q-series plus the Mellin-contour
oracle), ``periodpoly`` (exact cocycle algebra), ``epstein`` (lattice
zeta functions and Bessel acceleration), ``dirichlet`` (the generic
paired-Dirichlet-series framework), ``thermal`` (free energy and
entropy) and ``cli`` (command-line front end).
"""
from __future__ import annotations

__version__ = "0.1.0"
