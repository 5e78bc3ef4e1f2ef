"""Exact projective geometry with machine-checked incidence theorems.

Modules: :mod:`kernel` (scalars), :mod:`p2` and :mod:`p3` (projective
plane and space), :mod:`conics`, :mod:`theorems`, :mod:`moulton`, and the
:mod:`scene` language with its SVG renderer.
"""

from . import conics, kernel, moulton, p2, p3, theorems
from .errors import GeometryError
from .kernel import DEFAULT_TOL, Tolerance

__version__ = "0.1.0"

__all__ = ["conics", "kernel", "moulton", "p2", "p3", "theorems", "GeometryError", "Tolerance", "DEFAULT_TOL"]
