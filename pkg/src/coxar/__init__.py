"""Exact computations with ADE root systems driven by a Coxeter element.

The package realizes a simply laced root system inside a periodic quiver on
I x Z_2h: compatible simple systems, the canonical root/vertex bijection,
height functions, the non-symmetric Euler form, reduced words for the
longest Weyl element, and the dictionary with Auslander-Reiten theory of
quiver representations. Everything is computed with exact integer or
rational arithmetic and verified against brute-force Weyl group oracles.
"""

from .rootsys import DynkinType, RootSystem, SimpleSystem, build_root_system
from .coxeter import CoxeterContext, Orientation, coxeter_from_orientation, coxeter_from_word

__all__ = [
    "DynkinType",
    "RootSystem",
    "SimpleSystem",
    "build_root_system",
    "CoxeterContext",
    "Orientation",
    "coxeter_from_word",
    "coxeter_from_orientation",
]
