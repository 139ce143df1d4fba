"""equirr: an engine that evaluates and cross-verifies equivariant
Riemann-Roch formulas for curves with finite group action over finite
fields, by computing both an explicit cohomology-based oracle on the
projective line and closed formulas inside Grothendieck groups of modular
representations."""

from .errors import CapExceeded, EquirrError, Inconsistency, InputError

__all__ = ["CapExceeded", "EquirrError", "Inconsistency", "InputError"]

__version__ = "0.1.0"
