"""Charged superfluid drops as transducers between electromagnetic and
gravitational radiation: radiated powers, mass scales, zero-phonon response,
reciprocal scattering, orbital decay and a Hertz-like link budget, all
computed through dimension-checked quantities."""

__version__ = "0.1.0"

from .units import (Dimension, DimensionError, DomainError, NonFiniteError, Quantity,
                    UndefinedRatioError, combine, constants, parse_quantity, quantity, unit)

__all__ = [
    "Dimension", "DimensionError", "DomainError", "NonFiniteError", "Quantity",
    "UndefinedRatioError", "combine", "constants", "parse_quantity", "quantity", "unit",
    "__version__",
]
