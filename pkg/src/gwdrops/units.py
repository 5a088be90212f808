"""Dimension-checked scalar quantities and the pinned constants table.

Every physical value in the package travels as a :class:`Quantity`: a float
magnitude in coherent SI base units plus an integer exponent vector over
(mass, length, time, current, temperature, amount). Adding mismatched
dimensions raises :class:`DimensionError`; a non-finite magnitude raises
:class:`NonFiniteError` at construction, so NaN and infinity never leak out
of an operation silently.

The constants are pinned to CODATA 2018. Formulas that are usually written
in Gaussian units are evaluated in their SI form through the Coulomb
constant ``k_e = 1/(4 pi eps0)``: ``e**2`` becomes ``k_e * e**2``.
"""

from __future__ import annotations

import math
import operator
import re
from dataclasses import dataclass
from functools import cache
from numbers import Real

__all__ = [
    "Dimension", "Quantity", "ConstantsTable", "DimensionError", "DomainError",
    "NonFiniteError", "UndefinedRatioError", "quantity", "combine",
    "constants", "parse_quantity", "unit", "DIMENSIONLESS", "MASS", "LENGTH",
    "TIME", "CURRENT", "TEMPERATURE", "AMOUNT", "CHARGE", "AREA", "VELOCITY",
    "ACCELERATION", "FORCE", "ENERGY", "POWER", "FREQUENCY", "FLUX_DENSITY",
    "MOLAR_MASS", "CIRCULATION", "ENTROPY",
]

BASE_NAMES = ("mass", "length", "time", "current", "temperature", "amount")
_SYMBOLS = ("kg", "m", "s", "A", "K", "mol")


class DimensionError(TypeError):
    """Operands carry incompatible dimensions."""


class NonFiniteError(ValueError):
    """A magnitude is NaN or infinite."""


class DomainError(ValueError):
    """An argument lies outside the domain of a physical formula."""


class UndefinedRatioError(DomainError):
    """A ratio was requested with a vanishing denominator (e.g. zero charge)."""


@dataclass(frozen=True)
class Dimension:
    exponents: tuple[int, int, int, int, int, int] = (0, 0, 0, 0, 0, 0)

    def __post_init__(self):
        exps = tuple(self.exponents)
        if len(exps) != 6 or not all(isinstance(e, int) for e in exps):
            raise TypeError(f"a dimension needs six integer exponents, got {self.exponents!r}")
        object.__setattr__(self, "exponents", exps)

    def __mul__(self, other: Dimension) -> Dimension:
        return Dimension(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: Dimension) -> Dimension:
        return Dimension(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, n: int) -> Dimension:
        if not isinstance(n, int):
            raise TypeError("dimension exponents must stay integral")
        return Dimension(tuple(a * n for a in self.exponents))

    def root(self, n: int) -> Dimension:
        if any(a % n for a in self.exponents):
            raise DimensionError(f"{self} has no integral {n}-th root")
        return Dimension(tuple(a // n for a in self.exponents))

    @property
    def dimensionless(self) -> bool:
        return not any(self.exponents)

    def __str__(self):
        if self.dimensionless:
            return "1"
        parts = []
        for sym, e in zip(_SYMBOLS, self.exponents):
            if e == 1:
                parts.append(sym)
            elif e:
                parts.append(f"{sym}^{e}")
        return " ".join(parts)


DIMENSIONLESS = Dimension()
MASS = Dimension((1, 0, 0, 0, 0, 0))
LENGTH = Dimension((0, 1, 0, 0, 0, 0))
TIME = Dimension((0, 0, 1, 0, 0, 0))
CURRENT = Dimension((0, 0, 0, 1, 0, 0))
TEMPERATURE = Dimension((0, 0, 0, 0, 1, 0))
AMOUNT = Dimension((0, 0, 0, 0, 0, 1))

CHARGE = CURRENT * TIME
AREA = LENGTH ** 2
VELOCITY = LENGTH / TIME
ACCELERATION = VELOCITY / TIME
FORCE = MASS * ACCELERATION
ENERGY = FORCE * LENGTH
POWER = ENERGY / TIME
FREQUENCY = DIMENSIONLESS / TIME
FLUX_DENSITY = MASS / (TIME ** 2 * CURRENT)
MOLAR_MASS = MASS / AMOUNT
CIRCULATION = AREA / TIME
ENTROPY = ENERGY / TEMPERATURE


def _finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteError(f"non-finite magnitude {x!r}")
    return x


@dataclass(frozen=True)
class Quantity:
    """A finite magnitude in SI base units tagged with its dimension."""

    magnitude: float
    dim: Dimension = DIMENSIONLESS

    def __post_init__(self):
        if isinstance(self.magnitude, Quantity):
            raise TypeError("magnitude must be a plain real number")
        object.__setattr__(self, "magnitude", _finite(self.magnitude))

    @staticmethod
    def _lift(other) -> Quantity:
        if isinstance(other, Quantity):
            return other
        if isinstance(other, Real):
            return Quantity(float(other))
        return NotImplemented

    def _same_dim(self, other: Quantity, what: str) -> None:
        if self.dim != other.dim:
            raise DimensionError(f"cannot {what} [{self.dim}] and [{other.dim}]")

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        self._same_dim(other, "add")
        return Quantity(self.magnitude + other.magnitude, self.dim)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        self._same_dim(other, "subtract")
        return Quantity(self.magnitude - other.magnitude, self.dim)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Quantity(self.magnitude * other.magnitude, self.dim * other.dim)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.magnitude == 0.0:
            raise ZeroDivisionError(f"division of [{self.dim}] by a zero [{other.dim}] quantity")
        return Quantity(self.magnitude / other.magnitude, self.dim / other.dim)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        try:
            mag = self.magnitude ** n
        except OverflowError as exc:
            raise NonFiniteError(str(exc)) from None
        return Quantity(mag, self.dim ** n)

    def __neg__(self):
        return Quantity(-self.magnitude, self.dim)

    def __pos__(self):
        return self

    def __abs__(self):
        return Quantity(abs(self.magnitude), self.dim)

    def sqrt(self) -> Quantity:
        if self.magnitude < 0:
            raise DomainError("square root of a negative quantity")
        return Quantity(math.sqrt(self.magnitude), self.dim.root(2))

    def _cmp(self, other, op):
        # a bare zero compares against any dimension
        if isinstance(other, Real) and not isinstance(other, bool) and other == 0:
            return op(self.magnitude, 0.0)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        self._same_dim(other, "compare")
        return op(self.magnitude, other.magnitude)

    def __lt__(self, other):
        return self._cmp(other, operator.lt)

    def __le__(self, other):
        return self._cmp(other, operator.le)

    def __gt__(self, other):
        return self._cmp(other, operator.gt)

    def __ge__(self, other):
        return self._cmp(other, operator.ge)

    def require(self, dim: Dimension, name: str = "value") -> Quantity:
        """Return ``self`` if it has dimension ``dim``, else raise."""
        if self.dim != dim:
            raise DimensionError(f"{name} must have dimension [{dim}], got [{self.dim}]")
        return self

    def to(self, dim: Dimension) -> float:
        """SI magnitude, after checking the dimension."""
        return self.require(dim).magnitude

    def __float__(self):
        if not self.dim.dimensionless:
            raise DimensionError(f"cannot convert [{self.dim}] to a plain float")
        return self.magnitude

    def __str__(self):
        if self.dim.dimensionless:
            return f"{self.magnitude:.9g}"
        return f"{self.magnitude:.9g} {self.dim}"


def quantity(magnitude: float, dim: Dimension = DIMENSIONLESS) -> Quantity:
    return Quantity(magnitude, dim)


_COMBINERS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def combine(a: Quantity, b: Quantity, op: str) -> Quantity:
    """Apply one of ``add``, ``sub``, ``mul``, ``div`` to two quantities."""
    try:
        fn = _COMBINERS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}; expected one of {sorted(_COMBINERS)}") from None
    return fn(a, b)


@dataclass(frozen=True)
class ConstantsTable:
    release: str
    G: Quantity
    c: Quantity
    hbar: Quantity
    e: Quantity
    k_B: Quantity
    k_e: Quantity
    m_e: Quantity
    m_He4: Quantity
    N_A: Quantity
    u: Quantity

    @property
    def alpha(self) -> float:
        """Fine-structure constant k_e e^2 / (hbar c)."""
        return float(self.k_e * self.e ** 2 / (self.hbar * self.c))


# CODATA 2018; c, h, e, k_B and N_A are exact in the 2019 SI.
_EPS0 = 8.8541878128e-12
_U = 1.66053906660e-27
_HE4_ATOMIC_MASS_U = 4.00260325413  # AME2020


@cache
def constants() -> ConstantsTable:
    return ConstantsTable(
        release="CODATA 2018",
        G=Quantity(6.67430e-11, LENGTH ** 3 / (MASS * TIME ** 2)),
        c=Quantity(299792458.0, VELOCITY),
        hbar=Quantity(6.62607015e-34 / (2.0 * math.pi), ENERGY * TIME),
        e=Quantity(1.602176634e-19, CHARGE),
        k_B=Quantity(1.380649e-23, ENTROPY),
        k_e=Quantity(1.0 / (4.0 * math.pi * _EPS0), FORCE * AREA / CHARGE ** 2),
        m_e=Quantity(9.1093837015e-31, MASS),
        m_He4=Quantity(_HE4_ATOMIC_MASS_U * _U, MASS),
        N_A=Quantity(6.02214076e23, DIMENSIONLESS / AMOUNT),
        u=Quantity(_U, MASS),
    )


# Unit symbols accepted in config files and CLI flags. Deliberately a closed
# table, not a general unit grammar.
_PREFIXES = {"p": 1e-12, "n": 1e-9, "u": 1e-6, "µ": 1e-6, "μ": 1e-6, "m": 1e-3,
             "c": 1e-2, "k": 1e3, "M": 1e6, "G": 1e9, "": 1.0}

_BASE_UNITS: dict[str, tuple[float, Dimension]] = {
    "g": (1e-3, MASS),
    "m": (1.0, LENGTH),
    "s": (1.0, TIME),
    "A": (1.0, CURRENT),
    "K": (1.0, TEMPERATURE),
    "W": (1.0, POWER),
    "J": (1.0, ENERGY),
    "Hz": (1.0, FREQUENCY),
    "T": (1.0, FLUX_DENSITY),
    "C": (1.0, CHARGE),
    "eV": (1.602176634e-19, ENERGY),
}

_SPECIAL_UNITS: dict[str, tuple[float, Dimension]] = {
    "1": (1.0, DIMENSIONLESS),
    "": (1.0, DIMENSIONLESS),
    "kg/mol": (1.0, MOLAR_MASS),
    "g/mol": (1e-3, MOLAR_MASS),
    "m^2": (1.0, AREA),
    "mm^2": (1e-6, AREA),
    "cm^2": (1e-4, AREA),
    "m/s^2": (1.0, ACCELERATION),
    "e": (1.602176634e-19, CHARGE),
    "u": (_U, MASS),
}


def unit(symbol: str) -> Quantity:
    """Return one unit of ``symbol`` as a Quantity (e.g. ``unit("mK")``)."""
    symbol = symbol.strip()
    if symbol in _SPECIAL_UNITS:
        scale, dim = _SPECIAL_UNITS[symbol]
        return Quantity(scale, dim)
    for base, (scale, dim) in _BASE_UNITS.items():
        if symbol.endswith(base):
            prefix = symbol[: len(symbol) - len(base)]
            if prefix in _PREFIXES:
                return Quantity(_PREFIXES[prefix] * scale, dim)
    raise ValueError(f"unknown unit {symbol!r}")


_QTY_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(.*?)\s*$")


def parse_quantity(text: str, expected: Dimension | None = None) -> Quantity:
    """Parse strings like ``"10mK"``, ``"1 T"`` or ``"1.9 ug"``."""
    m = _QTY_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse quantity {text!r}")
    q = float(m.group(1)) * unit(m.group(2))
    if expected is not None:
        q.require(expected, repr(text))
    return q
