"""Larmor-type radiated power for accelerated charges and masses.

The gravitational analogue of Larmor's formula replaces ``k_e q**2`` by
``G m**2``. A quadrupole prefactor ``kappa`` multiplies both channels when
the emitter is a co-moving charge/mass pair, so the GR/EM power ratio is
``G m**2 / (k_e q**2)`` regardless of ``kappa`` and of the acceleration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .units import (ACCELERATION, CHARGE, MASS, POWER, DomainError, Quantity,
                    UndefinedRatioError, constants)

__all__ = [
    "RadiatingBody", "PowerBreakdown", "larmor_em_power", "larmor_gr_power",
    "quadrupolar_em_power", "quadrupolar_gr_power", "power_breakdown",
    "power_ratio", "gr_negligible", "DEFAULT_NEGLIGIBLE_THRESHOLD",
]

DEFAULT_NEGLIGIBLE_THRESHOLD = 1e-3


@dataclass(frozen=True)
class RadiatingBody:
    q: Quantity
    m: Quantity
    a: Quantity
    kappa: float = 1.0

    def __post_init__(self):
        self.q.require(CHARGE, "q")
        self.m.require(MASS, "m")
        self.a.require(ACCELERATION, "a")
        if self.m < 0:
            raise DomainError("mass must be non-negative")
        if not self.kappa > 0:
            raise DomainError(f"kappa must be positive, got {self.kappa}")


@dataclass(frozen=True)
class PowerBreakdown:
    p_em: Quantity
    p_gr: Quantity
    ratio: float | None  # None when p_em == 0


def larmor_em_power(q: Quantity, a: Quantity) -> Quantity:
    """Dipole Larmor power, ``(2/3) k_e q^2 a^2 / c^3``."""
    C = constants()
    q.require(CHARGE, "q")
    a.require(ACCELERATION, "a")
    return (2.0 / 3.0 * C.k_e * q ** 2 * a ** 2 / C.c ** 3).require(POWER)


def larmor_gr_power(m: Quantity, a: Quantity) -> Quantity:
    """Gravitational analogue, ``(2/3) G m^2 a^2 / c^3``."""
    C = constants()
    m.require(MASS, "m")
    a.require(ACCELERATION, "a")
    return (2.0 / 3.0 * C.G * m ** 2 * a ** 2 / C.c ** 3).require(POWER)


def quadrupolar_em_power(body: RadiatingBody) -> Quantity:
    return body.kappa * larmor_em_power(body.q, body.a)


def quadrupolar_gr_power(body: RadiatingBody) -> Quantity:
    return body.kappa * larmor_gr_power(body.m, body.a)


def power_breakdown(body: RadiatingBody) -> PowerBreakdown:
    p_em = quadrupolar_em_power(body)
    p_gr = quadrupolar_gr_power(body)
    ratio = float(p_gr / p_em) if p_em.magnitude > 0 else None
    return PowerBreakdown(p_em, p_gr, ratio)


def power_ratio(q: Quantity, m: Quantity) -> float:
    """GR-to-EM radiated power ratio ``G m^2 / (k_e q^2)``.

    Also the Newton-to-Coulomb force ratio for two identical bodies.
    """
    C = constants()
    q.require(CHARGE, "q")
    m.require(MASS, "m")
    if q.magnitude == 0.0:
        raise UndefinedRatioError("power ratio is undefined for an uncharged body")
    return float(C.G * m ** 2 / (C.k_e * q ** 2))


def gr_negligible(q: Quantity, m: Quantity, kappa: float = 1.0,
                  threshold: float = DEFAULT_NEGLIGIBLE_THRESHOLD) -> bool:
    """True when ``kappa G m^2 / (k_e q^2)`` is below ``threshold``."""
    return kappa * power_ratio(q, m) < threshold
