"""Adiabatic radiation-reaction decay of circular orbits.

A test body on a circular orbit of radius ``r`` around a central mass ``M``
has orbital energy ``E = -G M m / (2 r)``. Radiated power (EM Larmor for
the charge, its gravitational analogue for the mass) drains that energy,
giving

    dr/dt = -(2 r^2 / (G M m)) * (P_EM + P_GR).

The ODE is integrated for the inward drift ``delta = r0 - r`` instead of
``r`` itself. For realistic charges the drift is dozens of orders of
magnitude smaller than the orbit, and a state variable that starts at zero
keeps it resolvable in double precision.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .radiation import RadiatingBody, quadrupolar_em_power, quadrupolar_gr_power
from .units import (ACCELERATION, CHARGE, ENERGY, LENGTH, MASS, TIME, VELOCITY,
                    DomainError, Quantity, constants)

__all__ = [
    "OrbitBody", "CentralBody", "DecayTrace", "Termination", "IntegrationError",
    "circular_orbit_acceleration", "decay_rate", "orbital_energy",
    "integrate_decay", "differential_drift", "em_decay_constant",
    "EARTH_MASS",
]

log = logging.getLogger(__name__)

EARTH_MASS = Quantity(5.9722e24, MASS)


class IntegrationError(RuntimeError):
    """The integrator could not continue (e.g. the step size underflowed)."""

    def __init__(self, message: str, t: float, r: float):
        super().__init__(f"{message} (last good state: t={t:.17g} s, r={r:.17g} m)")
        self.t = t
        self.r = r


@dataclass(frozen=True)
class OrbitBody:
    m: Quantity
    q: Quantity = Quantity(0.0, CHARGE)
    kappa: float = 1.0

    def __post_init__(self):
        self.m.require(MASS, "m")
        self.q.require(CHARGE, "q")
        if not self.m > 0:
            raise DomainError("orbiting mass must be positive")
        if not self.kappa > 0:
            raise DomainError("kappa must be positive")


@dataclass(frozen=True)
class CentralBody:
    M: Quantity = EARTH_MASS

    def __post_init__(self):
        self.M.require(MASS, "M")
        if self.M < 0:
            raise DomainError("central mass must be non-negative")


class Termination(str, enum.Enum):
    T_END = "reached t_end"
    R_MIN = "reached r_min"


@dataclass(frozen=True)
class DecayTrace:
    """Samples of a decaying orbit, all in SI units.

    ``drift`` holds ``r0 - r`` at full relative precision; ``r`` is derived
    from it.
    """

    t: np.ndarray
    r: np.ndarray
    drift: np.ndarray
    e_rad_em: np.ndarray
    e_rad_gr: np.ndarray
    termination: Termination
    r0: float

    def __len__(self):
        return len(self.t)

    @property
    def e_rad_total(self) -> np.ndarray:
        return self.e_rad_em + self.e_rad_gr

    def samples(self) -> list[tuple[Quantity, Quantity, Quantity, Quantity]]:
        return [(Quantity(t, TIME), Quantity(r, LENGTH), Quantity(em, ENERGY), Quantity(gr, ENERGY))
                for t, r, em, gr in zip(self.t, self.r, self.e_rad_em, self.e_rad_gr)]

    def rows(self) -> list[tuple[float, float, float, float]]:
        """Plain float rows in the fixed CSV column order t_s, r_m, E_rad_em_J, E_rad_gr_J."""
        return [(float(t), float(r), float(em), float(gr))
                for t, r, em, gr in zip(self.t, self.r, self.e_rad_em, self.e_rad_gr)]


def circular_orbit_acceleration(central: CentralBody, r: Quantity) -> Quantity:
    r.require(LENGTH, "r")
    if not r > 0:
        raise DomainError("orbital radius must be positive")
    return (constants().G * central.M / r ** 2).require(ACCELERATION)


def orbital_energy(body: OrbitBody, central: CentralBody, r: Quantity) -> Quantity:
    if not r > 0:
        raise DomainError("orbital radius must be positive")
    return (-constants().G * central.M * body.m / (2.0 * r)).require(ENERGY)


def _powers(body: OrbitBody, central: CentralBody, r: Quantity):
    a = circular_orbit_acceleration(central, r)
    rb = RadiatingBody(q=body.q, m=body.m, a=a, kappa=body.kappa)
    return quadrupolar_em_power(rb), quadrupolar_gr_power(rb)


def decay_rate(body: OrbitBody, central: CentralBody, r: Quantity,
               em: bool = True, gr: bool = True) -> Quantity:
    """dr/dt of the quasi-circular orbit; never positive.

    ``em`` / ``gr`` switch the two loss channels, for comparison against
    single-channel closed forms.
    """
    r.require(LENGTH, "r")
    if not r > 0:
        raise DomainError("orbital radius must be positive")
    p_em, p_gr = _powers(body, central, r)
    power = p_em * float(em) + p_gr * float(gr)
    C = constants()
    if central.M.magnitude == 0.0:
        return Quantity(0.0, VELOCITY)
    return (-2.0 * r ** 2 * power / (C.G * central.M * body.m)).require(VELOCITY)


def em_decay_constant(body: OrbitBody, central: CentralBody) -> Quantity:
    """``C`` in the EM-only law ``r(t)^3 = r0^3 - 3 C t``."""
    C = constants()
    return (4.0 * body.kappa * body.q ** 2 * C.G * central.M * C.k_e
            / (3.0 * body.m * C.c ** 3)).require(LENGTH ** 3 / TIME)


def _rate_coefficients(body: OrbitBody, central: CentralBody, em: bool, gr: bool):
    """(kr, k_em, k_gr) with dr/dt = -kr / r^2, P_em = k_em / r^4, P_gr = k_gr / r^4."""
    C = constants()
    GM = (C.G * central.M).magnitude
    pre = body.kappa * 2.0 / 3.0 * GM ** 2 / C.c.magnitude ** 3
    k_em = pre * (C.k_e * body.q ** 2).magnitude if em else 0.0
    k_gr = pre * (C.G * body.m ** 2).magnitude if gr else 0.0
    kr = 2.0 * (k_em + k_gr) / (GM * body.m.magnitude) if GM > 0 else 0.0
    return kr, k_em, k_gr


def integrate_decay(body: OrbitBody, central: CentralBody, r0: Quantity, t_end: Quantity,
                    r_min: Quantity, rel_tol: float = 1e-9, *, em: bool = True,
                    gr: bool = True, n_samples: int | None = None,
                    method: str = "DOP853") -> DecayTrace:
    """Integrate the orbit decay from ``r0`` until ``t_end`` or ``r_min``.

    Samples are the accepted integrator steps, or ``n_samples`` evenly spaced
    times when given (plus the terminal point if ``r_min`` is hit early).
    Radiated energies are integrated alongside ``r`` as independent states so
    the energy budget can be checked against the orbital energy change.
    """
    r0_m = r0.to(LENGTH)
    t_end_s = t_end.to(TIME)
    r_min_m = r_min.to(LENGTH)
    if not (r0_m > r_min_m > 0):
        raise DomainError("need r0 > r_min > 0")
    if not t_end_s > 0:
        raise DomainError("t_end must be positive")
    if not (0 < rel_tol <= 1e-3):
        raise DomainError("rel_tol must lie in (0, 1e-3]")

    kr, k_em, k_gr = _rate_coefficients(body, central, em, gr)

    def rhs(t, y):
        r = r0_m - y[0]
        r2 = r * r
        r4 = r2 * r2
        return [kr / r2, k_em / r4, k_gr / r4]

    def hit_floor(t, y):
        return (r0_m - y[0]) - r_min_m

    hit_floor.terminal = True
    hit_floor.direction = -1

    t_eval = None
    if n_samples is not None:
        if n_samples < 2:
            raise DomainError("n_samples must be >= 2")
        t_eval = np.linspace(0.0, t_end_s, n_samples)

    # states start at zero; scale atol to the first-order growth of each
    drift_scale = kr / r0_m ** 2 * t_end_s
    e_scale = (k_em + k_gr) / r0_m ** 4 * t_end_s
    atol = np.maximum(np.array([drift_scale, e_scale, e_scale]) * rel_tol * 1e-6, 1e-300)
    sol = solve_ivp(rhs, (0.0, t_end_s), [0.0, 0.0, 0.0], method=method, t_eval=t_eval,
                    events=hit_floor, rtol=rel_tol, atol=atol)
    if sol.status == -1:
        t_last = float(sol.t[-1]) if sol.t.size else 0.0
        r_last = float(r0_m - sol.y[0, -1]) if sol.t.size else r0_m
        raise IntegrationError(f"orbit integration failed: {sol.message}", t_last, r_last)

    t = sol.t
    y = sol.y
    termination = Termination.T_END
    if sol.status == 1 and sol.t_events[0].size:
        termination = Termination.R_MIN
        te = sol.t_events[0][-1]
        if t.size == 0 or t[-1] < te:
            t = np.append(t, te)
            y = np.column_stack([y, sol.y_events[0][-1]]) if y.size else sol.y_events[0][-1][:, None]
    drift = y[0]
    log.debug("decay trace: %d samples, %s", t.size, termination.value)
    return DecayTrace(t=t, r=r0_m - drift, drift=drift, e_rad_em=y[1], e_rad_gr=y[2],
                      termination=termination, r0=r0_m)


def differential_drift(charged: OrbitBody, neutral: OrbitBody, central: CentralBody,
                       r0: Quantity, t_end: Quantity, rel_tol: float = 1e-9,
                       n_samples: int = 201, r_min: Quantity | None = None
                       ) -> list[tuple[Quantity, Quantity]]:
    """Radial separation ``r_neutral - r_charged`` at common sample times.

    Both traces are sampled on the same time grid; if either stops at
    ``r_min`` the output ends at the shorter trace.
    """
    if neutral.q.magnitude != 0.0:
        raise DomainError("the neutral body must carry zero charge")
    if r_min is None:
        r_min = r0 * 1e-3
    kw = dict(rel_tol=rel_tol, n_samples=n_samples)
    tc = integrate_decay(charged, central, r0, t_end, r_min, **kw)
    tn = integrate_decay(neutral, central, r0, t_end, r_min, **kw)
    n = min(len(tc), len(tn))
    # difference of drifts keeps precision that r_n - r_c would lose
    dr = tc.drift[:n] - tn.drift[:n]
    return [(Quantity(t, TIME), Quantity(d, LENGTH)) for t, d in zip(tc.t[:n], dr)]
