"""Charged superfluid-helium drops as EM <-> GR transducers.

A drop is a levitated ball of superfluid helium carrying ``n`` electrons on
its surface. Its charge and its whole mass move rigidly together, so a pair
of drops radiates in the EM and GR channels with the power ratio
``G m^2 / (k_e q^2)``. This module collects the mass scales at which that
ratio becomes order one, the zero-phonon criterion that justifies rigid
motion, the quantized circulation around a vortex in the fluid, and a
reciprocal two-channel scattering model for a drop pair.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize

from .radiation import power_ratio
from .units import (AREA, CIRCULATION, ENERGY, FLUX_DENSITY,
                    FREQUENCY, LENGTH, MASS, MOLAR_MASS, TEMPERATURE,
                    DomainError, Quantity, UndefinedRatioError, constants,
                    unit)

__all__ = [
    "DropSpec", "TransducerPair", "ModeKind", "ChannelMode", "VortexLoop",
    "SingularityError", "planck_mass", "critical_mass", "force_ratio",
    "atom_count", "enhancement_factor", "cyclotron_gap",
    "zero_phonon_probability", "circulation", "circulation_quantum",
    "geometric_cross_section", "scatter_cross_section", "channel_fraction",
    "pair_coupling_ratio", "conversion_efficiency", "helium_drop_radius",
    "CROSS_SECTION_PRECISION", "SURFACE_ELECTRON_BINDING", "VORTEX_ELECTRON_BINDING",
    "LIQUID_HE4_DENSITY",
]

# Reported binding energies, expressed as temperatures. No formula here
# consumes them; they document why the electron stays put.
SURFACE_ELECTRON_BINDING = Quantity(8.0, TEMPERATURE)
VORTEX_ELECTRON_BINDING = Quantity(40.0, TEMPERATURE)

# Saturated liquid He-4 below 0.5 K.
LIQUID_HE4_DENSITY = Quantity(145.1, MASS / LENGTH ** 3)

CROSS_SECTION_PRECISION = "order-of-magnitude"


class SingularityError(DomainError):
    """A circulation contour passes through (or too near) the vortex core."""


def _helium_molar_mass() -> Quantity:
    C = constants()
    return C.m_He4 * C.N_A


@dataclass(frozen=True)
class DropSpec:
    """One charged superfluid drop.

    ``radius`` may be zero to describe a point particle such as a bare
    electron. The total charge is derived as ``n_electrons * e``; its sign
    never matters since only products of charges enter.
    """

    mass: Quantity
    radius: Quantity
    n_electrons: int = 1
    temperature: Quantity = field(default_factory=lambda: 10 * unit("mK"))
    b_field: Quantity = field(default_factory=lambda: unit("T"))
    molar_mass: Quantity = field(default_factory=_helium_molar_mass)
    kappa: float = 1.0

    def __post_init__(self):
        self.mass.require(MASS, "mass")
        self.radius.require(LENGTH, "radius")
        self.temperature.require(TEMPERATURE, "temperature")
        self.b_field.require(FLUX_DENSITY, "b_field")
        self.molar_mass.require(MOLAR_MASS, "molar_mass")
        if not self.mass > 0:
            raise DomainError("mass must be positive")
        if self.radius < 0:
            raise DomainError("radius must be non-negative")
        if not self.temperature > 0:
            raise DomainError("temperature must be positive")
        if not self.molar_mass > 0:
            raise DomainError("molar_mass must be positive")
        if isinstance(self.n_electrons, bool) or not isinstance(self.n_electrons, int) \
                or self.n_electrons < 1:
            raise DomainError(f"n_electrons must be an integer >= 1, got {self.n_electrons!r}")
        if not self.kappa > 0:
            raise DomainError("kappa must be positive")

    @property
    def charge(self) -> Quantity:
        return self.n_electrons * constants().e

    @classmethod
    def electron(cls, **kw) -> DropSpec:
        """A bare electron as a zero-radius 'drop'."""
        kw.setdefault("radius", Quantity(0.0, LENGTH))
        return cls(mass=constants().m_e, **kw)


@dataclass(frozen=True)
class TransducerPair:
    drop_a: DropSpec
    drop_b: DropSpec
    separation: Quantity
    frequency: Quantity

    def __post_init__(self):
        self.separation.require(LENGTH, "separation")
        self.frequency.require(FREQUENCY, "frequency")
        if not self.frequency > 0:
            raise DomainError("frequency must be positive")
        if not self.separation > self.drop_a.radius + self.drop_b.radius:
            raise DomainError("drops overlap: separation must exceed the sum of radii")

    @classmethod
    def symmetric(cls, drop: DropSpec, separation: Quantity, frequency: Quantity) -> TransducerPair:
        return cls(drop, drop, separation, frequency)


class ModeKind(str, enum.Enum):
    GR = "GR"
    EM = "EM"


@dataclass(frozen=True)
class ChannelMode:
    kind: ModeKind
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "kind", ModeKind(self.kind))

    def partner(self) -> ChannelMode:
        """The corresponding mode of the other radiation kind."""
        other = ModeKind.EM if self.kind is ModeKind.GR else ModeKind.GR
        return ChannelMode(other, self.label)


def helium_drop_radius(mass: Quantity, density: Quantity = LIQUID_HE4_DENSITY) -> Quantity:
    """Radius of a sphere of liquid helium with the given mass."""
    volume = mass.require(MASS, "mass") / density
    return Quantity((3.0 * volume.magnitude / (4.0 * math.pi)) ** (1.0 / 3.0), LENGTH)


# -- mass scales -------------------------------------------------------------

def planck_mass() -> Quantity:
    C = constants()
    return (C.hbar * C.c / C.G).sqrt().require(MASS)


def critical_mass(n_electrons: int = 1) -> Quantity:
    """Mass at which gravity balances Coulomb repulsion for ``n`` electrons per drop.

    The charge-to-mass ratio stays fixed, so the result scales linearly in
    ``n``: ``n * sqrt(alpha) * m_Planck``.
    """
    if isinstance(n_electrons, bool) or not isinstance(n_electrons, int) or n_electrons < 1:
        raise DomainError(f"n_electrons must be an integer >= 1, got {n_electrons!r}")
    return n_electrons * math.sqrt(constants().alpha) * planck_mass()


def force_ratio(drop_a: DropSpec, drop_b: DropSpec) -> float:
    """|F_gravity| / |F_coulomb| between two drops; independent of separation."""
    C = constants()
    qq = drop_a.charge * drop_b.charge
    if qq.magnitude == 0.0:
        raise UndefinedRatioError("force ratio is undefined for uncharged drops")
    return float(C.G * drop_a.mass * drop_b.mass / (C.k_e * qq))


def atom_count(drop: DropSpec) -> float:
    return float(drop.mass * constants().N_A / drop.molar_mass)


def enhancement_factor(drop: DropSpec) -> float:
    """Coherent GR-power enhancement, the squared number of co-moving atoms."""
    return atom_count(drop) ** 2


# -- zero-phonon response ----------------------------------------------------

def cyclotron_gap(b_field: Quantity) -> Quantity:
    C = constants()
    b_field.require(FLUX_DENSITY, "b_field")
    if not b_field > 0:
        raise DomainError("cyclotron gap needs a positive magnetic field")
    return (C.hbar * C.e * b_field / C.m_e).require(ENERGY)


def zero_phonon_probability(e_gap: Quantity, temperature: Quantity) -> float:
    """Probability that no internal excitation is thermally populated.

    ``1 - exp(-E_gap / k_B T)``. Evaluated with ``expm1`` so small gaps keep
    full relative precision; for ratios above ~37 the result rounds to 1.0.
    """
    e_gap.require(ENERGY, "e_gap")
    temperature.require(TEMPERATURE, "temperature")
    if not temperature > 0:
        raise DomainError("temperature must be positive")
    if e_gap < 0:
        raise DomainError("energy gap must be non-negative")
    x = float(e_gap / (constants().k_B * temperature))
    return -math.expm1(-x)


# -- quantized circulation ---------------------------------------------------

Point = tuple[float, float]


@dataclass(frozen=True)
class _Piece:
    point: Callable[[float], np.ndarray]
    tangent: Callable[[float], np.ndarray]
    smooth_closed: bool = False  # whole loop as one periodic piece


@dataclass(frozen=True)
class VortexLoop:
    """A closed planar contour around (or beside) a straight vortex line.

    Coordinates are in metres. ``vortex`` is the position of the vortex
    core in the plane of the loop. Build instances through :meth:`polygon`,
    :meth:`circle` or :meth:`ellipse`.
    """

    kind: str
    params: tuple
    vortex: Point = (0.0, 0.0)

    @classmethod
    def polygon(cls, vertices: Sequence[Point], vortex: Point = (0.0, 0.0)) -> VortexLoop:
        verts = tuple((float(x), float(y)) for x, y in vertices)
        if len(verts) < 4 or verts[0] != verts[-1]:
            raise DomainError("a polygon loop needs >= 3 distinct vertices and must be closed "
                              "(first vertex == last vertex)")
        loop = cls("polygon", verts, (float(vortex[0]), float(vortex[1])))
        loop._check_simple()
        return loop

    @classmethod
    def circle(cls, center: Point, radius: float, vortex: Point = (0.0, 0.0),
               start_angle: float = 0.0, clockwise: bool = False) -> VortexLoop:
        if not radius > 0:
            raise DomainError("circle radius must be positive")
        return cls("ellipse", (tuple(map(float, center)), float(radius), float(radius), 0.0,
                               float(start_angle), bool(clockwise)),
                   (float(vortex[0]), float(vortex[1])))

    @classmethod
    def ellipse(cls, center: Point, semi_major: float, semi_minor: float, angle: float = 0.0,
                vortex: Point = (0.0, 0.0), start_angle: float = 0.0,
                clockwise: bool = False) -> VortexLoop:
        if not (semi_major > 0 and semi_minor > 0):
            raise DomainError("ellipse semi-axes must be positive")
        return cls("ellipse", (tuple(map(float, center)), float(semi_major), float(semi_minor),
                               float(angle), float(start_angle), bool(clockwise)),
                   (float(vortex[0]), float(vortex[1])))

    def _check_simple(self) -> None:
        verts = np.asarray(self.params)
        segs = [(verts[i], verts[i + 1]) for i in range(len(verts) - 1)]
        n = len(segs)
        for i, j in combinations(range(n), 2):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_intersect(*segs[i], *segs[j]):
                raise DomainError("polygon loop is self-intersecting")

    def pieces(self) -> list[_Piece]:
        if self.kind == "polygon":
            verts = np.asarray(self.params)
            out = []
            for p0, p1 in zip(verts[:-1], verts[1:]):
                d = p1 - p0
                out.append(_Piece(lambda t, p0=p0, d=d: p0 + t * d, lambda t, d=d: d))
            return out
        (cx, cy), a, b, ang, t0, cw = self.params
        sgn = -1.0 if cw else 1.0
        ca, sa = math.cos(ang), math.sin(ang)

        def point(t):
            th = t0 + sgn * 2.0 * math.pi * t
            x, y = a * math.cos(th), b * math.sin(th)
            return np.array([cx + ca * x - sa * y, cy + sa * x + ca * y])

        def tangent(t):
            th = t0 + sgn * 2.0 * math.pi * t
            k = sgn * 2.0 * math.pi
            dx, dy = -a * k * math.sin(th), b * k * math.cos(th)
            return np.array([ca * dx - sa * dy, sa * dx + ca * dy])

        return [_Piece(point, tangent, smooth_closed=True)]

    def scale(self) -> float:
        if self.kind == "polygon":
            v = np.asarray(self.params)
            return float(np.hypot(*(v.max(axis=0) - v.min(axis=0))))
        return 2.0 * max(self.params[1], self.params[2])

    def distance_to_vortex(self) -> float:
        c = np.asarray(self.vortex)
        if self.kind == "polygon":
            v = np.asarray(self.params)
            return min(_point_segment_distance(c, p0, p1) for p0, p1 in zip(v[:-1], v[1:]))
        (cx, cy), a, b = self.params[0], self.params[1], self.params[2]
        if a == b:
            return abs(math.hypot(c[0] - cx, c[1] - cy) - a)
        piece = self.pieces()[0]
        ts = np.linspace(0.0, 1.0, 2049)
        d = np.array([np.linalg.norm(piece.point(t) - c) for t in ts])
        k = int(np.argmin(d))
        res = optimize.minimize_scalar(lambda t: float(np.linalg.norm(piece.point(t) - c)),
                                       bounds=(ts[max(k - 1, 0)], ts[min(k + 1, len(ts) - 1)]),
                                       method="bounded", options={"xatol": 1e-14})
        return float(min(res.fun, d[k]))


def _segments_intersect(p1, p2, p3, p4) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    def on_seg(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and \
            min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    d1, d2 = orient(p3, p4, p1), orient(p3, p4, p2)
    d3, d4 = orient(p1, p2, p3), orient(p1, p2, p4)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and 0 not in (d1, d2, d3, d4):
        return True
    return ((d1 == 0 and on_seg(p3, p4, p1)) or (d2 == 0 and on_seg(p3, p4, p2))
            or (d3 == 0 and on_seg(p1, p2, p3)) or (d4 == 0 and on_seg(p1, p2, p4)))


def _point_segment_distance(c, p0, p1) -> float:
    d = p1 - p0
    t = np.clip(np.dot(c - p0, d) / np.dot(d, d), 0.0, 1.0)
    return float(np.linalg.norm(p0 + t * d - c))


def circulation_quantum() -> Quantity:
    """One quantum of circulation, ``2 pi hbar / m_He4``."""
    C = constants()
    return (2.0 * math.pi * C.hbar / C.m_He4).require(CIRCULATION)


def circulation(loop: VortexLoop, min_distance: float = 1e-9) -> Quantity:
    """Line integral of the superfluid velocity of a singly-quantized vortex.

    The velocity field is the bare point-vortex profile
    ``v = hbar / (m_He4 rho)`` in the azimuthal direction; the integral is
    evaluated piecewise with adaptive quadrature. ``min_distance`` is the
    closest allowed approach to the core as a fraction of the loop size.
    """
    C = constants()
    if loop.distance_to_vortex() <= min_distance * loop.scale():
        raise SingularityError("contour passes through the vortex core")
    x0, y0 = loop.vortex

    def integrand(t, piece):
        x, y = piece.point(t)
        dx, dy = piece.tangent(t)
        rx, ry = x - x0, y - y0
        return (rx * dy - ry * dx) / (rx * rx + ry * ry)

    total = 0.0
    for piece in loop.pieces():
        val, _ = integrate.quad(integrand, 0.0, 1.0, args=(piece,), epsabs=1e-13,
                                epsrel=1e-13, limit=500)
        total += val
    # total is the swept angle (2 pi x winding number)
    return (total * C.hbar / C.m_He4).require(CIRCULATION)


# -- scattering ----------------------------------------------------------------

def geometric_cross_section(pair: TransducerPair) -> Quantity:
    """Hard-sphere estimate ``pi (R_a^2 + R_b^2)``; ``2 pi R^2`` for equal drops.

    Only an order-of-magnitude estimate (see ``CROSS_SECTION_PRECISION``).
    """
    ra, rb = pair.drop_a.radius, pair.drop_b.radius
    return (math.pi * (ra ** 2 + rb ** 2)).require(AREA)


def pair_coupling_ratio(pair: TransducerPair) -> float:
    """GR/EM coupling of the pair, ``G m_a m_b / (k_e q_a q_b)``."""
    return force_ratio(pair.drop_a, pair.drop_b)


def channel_fraction(rho: float, converts: bool) -> float:
    """Two-channel branching: ``rho/(1+rho)`` across kinds, ``1/(1+rho)`` within."""
    denom = 1.0 + rho
    return (rho if converts else 1.0) / denom


def scatter_cross_section(pair: TransducerPair, in_mode: ChannelMode,
                          out_mode: ChannelMode) -> Quantity:
    """Total cross-section from ``in_mode`` into the ``out_mode`` channel.

    The branching depends only on whether the radiation kind changes, so the
    result is symmetric under exchanging the two modes.
    """
    converts = in_mode.kind is not out_mode.kind
    return geometric_cross_section(pair) * channel_fraction(pair_coupling_ratio(pair), converts)


def _drop_efficiency(drop: DropSpec) -> float:
    rho = power_ratio(drop.charge, drop.mass)
    return rho / (1.0 + rho)


def conversion_efficiency(pair: TransducerPair) -> float:
    """Fraction of incident power converted to the other radiation kind.

    Per drop ``rho/(1+rho)`` with ``rho`` the GR/EM power ratio; an
    asymmetric pair takes the geometric mean of its two drops.
    """
    ea = _drop_efficiency(pair.drop_a)
    if pair.drop_b == pair.drop_a:
        return ea
    return math.sqrt(ea * _drop_efficiency(pair.drop_b))
