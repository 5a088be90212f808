"""Power ledger for a Hertz-like EM -> GR -> EM link.

A microwave source drives a transmitting drop pair, which converts a
fraction of the incident power into gravitational radiation. Faraday cages
around both ends block any direct EM path; the gravitational wave crosses
them unattenuated and reaches a receiving pair in the far field, which
converts it back into microwaves. The received power is compared against
the radiometer floor of the first amplifier stage.

Stage factors, in chain order:

    mode_overlap -> eta_tx -> Faraday cage (1 for GR) ->
    directivity * sigma_rx / (4 pi d^2) -> eta_rx
"""

from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .transducer import (DropSpec, TransducerPair, conversion_efficiency, cyclotron_gap,
                         geometric_cross_section, zero_phonon_probability)
from .units import (AREA, DIMENSIONLESS, FLUX_DENSITY, FREQUENCY, LENGTH, MASS, POWER,
                    TEMPERATURE, TIME, Dimension, DomainError, Quantity, constants, unit)

__all__ = [
    "PminVariant", "SourceSpec", "ReceiverSpec", "LinkReport", "LinkConfig",
    "SweepAxis", "SweepConfig", "SweepRow", "ConfigError", "gravity_wave_impedance",
    "min_detectable_power", "free_space_coupling", "hertz_link", "run_link",
    "sweep", "SWEEP_PARAMETERS",
]


class ConfigError(ValueError):
    """A link or sweep description is invalid."""


class PminVariant(str, enum.Enum):
    AS_PRINTED = "as-printed"
    PER_ROOT_BANDWIDTH = "per-root-bandwidth"


@dataclass(frozen=True)
class SourceSpec:
    power: Quantity
    frequency: Quantity
    mode_overlap: float = 1.0

    def __post_init__(self):
        self.power.require(POWER, "source power")
        self.frequency.require(FREQUENCY, "source frequency")
        if self.power < 0:
            raise DomainError("source power must be non-negative")
        if not self.frequency > 0:
            raise DomainError("source frequency must be positive")
        if not 0 < self.mode_overlap <= 1:
            raise DomainError("mode_overlap must lie in (0, 1]")


@dataclass(frozen=True)
class ReceiverSpec:
    t_noise: Quantity
    bandwidth: Quantity
    integration_time: Quantity
    pmin_variant: PminVariant = PminVariant.AS_PRINTED
    center_frequency: Quantity | None = None

    def __post_init__(self):
        self.t_noise.require(TEMPERATURE, "t_noise")
        self.bandwidth.require(FREQUENCY, "bandwidth")
        self.integration_time.require(TIME, "integration_time")
        object.__setattr__(self, "pmin_variant", PminVariant(self.pmin_variant))
        for name in ("t_noise", "bandwidth", "integration_time"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if self.center_frequency is not None:
            self.center_frequency.require(FREQUENCY, "center_frequency")


@dataclass(frozen=True)
class LinkReport:
    stages: list[tuple[str, Quantity]]
    factors: list[tuple[str, float]]
    p_received: Quantity
    p_min: Quantity
    p_min_variants: dict[str, Quantity]
    snr: float
    detectable: bool
    eta_tx: float
    eta_rx: float
    sigma_rx: Quantity
    coupling: float

    def summary(self) -> dict:
        return {
            "p_received_W": self.p_received.magnitude,
            "p_min_W": self.p_min.magnitude,
            "snr": self.snr,
            "detectable": self.detectable,
            "eta_tx": self.eta_tx,
            "eta_rx": self.eta_rx,
            "coupling": self.coupling,
        }


def gravity_wave_impedance() -> Quantity:
    """Free-space impedance for gravitational waves, ``16 pi G / c``."""
    C = constants()
    return 16.0 * math.pi * C.G / C.c


def min_detectable_power(rx: ReceiverSpec, variant: PminVariant | str | None = None) -> Quantity:
    """Radiometer floor after integrating for ``rx.integration_time``.

    ``as-printed``: ``k_B T dnu / sqrt(tau dnu)``.
    ``per-root-bandwidth``: ``k_B T / sqrt(tau dnu)`` per hertz of
    bandwidth, i.e. the as-printed value divided by ``dnu / (1 Hz)``.
    """
    variant = PminVariant(variant or rx.pmin_variant)
    C = constants()
    root = (rx.integration_time * rx.bandwidth).sqrt()
    if variant is PminVariant.AS_PRINTED:
        p = C.k_B * rx.t_noise * rx.bandwidth / root
    else:
        p = C.k_B * rx.t_noise * unit("Hz") / root
    return p.require(POWER)


def free_space_coupling(sigma_rx: Quantity, distance: Quantity, directivity: float = 1.0) -> float:
    """Fraction of radiated power intercepted by an aperture ``sigma_rx`` at ``distance``.

    Clamped at 1 so the spreading stage can never amplify.
    """
    sigma_rx.require(AREA, "sigma_rx")
    distance.require(LENGTH, "distance")
    if not distance > 0:
        raise DomainError("distance must be positive")
    if sigma_rx < 0:
        raise DomainError("sigma_rx must be non-negative")
    if not directivity > 0:
        raise DomainError("directivity must be positive")
    g = directivity * float(sigma_rx / (4.0 * math.pi * distance ** 2))
    return min(g, 1.0)


def hertz_link(src: SourceSpec, tx: TransducerPair, rx_pair: TransducerPair, distance: Quantity,
               rx: ReceiverSpec, directivity: float = 1.0) -> LinkReport:
    eta_tx = conversion_efficiency(tx)
    eta_rx = conversion_efficiency(rx_pair)
    sigma_rx = geometric_cross_section(rx_pair)
    coupling = free_space_coupling(sigma_rx, distance, directivity)
    factors = [
        ("mode overlap", float(src.mode_overlap)),
        ("EM->GR conversion (tx pair)", eta_tx),
        ("Faraday cage (GR passes)", 1.0),
        ("free-space spreading", coupling),
        ("GR->EM conversion (rx pair)", eta_rx),
    ]
    p = src.power
    stages = [("source", p)]
    for label, f in factors:
        p = p * f
        stages.append((label, p))
    p_min = min_detectable_power(rx)
    variants = {v.value: min_detectable_power(rx, v) for v in PminVariant}
    snr = float(p / p_min)
    return LinkReport(stages=stages, factors=factors, p_received=p, p_min=p_min,
                      p_min_variants=variants, snr=snr, detectable=snr >= 1.0,
                      eta_tx=eta_tx, eta_rx=eta_rx, sigma_rx=sigma_rx, coupling=coupling)


@dataclass(frozen=True)
class LinkConfig:
    """Everything ``hertz_link`` needs, plus free-form annotations."""

    source: SourceSpec
    tx_pair: TransducerPair
    rx_pair: TransducerPair
    distance: Quantity
    receiver: ReceiverSpec
    directivity: float = 1.0
    annotations: dict = field(default_factory=dict, compare=False)


def run_link(cfg: LinkConfig) -> LinkReport:
    return hertz_link(cfg.source, cfg.tx_pair, cfg.rx_pair, cfg.distance, cfg.receiver,
                      cfg.directivity)


# -- sweeps ------------------------------------------------------------------

def _all_drops(cfg: LinkConfig, **changes) -> LinkConfig:
    def pair(p: TransducerPair) -> TransducerPair:
        return replace(p, drop_a=replace(p.drop_a, **changes), drop_b=replace(p.drop_b, **changes))
    return replace(cfg, tx_pair=pair(cfg.tx_pair), rx_pair=pair(cfg.rx_pair))


def _both_pairs(cfg: LinkConfig, **changes) -> LinkConfig:
    return replace(cfg, tx_pair=replace(cfg.tx_pair, **changes),
                   rx_pair=replace(cfg.rx_pair, **changes))


# name -> (dimension, setter)
SWEEP_PARAMETERS: dict[str, tuple[Dimension, Callable[[LinkConfig, Quantity], LinkConfig]]] = {
    "drop_mass": (MASS, lambda c, v: _all_drops(c, mass=v)),
    "drop_radius": (LENGTH, lambda c, v: _all_drops(c, radius=v)),
    "temperature": (TEMPERATURE, lambda c, v: _all_drops(c, temperature=v)),
    "b_field": (FLUX_DENSITY, lambda c, v: _all_drops(c, b_field=v)),
    "separation": (LENGTH, lambda c, v: _both_pairs(c, separation=v)),
    "distance": (LENGTH, lambda c, v: replace(c, distance=v)),
    "source_power": (POWER, lambda c, v: replace(c, source=replace(c.source, power=v))),
    "t_noise": (TEMPERATURE, lambda c, v: replace(c, receiver=replace(c.receiver, t_noise=v))),
    "bandwidth": (FREQUENCY, lambda c, v: replace(c, receiver=replace(c.receiver, bandwidth=v))),
    "integration_time": (TIME, lambda c, v: replace(
        c, receiver=replace(c.receiver, integration_time=v))),
    "mode_overlap": (DIMENSIONLESS, lambda c, v: replace(
        c, source=replace(c.source, mode_overlap=float(v)))),
    "directivity": (DIMENSIONLESS, lambda c, v: replace(c, directivity=float(v))),
}


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: Quantity
    stop: Quantity
    steps: int = 1
    scale: str = "linear"

    def __post_init__(self):
        if self.name not in SWEEP_PARAMETERS:
            raise ConfigError(f"unknown sweep parameter {self.name!r}; "
                              f"expected one of {sorted(SWEEP_PARAMETERS)}")
        dim = SWEEP_PARAMETERS[self.name][0]
        for end in (self.start, self.stop):
            if end.dim != dim:
                raise ConfigError(f"sweep parameter {self.name!r} needs dimension [{dim}], "
                                  f"got [{end.dim}]")
        if isinstance(self.steps, bool) or not isinstance(self.steps, int) or self.steps < 1:
            raise ConfigError(f"sweep parameter {self.name!r}: steps must be an integer >= 1")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"sweep parameter {self.name!r}: scale must be 'linear' or 'log'")
        if self.scale == "log" and not (self.start > 0 and self.stop > 0):
            raise ConfigError(f"sweep parameter {self.name!r}: log scale needs positive bounds")

    def values(self) -> list[Quantity]:
        a, b = self.start.magnitude, self.stop.magnitude
        if self.steps == 1:
            grid = np.array([a])
        elif self.scale == "log":
            grid = np.geomspace(a, b, self.steps)
        else:
            grid = np.linspace(a, b, self.steps)
        return [Quantity(float(x), self.start.dim) for x in grid]


@dataclass(frozen=True)
class SweepConfig:
    base: LinkConfig
    axes: tuple[SweepAxis, ...]

    def __post_init__(self):
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ConfigError("each sweep parameter may appear only once")


@dataclass(frozen=True)
class SweepRow:
    params: dict[str, Quantity]
    report: LinkReport
    p_zero_phonon: float

    def summary(self) -> dict:
        out = {name: q.magnitude for name, q in self.params.items()}
        out.update(self.report.summary())
        out["p_zero_phonon_min"] = self.p_zero_phonon
        return out


def _worst_zero_phonon(cfg: LinkConfig) -> float:
    drops: list[DropSpec] = [cfg.tx_pair.drop_a, cfg.tx_pair.drop_b,
                             cfg.rx_pair.drop_a, cfg.rx_pair.drop_b]
    return min(zero_phonon_probability(cyclotron_gap(d.b_field), d.temperature) for d in drops)


def _evaluate(cfg: SweepConfig, point: tuple[Quantity, ...]) -> SweepRow:
    link = cfg.base
    for axis, value in zip(cfg.axes, point):
        try:
            link = SWEEP_PARAMETERS[axis.name][1](link, value)
        except DomainError as exc:
            raise ConfigError(f"sweep point {axis.name}={value}: {exc}") from exc
    params = {axis.name: value for axis, value in zip(cfg.axes, point)}
    return SweepRow(params, run_link(link), _worst_zero_phonon(link))


def sweep(cfg: SweepConfig, max_workers: int | None = None) -> list[SweepRow]:
    """Evaluate the link on the full grid of ``cfg.axes``.

    Rows come back in lexicographic order of the axis indices, first axis
    slowest, whether or not evaluation runs in a thread pool.
    """
    points = list(itertools.product(*(axis.values() for axis in cfg.axes)))
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(lambda p: _evaluate(cfg, p), points))
    return [_evaluate(cfg, p) for p in points]
