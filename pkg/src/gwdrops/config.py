"""JSON run configurations with explicit units on every numeric field.

Each physical value is written as ``{"value": 1.9, "unit": "ug"}``. The
file is first checked against ``schemas/config.schema.json``; each quantity
is then converted with its expected dimension. Errors name the field, the
expected unit and the line in the file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .linkbudget import (ConfigError, LinkConfig, ReceiverSpec, SourceSpec, SweepAxis,
                         SweepConfig, SWEEP_PARAMETERS)
from .orbitsim import EARTH_MASS, CentralBody, OrbitBody
from .transducer import DropSpec, TransducerPair
from .units import (CHARGE, FLUX_DENSITY, FREQUENCY, LENGTH, MASS, MOLAR_MASS, POWER,
                    TEMPERATURE, TIME, Dimension, DimensionError, DomainError, Quantity,
                    unit)

__all__ = ["RunConfig", "OrbitConfig", "load_config", "parse_config", "scenario_path",
           "schema", "ConfigError"]

_CANONICAL = {
    MASS: "kg", LENGTH: "m", TIME: "s", TEMPERATURE: "K", POWER: "W", FREQUENCY: "Hz",
    FLUX_DENSITY: "T", CHARGE: "C", MOLAR_MASS: "kg/mol",
}


def schema(name: str = "config") -> dict:
    text = resources.files("gwdrops").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


def scenario_path(name: str) -> Path:
    """Filesystem path of a shipped scenario, e.g. ``scenario_path("ybco-12ghz")``."""
    ref = resources.files("gwdrops").joinpath(f"scenarios/{name}.json")
    if not ref.is_file():
        raise FileNotFoundError(f"no shipped scenario named {name!r}")
    return Path(str(ref))


@dataclass(frozen=True)
class OrbitConfig:
    body: OrbitBody
    central: CentralBody
    r0: Quantity
    t_end: Quantity
    r_min: Quantity
    rel_tol: float = 1e-9
    em: bool = True
    gr: bool = True
    samples: int | None = None


@dataclass(frozen=True)
class RunConfig:
    description: str = ""
    drop: DropSpec | None = None
    link: LinkConfig | None = None
    sweep: SweepConfig | None = None
    orbit: OrbitConfig | None = None
    annotations: dict = field(default_factory=dict)


def _line_of(text: str, path) -> int:
    """1-based line of the value at ``path`` (keys / indices) inside ``text``."""
    dec = json.JSONDecoder()

    def skip_ws(i):
        while i < len(text) and text[i] in " \t\r\n":
            i += 1
        return i

    pos = skip_ws(0)
    for key in path:
        if pos >= len(text):
            break
        if text[pos] == "{":
            i = skip_ws(pos + 1)
            found = False
            while i < len(text) and text[i] != "}":
                k, i = json.decoder.scanstring(text, i + 1)
                i = skip_ws(skip_ws(i) + 1)  # past ':'
                if k == key:
                    pos, found = i, True
                    break
                _, i = dec.raw_decode(text, i)
                i = skip_ws(i)
                if text[i] == ",":
                    i = skip_ws(i + 1)
            if not found:
                break
        elif text[pos] == "[":
            i = skip_ws(pos + 1)
            for _ in range(int(key)):
                _, i = dec.raw_decode(text, i)
                i = skip_ws(i)
                if text[i] == ",":
                    i = skip_ws(i + 1)
            pos = i
        else:
            break
    return text.count("\n", 0, pos) + 1


class _Reader:
    def __init__(self, text: str, source: str):
        self.text = text
        self.origin = source

    def fail(self, path, msg) -> ConfigError:
        where = ".".join(str(p) for p in path) or "<root>"
        return ConfigError(f"{self.origin}:{_line_of(self.text, path)}: {where}: {msg}")

    def qty(self, node: dict, path: tuple, dim: Dimension, positive=False,
            nonneg=False) -> Quantity:
        expected = _CANONICAL.get(dim, str(dim))
        try:
            q = node["value"] * unit(node["unit"])
        except ValueError as exc:
            raise self.fail(path, f"{exc}; expected a unit convertible to {expected!r}") from None
        if q.dim != dim:
            raise self.fail(path, f"unit {node['unit']!r} has dimension [{q.dim}], "
                                  f"expected a unit convertible to {expected!r}")
        if positive and not q.magnitude > 0:
            raise self.fail(path, f"must be positive (got {node['value']} {node['unit']}, "
                                  f"expected unit {expected!r})")
        if nonneg and q.magnitude < 0:
            raise self.fail(path, f"must be non-negative (got {node['value']} {node['unit']}, "
                                  f"expected unit {expected!r})")
        return q

    def build(self, path, ctor, **kw):
        try:
            return ctor(**kw)
        except (DomainError, DimensionError) as exc:
            raise self.fail(path, str(exc)) from None

    def drop(self, node: dict, path: tuple) -> DropSpec:
        kw = {
            "mass": self.qty(node["mass"], path + ("mass",), MASS, positive=True),
            "radius": self.qty(node["radius"], path + ("radius",), LENGTH, nonneg=True),
        }
        if "n_electrons" in node:
            kw["n_electrons"] = node["n_electrons"]
        if "temperature" in node:
            kw["temperature"] = self.qty(node["temperature"], path + ("temperature",),
                                         TEMPERATURE, positive=True)
        if "b_field" in node:
            kw["b_field"] = self.qty(node["b_field"], path + ("b_field",), FLUX_DENSITY)
        if "molar_mass" in node:
            kw["molar_mass"] = self.qty(node["molar_mass"], path + ("molar_mass",), MOLAR_MASS,
                                        positive=True)
        if "kappa" in node:
            kw["kappa"] = float(node["kappa"])
        return self.build(path, DropSpec, **kw)

    def pair(self, node: dict, path: tuple) -> TransducerPair:
        a = self.drop(node["drop_a"], path + ("drop_a",))
        b = self.drop(node["drop_b"], path + ("drop_b",)) if "drop_b" in node else a
        return self.build(path, TransducerPair, drop_a=a, drop_b=b,
                          separation=self.qty(node["separation"], path + ("separation",), LENGTH,
                                              positive=True),
                          frequency=self.qty(node["frequency"], path + ("frequency",), FREQUENCY,
                                             positive=True))

    def source(self, node: dict, path: tuple) -> SourceSpec:
        return self.build(path, SourceSpec,
                          power=self.qty(node["power"], path + ("power",), POWER, nonneg=True),
                          frequency=self.qty(node["frequency"], path + ("frequency",), FREQUENCY,
                                             positive=True),
                          mode_overlap=float(node.get("mode_overlap", 1.0)))

    def receiver(self, node: dict, path: tuple) -> ReceiverSpec:
        kw = {
            "t_noise": self.qty(node["t_noise"], path + ("t_noise",), TEMPERATURE, positive=True),
            "bandwidth": self.qty(node["bandwidth"], path + ("bandwidth",), FREQUENCY,
                                  positive=True),
            "integration_time": self.qty(node["integration_time"], path + ("integration_time",),
                                         TIME, positive=True),
            "pmin_variant": node.get("pmin_variant", "as-printed"),
        }
        if "center_frequency" in node:
            kw["center_frequency"] = self.qty(node["center_frequency"],
                                              path + ("center_frequency",), FREQUENCY,
                                              positive=True)
        return self.build(path, ReceiverSpec, **kw)

    def axis(self, node: dict, path: tuple) -> SweepAxis:
        name = node["name"]
        if name not in SWEEP_PARAMETERS:
            raise self.fail(path + ("name",), f"unknown sweep parameter {name!r}; expected one "
                                              f"of {sorted(SWEEP_PARAMETERS)}")
        dim = SWEEP_PARAMETERS[name][0]
        start = self.qty(node["start"], path + ("start",), dim)
        stop = self.qty(node["stop"], path + ("stop",), dim) if "stop" in node else start
        try:
            return SweepAxis(name, start, stop, node.get("steps", 1), node.get("scale", "linear"))
        except ConfigError as exc:
            raise self.fail(path, str(exc)) from None

    def orbit(self, node: dict, path: tuple) -> OrbitConfig:
        body = self.build(path, OrbitBody,
                          m=self.qty(node["mass"], path + ("mass",), MASS, positive=True),
                          q=(self.qty(node["charge"], path + ("charge",), CHARGE)
                             if "charge" in node else Quantity(0.0, CHARGE)),
                          kappa=float(node.get("kappa", 1.0)))
        central = self.build(path, CentralBody,
                             M=(self.qty(node["central_mass"], path + ("central_mass",), MASS,
                                         nonneg=True)
                                if "central_mass" in node else EARTH_MASS))
        r0 = self.qty(node["r0"], path + ("r0",), LENGTH, positive=True)
        r_min = (self.qty(node["r_min"], path + ("r_min",), LENGTH, positive=True)
                 if "r_min" in node else r0 * 1e-3)
        return OrbitConfig(body=body, central=central, r0=r0,
                           t_end=self.qty(node["t_end"], path + ("t_end",), TIME, positive=True),
                           r_min=r_min, rel_tol=float(node.get("rel_tol", 1e-9)),
                           em=node.get("em", True), gr=node.get("gr", True),
                           samples=node.get("samples"))


_LINK_KEYS = ("source", "tx_pair", "rx_pair", "distance", "receiver")


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    validator = jsonschema.Draft202012Validator(schema("config"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    rd = _Reader(text, source)
    if errors:
        err = errors[0]
        raise rd.fail(tuple(err.absolute_path), f"schema violation: {err.message}")

    drop = rd.drop(doc["drop"], ("drop",)) if "drop" in doc else None
    link = None
    present = [k for k in _LINK_KEYS if k in doc]
    if present:
        missing = [k for k in _LINK_KEYS if k not in doc]
        if missing:
            raise rd.fail((), f"link description incomplete, missing {missing}")
        distance = rd.qty(doc["distance"], ("distance",), LENGTH, positive=True)
        link = LinkConfig(source=rd.source(doc["source"], ("source",)),
                          tx_pair=rd.pair(doc["tx_pair"], ("tx_pair",)),
                          rx_pair=rd.pair(doc["rx_pair"], ("rx_pair",)),
                          distance=distance,
                          receiver=rd.receiver(doc["receiver"], ("receiver",)),
                          directivity=float(doc.get("directivity", 1.0)),
                          annotations=doc.get("annotations", {}))
    sweep = None
    if "sweep" in doc:
        if link is None:
            raise rd.fail(("sweep",), "a sweep needs a complete link description to vary")
        axes = tuple(rd.axis(ax, ("sweep", "axes", i)) for i, ax in enumerate(doc["sweep"]["axes"]))
        try:
            sweep = SweepConfig(link, axes)
        except ConfigError as exc:
            raise rd.fail(("sweep",), str(exc)) from None
    orbit = rd.orbit(doc["orbit"], ("orbit",)) if "orbit" in doc else None
    return RunConfig(description=doc.get("description", ""), drop=drop, link=link, sweep=sweep,
                     orbit=orbit, annotations=doc.get("annotations", {}))


def load_config(path) -> RunConfig:
    """Read and validate a JSON run configuration.

    Raises ``FileNotFoundError`` for a missing file and :class:`ConfigError`
    for anything malformed.
    """
    path = Path(path)
    text = path.read_text()
    return parse_config(text, str(path))
