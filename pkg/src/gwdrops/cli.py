"""Command-line front end.

    gwdrops constants
    gwdrops ratio --q e --m electron
    gwdrops critical-mass --electrons 1
    gwdrops drop --mass 1.9ug --radius 0.145mm --temp 10mK --b-field 1T
    gwdrops orbit --config orbit.json --format csv --out trace.csv
    gwdrops link --scenario ybco-12ghz --pmin-variant root-bw
    gwdrops sweep --scenario ybco-12ghz --format csv --out sweep.csv

Exit codes: 0 success, 2 bad arguments (including a missing config file),
3 configuration or domain error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .config import ConfigError, RunConfig, load_config, scenario_path
from .linkbudget import LinkReport, PminVariant, run_link, sweep
from .orbitsim import (EARTH_MASS, CentralBody, IntegrationError, OrbitBody, integrate_decay)
from .radiation import DEFAULT_NEGLIGIBLE_THRESHOLD, gr_negligible, power_ratio
from .transducer import (CROSS_SECTION_PRECISION, DropSpec, TransducerPair, atom_count,
                         conversion_efficiency, critical_mass, cyclotron_gap,
                         enhancement_factor, geometric_cross_section, planck_mass,
                         zero_phonon_probability)
from .units import (CHARGE, FLUX_DENSITY, LENGTH, MASS, TEMPERATURE, TIME, Dimension,
                    DimensionError, DomainError, NonFiniteError, Quantity, constants,
                    parse_quantity, unit)

EXIT_OK, EXIT_USAGE, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3, 4

_PMIN_FLAGS = {"printed": PminVariant.AS_PRINTED, "root-bw": PminVariant.PER_ROOT_BANDWIDTH}


class UsageError(Exception):
    pass


# -- output formatting -------------------------------------------------------

def _num(x, digits: int) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if x == 0.0:
        return "0.0"
    s = format(x, f".{digits}g")
    if "e" not in s and "." not in s and "inf" not in s and "nan" not in s:
        s += ".0"
    return s


def dumps_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats at 17 significant digits and insertion-ordered keys."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps_json(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps_json(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, int)) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise NonFiniteError(f"cannot serialise {obj!r}")
        return _num(obj, 17)
    return json.dumps(str(obj))


def _table(result: dict) -> str:
    out = []
    if "rows" in result and "columns" in result:
        cols = result["columns"]
        rows = [[_num(v, 9) if not isinstance(v, str) else v for v in r] for r in result["rows"]]
        widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c)
                  for i, c in enumerate(cols)]
        for k, v in result.items():
            if k not in ("rows", "columns") and not isinstance(v, (dict, list)):
                out.append(f"# {k}: {v}")
        out.append("  ".join(c.rjust(w) for c, w in zip(cols, widths)))
        out.extend("  ".join(x.rjust(w) for x, w in zip(r, widths)) for r in rows)
        return "\n".join(out) + "\n"

    def walk(d, prefix=""):
        for k, v in d.items():
            key = f"{prefix}{k}"
            if isinstance(v, dict):
                walk(v, key + ".")
            elif isinstance(v, list) and v and isinstance(v[0], dict):
                for i, item in enumerate(v):
                    walk(item, f"{key}[{i}].")
            elif isinstance(v, float):
                out.append(f"{key:<40} {_num(v, 9)}")
            else:
                out.append(f"{key:<40} {v}")
    walk(result)
    return "\n".join(out) + "\n"


def _csv(result: dict, provenance: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# artifact: gwdrops {provenance['version']}\n")
    buf.write(f"# constants_release: {provenance['constants_release']}\n")
    buf.write(f"# command_line: {' '.join(provenance['command_line'])}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(result["columns"])
    for row in result["rows"]:
        w.writerow([_num(v, 17) if isinstance(v, (int, float)) else v for v in row])
    return buf.getvalue()


# -- argument parsing ----------------------------------------------------------

def _qty_arg(dim: Dimension):
    def parse(text: str) -> Quantity:
        try:
            return parse_quantity(text, dim)
        except (ValueError, DimensionError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    parse.__name__ = f"quantity[{dim}]"
    return parse


def _charge_arg(text: str) -> Quantity:
    t = text.strip()
    e = constants().e
    if t == "e":
        return e
    if t.endswith("e") and not t.endswith("eV"):
        try:
            return float(t[:-1]) * e
        except ValueError:
            pass
    return _qty_arg(CHARGE)(t)


def _mass_arg(text: str) -> Quantity:
    named = {"electron": lambda: constants().m_e, "planck": planck_mass,
             "critical": lambda: critical_mass(1), "he4": lambda: constants().m_He4}
    t = text.strip().lower()
    if t in named:
        return named[t]()
    return _qty_arg(MASS)(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "table"),
                        help="output format (default: table on stdout, json with --out)")

    p = argparse.ArgumentParser(prog="gwdrops", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"gwdrops {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("constants", parents=[common], help="print the pinned constants table")

    s = sub.add_parser("ratio", parents=[common], help="GR/EM radiated power ratio")
    s.add_argument("--q", type=_charge_arg, default="e", help="charge: e, 3e, or e.g. '1e-18C'")
    s.add_argument("--m", type=_mass_arg, default="electron",
                   help="mass: electron, planck, critical, he4, or e.g. '1.9ug'")
    s.add_argument("--kappa", type=float, default=1.0)
    s.add_argument("--threshold", type=float, default=DEFAULT_NEGLIGIBLE_THRESHOLD)

    s = sub.add_parser("critical-mass", parents=[common], help="critical drop mass")
    s.add_argument("--electrons", type=int, default=1)

    s = sub.add_parser("drop", parents=[common], help="properties of one drop")
    s.add_argument("--config", metavar="PATH")
    s.add_argument("--mass", type=_mass_arg)
    s.add_argument("--radius", type=_qty_arg(LENGTH))
    s.add_argument("--electrons", type=int, default=1)
    s.add_argument("--temp", type=_qty_arg(TEMPERATURE))
    s.add_argument("--b-field", type=_qty_arg(FLUX_DENSITY))

    s = sub.add_parser("orbit", parents=[common], help="radiation-reaction orbit decay trace")
    s.add_argument("--config", metavar="PATH")
    s.add_argument("--mass", type=_mass_arg)
    s.add_argument("--charge", type=_charge_arg)
    s.add_argument("--kappa", type=float, default=1.0)
    s.add_argument("--central-mass", type=_qty_arg(MASS))
    s.add_argument("--r0", type=_qty_arg(LENGTH))
    s.add_argument("--t-end", type=_qty_arg(TIME))
    s.add_argument("--r-min", type=_qty_arg(LENGTH))
    s.add_argument("--tol", type=float, help="relative tolerance of the integrator")
    s.add_argument("--samples", type=int)
    s.add_argument("--no-gr", action="store_true", help="disable the GR loss channel")
    s.add_argument("--no-em", action="store_true", help="disable the EM loss channel")

    for name, helptext in (("link", "Hertz-like link budget"), ("sweep", "link budget sweep")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        g = s.add_mutually_exclusive_group(required=True)
        g.add_argument("--config", metavar="PATH")
        g.add_argument("--scenario", metavar="NAME", help="shipped scenario, e.g. ybco-12ghz")
        s.add_argument("--pmin-variant", choices=tuple(_PMIN_FLAGS))
    return p


# -- commands ------------------------------------------------------------------

def _q(q: Quantity, unit_name: str) -> dict:
    return {"value": q.magnitude, "unit": unit_name}


def _load(args) -> RunConfig:
    if getattr(args, "scenario", None):
        try:
            path = scenario_path(args.scenario)
        except FileNotFoundError as exc:
            raise UsageError(str(exc)) from None
    else:
        path = Path(args.config)
    if not path.is_file():
        raise UsageError(f"config file not found: {path}")
    return load_config(path)


def cmd_constants(args) -> dict:
    C = constants()
    units = {"G": "m^3 kg^-1 s^-2", "c": "m s^-1", "hbar": "J s", "e": "C", "k_B": "J K^-1",
             "k_e": "N m^2 C^-2", "m_e": "kg", "m_He4": "kg", "N_A": "mol^-1", "u": "kg"}
    return {
        "release": C.release,
        "constants": {k: _q(getattr(C, k), u) for k, u in units.items()},
        "alpha": C.alpha,
        "inverse_alpha": 1.0 / C.alpha,
    }


def cmd_ratio(args) -> dict:
    rho = power_ratio(args.q, args.m)
    return {
        "q_C": args.q.magnitude,
        "m_kg": args.m.magnitude,
        "kappa": args.kappa,
        "power_ratio": rho,
        "power_ratio_display": f"{rho:.2g}",
        "gr_negligible": gr_negligible(args.q, args.m, args.kappa, args.threshold),
        "threshold": args.threshold,
    }


def cmd_critical_mass(args) -> dict:
    m = critical_mass(args.electrons)
    ug = m.magnitude / unit("ug").magnitude
    return {
        "n_electrons": args.electrons,
        "critical_mass_kg": m.magnitude,
        "critical_mass_ug": ug,
        "critical_mass_display": f"{ug:.2g} μg",
        "power_ratio_at_critical_mass": power_ratio(args.electrons * constants().e, m),
    }


def cmd_drop(args) -> dict:
    if args.config:
        cfg = _load(args)
        if cfg.drop is None:
            raise ConfigError(f"{args.config}: no 'drop' section")
        drop = cfg.drop
    else:
        if args.mass is None or args.radius is None:
            raise UsageError("drop needs --config or both --mass and --radius")
        kw = {}
        if args.temp is not None:
            kw["temperature"] = args.temp
        if args.b_field is not None:
            kw["b_field"] = args.b_field
        drop = DropSpec(mass=args.mass, radius=args.radius, n_electrons=args.electrons, **kw)
    gap = cyclotron_gap(drop.b_field)
    # a symmetric pair with a nominal non-overlapping separation
    sep = drop.radius * 4 if drop.radius.magnitude > 0 else Quantity(1.0, LENGTH)
    pair = TransducerPair.symmetric(drop, sep, unit("GHz"))
    return {
        "mass_kg": drop.mass.magnitude,
        "radius_m": drop.radius.magnitude,
        "n_electrons": drop.n_electrons,
        "charge_C": drop.charge.magnitude,
        "power_ratio": power_ratio(drop.charge, drop.mass),
        "atom_count": atom_count(drop),
        "enhancement_factor": enhancement_factor(drop),
        "cyclotron_gap_J": gap.magnitude,
        "cyclotron_gap_K": float(gap / constants().k_B / unit("K")),
        "zero_phonon_probability": zero_phonon_probability(gap, drop.temperature),
        "conversion_efficiency": conversion_efficiency(pair),
        "geometric_cross_section_m2": geometric_cross_section(pair).magnitude,
        "cross_section_precision": CROSS_SECTION_PRECISION,
    }


def cmd_orbit(args) -> dict:
    if args.config:
        cfg = _load(args)
        if cfg.orbit is None:
            raise ConfigError(f"{args.config}: no 'orbit' section")
        o = cfg.orbit
        body, central, r0, t_end, r_min = o.body, o.central, o.r0, o.t_end, o.r_min
        rel_tol, em, gr, samples = o.rel_tol, o.em, o.gr, o.samples
    else:
        if args.mass is None or args.r0 is None or args.t_end is None:
            raise UsageError("orbit needs --config or --mass, --r0 and --t-end")
        body = OrbitBody(m=args.mass, q=args.charge if args.charge is not None
                         else Quantity(0.0, CHARGE), kappa=args.kappa)
        central = CentralBody(args.central_mass if args.central_mass is not None else EARTH_MASS)
        r0, t_end = args.r0, args.t_end
        r_min = args.r_min if args.r_min is not None else r0 * 1e-3
        rel_tol, em, gr, samples = 1e-9, True, True, args.samples
    if args.tol is not None:
        rel_tol = args.tol
    em = em and not args.no_em
    gr = gr and not args.no_gr
    trace = integrate_decay(body, central, r0, t_end, r_min, rel_tol, em=em, gr=gr,
                            n_samples=samples)
    return {
        "termination": trace.termination.value,
        "rel_tol": rel_tol,
        "channels": [c for c, on in (("em", em), ("gr", gr)) if on],
        "columns": ["t_s", "r_m", "E_rad_em_J", "E_rad_gr_J"],
        "rows": [list(r) for r in trace.rows()],
    }


def _link_result(rep: LinkReport, variant: PminVariant, annotations: dict) -> dict:
    stages = [{"label": "source", "factor": 1.0, "power_W": rep.stages[0][1].magnitude}]
    for (label, f), (_, p) in zip(rep.factors, rep.stages[1:]):
        stages.append({"label": label, "factor": f, "power_W": p.magnitude})
    return {
        "stages": stages,
        "p_received_W": rep.p_received.magnitude,
        "p_min_W": rep.p_min.magnitude,
        "pmin_variant": variant.value,
        "p_min_variants_W": {k: v.magnitude for k, v in rep.p_min_variants.items()},
        "snr": rep.snr,
        "detectable": rep.detectable,
        "eta_tx": rep.eta_tx,
        "eta_rx": rep.eta_rx,
        "sigma_rx_m2": rep.sigma_rx.magnitude,
        "cross_section_precision": CROSS_SECTION_PRECISION,
        "coupling": rep.coupling,
        "annotations": annotations,
    }


def _with_variant(link, args):
    if args.pmin_variant:
        link = replace(link, receiver=replace(link.receiver,
                                              pmin_variant=_PMIN_FLAGS[args.pmin_variant]))
    return link


def cmd_link(args) -> dict:
    cfg = _load(args)
    if cfg.link is None:
        raise ConfigError("configuration has no complete link description")
    link = _with_variant(cfg.link, args)
    return _link_result(run_link(link), link.receiver.pmin_variant, cfg.annotations)


def cmd_sweep(args) -> dict:
    cfg = _load(args)
    if cfg.sweep is None:
        raise ConfigError("configuration has no 'sweep' section")
    sw = replace(cfg.sweep, base=_with_variant(cfg.sweep.base, args))
    rows = sweep(sw)
    names = [a.name for a in sw.axes]
    columns = [f"{n}_SI" for n in names] + ["p_received_W", "p_min_W", "snr", "detectable",
                                            "eta_tx", "eta_rx", "coupling", "p_zero_phonon_min"]
    table = []
    for row in rows:
        s = row.summary()
        table.append([row.params[n].magnitude for n in names]
                     + [s["p_received_W"], s["p_min_W"], s["snr"], s["detectable"],
                        s["eta_tx"], s["eta_rx"], s["coupling"], s["p_zero_phonon_min"]])
    return {
        "pmin_variant": sw.base.receiver.pmin_variant.value,
        "parameters": names,
        "columns": columns,
        "rows": table,
    }


COMMANDS = {
    "constants": cmd_constants, "ratio": cmd_ratio, "critical-mass": cmd_critical_mass,
    "drop": cmd_drop, "orbit": cmd_orbit, "link": cmd_link, "sweep": cmd_sweep,
}


def render(command: str, result: dict, fmt: str, argv: list[str]) -> str:
    provenance = {
        "artifact": "gwdrops",
        "version": __version__,
        "constants_release": constants().release,
        "command_line": list(argv),
    }
    if fmt == "json":
        return dumps_json({"provenance": provenance, "command": command, "result": result}) + "\n"
    if fmt == "csv":
        if "rows" not in result:
            raise UsageError(f"csv output is only available for tabular commands, not {command!r}")
        return _csv(result, provenance)
    head = (f"# gwdrops {__version__} | {provenance['constants_release']} | "
            f"{' '.join(argv)}\n")
    return head + _table(result)


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format or ("json" if args.out else "table")
    try:
        result = COMMANDS[args.command](args)
        text = render(args.command, result, fmt, argv)
    except UsageError as exc:
        print(f"gwdrops: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrationError as exc:
        print(f"gwdrops: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, DomainError, DimensionError, NonFiniteError, ZeroDivisionError) as exc:
        print(f"gwdrops: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
