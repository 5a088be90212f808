"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also repeated in the terminal summary.
"""

import math
import subprocess
import sys

import numpy as np
import pytest

from gwdrops.linkbudget import PminVariant, ReceiverSpec, gravity_wave_impedance, min_detectable_power
from gwdrops.orbitsim import (CentralBody, OrbitBody, differential_drift, em_decay_constant,
                              integrate_decay)
from gwdrops.radiation import RadiatingBody, power_ratio, quadrupolar_em_power, quadrupolar_gr_power
from gwdrops.transducer import (ChannelMode, DropSpec, ModeKind, TransducerPair, VortexLoop,
                                atom_count, circulation, circulation_quantum, critical_mass,
                                force_ratio, geometric_cross_section, planck_mass,
                                scatter_cross_section, zero_phonon_probability)
from gwdrops.units import ACCELERATION, CHARGE, LENGTH, MASS, TIME, Quantity, constants, unit

RESULTS: list[str] = []


def verdict(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def rel(a, b):
    return abs(a - b) / abs(b)


def test_c01_force_and_power_ratio(C, electron_drop):
    pr = power_ratio(C.e, C.m_e)
    fr = force_ratio(electron_drop, electron_drop)
    ok = rel(pr, 2.4e-43) <= 0.05 and rel(fr, 2.4e-43) <= 0.05
    verdict(1, "electron GR/EM ratio 2.4e-43 within 5%", ok,
            f"power_ratio={pr:.6g}, force_ratio={fr:.6g}")


def test_c02_planck_scale_ratio(planck_drop):
    fr = force_ratio(planck_drop, planck_drop)
    verdict(2, "Planck-drop force ratio 137.036 within 0.1%", rel(fr, 137.036) <= 1e-3,
            f"force_ratio={fr:.9g}")


def test_c03_planck_mass():
    m = planck_mass().magnitude
    ok = rel(m, 21.8e-9) <= 0.02 and rel(m, 22e-9) <= 0.02
    verdict(3, "Planck mass 21.8 ug, within 2% of 22 ug", ok, f"m={m * 1e9:.6g} ug")


def test_c04_critical_mass(C):
    m = critical_mass(1)
    r = power_ratio(C.e, m)
    ok = rel(m.magnitude, 1.86e-9) <= 0.03 and rel(m.magnitude, 1.9e-9) <= 0.03 \
        and abs(r - 1.0) <= 1e-12
    verdict(4, "critical mass 1.86 ug within 3% of 1.9 ug, ratio there = 1", ok,
            f"m={m.magnitude * 1e9:.6g} ug, |ratio-1|={abs(r - 1):.2e}")


def test_c05_impedance():
    z = gravity_wave_impedance().magnitude
    verdict(5, "Z_G = 1.1e-17 SI within 5%", rel(z, 1.1e-17) <= 0.05, f"Z_G={z:.6g}")


def test_c06_min_detectable_power():
    rx = ReceiverSpec(300 * unit("K"), unit("GHz"), unit("s"))
    root = min_detectable_power(rx, PminVariant.PER_ROOT_BANDWIDTH).magnitude
    printed = min_detectable_power(rx, PminVariant.AS_PRINTED).magnitude
    ok = rel(root, 1.3e-25) <= 0.05 and rel(printed, 1.31e-16) <= 5e-3
    verdict(6, "P_min per-root 1.3e-25 W within 5%; as-printed 1.31e-16 W", ok,
            f"per-root={root:.6g} W, as-printed={printed:.6g} W")


def test_c07_atom_count(planck_drop, critical_drop):
    n_p, n_c = atom_count(planck_drop), atom_count(critical_drop)
    ok = (rel(n_p, 3.3e18) <= 0.02 and rel(n_c, 2.8e17) <= 0.03
          and math.floor(math.log10(n_p)) == 18 and math.floor(math.log10(n_c)) == 17)
    verdict(7, "atom counts 3.3e18 (2%) and 2.8e17 (3%), orders 18 and 17", ok,
            f"planck={n_p:.6g}, critical={n_c:.6g}")


def test_c08_kappa_cancellation(C):
    rng = np.random.default_rng(20240601)
    m = critical_mass(1) * 0.37
    closed = power_ratio(C.e, m)
    worst = 0.0
    for kappa, a in zip(10 ** rng.uniform(-3, 3, 100), 10 ** rng.uniform(-8, 8, 100)):
        b = RadiatingBody(q=C.e, m=m, a=Quantity(a, ACCELERATION), kappa=kappa)
        worst = max(worst, rel(float(quadrupolar_gr_power(b) / quadrupolar_em_power(b)), closed))
    verdict(8, "kappa cancels in GR/EM quotient over 100 draws to 1e-12", worst <= 1e-12,
            f"worst relative deviation={worst:.2e}")


def test_c09_reciprocity():
    rng = np.random.default_rng(9)
    modes = [ChannelMode(ModeKind.GR, "a"), ChannelMode(ModeKind.EM, "alpha")]
    symmetric, worst = True, 0.0
    for _ in range(200):
        ra, rb = 10 ** rng.uniform(-6, -2, 2)
        da = DropSpec(mass=Quantity(10 ** rng.uniform(-12, -6), MASS), radius=Quantity(ra, LENGTH),
                      n_electrons=int(rng.integers(1, 6)))
        db = DropSpec(mass=Quantity(10 ** rng.uniform(-12, -6), MASS), radius=Quantity(rb, LENGTH),
                      n_electrons=int(rng.integers(1, 6)))
        pair = TransducerPair(da, db, Quantity(3 * (ra + rb), LENGTH), 12 * unit("GHz"))
        for x in modes:
            for y in modes:
                if scatter_cross_section(pair, x, y) != scatter_cross_section(pair, y, x):
                    symmetric = False
            tot = geometric_cross_section(pair).magnitude
            s = sum(scatter_cross_section(pair, x, y).magnitude for y in modes)
            worst = max(worst, rel(s, tot))
    verdict(9, "scattering reciprocity bit-identical; channels sum to total within 1e-14",
            symmetric and worst <= 1e-14, f"symmetric={symmetric}, worst sum error={worst:.2e}")


def test_c10_circulation():
    k = circulation_quantum().magnitude
    loops = {
        "circle": VortexLoop.circle((0, 0), 1.0),
        "square": VortexLoop.polygon([(-1, -1), (1, -1), (1, 1), (-1, 1), (-1, -1)]),
        "ellipse": VortexLoop.ellipse((0.1, 0.2), 2.0, 0.7, angle=0.4),
    }
    errs = {name: rel(circulation(lp).magnitude, k) for name, lp in loops.items()}
    outside = abs(circulation(VortexLoop.circle((3, 0), 1.0)).magnitude)
    ok = max(errs.values()) <= 1e-9 and outside <= 1e-9 * k
    verdict(10, "circulation = 2 pi hbar/m_He on enclosing loops, 0 outside", ok,
            ", ".join(f"{n}={e:.1e}" for n, e in errs.items()) + f", outside={outside / k:.1e} k")


def test_c11_orbit_oracle():
    earth = CentralBody()
    r0 = Quantity(6.771e6, LENGTH)
    body = OrbitBody(m=Quantity(1.0, MASS), q=Quantity(1.7e10, CHARGE))
    neutral = OrbitBody(m=Quantity(1.0, MASS))
    t_end = Quantity(1.0, TIME)
    tr = integrate_decay(body, earth, r0, t_end, r0 * 1e-3, gr=False)
    c = em_decay_constant(body, earth).magnitude
    exact = np.cbrt(r0.magnitude ** 3 - 3 * c * tr.t)
    law_err = float(np.max(np.abs(tr.r - exact) / exact))

    full = integrate_decay(body, earth, r0, t_end, r0 * 1e-3)
    GMm = (constants().G * earth.M * body.m).magnitude
    d_orbit = 0.5 * GMm * (1 / full.r[1:] - 1 / r0.magnitude)
    budget_err = float(np.max(np.abs(full.e_rad_total[1:] - d_orbit) / d_orbit))

    drift = differential_drift(body, neutral, earth, r0, t_end, n_samples=101)
    inside = all(p[1].magnitude >= 0 for p in drift) and all(p[1].magnitude > 0 for p in drift[1:])
    ok = law_err <= 1e-6 and budget_err <= 1e-6 and inside
    verdict(11, "EM-only r^3 law to 1e-6, energy budget to 1e-6, charged inside neutral", ok,
            f"law={law_err:.1e}, budget={budget_err:.1e}, inside={inside}")


def test_c12_zero_phonon(C):
    T0 = unit("K")
    half = zero_phonon_probability(C.k_B * T0 * math.log(2.0), T0)
    # E/kT stays <= 30: beyond ~37 the value is exactly 1.0 in double precision
    gaps = np.linspace(0.0, 15.0, 20)   # in units of k_B * 1 K
    temps = np.linspace(0.5, 10.0, 20)  # kelvin
    grid = np.array([[zero_phonon_probability(C.k_B * T0 * g, T0 * t) for t in temps]
                     for g in gaps])
    in_range = bool(np.all((grid >= 0) & (grid < 1)))
    up_in_gap = bool(np.all(np.diff(grid, axis=0) > 0))
    down_in_t = bool(np.all(np.diff(grid[1:], axis=1) < 0))  # gap 0 row is identically 0
    ok = in_range and abs(half - 0.5) <= 1e-12 and up_in_gap and down_in_t
    verdict(12, "zero-phonon in [0,1), 0.5 at ln 2, monotone on 20x20 grid", ok,
            f"|p-0.5|={abs(half - 0.5):.1e}, range={in_range}, gap-up={up_in_gap}, "
            f"T-down={down_in_t}")


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_c13_determinism(fmt):
    outputs = {}
    for cmd in ("link", "sweep"):
        if fmt == "csv" and cmd == "link":
            continue
        argv = [sys.executable, "-m", "gwdrops", cmd, "--scenario", "ybco-12ghz", "--format", fmt]
        runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
        outputs[cmd] = (runs[0] == runs[1] and len(runs[0]) > 0, len(runs[0]))
    ok = all(same for same, _ in outputs.values())
    verdict(13, f"byte-identical repeated CLI runs on the reference scenario ({fmt})", ok,
            ", ".join(f"{c}: {n} bytes identical={s}" for c, (s, n) in outputs.items()))
