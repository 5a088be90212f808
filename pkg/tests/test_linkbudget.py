import math
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwdrops.linkbudget import (ConfigError, LinkConfig, PminVariant, ReceiverSpec, SourceSpec,
                                SweepAxis, SweepConfig, free_space_coupling,
                                gravity_wave_impedance, hertz_link, min_detectable_power,
                                run_link, sweep)
from gwdrops.transducer import (DropSpec, TransducerPair, conversion_efficiency, critical_mass,
                                geometric_cross_section)
from gwdrops.units import (AREA, LENGTH, MASS, POWER, DomainError, Quantity, constants, unit)

Z_G = 1.1190638744009686e-17
PMIN_ROOT = 1.309798646770144e-25
PMIN_PRINTED = 1.309798646770144e-16


def receiver(variant="as-printed", tau=1.0, bw=1e9, T=300.0):
    return ReceiverSpec(t_noise=T * unit("K"), bandwidth=bw * unit("Hz"),
                        integration_time=tau * unit("s"), pmin_variant=variant)


def link_cfg(critical_pair, power=1.0, distance=1.0, overlap=1.0, directivity=1.0, rx_pair=None):
    return LinkConfig(source=SourceSpec(power * unit("W"), 12 * unit("GHz"), overlap),
                      tx_pair=critical_pair, rx_pair=rx_pair or critical_pair,
                      distance=distance * unit("m"), receiver=receiver(),
                      directivity=directivity)


def test_pmin_oracle_values():
    k = 1.380649e-23
    assert k * 300 * 1e9 / math.sqrt(1e9) == pytest.approx(PMIN_PRINTED, rel=1e-15)
    assert k * 300 / math.sqrt(1e9) == pytest.approx(PMIN_ROOT, rel=1e-15)


def test_impedance():
    z = gravity_wave_impedance()
    assert z.magnitude == pytest.approx(Z_G, rel=1e-12)
    assert z.magnitude == pytest.approx(1.1e-17, rel=0.05)
    C = constants()
    assert z.dim == (C.G / C.c).dim
    assert z.dim.exponents == (-1, 2, -1, 0, 0, 0)


def test_pmin_variants():
    rx = receiver()
    root = min_detectable_power(rx, PminVariant.PER_ROOT_BANDWIDTH)
    printed = min_detectable_power(rx, "as-printed")
    assert root.dim == POWER and printed.dim == POWER
    assert root.magnitude == pytest.approx(1.3e-25, rel=0.05)
    assert root.magnitude == pytest.approx(PMIN_ROOT, rel=1e-12)
    assert printed.magnitude == pytest.approx(PMIN_PRINTED, rel=1e-12)
    assert printed.magnitude == pytest.approx(1.31e-16, rel=1e-3)
    assert min_detectable_power(rx) == printed
    assert float(printed / root) == pytest.approx(1e9, rel=1e-15)


@given(st.floats(1e3, 1e12), st.floats(1e-3, 1e4), st.floats(1.0, 1e4))
def test_variant_ratio_is_bandwidth_in_hz(bw, tau, T):
    rx = receiver(bw=bw, tau=tau, T=T)
    ratio = float(min_detectable_power(rx, "as-printed")
                  / min_detectable_power(rx, "per-root-bandwidth"))
    assert ratio == pytest.approx(bw, rel=1e-14)


@pytest.mark.parametrize("variant", list(PminVariant))
def test_pmin_quadruple_tau_halves(variant):
    p1 = min_detectable_power(receiver(tau=1.0), variant).magnitude
    p4 = min_detectable_power(receiver(tau=4.0), variant).magnitude
    assert p4 == pytest.approx(p1 / 2, rel=1e-15)


def test_free_space_coupling():
    d = unit("m")
    assert free_space_coupling(4 * math.pi * d ** 2, d) == 1.0
    assert free_space_coupling(40 * math.pi * d ** 2, d) == 1.0
    c = free_space_coupling(Quantity(6.28e-6, AREA), d)
    assert c == pytest.approx(4.997465213085514e-07, rel=1e-12)
    assert c == pytest.approx(5.0e-7, rel=1e-2)
    assert free_space_coupling(Quantity(6.28e-6, AREA), 2 * d) == pytest.approx(c / 4, rel=1e-15)
    with pytest.raises(DomainError):
        free_space_coupling(Quantity(1.0, AREA), Quantity(0.0, LENGTH))
    with pytest.raises(DomainError):
        free_space_coupling(Quantity(1.0, AREA), d, directivity=0.0)


def test_critical_pair_chain(critical_pair):
    rep = run_link(link_cfg(critical_pair, overlap=0.8))
    coupling = free_space_coupling(geometric_cross_section(critical_pair), unit("m"))
    assert rep.eta_tx == pytest.approx(0.5, abs=1e-12)
    assert rep.p_received.magnitude == pytest.approx(0.8 * 0.25 * coupling, rel=1e-12)
    assert [s[0] for s in rep.stages][0] == "source"
    assert len(rep.stages) == len(rep.factors) + 1
    assert set(rep.p_min_variants) == {"as-printed", "per-root-bandwidth"}
    assert rep.detectable == (rep.snr >= 1.0)


def test_stage_ledger_consistency(critical_pair):
    rep = run_link(link_cfg(critical_pair, power=3.7, overlap=0.6, directivity=2.5))
    prod = 3.7
    for _, f in rep.factors:
        prod *= f
    assert prod == pytest.approx(rep.p_received.magnitude, rel=1e-14)
    powers = [p.magnitude for _, p in rep.stages]
    assert all(b <= a for a, b in zip(powers, powers[1:]))


def test_zero_power_not_detectable(critical_pair):
    rep = run_link(link_cfg(critical_pair, power=0.0))
    assert rep.p_received.magnitude == 0.0
    assert not rep.detectable


def test_swap_tx_rx_equal_radii(critical_pair, critical_drop):
    other = TransducerPair.symmetric(replace(critical_drop, mass=3 * critical_drop.mass),
                                     25 * unit("mm"), 12 * unit("GHz"))
    a = run_link(link_cfg(critical_pair, rx_pair=other)).p_received.magnitude
    b = run_link(link_cfg(other, rx_pair=critical_pair)).p_received.magnitude
    assert a == pytest.approx(b, rel=1e-15)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-6, 1e6))
def test_linearity_in_source_power(p):
    drop = DropSpec(mass=critical_mass(1), radius=0.145 * unit("mm"))
    pair = TransducerPair.symmetric(drop, 25 * unit("mm"), 12 * unit("GHz"))
    base = run_link(link_cfg(pair, power=1.0)).p_received.magnitude
    assert run_link(link_cfg(pair, power=p)).p_received.magnitude == pytest.approx(p * base,
                                                                                   rel=1e-14)


def test_monotonicity(critical_pair, critical_drop):
    base = run_link(link_cfg(critical_pair)).p_received.magnitude
    assert run_link(link_cfg(critical_pair, distance=2.0)).p_received.magnitude <= base
    assert run_link(link_cfg(critical_pair, overlap=0.5)).p_received.magnitude <= base
    bigger = TransducerPair.symmetric(replace(critical_drop, radius=0.3 * unit("mm")),
                                      25 * unit("mm"), 12 * unit("GHz"))
    assert run_link(link_cfg(critical_pair, rx_pair=bigger)).p_received.magnitude >= base
    heavier = TransducerPair.symmetric(replace(critical_drop, mass=4 * critical_drop.mass),
                                       25 * unit("mm"), 12 * unit("GHz"))
    assert conversion_efficiency(heavier) > conversion_efficiency(critical_pair)
    assert run_link(link_cfg(heavier)).p_received.magnitude >= base


def test_source_and_receiver_validation():
    with pytest.raises(DomainError):
        SourceSpec(-1 * unit("W"), 12 * unit("GHz"))
    with pytest.raises(DomainError):
        SourceSpec(unit("W"), 12 * unit("GHz"), mode_overlap=0.0)
    with pytest.raises(DomainError):
        receiver(bw=0.0)
    with pytest.raises(ValueError):
        receiver(variant="bogus")


# -- sweeps ---------------------------------------------------------------------

def test_one_point_sweep_equals_single_link(critical_pair):
    cfg = link_cfg(critical_pair)
    rows = sweep(SweepConfig(cfg, (SweepAxis("distance", unit("m"), unit("m")),)))
    assert len(rows) == 1
    assert rows[0].report == run_link(cfg)


def test_two_by_two_order(critical_pair):
    cfg = link_cfg(critical_pair)
    axes = (SweepAxis("distance", unit("m"), 2 * unit("m"), 2),
            SweepAxis("source_power", unit("W"), 3 * unit("W"), 2))
    rows = sweep(SweepConfig(cfg, axes))
    keys = [(r.params["distance"].magnitude, r.params["source_power"].magnitude) for r in rows]
    assert keys == [(1.0, 1.0), (1.0, 3.0), (2.0, 1.0), (2.0, 3.0)]
    assert keys == sorted(keys)


def test_threaded_sweep_keeps_order(critical_pair):
    cfg = link_cfg(critical_pair)
    axes = (SweepAxis("drop_mass", Quantity(1e-10, MASS), Quantity(1e-8, MASS), 5, "log"),
            SweepAxis("distance", unit("m"), 3 * unit("m"), 3))
    serial = sweep(SweepConfig(cfg, axes))
    threaded = sweep(SweepConfig(cfg, axes), max_workers=4)
    assert [r.summary() for r in serial] == [r.summary() for r in threaded]


def test_mass_sweep_across_critical_mass(critical_pair):
    # the branching model makes the efficiency rise monotonically with mass,
    # passing 0.5 exactly at the critical mass, so SNR keeps growing past it
    cfg = link_cfg(critical_pair)
    mc = critical_mass(1).magnitude
    grid = [mc * f for f in (0.25, 0.5, 1.0, 2.0, 4.0)]
    axis = SweepAxis("drop_mass", Quantity(grid[0], MASS), Quantity(grid[-1], MASS), 5, "log")
    rows = sweep(SweepConfig(cfg, (axis,)))
    snr = [r.report.snr for r in rows]
    assert all(b > a for a, b in zip(snr, snr[1:]))
    mid = rows[2]
    assert mid.params["drop_mass"].magnitude == pytest.approx(mc, rel=1e-12)
    assert mid.report.eta_tx == pytest.approx(0.5, abs=1e-12)
    assert all(r.report.eta_tx < 1.0 for r in rows)


def test_sweep_validation():
    with pytest.raises(ConfigError):
        SweepAxis("nonsense", unit("m"), unit("m"))
    with pytest.raises(ConfigError):
        SweepAxis("distance", unit("m"), 2 * unit("m"), 0)
    with pytest.raises(ConfigError):
        SweepAxis("distance", unit("kg"), unit("kg"))
    with pytest.raises(ConfigError):
        SweepAxis("distance", Quantity(0.0, LENGTH), unit("m"), 3, "log")


def test_sweep_invalid_point_is_config_error(critical_pair):
    cfg = link_cfg(critical_pair)
    axis = SweepAxis("separation", Quantity(0.1e-3, LENGTH), Quantity(1e-3, LENGTH), 2)
    with pytest.raises(ConfigError):
        sweep(SweepConfig(cfg, (axis,)))


def test_hertz_link_direct(critical_pair):
    src = SourceSpec(unit("W"), 12 * unit("GHz"))
    rep = hertz_link(src, critical_pair, critical_pair, unit("m"), receiver(), 1.0)
    assert rep.summary()["p_received_W"] == rep.p_received.magnitude
