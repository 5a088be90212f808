"""
A Hertz-like link with two drop-pair transducers
================================================

Microwaves hit a pair of critical-mass drops, which convert half of the
power into gravitational radiation. The wave passes through a Faraday
cage, spreads over a metre, and a second pair converts it back. Whether
the result is detectable depends on which reading of the radiometer
formula one takes, so both are shown.
"""

from gwdrops.config import load_config, scenario_path
from gwdrops.linkbudget import SweepAxis, SweepConfig, run_link, sweep
from gwdrops.transducer import critical_mass
from gwdrops.units import MASS, Quantity

cfg = load_config(scenario_path("ybco-12ghz"))
rep = run_link(cfg.link)

for label, p in rep.stages:
    print(f"  {label:<30} {p.magnitude:.4e} W")
for name, p in rep.p_min_variants.items():
    print(f"  P_min ({name}) = {p.magnitude:.4e} W   SNR = {float(rep.p_received / p):.3e}")
print("measured YBCO efficiency bound:", cfg.annotations["eta_upper_bound"])

# efficiency keeps rising with drop mass; it passes 0.5 exactly at m_crit
mc = critical_mass(1).magnitude
axis = SweepAxis("drop_mass", Quantity(mc / 8, MASS), Quantity(mc * 8, MASS), 7, "log")
for row in sweep(SweepConfig(cfg.link, (axis,))):
    m = row.params["drop_mass"].magnitude
    print(f"  m/m_crit = {m / mc:6.3f}   eta = {row.report.eta_tx:.4f}   SNR = {row.report.snr:.3e}")
