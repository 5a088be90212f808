"""
How weak is gravity next to electricity?
========================================

Gravity and the Coulomb force both fall off as 1/r^2, so their ratio for
two particles does not depend on how far apart they are. For two electrons
it is absurdly small. The same number is the ratio of radiated powers,
since the quadrupole prefactor cancels.
"""

import numpy as np

from gwdrops.radiation import RadiatingBody, power_ratio, quadrupolar_em_power, quadrupolar_gr_power
from gwdrops.transducer import DropSpec, force_ratio
from gwdrops.units import ACCELERATION, Quantity, constants

C = constants()
print("constants release:", C.release)

# two bare electrons
e = DropSpec.electron()
print(f"force ratio, electron pair:  {force_ratio(e, e):.4g}")
print(f"power ratio, electron:       {power_ratio(C.e, C.m_e):.4g}")

# the quadrupole factor kappa and the acceleration both drop out
for kappa in (0.1, 1.0, 10.0):
    for a in (1e-3, 9.81, 1e6):
        body = RadiatingBody(C.e, C.m_e, Quantity(a, ACCELERATION), kappa)
        q = float(quadrupolar_gr_power(body) / quadrupolar_em_power(body))
        print(f"  kappa={kappa:<5} a={a:<8g} P_GR/P_EM = {q:.6g}")

# the ratio grows as m^2: sweep the mass over many decades
masses = np.geomspace(C.m_e.magnitude, 1e-7, 9)
for m in masses:
    print(f"  m = {m:9.3e} kg   rho = {power_ratio(C.e, Quantity(m, C.m_e.dim)):.3e}")
