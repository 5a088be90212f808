"""
A charged drop spirals in faster than a neutral one
===================================================

Put a charged and a neutral drop of the same mass in the same circular
orbit. Both lose energy to gravitational radiation, but the charged one
also radiates electromagnetically, so it sinks a little faster. For real
drops the effect is tiny; a body with an exaggerated charge shows it in
about a second of simulated time.
"""

import numpy as np

from gwdrops.orbitsim import (CentralBody, OrbitBody, differential_drift, em_decay_constant,
                              integrate_decay)
from gwdrops.units import CHARGE, LENGTH, MASS, TIME, Quantity, constants

C = constants()
earth = CentralBody()
r0 = Quantity(6.771e6, LENGTH)  # 400 km altitude

# a single electron against a neutral electron-mass particle, over ten days
drift = differential_drift(OrbitBody(C.m_e, C.e), OrbitBody(C.m_e), earth, r0,
                           Quantity(864000.0, TIME), n_samples=6)
for t, dr in drift:
    print(f"  t = {t.magnitude:9.0f} s   r_neutral - r_charged = {dr.magnitude:.3e} m")

# exaggerated body: 1 kg carrying 1.7e10 C
fast = OrbitBody(Quantity(1.0, MASS), Quantity(1.7e10, CHARGE))
trace = integrate_decay(fast, earth, r0, Quantity(1.0, TIME), r0 * 1e-3, gr=False,
                        n_samples=6)
c = em_decay_constant(fast, earth).magnitude
exact = np.cbrt(r0.magnitude ** 3 - 3 * c * trace.t)
print("\nEM-only decay against r^3 = r0^3 - 3Ct:")
for t, r, x in zip(trace.t, trace.r, exact):
    print(f"  t = {t:4.2f} s   r = {r:14.6f} m   analytic {x:14.6f} m")

e_orbit = 0.5 * (C.G * earth.M * fast.m).magnitude * (1 / trace.r[-1] - 1 / r0.magnitude)
print(f"radiated {trace.e_rad_total[-1]:.6e} J, orbital energy lost {e_orbit:.6e} J")
