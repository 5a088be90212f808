"""
Circulation around a quantized vortex
=====================================

Around a vortex line in superfluid helium the velocity is hbar/(m rho),
so the line integral of v around any loop that encloses the core is one
quantum, 2 pi hbar / m_He, whatever the loop looks like. Loops that miss
the core give zero.
"""

import math

from gwdrops.transducer import SingularityError, VortexLoop, circulation, circulation_quantum

k = circulation_quantum().magnitude
print(f"quantum of circulation: {k:.6e} m^2/s")

loops = {
    "unit circle": VortexLoop.circle((0, 0), 1.0),
    "square": VortexLoop.polygon([(-1, -1), (1, -1), (1, 1), (-1, 1), (-1, -1)]),
    "tilted ellipse": VortexLoop.ellipse((0.3, 0.1), 4.0, 0.5, angle=math.pi / 5),
    "off-centre triangle": VortexLoop.polygon([(-0.2, -0.2), (3, 0), (0, 2), (-0.2, -0.2)]),
    "clockwise circle": VortexLoop.circle((0, 0), 2.0, clockwise=True),
    "beside the core": VortexLoop.circle((5, 0), 1.0),
}
for name, loop in loops.items():
    g = circulation(loop).magnitude
    print(f"  {name:<20} {g / k:+.12f} quanta")

# a contour straight through the core is rejected
try:
    circulation(VortexLoop.circle((1, 0), 1.0))
except SingularityError as exc:
    print("through the core:", exc)
