"""
Planck mass, critical mass and the fine-structure constant
==========================================================

Make the drop heavy enough and gravity catches up with the Coulomb
repulsion of its single electron. That happens at sqrt(alpha) times the
Planck mass, a couple of micrograms. Drops at the Planck mass itself
attract gravitationally 137 times more strongly than they repel.
"""

from gwdrops.transducer import (DropSpec, atom_count, critical_mass, enhancement_factor,
                                force_ratio, helium_drop_radius, planck_mass)
from gwdrops.units import constants, unit

C = constants()
mp = planck_mass()
mc = critical_mass(1)
print(f"Planck mass    {mp.magnitude * 1e9:.4f} ug")
print(f"critical mass  {mc.magnitude * 1e9:.4f} ug   (sqrt(alpha) = {C.alpha ** 0.5:.6f})")

# radius of a liquid helium sphere with that mass
for label, m in (("planck", mp), ("critical", mc)):
    r = helium_drop_radius(m)
    d = DropSpec(mass=m, radius=r)
    print(f"{label:>9}: R = {r.magnitude * 1e3:.3f} mm, "
          f"force ratio = {force_ratio(d, d):.6f}, "
          f"atoms = {atom_count(d):.3e}, N^2 = {enhancement_factor(d):.3e}")

print(f"1/alpha = {1 / C.alpha:.6f}")

# several electrons per drop: keep q/m fixed and the balance point scales with n
for n in (1, 2, 5):
    m = critical_mass(n)
    d = DropSpec(mass=m, radius=unit("mm"), n_electrons=n)
    print(f"n = {n}: m_crit = {m.magnitude * 1e9:.4f} ug, ratio = {force_ratio(d, d):.15f}")
