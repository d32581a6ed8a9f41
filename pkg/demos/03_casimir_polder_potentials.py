"""Casimir-Polder potentials: resonant vs nonresonant, duality.

The nonresonant part integrates the response along the imaginary
frequency axis and exists for every atom; for the two-level atom the
excited value is exactly minus the ground value at every distance.  The
resonant part exists only for excited atoms and usually dominates; it
oscillates with distance in the retarded regime.
"""

import numpy as np
from scipy.constants import c

from planarcp import (
    AtomModel,
    MaterialResponse,
    PlanarGeometry,
    Transition,
    duality_transform,
    total_potential,
)

W10 = 2.5e15
D2 = 7.1882e-59
zt_to_z = lambda zt: zt * c / (2 * W10)

ground = AtomModel("ground", (Transition(-W10, D2),))
excited = AtomModel("excited", (Transition(+W10, D2),))
pec = MaterialResponse("perfect-electric-mirror")

print("== decomposition along the distance sweep (excited atom) ==")
print(f"{'zt':>6} {'U_nr [J]':>14} {'U_r [J]':>14} {'U_total [J]':>14}")
for zt in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 15.0):
    res = total_potential(excited, PlanarGeometry(pec, zt_to_z(zt)))
    print(f"{zt:6.1f} {res.u_nonresonant:+14.4e} {res.u_resonant:+14.4e}"
          f" {res.u_total:+14.4e}")
print("the resonant part dominates and changes sign: retarded")
print("oscillation, while U_nr decays monotonically.")

print("\n== ground vs excited nonresonant part ==")
for zt in (0.1, 1.0, 10.0):
    g = total_potential(ground, PlanarGeometry(pec, zt_to_z(zt)))
    e = total_potential(excited, PlanarGeometry(pec, zt_to_z(zt)))
    print(f"zt = {zt:4}: U_nr(ground) = {g.u_nonresonant:+.4e},"
          f" U_nr(excited) = {e.u_nonresonant:+.4e},"
          f" sum = {g.u_nonresonant + e.u_nonresonant:.1e}")
print("ground state: attractive (negative); excited: exactly opposite.")
print(f"ground resonant part is a structural zero:"
      f" {total_potential(ground, PlanarGeometry(pec, zt_to_z(1))).u_resonant}")

print("\n== duality invariance ==")
# a magnetoelectric excited atom in front of the electric mirror maps to
# its dual atom in front of the magnetic mirror: same potentials
atom = AtomModel("me", (Transition(+W10, D2, 0.2 * D2 * c**2),))
geo = PlanarGeometry(pec, zt_to_z(1.0))
dual_atom, dual_geo = duality_transform(atom, geo)
r = total_potential(atom, geo)
rd = total_potential(dual_atom, dual_geo)
print(f"original ({geo.reflector.model}):  U_nr = {r.u_nonresonant:+.6e},"
      f" U_r = {r.u_resonant:+.6e}")
print(f"dual     ({dual_geo.reflector.model}): U_nr = {rd.u_nonresonant:+.6e},"
      f" U_r = {rd.u_resonant:+.6e}")
print(f"differences: {abs(r.u_nonresonant - rd.u_nonresonant):.1e},"
      f" {abs(r.u_resonant - rd.u_resonant):.1e}")
