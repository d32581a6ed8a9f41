"""Atomic response functions: where amplification comes from.

A ground-state atom only has upward transitions, so its polarisability
on the imaginary axis is positive and its absorption lines carry
Im alpha > 0.  An excited atom adds downward transitions: on the
imaginary axis the two-level excited polarisability is exactly minus
the ground-state one, and inside the emission line Im alpha < 0.
Through the linearised Clausius-Mossotti map a dilute gas of such atoms
has Im eps < 0 there: it amplifies.
"""

import numpy as np
from scipy.constants import c, epsilon_0, hbar

from planarcp import (
    AtomModel,
    Transition,
    clausius_mossotti,
    polarizability,
    resonant_weights,
)

W10 = 2.5e15       # rad/s
D2 = 7.1882e-59    # C^2 m^2, of order (e a0)^2

ground = AtomModel("ground", (Transition(-W10, D2),))
excited = AtomModel("excited", (Transition(+W10, D2),))

print("== static polarisabilities ==")
a_g = polarizability(ground, 0.0).real
a_e = polarizability(excited, 0.0).real
print(f"ground : {a_g:+.4e} C^2 m^2/J   (= 2|d|^2 / 3 hbar w10)")
print(f"excited: {a_e:+.4e} C^2 m^2/J   (exactly the opposite)")

print("\n== imaginary axis: alpha(i xi) is real, excited = -ground ==")
for xi in (0.1 * W10, W10, 10 * W10):
    ag = polarizability(ground, 1j * xi)
    ae = polarizability(excited, 1j * xi)
    print(f"xi = {xi:8.2e}: ground {ag.real:+.3e}  excited {ae.real:+.3e}"
          f"  (imag parts: {ag.imag:.1e}, {ae.imag:.1e})")

print("\n== inside the line (broadened): absorption vs gain ==")
gamma = 1e-3 * W10
ag = polarizability(ground, W10, broadening=gamma)
ae = polarizability(excited, W10, broadening=gamma)
print(f"Im alpha_ground (w10)  = {ag.imag:+.3e}  -> absorbing")
print(f"Im alpha_excited(w10)  = {ae.imag:+.3e}  -> amplifying")

print("\n== dilute gas via Clausius-Mossotti, eta = 1e20 / m^3 ==")
eps_m1, _ = clausius_mossotti(1e20, excited, W10, broadening=gamma)
print(f"eps - 1 = {eps_m1:.3e}")
print(f"Im eps = {eps_m1.imag:+.3e} < 0: the gas amplifies in its line")

print("\n== resonant line weights (only downward transitions count) ==")
print("ground :", resonant_weights(ground))
for line in resonant_weights(excited):
    print(f"excited: omega = {line.omega:.3e} rad/s, "
          f"electric weight = {line.electric_weight:.3e} "
          f"(= pi |d|^2 / 3 hbar, vs {np.pi * D2 / 3 / hbar:.3e})")
