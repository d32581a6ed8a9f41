"""Scattering Green tensor of planar reflectors.

The perfect electric mirror has closed forms in zt = 2 w z / c; a
material half-space is integrated over the transverse wavevector and
approaches those closed forms as eps grows, at the physical rate
2 g(zt) / sqrt(eps) set by its surface impedance.
"""

import numpy as np
from scipy.constants import c

from planarcp import (
    LorentzOscillator,
    MaterialResponse,
    PlanarGeometry,
    halfspace_green_traces,
    mirror_curlcurl_trace,
    mirror_green_components,
    mirror_trace_e,
)

W10 = 2.5e15
zt_to_z = lambda zt: zt * c / (2 * W10)

print("== closed forms at zt = 1 (real frequency) ==")
z = zt_to_z(1.0)
gxx, gyy, gzz = mirror_green_components(z, W10)
print(f"G_xx = {gxx:.6e}")
print(f"G_zz = {gzz:.6e}")
print(f"Re G_xx * 4 pi c / w = {gxx.real * 4 * np.pi * c / W10:.12f}"
      f"  (= sin(1) = {np.sin(1.0):.12f})")

print("\n== near field: G_zz/G_xx -> 2, trace ~ 1/zt^3 ==")
for zt in (1e-3, 1e-2, 0.1):
    gxx, _, gzz = mirror_green_components(zt_to_z(zt), W10)
    print(f"zt = {zt:5}: G_zz/G_xx = {abs(gzz/gxx):.8f}")

print("\n== imaginary axis: everything real, decaying ==")
for y in (0.5, 2.0, 10.0):
    te = mirror_trace_e(zt_to_z(y), 1j * W10)
    tm = mirror_curlcurl_trace(zt_to_z(y), 1j * W10)
    print(f"y = {y:4}: trace_e = {te.real:+.4e} (imag {te.imag}),"
          f" trace_m = {tm.real:+.4e} > 0")
print("trace_e < 0 attracts polarisable atoms;")
print("trace_m > 0 repels magnetisable ones (duality at work).")

print("\n== half-space converging to the mirror limit ==")


def mirror_like(eps):
    return MaterialResponse("drude-lorentz", eps_oscillators=(
        LorentzOscillator(strength=eps - 1.0, resonance=1e3 * W10,
                          damping=1e-3 * W10),
    ))


z = zt_to_z(1.0)
closed = mirror_trace_e(z, 1j * W10).real
print(f"closed form:  {closed:.8e}")
for eps in (1e2, 1e4, 1e6, 1e8):
    tr = halfspace_green_traces(PlanarGeometry(mirror_like(eps), z),
                                1j * W10)
    print(f"eps = {eps:8.0e}: trace_e = {tr.trace_e:.8e}"
          f"  rel dev = {abs(tr.trace_e / closed - 1):.2e}"
          f"  (expect ~ 1.1 / sqrt(eps))")

print("\n== duality: swapping eps <-> mu exchanges the two traces ==")
mat = MaterialResponse("drude-lorentz", eps_oscillators=(
    LorentzOscillator(2.0, 1.5 * W10, 0.3 * W10),))
xi = 0.8 * W10
tr = halfspace_green_traces(PlanarGeometry(mat, z), 1j * xi)
tr_dual = halfspace_green_traces(PlanarGeometry(mat.dual(), z), 1j * xi)
print(f"trace_e(dual)            = {tr_dual.trace_e:+.6e}")
print(f"(c/xi)^2 trace_m(original) = {(c / xi)**2 * tr.trace_m:+.6e}")
