"""Coincident-point scattering Green-tensor traces for planar reflectors.

Everything here is the scattering (reflected) part G1 of the
electromagnetic Green tensor, evaluated at coincident points a distance
z above the interface; the divergent bulk part never enters.  Two
quantities feed the potentials:

    trace_e = Tr G1(r, r, w)                  units 1/m
    trace_m = Tr[curl G1(r, r, w) curl']      units 1/m^3

For the perfect electric mirror the components are closed forms in
zt = 2 w z / c:

    G_xx = G_yy = w e^{i zt} (1 - i zt - zt^2) / (4 pi c zt^3)
    G_zz =        w e^{i zt} (1 - i zt)        / (2 pi c zt^3)

analytically continued to w = i xi (then e^{i zt} -> e^{-2 xi z / c}
and all components are real).  A material half-space is evaluated from
the transverse-wavevector integral over its s- and p-polarised Fresnel
reflection coefficients.

The curl-curl trace is obtained by duality rather than by direct
double-curl differentiation: exchanging eps and mu of the reflector
exchanges the roles of the two polarisations, whence

    trace_m(w; eps, mu) = -(w/c)^2 * trace_e(w; mu, eps).

For the perfect electric mirror this equals +(w/c)^2 * trace_e, which on
the imaginary axis is positive: a magnetically polarisable ground-state
atom is pushed away from an electric mirror, as it must be.  The sign
was pinned independently by an image-dipole computation of the double
curl and is the unique choice under which both potential parts are
invariant under the global duality exchange.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C_LIGHT

from .materials import (
    PERFECT_ELECTRIC_MIRROR,
    PERFECT_MAGNETIC_MIRROR,
    MaterialResponse,
)
from .quadrature import integrate_finite, integrate_semi_infinite

__all__ = [
    "PlanarGeometry",
    "GreenTrace",
    "mirror_green_components",
    "mirror_trace_e",
    "mirror_curlcurl_trace",
    "halfspace_green_traces",
    "d_dz_traces",
]

_FD_STEP_FLOOR = 1e-12  # m; finite-difference step rule, see d_dz_traces


@dataclass(frozen=True)
class PlanarGeometry:
    """A single planar reflector filling z < 0 plus an observation point.

    reflector : MaterialResponse
    z_atom : observation distance above the interface, m, strictly > 0.
    """

    reflector: MaterialResponse
    z_atom: float

    def __post_init__(self):
        if not self.z_atom > 0.0:
            raise ValueError(
                f"observation distance must be > 0, got {self.z_atom}"
            )

    def with_distance(self, z_atom):
        """Same reflector, observation point moved to z_atom."""
        return PlanarGeometry(self.reflector, z_atom)

    def dual(self):
        """Geometry with eps and mu of the reflector exchanged."""
        return PlanarGeometry(self.reflector.dual(), self.z_atom)


@dataclass(frozen=True)
class GreenTrace:
    """Scattering-trace pair at one complex frequency.

    abs_error bounds the quadrature error of both traces (0 for the
    closed-form mirrors and for vacuum).
    """

    freq: complex
    trace_e: complex
    trace_m: complex
    abs_error: float = 0.0


def _validate_freq(freq):
    w = complex(freq)
    if w == 0.0:
        raise ValueError("frequency must be nonzero")
    if w.real != 0.0 and w.imag != 0.0:
        raise ValueError(
            f"frequency must be real or purely imaginary, got {w}"
        )
    if w.real < 0.0 or w.imag < 0.0:
        raise ValueError(
            f"frequency must lie on the positive real or positive "
            f"imaginary axis, got {w}"
        )
    return w


def _validate_distance(z_atom):
    z = float(z_atom)
    if not z > 0.0 or not math.isfinite(z):
        raise ValueError(f"distance above the mirror must be > 0, got {z}")
    return z


# --------------------------------------------------------------------------
# perfect electric mirror, closed forms


def mirror_green_components(z_atom, freq):
    """Diagonal scattering components (G_xx, G_yy, G_zz) of a perfect
    electric mirror at distance z_atom, units 1/m.

    freq may be real positive or purely imaginary (i xi, xi > 0); in the
    latter case the continuation is taken and all components come out
    exactly real.
    """
    z = _validate_distance(z_atom)
    w = _validate_freq(freq)
    zt = 2.0 * w * z / C_LIGHT
    phase = np.exp(1j * zt)
    zt3 = zt**3
    gxx = w * phase * (1.0 - 1j * zt - zt * zt) / (4.0 * np.pi * C_LIGHT * zt3)
    gzz = w * phase * (1.0 - 1j * zt) / (2.0 * np.pi * C_LIGHT * zt3)
    return gxx, gxx, gzz


def mirror_trace_e(z_atom, freq):
    """Tr G1 of the perfect electric mirror, = 2 G_xx + G_zz."""
    gxx, _, gzz = mirror_green_components(z_atom, freq)
    return 2.0 * gxx + gzz


def mirror_curlcurl_trace(z_atom, freq):
    """Tr[curl G1 curl'] of the perfect electric mirror, units 1/m^3.

    By duality this is -(w/c)^2 times the electric trace of the perfect
    magnetic mirror, i.e. +(w/c)^2 * mirror_trace_e.  On the imaginary
    axis the value is real and positive (mirror repels magnetic dipoles).
    """
    w = _validate_freq(freq)
    return (w / C_LIGHT) ** 2 * mirror_trace_e(z_atom, freq)


def _mirror_trace_e_dz(z_atom, freq):
    """Analytic d(trace_e)/dz for the perfect electric mirror.

    d/dz [e^{i zt}(2 - 2 i zt - zt^2)/zt^3]
        = (2 w / c) e^{i zt} (-i zt^3 + 3 zt^2 + 6 i zt - 6) / zt^4
    """
    z = _validate_distance(z_atom)
    w = _validate_freq(freq)
    zt = 2.0 * w * z / C_LIGHT
    phase = np.exp(1j * zt)
    poly = -1j * zt**3 + 3.0 * zt * zt + 6j * zt - 6.0
    return (w / (2.0 * np.pi * C_LIGHT)) * (2.0 * w / C_LIGHT) \
        * phase * poly / zt**4


def _mirror_curlcurl_dz(z_atom, freq):
    w = _validate_freq(freq)
    return (w / C_LIGHT) ** 2 * _mirror_trace_e_dz(z_atom, freq)


# --------------------------------------------------------------------------
# vectorised perfect-mirror kernels for the potential integrands
#
# In the products that appear in the potentials the 1/zt^3 poles cancel
# against explicit frequency powers, e.g.
#     xi^2 trace_e(i xi) = -(c^2/16 pi z^3) e^{-y} (2 + 2y + y^2)
# with y = 2 xi z / c, because (xi/y)^3 = (c/2z)^3.  These kernels are
# written in that pole-free form so the xi -> 0 end of the frequency
# integral never divides by a vanishing y^3.


def _mirror_xi2_trace_e_ixi(z, xi):
    """xi^2 * Tr G1(i xi) of the PEC mirror, vectorised over xi >= 0."""
    y = 2.0 * np.asarray(xi, dtype=float) * z / C_LIGHT
    return -(C_LIGHT**2 / (16.0 * np.pi * z**3)) \
        * np.exp(-y) * (2.0 + 2.0 * y + y * y)


def _mirror_trace_m_ixi(z, xi):
    """Tr[curl G1 curl'](i xi) of the PEC mirror; positive."""
    y = 2.0 * np.asarray(xi, dtype=float) * z / C_LIGHT
    return (1.0 / (16.0 * np.pi * z**3)) \
        * np.exp(-y) * (2.0 + 2.0 * y + y * y)


def _mirror_xi2_dtrace_e_dz_ixi(z, xi):
    """d/dz of xi^2 * Tr G1(i xi), PEC mirror, vectorised."""
    y = 2.0 * np.asarray(xi, dtype=float) * z / C_LIGHT
    return (C_LIGHT**2 / (16.0 * np.pi * z**4)) \
        * np.exp(-y) * (y**3 + 3.0 * y * y + 6.0 * y + 6.0)


def _mirror_dtrace_m_dz_ixi(z, xi):
    y = 2.0 * np.asarray(xi, dtype=float) * z / C_LIGHT
    return -(1.0 / (16.0 * np.pi * z**4)) \
        * np.exp(-y) * (y**3 + 3.0 * y * y + 6.0 * y + 6.0)


def _mirror_re_trace_e(z, omega):
    """Re Tr G1 at real omega, PEC mirror, vectorised over z > 0."""
    zt = 2.0 * omega * np.asarray(z, dtype=float) / C_LIGHT
    return (omega / (2.0 * np.pi * C_LIGHT)) \
        * ((2.0 - zt * zt) * np.cos(zt) + 2.0 * zt * np.sin(zt)) / zt**3


def _mirror_re_dtrace_e_dz(z, omega):
    """d/dz of Re Tr G1 at real omega, PEC mirror, vectorised over z."""
    zt = 2.0 * omega * np.asarray(z, dtype=float) / C_LIGHT
    poly = (3.0 * zt * zt - 6.0) * np.cos(zt) \
        + (zt**3 - 6.0 * zt) * np.sin(zt)
    return (omega**2 / (np.pi * C_LIGHT**2)) * poly / zt**4


# --------------------------------------------------------------------------
# material half-space via Fresnel integrals

# inner-integral tolerances default to one decade looser than potentials
DEFAULT_SOMMERFELD_TOL = 1e-7


def _trace_e_imag_axis(material, z, xi, rel_tol, max_evaluations):
    """Tr G1 at w = i xi for a Drude-Lorentz half-space; exact real.

    With v = kappa_z c / xi in [1, inf), y = 2 xi z / c:

        trace_e = (xi / 4 pi c) Int_1^inf dv e^{-y v}
                  [ r_s(v) - (2 v^2 - 1) r_p(v) ]

        r_s = (mu v - v1)/(mu v + v1),  r_p = (eps v - v1)/(eps v + v1),
        v1  = sqrt(eps mu - 1 + v^2),   eps = eps(i xi), mu = mu(i xi).
    """
    eps = material.epsilon(1j * xi).real
    mu = material.mu(1j * xi).real
    if eps <= 0.0 or mu <= 0.0:
        raise ValueError(
            "eps(i xi) and mu(i xi) must be positive; the oscillator model "
            f"gave eps={eps:.3g}, mu={mu:.3g} at xi={xi:.3g}"
        )
    y = 2.0 * xi * z / C_LIGHT

    def integrand(t):
        v = 1.0 + t
        v1 = np.sqrt(eps * mu - 1.0 + v * v)
        rs = (mu * v - v1) / (mu * v + v1)
        rp = (eps * v - v1) / (eps * v + v1)
        return np.exp(-y * v) * (rs - (2.0 * v * v - 1.0) * rp)

    res = integrate_semi_infinite(integrand, scale=max(1.0 / y, 1.0),
                                  tol=rel_tol,
                                  max_evaluations=max_evaluations)
    pref = xi / (4.0 * np.pi * C_LIGHT)
    return pref * res.value, pref * res.abs_error_estimate


def _trace_e_real_axis(material, z, w, rel_tol, max_evaluations):
    """Tr G1 at real w > 0 for a lossy Drude-Lorentz half-space.

    Split at the vacuum branch point: the propagating part is
    parametrised by gamma = k_z c / w in (0, 1) (bounded oscillation,
    at most zt radians of phase), the evanescent part by b with
    gamma = i b, which decays like e^{-zt b}:

        trace_e = (i w / 4 pi c) * (A - i B)
        A = Int_0^1  dgamma e^{i zt gamma} [r_s + (1 - 2 gamma^2) r_p]
        B = Int_0^inf db     e^{-zt b}     [r_s + (1 + 2 b^2) r_p]

    Loss moves the medium branch point and any surface-mode pole off the
    integration path, which is why the caller must ensure Im eps > 0 or
    Im mu > 0 here.
    """
    eps = material.epsilon(w)
    mu = material.mu(w)
    zt = 2.0 * w * z / C_LIGHT
    em1 = eps * mu - 1.0

    def integrand_A(g):
        g1 = np.sqrt(em1 + g * g + 0j)
        rs = (mu * g - g1) / (mu * g + g1)
        rp = (eps * g - g1) / (eps * g + g1)
        return np.exp(1j * zt * g) * (rs + (1.0 - 2.0 * g * g) * rp)

    def integrand_B(b):
        g = 1j * b
        g1 = np.sqrt(em1 - b * b + 0j)
        rs = (mu * g - g1) / (mu * g + g1)
        rp = (eps * g - g1) / (eps * g + g1)
        return np.exp(-zt * b) * (rs + (1.0 + 2.0 * b * b) * rp)

    # the propagating segment carries zt radians of phase; seed the
    # adaptive rule with about one panel per radian
    res_a = integrate_finite(integrand_A, 0.0, 1.0, tol=rel_tol,
                             max_evaluations=max_evaluations,
                             initial_intervals=int(zt) + 1)
    res_b = integrate_semi_infinite(integrand_B, scale=max(1.0 / zt, 1.0),
                                    tol=rel_tol,
                                    max_evaluations=max_evaluations)
    pref = 1j * w / (4.0 * np.pi * C_LIGHT)
    value = pref * (res_a.value - 1j * res_b.value)
    err = abs(pref) * (res_a.abs_error_estimate + res_b.abs_error_estimate)
    return value, err


def _halfspace_trace_e(material, z, w, rel_tol, max_evaluations):
    if w.real == 0.0:
        return _trace_e_imag_axis(material, z, w.imag, rel_tol,
                                  max_evaluations)
    if not material.is_lossy_at(w.real):
        raise ValueError(
            "real-frequency half-space traces need a lossy reflector at "
            f"that frequency; Im eps <= 0 and Im mu <= 0 at w={w.real:.4g}"
        )
    return _trace_e_real_axis(material, z, w.real, rel_tol, max_evaluations)


def halfspace_green_traces(geometry, freq, rel_tol=DEFAULT_SOMMERFELD_TOL,
                           max_evaluations=100_000):
    """Scattering traces of the geometry's reflector at `freq`.

    Perfect mirrors are served from the closed forms, a vacuum
    half-space returns exact zeros without quadrature, and a material
    half-space is integrated over the transverse wavevector.  freq must
    be purely imaginary, or real with the reflector lossy there (perfect
    mirrors are exempt from the loss requirement).

    Returns
    -------
    GreenTrace with trace_e, trace_m and the achieved quadrature error.
    Both traces are exactly real on the imaginary frequency axis.
    """
    w = _validate_freq(freq)
    z = geometry.z_atom
    material = geometry.reflector

    if material.is_perfect_mirror:
        # the dual of a perfect mirror is its sign-flipped twin, so
        # trace_m = -(w/c)^2 * (-trace_e) = (w/c)^2 * trace_e for both
        sign = 1.0 if material.model == PERFECT_ELECTRIC_MIRROR else -1.0
        te = sign * mirror_trace_e(z, w)
        return GreenTrace(w, te, (w / C_LIGHT) ** 2 * te, 0.0)
    if material.is_vacuum:
        return GreenTrace(w, 0.0, 0.0, 0.0)

    te, err_e = _halfspace_trace_e(material, z, w, rel_tol, max_evaluations)
    # duality: trace_m(eps, mu) = -(w/c)^2 trace_e(mu, eps); on the
    # imaginary axis the factor is +(xi/c)^2 and everything stays real
    te_dual, err_m = _halfspace_trace_e(material.dual(), z, w, rel_tol,
                                        max_evaluations)
    if w.real == 0.0:
        factor = (w.imag / C_LIGHT) ** 2
    else:
        factor = -((w / C_LIGHT) ** 2)
    tm = factor * te_dual
    return GreenTrace(w, te, tm, err_e + abs(factor) * err_m)


# --------------------------------------------------------------------------
# derivatives with respect to the observation distance


def d_dz_traces(geometry, freq, rel_tol=DEFAULT_SOMMERFELD_TOL,
                max_evaluations=100_000):
    """d(trace_e)/dz and d(trace_m)/dz at the geometry's distance.

    Perfect mirrors use the analytic derivatives of the closed forms
    (zero reported error).  Material half-spaces use Richardson-
    extrapolated central differences with step

        h = max(1e-6 * z_atom, 1e-12 m)

    and report |D(h) - D(h/2)|/3 plus the propagated quadrature error as
    the estimate.

    Returns
    -------
    (d_trace_e, d_trace_m, abs_error)
    """
    w = _validate_freq(freq)
    z = geometry.z_atom
    material = geometry.reflector

    if material.model == PERFECT_ELECTRIC_MIRROR:
        de = _mirror_trace_e_dz(z, w)
        return de, _mirror_curlcurl_dz(z, w), 0.0
    if material.model == PERFECT_MAGNETIC_MIRROR:
        de = -_mirror_trace_e_dz(z, w)
        return de, -_mirror_curlcurl_dz(z, w), 0.0
    if material.is_vacuum:
        return 0.0, 0.0, 0.0

    h = max(1e-6 * z, _FD_STEP_FLOOR)

    def traces_at(zz):
        return halfspace_green_traces(geometry.with_distance(zz), w,
                                      rel_tol, max_evaluations)

    tp, tm_ = traces_at(z + h), traces_at(z - h)
    tp2, tm2 = traces_at(z + 0.5 * h), traces_at(z - 0.5 * h)
    quad_err = (tp.abs_error + tm_.abs_error
                + tp2.abs_error + tm2.abs_error) / h

    def richardson(f_p, f_m, f_p2, f_m2):
        d1 = (f_p - f_m) / (2.0 * h)
        d2 = (f_p2 - f_m2) / h
        return (4.0 * d2 - d1) / 3.0, abs(d2 - d1) / 3.0

    de, err_e = richardson(tp.trace_e, tm_.trace_e, tp2.trace_e, tm2.trace_e)
    dm, err_m = richardson(tp.trace_m, tm_.trace_m, tp2.trace_m, tm2.trace_m)
    return de, dm, err_e + err_m + quad_err
