"""Mirror closed forms, half-space Sommerfeld integrals, derivatives.

Frozen expected values were computed independently at 50-digit
precision from the closed-form expressions; deviations of the finite-eps
half-space from the perfect-mirror limit were frozen from a QUADPACK
evaluation of the Fresnel integrals (they scale as 2 g(zt) / sqrt(eps),
a physical property of the finite surface impedance, not a quadrature
artifact).
"""

import numpy as np
import pytest
from scipy.constants import c as C_LIGHT

from planarcp import (
    LorentzOscillator,
    MaterialResponse,
    PlanarGeometry,
    d_dz_traces,
    halfspace_green_traces,
    mirror_curlcurl_trace,
    mirror_green_components,
    mirror_trace_e,
)

from conftest import W10, rel_diff, zt_to_z

# sin(1)/(4 pi) to 20 digits; Re G_xx(zt=1) = this * w / c
SIN1_OVER_4PI = 0.066962133350290946577

# components at w = i*xi with 2 xi z / c = 2, xi = 2.5e15 rad/s:
# G_xx = -7 xi e^-2/(32 pi c), G_zz = -3 xi e^-2/(16 pi c)
GXX_Y2 = -78582.98668873430708
GZZ_Y2 = -67356.84573320083464

# half-space deviation from the mirror limit at eps = 1e8 (frozen oracle)
MIRROR_LIMIT_DEVIATION = {0.1: 1.4831e-5, 1.0: 1.0806e-4, 10.0: 1.9542e-4}


def eps_halfspace(value):
    """Dispersionless eps on the imaginary axis is not reachable with a
    physical oscillator, so tests pin eps(i xi) at the probe frequency:
    strength s with resonance wr >> xi gives eps(i xi) ~= 1 + s."""
    return MaterialResponse("drude-lorentz", eps_oscillators=(
        LorentzOscillator(strength=value - 1.0, resonance=1e3 * W10,
                          damping=1e-6 * 1e3 * W10),
    ))


class TestMirrorClosedForm:
    def test_re_gxx_at_unit_phase(self):
        z = zt_to_z(1.0)
        gxx, gyy, gzz = mirror_green_components(z, W10)
        assert gyy == gxx
        assert gxx.real == pytest.approx(SIN1_OVER_4PI * W10 / C_LIGHT,
                                         rel=1e-13)

    def test_small_distance_component_ratio(self):
        # G_zz/G_xx -> 2 with the quadratic correction 2 zt^2
        z = zt_to_z(1e-3)
        gxx, _, gzz = mirror_green_components(z, W10)
        ratio = gzz / gxx
        assert abs(ratio - 2.0) == pytest.approx(2e-6, rel=1e-2)

    def test_frozen_imaginary_axis_components(self):
        xi = W10
        z = C_LIGHT / xi  # y = 2 xi z / c = 2
        gxx, _, gzz = mirror_green_components(z, 1j * xi)
        assert gxx.imag == 0.0 and gzz.imag == 0.0
        assert gxx.real == pytest.approx(GXX_Y2, rel=1e-13)
        assert gzz.real == pytest.approx(GZZ_Y2, rel=1e-13)
        # signs fixed by the continued polynomials (1 + y + y^2), (1 + y)
        assert gxx.real < 0.0 and gzz.real < 0.0

    def test_reality_on_imaginary_axis_random(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            z = 10 ** rng.uniform(-9, -5)
            xi = 10 ** rng.uniform(12, 17)
            gxx, _, gzz = mirror_green_components(z, 1j * xi)
            assert gxx.imag == 0.0
            assert gzz.imag == 0.0

    def test_decay_at_large_distance(self):
        xi = W10
        vals = [abs(mirror_trace_e(zt_to_z(y), 1j * xi))
                for y in (1.0, 5.0, 20.0, 40.0)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1e-12 * vals[0]

    def test_near_field_cubed_divergence(self):
        zts = np.geomspace(1e-4, 1e-3, 15)
        traces = [abs(mirror_trace_e(zt_to_z(zt), 1j * W10)) for zt in zts]
        slope = np.polyfit(np.log(zts), np.log(traces), 1)[0]
        assert -3.01 <= slope <= -2.99

    def test_retarded_oscillation_zero_spacing(self):
        zts = np.arange(50.0, 80.0, 0.005)
        re_gxx = np.array([
            mirror_green_components(zt_to_z(zt), W10)[0].real
            for zt in zts])
        sign_flips = np.nonzero(re_gxx[:-1] * re_gxx[1:] < 0.0)[0]
        crossings = []
        for i in sign_flips:
            frac = re_gxx[i] / (re_gxx[i] - re_gxx[i + 1])
            crossings.append(zts[i] + frac * (zts[i + 1] - zts[i]))
        spacings = np.diff(crossings)
        assert len(spacings) >= 8
        assert abs(spacings[-1] / np.pi - 1.0) < 5e-3
        # spacing closes in on pi as zt grows
        assert abs(spacings[-1] - np.pi) <= abs(spacings[0] - np.pi)

    def test_curlcurl_sign_and_duality_construction(self):
        # positive on the imaginary axis: the mirror repels magnetic
        # dipoles; equals (w/c)^2 trace_e as analytic functions
        z = zt_to_z(1.0)
        tm = mirror_curlcurl_trace(z, 1j * W10)
        assert tm.imag == 0.0
        assert tm.real > 0.0
        te = mirror_trace_e(z, 1j * W10)
        assert tm.real == pytest.approx(-(W10 / C_LIGHT) ** 2 * te.real,
                                        rel=1e-14)

    def test_validation(self):
        with pytest.raises(ValueError):
            mirror_green_components(-1e-9, W10)
        with pytest.raises(ValueError):
            mirror_green_components(0.0, W10)
        with pytest.raises(ValueError):
            mirror_green_components(1e-9, 0.0)
        with pytest.raises(ValueError):
            mirror_green_components(1e-9, complex(W10, W10))
        with pytest.raises(ValueError):
            mirror_green_components(1e-9, -W10)


class TestHalfspace:
    def test_vacuum_is_structurally_zero(self, vacuum):
        geo = PlanarGeometry(vacuum, zt_to_z(1.0))
        tr = halfspace_green_traces(geo, 1j * W10)
        assert tr.trace_e == 0.0
        assert tr.trace_m == 0.0
        assert tr.abs_error == 0.0

    def test_perfect_mirror_models_use_closed_forms(self, pec, pmc):
        z = zt_to_z(0.7)
        tr_pec = halfspace_green_traces(PlanarGeometry(pec, z), 1j * W10)
        tr_pmc = halfspace_green_traces(PlanarGeometry(pmc, z), 1j * W10)
        assert tr_pec.trace_e == mirror_trace_e(z, 1j * W10)
        assert tr_pmc.trace_e == -tr_pec.trace_e
        assert tr_pmc.trace_m == -tr_pec.trace_m
        assert tr_pec.abs_error == 0.0

    @pytest.mark.parametrize("y", [0.1, 1.0, 10.0])
    def test_mirror_limit_frozen_deviation(self, y):
        # at eps = 1e8 the physical deviation from the perfect mirror is
        # 2 g(y)/sqrt(eps); the frozen oracle values pin it to +-10%
        geo = PlanarGeometry(eps_halfspace(1e8), zt_to_z(y))
        tr = halfspace_green_traces(geo, 1j * W10, rel_tol=1e-9)
        closed = mirror_trace_e(zt_to_z(y), 1j * W10)
        rel = rel_diff(tr.trace_e, closed.real)
        assert rel == pytest.approx(MIRROR_LIMIT_DEVIATION[y], rel=0.1)

    def test_mirror_limit_reaches_1e4_at_larger_eps(self):
        # eps = 4e8 brings the deviation below 1e-4 at every probe zt
        for y in (0.1, 1.0, 10.0):
            geo = PlanarGeometry(eps_halfspace(4e8), zt_to_z(y))
            tr = halfspace_green_traces(geo, 1j * W10, rel_tol=1e-9)
            closed = mirror_trace_e(zt_to_z(y), 1j * W10)
            assert rel_diff(tr.trace_e, closed.real) < 1e-4

    def test_mirror_limit_monotone_convergence(self):
        z = zt_to_z(1.0)
        closed = mirror_trace_e(z, 1j * W10).real
        deviations = []
        for eps in (1e2, 1e4, 1e6, 1e8):
            geo = PlanarGeometry(eps_halfspace(eps), z)
            tr = halfspace_green_traces(geo, 1j * W10, rel_tol=1e-9)
            deviations.append(abs(tr.trace_e - closed))
        assert all(a > b for a, b in zip(deviations, deviations[1:]))

    def test_duality_swap_of_traces(self):
        # exchanging eps and mu maps trace_e <-> (c/xi)^2 trace_m on the
        # imaginary axis
        mat = MaterialResponse("drude-lorentz", eps_oscillators=(
            LorentzOscillator(2.0, 1.5 * W10, 0.3 * W10),
        ), mu_oscillators=(
            LorentzOscillator(0.5, 0.8 * W10, 0.2 * W10),
        ))
        xi = 0.9 * W10
        z = zt_to_z(1.3)
        tr = halfspace_green_traces(PlanarGeometry(mat, z), 1j * xi,
                                    rel_tol=1e-10)
        tr_dual = halfspace_green_traces(PlanarGeometry(mat.dual(), z),
                                         1j * xi, rel_tol=1e-10)
        assert tr_dual.trace_e == pytest.approx(
            (C_LIGHT / xi) ** 2 * tr.trace_m, rel=1e-8)
        assert tr_dual.trace_m == pytest.approx(
            (xi / C_LIGHT) ** 2 * tr.trace_e, rel=1e-8)

    def test_reality_on_imaginary_axis(self, lossy_halfspace):
        rng = np.random.default_rng(5)
        for _ in range(10):
            z = 10 ** rng.uniform(-8, -6)
            xi = 10 ** rng.uniform(14, 16)
            tr = halfspace_green_traces(PlanarGeometry(lossy_halfspace, z),
                                        1j * xi)
            assert np.imag(tr.trace_e) == 0.0
            assert np.imag(tr.trace_m) == 0.0

    def test_real_frequency_against_mirror_limit(self):
        # big lossy eps at the probe frequency approaches the mirror
        mat = MaterialResponse("drude-lorentz", eps_oscillators=(
            LorentzOscillator(strength=4e8, resonance=10 * W10,
                              damping=0.1 * W10),
        ))
        assert mat.epsilon(W10).imag > 0.0
        z = zt_to_z(1.0)
        tr = halfspace_green_traces(PlanarGeometry(mat, z), W10,
                                    rel_tol=1e-9)
        assert rel_diff(tr.trace_e, mirror_trace_e(z, W10)) < 1.5e-4
        assert rel_diff(tr.trace_m, mirror_curlcurl_trace(z, W10)) < 5e-4

    def test_real_frequency_needs_loss(self, vacuum):
        gain = MaterialResponse("drude-lorentz", eps_oscillators=(
            LorentzOscillator(0.5, W10, 0.05 * W10, amplifying=True),
        ))
        geo = PlanarGeometry(gain, zt_to_z(1.0))
        with pytest.raises(ValueError, match="lossy"):
            halfspace_green_traces(geo, W10)
        # on the imaginary axis the same reflector is fine
        tr = halfspace_green_traces(geo, 1j * W10)
        assert np.isfinite(tr.trace_e)

    def test_geometry_validation(self, pec):
        with pytest.raises(ValueError):
            PlanarGeometry(pec, 0.0)
        with pytest.raises(ValueError):
            PlanarGeometry(pec, -1e-9)


class TestDerivatives:
    @pytest.mark.parametrize("zt", [0.5, 1.0, 5.0])
    @pytest.mark.parametrize("freq_maker", [lambda: W10, lambda: 1j * W10])
    def test_mirror_analytic_vs_richardson(self, pec, zt, freq_maker):
        freq = freq_maker()
        z = zt_to_z(zt)
        geo = PlanarGeometry(pec, z)
        de, dm, err = d_dz_traces(geo, freq)
        assert err == 0.0
        h = 1e-6 * z

        def fd(f):
            d1 = (f(z + h) - f(z - h)) / (2.0 * h)
            d2 = (f(z + 0.5 * h) - f(z - 0.5 * h)) / h
            return (4.0 * d2 - d1) / 3.0

        fd_e = fd(lambda zz: mirror_trace_e(zz, freq))
        fd_m = fd(lambda zz: mirror_curlcurl_trace(zz, freq))
        assert abs(de - fd_e) <= 1e-6 * abs(fd_e)
        assert abs(dm - fd_m) <= 1e-6 * abs(fd_m)

    def test_derivative_vanishes_far_away(self, pec):
        geo = PlanarGeometry(pec, zt_to_z(45.0))
        de, dm, _ = d_dz_traces(geo, 1j * W10)
        near, _, _ = d_dz_traces(PlanarGeometry(pec, zt_to_z(1.0)), 1j * W10)
        assert abs(de) < 1e-15 * abs(near)

    def test_halfspace_fd_against_mirror_limit(self):
        geo = PlanarGeometry(eps_halfspace(4e8), zt_to_z(1.0))
        de, dm, err = d_dz_traces(geo, 1j * W10, rel_tol=1e-9)
        pec_geo = PlanarGeometry(MaterialResponse("perfect-electric-mirror"),
                                 zt_to_z(1.0))
        de_pec, dm_pec, _ = d_dz_traces(pec_geo, 1j * W10)
        assert rel_diff(de, np.real(de_pec)) < 1e-3
        assert rel_diff(dm, np.real(dm_pec)) < 1e-3
        assert err > 0.0

    def test_vacuum_derivatives_zero(self, vacuum):
        geo = PlanarGeometry(vacuum, zt_to_z(1.0))
        assert d_dz_traces(geo, 1j * W10) == (0.0, 0.0, 0.0)
