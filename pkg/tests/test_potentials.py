"""Single-atom potentials: oracles, symmetry properties, duality.

The nonresonant pipeline is anchored against two textbook limits that
are independent of everything in this package: the retarded potential
-3 hbar c alpha(0) / (32 pi^2 eps0 z^4) and the nonretarded image
potential -|d|^2 / (48 pi eps0 z^3) of a ground-state atom in front of
a perfect mirror.
"""

import numpy as np
import pytest
from scipy.constants import c as C_LIGHT
from scipy.constants import epsilon_0, hbar, mu_0

import planarcp.potentials as potentials_module
from planarcp import (
    AtomModel,
    PlanarGeometry,
    Transition,
    d_dz_traces,
    duality_transform,
    nonresonant_potential,
    resonant_potential,
    resonant_weights,
    total_potential,
)

from conftest import D2, W10, rel_diff, zt_to_z


class TestNonresonant:
    def test_ground_state_attraction_and_trapezoid_oracle(self, ground_atom,
                                                          pec):
        # brute-force oracle: 1e6-point trapezoid of the explicit
        # integrand written out independently of the package internals
        z = zt_to_z(1.0)
        xi_hi = 40.0 * W10
        xi = np.linspace(0.0, xi_hi, 1_000_001)
        alpha = 2.0 * D2 * W10 / (3.0 * hbar * (W10**2 + xi[1:] ** 2))
        y = 2.0 * xi[1:] * z / C_LIGHT
        trace = -(xi[1:] / (2.0 * np.pi * C_LIGHT)) * np.exp(-y) \
            * (2.0 + 2.0 * y + y * y) / y**3
        f = np.empty_like(xi)
        f[1:] = xi[1:] ** 2 * alpha * trace
        f[0] = -(2.0 * D2 / (3.0 * hbar * W10)) \
            * C_LIGHT**2 / (8.0 * np.pi * z**3)  # xi -> 0 limit
        oracle = hbar * mu_0 / (2.0 * np.pi) * np.trapezoid(f, xi)

        value = nonresonant_potential(ground_atom, PlanarGeometry(pec, z),
                                      rel_tol=1e-11)
        assert value < 0.0
        assert rel_diff(value, oracle) < 1e-8

    @pytest.mark.parametrize("zt", [0.1, 1.0, 10.0])
    def test_ground_excited_opposition(self, ground_atom, excited_atom,
                                       pec, zt):
        geo = PlanarGeometry(pec, zt_to_z(zt))
        u_g = nonresonant_potential(ground_atom, geo)
        u_e = nonresonant_potential(excited_atom, geo)
        assert u_g < 0.0
        assert u_e + u_g == 0.0

    def test_ground_state_attractive_everywhere(self, ground_atom, pec):
        for zt in np.geomspace(0.01, 30.0, 12):
            assert nonresonant_potential(
                ground_atom, PlanarGeometry(pec, zt_to_z(zt))) < 0.0

    def test_retarded_textbook_limit(self, ground_atom, pec):
        z = zt_to_z(200.0)
        u = nonresonant_potential(ground_atom, PlanarGeometry(pec, z))
        alpha0 = 2.0 * D2 / (3.0 * hbar * W10)
        u_casimir_polder = -3.0 * hbar * C_LIGHT * alpha0 \
            / (32.0 * np.pi**2 * epsilon_0 * z**4)
        assert rel_diff(u, u_casimir_polder) < 1e-3

    def test_nonretarded_textbook_limit(self, ground_atom, pec):
        z = zt_to_z(1e-3)
        u = nonresonant_potential(ground_atom, PlanarGeometry(pec, z))
        u_image = -D2 / (48.0 * np.pi * epsilon_0 * z**3)
        assert rel_diff(u, u_image) < 1e-3

    def test_monotone_decay_in_retarded_regime(self, ground_atom, pec):
        values = [nonresonant_potential(ground_atom,
                                        PlanarGeometry(pec, zt_to_z(zt)))
                  for zt in np.linspace(5.0, 30.0, 11)]
        assert all(a < b < 0.0 for a, b in zip(values, values[1:]))

    def test_distance_override_argument(self, ground_atom, pec):
        geo = PlanarGeometry(pec, zt_to_z(5.0))
        direct = nonresonant_potential(ground_atom, geo, z_atom=zt_to_z(1.0))
        expected = nonresonant_potential(
            ground_atom, PlanarGeometry(pec, zt_to_z(1.0)))
        assert direct == expected


class TestResonant:
    def test_ground_state_structural_zero(self, ground_atom, pec,
                                          monkeypatch):
        # the zero must come from the empty line list, not from a
        # quadrature of zero: poison the trace evaluation to make sure
        def boom(*args, **kwargs):
            raise AssertionError("traces must not be evaluated")
        monkeypatch.setattr(potentials_module, "halfspace_green_traces",
                            boom)
        geo = PlanarGeometry(pec, zt_to_z(1.0))
        assert resonant_potential(ground_atom, geo) == 0.0
        res = potentials_module._resonant(ground_atom, geo, 1e-9, 1000)
        assert res == (0.0, 0.0)

    def test_near_field_asymptote(self, excited_atom, pec):
        zt = 1e-3
        z = zt_to_z(zt)
        u = resonant_potential(excited_atom, PlanarGeometry(pec, z))
        asymptote = -mu_0 * W10**3 * D2 / (3.0 * np.pi * C_LIGHT * zt**3)
        assert u < 0.0
        assert rel_diff(u, asymptote) < 1e-9

    def test_oscillation_with_inverse_distance_envelope(self, excited_atom,
                                                        pec):
        def window_peak(lo):
            zts = np.linspace(lo, lo + 6.5, 150)
            return max(abs(resonant_potential(
                excited_atom, PlanarGeometry(pec, zt_to_z(t)))) * t
                for t in zts)

        peaks = [window_peak(lo) for lo in (20.0, 40.0, 60.0)]
        assert rel_diff(peaks[0], peaks[1]) < 0.02
        assert rel_diff(peaks[1], peaks[2]) < 0.02
        # and it does oscillate: both signs occur
        signs = {np.sign(resonant_potential(
            excited_atom, PlanarGeometry(pec, zt_to_z(t))))
            for t in np.linspace(20.0, 26.5, 40)}
        assert signs == {-1.0, 1.0}

    def test_lossy_halfspace_value_close_to_mirror(self, excited_atom,
                                                   lossy_halfspace, pec):
        z = zt_to_z(1.0)
        u_hs = resonant_potential(excited_atom,
                                  PlanarGeometry(lossy_halfspace, z))
        u_pec = resonant_potential(excited_atom, PlanarGeometry(pec, z))
        assert np.isfinite(u_hs)
        assert abs(u_hs) < abs(u_pec)  # partial reflection


class TestTotal:
    def test_ground_total_is_nonresonant(self, ground_atom, pec):
        res = total_potential(ground_atom, PlanarGeometry(pec, zt_to_z(1.0)))
        assert res.u_resonant == 0.0
        assert res.u_total == res.u_nonresonant

    def test_sum_is_exact(self, magnetoelectric_atom, pec):
        res = total_potential(magnetoelectric_atom,
                              PlanarGeometry(pec, zt_to_z(0.7)))
        assert res.u_total == res.u_nonresonant + res.u_resonant
        assert res.quadrature_error > 0.0

    @pytest.mark.parametrize("zt", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
    def test_resonant_dominance(self, excited_atom, pec, zt):
        # recorded on a grid rather than assumed: the resonant part
        # dominates for the canonical excited two-level atom
        res = total_potential(excited_atom, PlanarGeometry(pec, zt_to_z(zt)))
        assert abs(res.u_resonant) > abs(res.u_nonresonant)

    def test_linearity_in_dipole_strength(self, excited_atom, pec):
        doubled = AtomModel("e2", (Transition(+W10, 2.0 * D2),))
        geo = PlanarGeometry(pec, zt_to_z(0.8))
        r1 = total_potential(excited_atom, geo)
        r2 = total_potential(doubled, geo)
        assert r2.u_resonant == pytest.approx(2.0 * r1.u_resonant,
                                              rel=1e-12)
        assert r2.u_nonresonant == pytest.approx(2.0 * r1.u_nonresonant,
                                                 rel=1e-12)

    def test_vacuum_reflector_all_zero(self, magnetoelectric_atom, vacuum):
        res = total_potential(magnetoelectric_atom,
                              PlanarGeometry(vacuum, zt_to_z(1.0)))
        assert res == potentials_module.PotentialResult(0.0, 0.0, 0.0, 0.0)


class TestDuality:
    def test_double_transform_is_identity(self, magnetoelectric_atom, pec):
        geo = PlanarGeometry(pec, zt_to_z(1.0))
        atom2, geo2 = duality_transform(
            *duality_transform(magnetoelectric_atom, geo))
        assert geo2 == geo
        assert atom2.state_label == magnetoelectric_atom.state_label
        for t2, t1 in zip(atom2.transitions,
                          magnetoelectric_atom.transitions):
            assert t2.omega_nk == t1.omega_nk
            assert t2.dipole_sq == pytest.approx(t1.dipole_sq, rel=1e-14)
            assert t2.magnetic_sq == pytest.approx(t1.magnetic_sq, rel=1e-14)

    @pytest.mark.parametrize("zt", [0.3, 1.0, 4.0])
    def test_mirror_pair_invariance(self, magnetoelectric_atom, pec, zt):
        geo = PlanarGeometry(pec, zt_to_z(zt))
        dual_atom, dual_geo = duality_transform(magnetoelectric_atom, geo)
        assert dual_geo.reflector.model == "perfect-magnetic-mirror"
        r = total_potential(magnetoelectric_atom, geo)
        rd = total_potential(dual_atom, dual_geo)
        budget = 10.0 * (r.quadrature_error + rd.quadrature_error)
        assert abs(rd.u_nonresonant - r.u_nonresonant) <= budget
        assert abs(rd.u_resonant - r.u_resonant) <= budget

    def test_halfspace_pair_invariance(self, magnetoelectric_atom,
                                       lossy_halfspace):
        geo = PlanarGeometry(lossy_halfspace, zt_to_z(1.0))
        dual_atom, dual_geo = duality_transform(magnetoelectric_atom, geo)
        assert dual_geo.reflector.mu_oscillators \
            == lossy_halfspace.eps_oscillators
        r = total_potential(magnetoelectric_atom, geo)
        rd = total_potential(dual_atom, dual_geo)
        budget = 10.0 * (r.quadrature_error + rd.quadrature_error)
        assert abs(rd.u_nonresonant - r.u_nonresonant) <= budget
        assert abs(rd.u_resonant - r.u_resonant) <= budget


class TestGradient:
    @pytest.mark.parametrize("zt", [0.5, 1.0, 5.0])
    def test_resonant_gradient_consistency(self, excited_atom, pec, zt):
        # analytic dU_r/dz assembled from the trace derivatives vs a
        # Richardson finite difference of the potential itself
        z = zt_to_z(zt)
        geo = PlanarGeometry(pec, z)
        lines = resonant_weights(excited_atom)
        analytic = 0.0
        for line in lines:
            de, dm, _ = d_dz_traces(geo, line.omega)
            analytic += (line.electric_weight * line.omega**2 * np.real(de)
                         - line.magnetic_weight * np.real(dm))
        analytic *= -hbar * mu_0 / np.pi

        h = 1e-6 * z
        u = lambda zz: resonant_potential(excited_atom,
                                          PlanarGeometry(pec, zz))
        d1 = (u(z + h) - u(z - h)) / (2.0 * h)
        d2 = (u(z + 0.5 * h) - u(z - 0.5 * h)) / h
        fd = (4.0 * d2 - d1) / 3.0
        assert rel_diff(analytic, fd) < 1e-6
