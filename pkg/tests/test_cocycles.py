"""Cocycle constructors, laws, and growth envelopes against closed forms."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wcsg import holo
from wcsg.cocycles import (
    boundary_grid,
    cocycle_from_g,
    cocycle_law_residual,
    coboundary,
    coboundary_admissibility,
    derivative_cocycle,
    g_from_coboundary,
    growth_fit,
    mdot0,
    trivial_cocycle,
)
from wcsg.errors import DegenerateFixedPoint, OrderMismatch, ZeroNotFixed
from wcsg.flows import disc_sample_grid, make_catalog_semiflow

TS = (0.0, 0.1, 0.5, 1.0)
GRID = disc_sample_grid(0.95)


def dilation(c=1.0):
    return make_catalog_semiflow("dilation", {"c": c})


class TestIntegralCocycle:
    def test_constant_integrand(self):
        m = cocycle_from_g(holo.constant(-1.0), dilation())
        for z in (0.0, 0.3 + 0.2j):
            assert complex(np.asarray(m(0.7, z))) == pytest.approx(
                math.exp(-0.7), abs=1e-12
            )
        assert m.constant_in_z

    def test_matches_derivative_cocycle_of_dilation(self):
        # g = -1 integrates to e^{-t}, which is exactly phi_t' for the dilation
        phi = dilation(1.0)
        m_int = cocycle_from_g(holo.constant(-1.0), phi)
        m_der = derivative_cocycle(phi)
        pts = disc_sample_grid(0.9)
        for t in (0.3, 1.0):
            gap = np.max(np.abs(np.asarray(m_int(t, pts)) - np.asarray(m_der(t, pts))))
            assert gap < 1e-10

    def test_zero_integrand_gives_one(self):
        m = cocycle_from_g(holo.constant(0.0), make_catalog_semiflow("attracting"))
        assert complex(np.asarray(m(2.0, 0.4))) == pytest.approx(1.0, abs=1e-14)

    def test_law_residual_nonconstant_g(self):
        phi = make_catalog_semiflow("attracting")
        m = cocycle_from_g(holo.coordinate(), phi)
        assert cocycle_law_residual(m, phi, TS, GRID) < 1e-7
        assert not m.constant_in_z

    def test_never_vanishes(self):
        m = cocycle_from_g(holo.coordinate(), make_catalog_semiflow("attracting"))
        vals = np.abs(np.asarray(m(1.0, GRID)))
        assert np.min(vals) > 0.0

    def test_exponential_representation_self_consistency(self):
        # m_t(z) agrees with exp of the time integral of the *recovered*
        # derivative-at-zero along the orbit
        phi = make_catalog_semiflow("attracting")
        m = cocycle_from_g(holo.poly([0.5, -1.0]), phi)
        xs, ws = np.polynomial.legendre.leggauss(16)
        for z in (0.3, -0.2 + 0.4j):
            for t in (0.5, 1.0):
                nodes = 0.5 * t * (xs + 1.0)
                acc = 0.0 + 0.0j
                for s_node, w in zip(nodes, 0.5 * t * ws):
                    orbit_pt = complex(np.asarray(phi(s_node, z)))
                    acc += w * mdot0(m, orbit_pt).value
                rebuilt = np.exp(acc)
                direct = complex(np.asarray(m(t, z)))
                assert abs(direct - rebuilt) < 1e-7


class TestCoboundary:
    def test_identity_symbol_dilation(self):
        # omega = z, Fix = {0}, order 1: m_t = e^{-ct} everywhere including 0
        phi = dilation(1.0)
        m = coboundary(holo.coordinate(), phi, {0.0: 1})
        t = 0.8
        for z in (0.0, 0.5, 0.2 - 0.4j):
            assert complex(np.asarray(m(t, z))) == pytest.approx(math.exp(-t), abs=1e-11)

    def test_square_symbol_value_at_zero(self):
        # omega = z^2: the quotient limit at 0 is e^{-2t}
        phi = dilation(1.0)
        m = coboundary(holo.monomial(2), phi, {0.0: 2})
        assert complex(np.asarray(m(1.0, 0.0))) == pytest.approx(
            math.exp(-2.0), abs=1e-12
        )

    def test_nonvanishing_symbol_gives_quotient(self):
        # omega with no zeros: plain quotient, equals 1 for the identity flow
        phi = make_catalog_semiflow("identity")
        m = coboundary(holo.exp_fn(), phi, {})
        assert complex(np.asarray(m(3.0, 0.3))) == pytest.approx(1.0, abs=1e-14)

    def test_moving_zero_rejected(self):
        phi = make_catalog_semiflow("attracting")  # fixes nothing inside the disc
        with pytest.raises(ZeroNotFixed):
            coboundary(holo.coordinate(), phi, {0.0: 1})

    def test_wrong_order_detected(self):
        phi = dilation(1.0)
        with pytest.raises(OrderMismatch):
            coboundary(holo.monomial(2), phi, {0.0: 1})

    def test_law_residual(self):
        phi = dilation(1.0)
        m = coboundary(holo.monomial(2), phi, {0.0: 2})
        assert cocycle_law_residual(m, phi, TS, GRID) < 1e-10

    def test_coboundary_equals_integral_form(self):
        # quotient cocycle == exp-integral of G omega'/omega (extended at zeros)
        phi = dilation(1.0)
        omega = holo.monomial(2)
        m_cob = coboundary(omega, phi, {0.0: 2})
        g = g_from_coboundary(omega, phi.generator, {0.0: 2})
        m_int = cocycle_from_g(g, phi)
        pts = disc_sample_grid(0.9)
        for t in (0.25, 1.0):
            gap = np.max(np.abs(np.asarray(m_cob(t, pts)) - np.asarray(m_int(t, pts))))
            assert gap < 1e-7


class TestMdot0:
    def test_round_trip_with_square_integrand(self):
        phi = make_catalog_semiflow("attracting")
        g = holo.monomial(2)
        m = cocycle_from_g(g, phi)
        for z in (0.3, -0.2 + 0.4j):
            est = mdot0(m, z)
            assert est.value == pytest.approx(complex(z) ** 2, abs=1e-6)

    def test_derivative_cocycle_constant(self):
        c = 0.7
        m = derivative_cocycle(dilation(c))
        for z in (0.0, 0.5j):
            est = mdot0(m, z)
            assert est.value == pytest.approx(-c, abs=1e-8)

    def test_trivial(self):
        est = mdot0(trivial_cocycle(), 0.4)
        assert abs(est.value) < 1e-12


class TestAdmissibility:
    def test_derivative_cocycle_of_dilation_is_admissible(self):
        # G = -z, G' = -1, g = -1 at the fixed point 0: ratio 1, order 1
        phi = dilation(1.0)
        verdict = coboundary_admissibility(
            holo.constant(-1.0), phi.generator, holo.constant(-1.0), [0.0]
        )
        rec = verdict.records[0]
        assert rec.admissible and rec.nearest_order == 1
        assert rec.ratio == pytest.approx(1.0, abs=1e-12)

    def test_half_ratio_not_admissible(self):
        phi = dilation(1.0)
        verdict = coboundary_admissibility(
            holo.constant(-0.5), phi.generator, holo.constant(-1.0), [0.0]
        )
        rec = verdict.records[0]
        assert not rec.admissible
        assert rec.ratio == pytest.approx(0.5, abs=1e-12)

    def test_vanishing_g_admissible_order_zero(self):
        phi = dilation(1.0)
        verdict = coboundary_admissibility(
            holo.constant(0.0), phi.generator, holo.constant(-1.0), [0.0]
        )
        rec = verdict.records[0]
        assert rec.admissible and rec.nearest_order == 0

    def test_degenerate_derivative(self):
        G = holo.monomial(2)  # G'(0) = 0
        with pytest.raises(DegenerateFixedPoint):
            coboundary_admissibility(holo.constant(1.0), G, None, [0.0])

    def test_cauchy_fallback_when_gprime_missing(self):
        phi = dilation(1.0)
        verdict = coboundary_admissibility(
            holo.constant(-1.0), phi.generator, None, [0.0]
        )
        assert verdict.records[0].admissible


class TestGrowthFit:
    def test_pure_decay(self):
        m = derivative_cocycle(dilation(1.0))  # m_t = e^{-t}
        fit = growth_fit(m, (0.0, 0.25, 0.5, 1.0), boundary_grid())
        assert fit.M == pytest.approx(1.0, abs=1e-6)
        assert fit.omega == pytest.approx(-1.0, abs=1e-6)
        assert fit.dominates()

    def test_trivial(self):
        fit = growth_fit(trivial_cocycle(), (0.0, 0.5, 1.0), boundary_grid())
        assert fit.M == pytest.approx(1.0, abs=1e-12)
        assert abs(fit.omega) < 1e-12

    def test_negative_real_part_envelope(self):
        # sup Re g <= 0 forces omega <= 0 and M ~ 1
        phi = make_catalog_semiflow("attracting")
        g = holo.poly([-1.0, -1.0])  # -1 - z, Re <= 0 on the disc
        m = cocycle_from_g(g, phi)
        fit = growth_fit(m, (0.0, 0.25, 0.5, 1.0), boundary_grid())
        assert fit.omega <= 1e-6
        assert fit.dominates()
        # every sample sits under the analytic envelope e^{t sup Re g} = 1
        assert all(s <= 1.0 + 1e-9 for _, s in fit.samples)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.0, max_value=1.5), st.floats(min_value=0.0, max_value=1.5))
def test_cocycle_law_property(t, s):
    phi = dilation(0.5)
    m = derivative_cocycle(phi)
    pts = disc_sample_grid(0.8, n_radii=2, n_angles=4)
    lhs = np.asarray(m(t + s, pts))
    rhs = np.asarray(m(t, pts)) * np.asarray(m(s, np.asarray(phi(t, pts))))
    assert float(np.max(np.abs(lhs - rhs))) < 1e-12
