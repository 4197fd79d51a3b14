import math

import numpy as np
import pytest

from axialines.monge import MongeJet
from axialines.normalform import (
    DegenerateAxiumbilicError, NonAdaptedSeriesError, NotAxiumbilicError,
    chi_invariant, invariants_from_jet, reduce_to_normal_form, rotate_jet,
    rotation_quintic, scale_jet, transversality_T,
)
from axialines.quartic import QuarticSeries, monge_series
from conftest import jet_e5, jet_e45, random_axiumbilic_jet


def test_invariants_zero_jet():
    inv = invariants_from_jet(MongeJet.zero())
    assert all(getattr(inv, k) == 0.0 for k in
               ("r", "s", "al1", "al2", "al3", "al4",
                "be1", "be2", "be3", "be4", "be5", "be6"))


def test_invariants_s12_only():
    inv = invariants_from_jet(MongeJet.from_coeffs(s={"12": 1.0}))
    assert (inv.al1, inv.al2, inv.al3, inv.al4) == (1.0, 0.0, 0.0, 2.0)


def test_invariants_s22_only():
    inv = invariants_from_jet(MongeJet.from_coeffs(s={"22": 1.0}))
    assert (inv.be1, inv.be3, inv.be4, inv.be5) == (1.0, 0.0, 2.0, -1.0)
    assert (inv.be2, inv.be6) == (0.0, 0.0)


def test_rotation_quintic_zero_constant_term():
    roots = rotation_quintic(0.0, 1.0, 0.0, 3.0)
    assert any(abs(t) < 1e-12 for t in roots)


def test_rotation_quintic_biquadratic_case():
    roots = rotation_quintic(1.0, 0.0, 0.0, 0.0)
    finite = sorted(t for t in roots if math.isfinite(t))
    want = sorted([math.sqrt(3 + 2 * math.sqrt(2)), -math.sqrt(3 + 2 * math.sqrt(2)),
                   math.sqrt(3 - 2 * math.sqrt(2)), -math.sqrt(3 - 2 * math.sqrt(2))])
    assert np.allclose(finite, want, rtol=1e-12)
    assert math.inf in roots  # a01 = 0: rotation by pi/2 admissible


def test_rotation_quintic_residuals(rng):
    for _ in range(40):
        a10, a01, b10, b01 = rng.normal(size=4)
        coeffs = [-a01, a10 - b01, 6 * a01 + b10, b01 - 6 * a10, -(a01 + b10), a10]
        for t in rotation_quintic(a10, a01, b10, b01):
            if math.isfinite(t):
                val = np.polyval(coeffs, t)
                assert abs(val) < 1e-9 * max(abs(c) for c in coeffs) * (1 + abs(t)) ** 5


def test_reduce_e5_example():
    nf = reduce_to_normal_form(jet_e5())
    assert abs(nf.a - 2.0) < 1e-12
    assert abs(nf.b) < 1e-12
    assert nf.transversal


def test_reduce_family_variants():
    jet = MongeJet.from_coeffs(r={"11": -1.0, "03": -3.0}, s={"02": 2.0, "12": -1.0})
    nf = reduce_to_normal_form(jet)
    assert abs(nf.a + 4.0) < 1e-12 and abs(nf.b) < 1e-12
    jet = MongeJet.from_coeffs(r={"11": -1.0, "03": -10.0}, s={"02": 2.0, "12": -1.0})
    nf = reduce_to_normal_form(jet)
    assert abs(nf.a + 0.5) < 1e-12 and abs(nf.b) < 1e-12


def test_reduce_rejects_non_axiumbilic():
    with pytest.raises(NotAxiumbilicError):
        reduce_to_normal_form(MongeJet.from_coeffs(r={"11": 1.0}))


def test_reduce_rejects_degenerate():
    with pytest.raises(DegenerateAxiumbilicError):
        reduce_to_normal_form(MongeJet.zero())


def test_rotation_kills_a10(rng):
    for _ in range(25):
        jet = random_axiumbilic_jet(rng)
        try:
            nf = reduce_to_normal_form(jet)
        except DegenerateAxiumbilicError:
            continue
        ser = monge_series(nf.adapted_jet)
        assert abs(ser.a10) < 1e-9 * (1.0 + jet.magnitude()) ** 2
        assert abs(ser.a01 - 1.0) < 1e-9


def test_normal_form_invariant_under_homothety(rng):
    for lam in (0.5, 2.0, 7.3):
        jet = scale_jet(jet_e5(), lam)
        nf = reduce_to_normal_form(jet)
        assert abs(nf.a - 2.0) < 1e-10
        assert abs(nf.b) < 1e-10


def test_T_sign_invariant_under_rotation(rng):
    for _ in range(20):
        jet = random_axiumbilic_jet(rng)
        T0, _ = transversality_T(invariants_from_jet(jet))
        if abs(T0) < 1e-6:
            continue
        theta = rng.uniform(-math.pi, math.pi)
        T1, _ = transversality_T(invariants_from_jet(rotate_jet(jet, theta)))
        assert T0 * T1 > 0.0


def test_transversality_examples():
    T, det = transversality_T(invariants_from_jet(jet_e5()))
    assert T == -2.0 and det == -8.0
    T, _ = transversality_T(invariants_from_jet(jet_e45()))
    assert T == 0.0
    T, det = transversality_T(invariants_from_jet(MongeJet.zero()))
    assert T == 0.0 and det == 0.0


def test_chi_e45_example():
    assert chi_invariant(monge_series(jet_e45())) == 4.0


def test_chi_degenerate_without_quartic_term():
    jet = MongeJet.from_coeffs(r={"02": 2.0, "11": -1.0, "03": -1.0},
                               s={"02": 2.0, "11": 1.0})
    assert chi_invariant(monge_series(jet)) == 0.0


def test_chi_direct_series():
    ser = QuarticSeries(0, 0, 1, 0, 0, 0, 0, 0, 0.7, 1, 0, 0)
    assert chi_invariant(ser) == 1.0


def test_chi_rejects_non_adapted():
    ser = QuarticSeries(0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0)
    with pytest.raises(NonAdaptedSeriesError):
        chi_invariant(ser)
