import math

import numpy as np
import pytest

from axialines.monge import FundamentalForms, MongeJet, fundamental_forms_at
from axialines.quartic import (
    NotIsothermicError, eval_G, is_axiumbilic, jet_quartic_at, monge_series,
    quartic_general, quartic_isothermic, quartic_prop1, series_from_sampling,
)
from conftest import jet_e5, jet_e45, random_axiumbilic_jet, random_jet


def random_forms(rng, isothermic=False):
    E = rng.uniform(0.5, 2.0)
    if isothermic:
        F, G = 0.0, E
    else:
        G = rng.uniform(0.5, 2.0)
        F = rng.uniform(-0.5, 0.5) * math.sqrt(E * G)
    e1, f1, g1, e2, f2, g2 = rng.normal(size=6)
    return FundamentalForms(E, F, G, e1, f1, g1, e2, f2, g2)


def proj_dist(u, v):
    u = np.asarray(u, float)
    v = np.asarray(v, float)
    u = u / np.abs(u).max()
    v = v / np.abs(v).max()
    return min(np.abs(u - v).max(), np.abs(u + v).max())


def quartic_roots(q):
    c = [q.a4, q.a3, q.a2, q.a1, q.a0]
    while c and abs(c[0]) < 1e-13 * max(abs(x) for x in c):
        c = c[1:]
    if len(c) <= 1:
        return np.array([])
    return np.roots(c)


def test_point_ellipse_gives_zero_quartic():
    f = FundamentalForms(1, 0, 1, 1, 0, 1, 0, 0, 0)
    assert quartic_general(f).values() == (0.0, 0.0, 0.0, 0.0, 0.0)


def test_minimal_like_example():
    f = FundamentalForms(1, 0, 1, 1, 0, -1, 0, 0, 0)
    q = quartic_general(f)
    assert q.a1 == 16.0 and q.a3 == -16.0
    assert q.a0 == 0.0 and q.a2 == 0.0 and q.a4 == 0.0
    # direction roots p in {0, +-1, infinity}
    roots = sorted(quartic_roots(q).real)
    assert np.allclose(roots, [-1.0, 0.0, 1.0], atol=1e-12)


def test_isothermic_identities_random(rng):
    for _ in range(100):
        f = random_forms(rng, isothermic=True)
        q = quartic_general(f)
        scale = max(abs(v) for v in q.values()) + 1e-300
        assert abs(q.a4 - q.a0) < 1e-12 * scale
        assert abs(q.a3 + q.a1) < 1e-12 * scale
        assert abs(q.a2 + 6.0 * q.a0) < 1e-12 * scale


def test_prop1_projectively_equals_general_isothermic(rng):
    for _ in range(50):
        f = random_forms(rng, isothermic=True)
        assert proj_dist(quartic_general(f).values(), quartic_prop1(f).values()) < 1e-10


def test_prop1_zero_on_circle_like():
    f = FundamentalForms(1.3, 0, 1.3, 1, 0, 1, 0, 0, 0)
    assert all(abs(v) < 1e-14 for v in quartic_prop1(f).values())


def test_prop1_root_sets_match_general(rng):
    for _ in range(50):
        f = random_forms(rng)
        rg = np.sort_complex(quartic_roots(quartic_general(f)))
        rp = np.sort_complex(quartic_roots(quartic_prop1(f)))
        assert len(rg) == len(rp)
        if len(rg):
            assert np.allclose(rg, rp, atol=1e-8, rtol=1e-8)


def test_isothermic_circle_case_zero():
    f = FundamentalForms(1, 0, 1, 1, 0, 1, 0, 0, 0)
    assert all(v == 0.0 for v in quartic_isothermic(f).values())


def test_isothermic_example_frozen():
    # E = G = 1, f1 = 1, g1 = 1, rest 0.  Direct substitution gives
    # a0 = 4[f1 g1] = 4 and a1 = 4[g1^2 - 4 f1^2] = -12, so the quintuple is
    # (4, 12, -24, -12, 4); cross-checked against quartic_general below.
    f = FundamentalForms(1, 0, 1, 0, 1, 1, 0, 0, 0)
    q = quartic_isothermic(f)
    assert q.values() == (4.0, 12.0, -24.0, -12.0, 4.0)
    assert proj_dist(q.values(), quartic_general(f).values()) < 1e-12


def test_isothermic_agrees_with_general_random(rng):
    for _ in range(100):
        f = random_forms(rng, isothermic=True)
        qg = quartic_general(f).values()
        qi = quartic_isothermic(f).values()
        if max(abs(v) for v in qg) < 1e-12:
            continue
        assert proj_dist(qg, qi) < 1e-10


def test_isothermic_rejects_general_input():
    with pytest.raises(NotIsothermicError):
        quartic_isothermic(FundamentalForms(1, 0.2, 1, 1, 0, 0, 0, 0, 0))


def test_eval_G_examples():
    from axialines.quartic import QuarticCoefficients
    assert eval_G(QuarticCoefficients(0, 0, 0, 0, 1), 123.0) == 1.0
    assert eval_G(QuarticCoefficients(1, 0, -6, 0, 1), 1.0) == -4.0


def test_eval_G_vanishes_on_roots_of_e5_jet():
    q = jet_quartic_at(jet_e5(), 0.05, 0.02)
    for p in quartic_roots(q):
        if abs(p.imag) < 1e-10:
            assert abs(eval_G(q, p.real)) < 1e-9 * max(abs(v) for v in q.values())


def test_monge_series_zero_jet():
    ser = monge_series(MongeJet.zero())
    assert (ser.a00, ser.a10, ser.a01, ser.b00, ser.b10, ser.b01) == (0.0,) * 6
    assert ser.quadratic_valid


def test_monge_series_e45_example():
    ser = monge_series(jet_e45())
    assert (ser.a10, ser.a01) == (0.0, 1.0)
    assert (ser.b10, ser.b01) == (0.0, -4.0)
    assert ser.a20 == 0.5 and ser.b20 == 2.0
    assert ser.b20 - ser.a20 * ser.b01 == 4.0  # chi


def test_monge_series_matches_exact_derivatives(rng):
    # the closed forms must equal the analytic 2-jet of the exact a0, a1
    for _ in range(50):
        jet = random_axiumbilic_jet(rng)
        ser = monge_series(jet)
        assert ser.quadratic_valid
        exact = series_from_sampling(jet)
        mine = (ser.a00, ser.a10, ser.a01, ser.a20, ser.a11, ser.a02,
                ser.b00, ser.b10, ser.b01, ser.b20, ser.b11, ser.b02)
        scale = 1.0 + max(abs(v) for v in exact)
        for m, e in zip(mine, exact):
            assert abs(m - e) < 1e-9 * scale


def test_monge_series_linear_only_for_unnormalized(rng):
    jet = random_jet(rng)
    ser = monge_series(jet)
    exact = series_from_sampling(jet)
    scale = 1.0 + max(abs(v) for v in exact)
    for m, e in zip((ser.a00, ser.a10, ser.a01), exact[0:3]):
        assert abs(m - e) < 1e-9 * scale
    for m, e in zip((ser.b00, ser.b10, ser.b01), exact[6:9]):
        assert abs(m - e) < 1e-9 * scale
    assert not ser.quadratic_valid


def test_series_taylor_consistency_on_grid(rng):
    # sampled a0/4, a1/4 agree with the series to cubic order on a small grid
    for _ in range(50):
        jet = random_axiumbilic_jet(rng)
        ser = monge_series(jet)
        hs = (1e-2, 5e-3)
        worst = {}
        for h in hs:
            worst[h] = 0.0
            for x in np.linspace(-h, h, 5):
                for y in np.linspace(-h, h, 5):
                    q = jet_quartic_at(jet, x, y)
                    s0 = (ser.a00 + ser.a10 * x + ser.a01 * y
                          + ser.a20 * x * x + ser.a11 * x * y + ser.a02 * y * y)
                    s1 = (ser.b00 + ser.b10 * x + ser.b01 * y
                          + ser.b20 * x * x + ser.b11 * x * y + ser.b02 * y * y)
                    worst[h] = max(worst[h],
                                   abs(q.a0 / 4.0 - s0), abs(q.a1 / 4.0 - s1))
        bound = 60.0 * (1.0 + jet.magnitude()) ** 4
        assert worst[1e-2] <= bound * 1e-6
        assert worst[5e-3] <= bound * 1.25e-7


def test_quadruple_covering_count(rng):
    # generically four real directions near (but off) an axiumbilic point
    q = jet_quartic_at(jet_e5(), 0.08, -0.03)
    roots = quartic_roots(q)
    nreal = sum(1 for p in roots if abs(p.imag) < 1e-8 * (1 + abs(p.real)))
    extra = 1 if abs(q.a4) < 1e-12 * max(abs(v) for v in q.values()) else 0
    assert nreal + extra == 4


def test_is_axiumbilic_examples():
    chk = is_axiumbilic(MongeJet.zero())
    assert chk.is_axiumbilic and chk.degenerate

    jet = MongeJet.from_coeffs(r={"11": -1.0}, s={"02": 2.0})
    chk = is_axiumbilic(jet)
    assert chk.is_axiumbilic and chk.branch == "-" and not chk.degenerate

    jet = MongeJet.from_coeffs(r={"11": 1.0})
    chk = is_axiumbilic(jet)
    assert not chk.is_axiumbilic
    assert chk.residual_b0 == -4.0


def test_axiumbilic_residuals_vanish_to_tolerance(rng):
    for _ in range(30):
        jet = random_axiumbilic_jet(rng)
        chk = is_axiumbilic(jet)
        assert chk.is_axiumbilic
        assert abs(chk.residual_a0) < 1e-12 * (1 + jet.magnitude() ** 2)
