"""Shared example jets.

The family r = 0, s = 2 (r11 = -1, s11 = 0) realizes any prescribed pair
(a, b) = (4 alpha1 / alpha4, 4 alpha3 / alpha4); the named jets below are the
standard representatives of each axiumbilic type used throughout the suite.
"""

import numpy as np
import pytest

from axialines.monge import MongeJet


def jet_e5():
    # alpha = (1, 0, 0, 2)  ->  (a, b) = (2, 0)
    return MongeJet.from_coeffs(r={"11": -1.0}, s={"02": 2.0, "12": 1.0})


def jet_e3():
    # alpha = (-1, 0, 0, 1)  ->  (a, b) = (-4, 0)
    return MongeJet.from_coeffs(r={"11": -1.0, "03": -3.0},
                                s={"02": 2.0, "12": -1.0})


def jet_e4():
    # alpha = (-1, 0, 0, 8)  ->  (a, b) = (-1/2, 0)
    return MongeJet.from_coeffs(r={"11": -1.0, "03": -10.0},
                                s={"02": 2.0, "12": -1.0})


def jet_e34_tangent():
    # alpha = (-1, 0, 1, 4)  ->  (a, b) = (-1, 1): double root of P at p = 0
    return MongeJet.from_coeffs(r={"11": -1.0, "03": -6.0},
                                s={"02": 2.0, "12": -1.0, "03": 1.0})


def jet_e45():
    # T = 0 with chi = 4 (quadratic contact of a0 = 0 and a1 = 0)
    return MongeJet.from_coeffs(r={"02": 2.0, "11": -1.0, "03": -1.0},
                                s={"02": 2.0, "11": 1.0, "22": 1.0})


def jet_ab(a, b):
    """Jet in the r = 0, s = 2 family with prescribed normal-form pair (a, b).

    With s12 = 1 and r21 = s30 = s21 = r12 = 0: alpha4 = 2 - r03, alpha1 = 1 - s30
    ... fixed instead by alpha4 = 4: r03 = -2, s30 = 1 - a, s03 = b.
    """
    return MongeJet.from_coeffs(
        r={"11": -1.0, "03": -2.0},
        s={"02": 2.0, "12": 1.0, "30": 1.0 - a, "03": b})


def e34_transversal_ab(b_target=1.0):
    """(a*, b*) with Delta = 0, a* in (-2, -1): the discriminant-crossing E34."""
    b2 = b_target * b_target
    q = 16.0 + b2
    coeffs = [16.0, 4.0 * (b2 + 68.0), 16.0 * (b2 + 144.0),
              -8.0 * (b2 - 80.0) * q, 96.0 * q * q, 4.0 * q ** 3]
    roots = np.roots(coeffs)
    real = [r.real for r in roots if abs(r.imag) < 1e-9 * (1 + abs(r))]
    cands = [r for r in real if -2.5 < r < -1.0 - 1e-6]
    assert cands, "no transversal E34 root found"
    return max(cands), b_target


def jet_e34_transversal():
    a_star, b_star = e34_transversal_ab()
    return jet_ab(a_star, b_star)


def random_jet(rng, scale=1.0):
    keys = ["20", "11", "02", "30", "21", "12", "03", "40", "31", "22", "13", "04"]
    r = {k: scale * rng.normal() for k in keys}
    s = {k: scale * rng.normal() for k in keys}
    return MongeJet.from_coeffs(r=r, s=s)


def random_axiumbilic_jet(rng, scale=1.0):
    """Random jet satisfying the normalization r11 = -s/2, s11 = r/2."""
    jet = random_jet(rng, scale)
    r = {f"{j}{k}": jet.r[(j, k)] for (j, k) in jet.r}
    s = {f"{j}{k}": jet.s[(j, k)] for (j, k) in jet.s}
    rr = jet.r[(0, 2)] - jet.r[(2, 0)]
    ss = jet.s[(0, 2)] - jet.s[(2, 0)]
    r["11"] = -ss / 2.0
    s["11"] = rr / 2.0
    return MongeJet.from_coeffs(r=r, s=s)


@pytest.fixture
def e5():
    return jet_e5()


@pytest.fixture
def e3():
    return jet_e3()


@pytest.fixture
def e4():
    return jet_e4()


@pytest.fixture
def e34():
    return jet_e34_tangent()


@pytest.fixture
def e45():
    return jet_e45()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
