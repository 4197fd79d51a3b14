"""Reduction of the axial-line equation at an axiumbilic point to the pair (a, b).

A tangent rotation kills the x-coefficient of a0, a homothety normalizes its
y-coefficient to 1, and the equation becomes

    y (dy^4 - 6 dx^2 dy^2 + dx^4) + (a x + b y) dx dy (dx^2 - dy^2) + h.o.t.

The point is transversal (curves a0 = 0, a1 = 0 cross) iff a != 0, which is
equivalent to T = alpha2 alpha3 - alpha1 alpha4 != 0 when (r, s) != 0.
All transforms act on the jet itself as exact polynomial changes of
variables; coefficients are then recomputed, never propagated approximately.
"""

import math
from dataclasses import dataclass

import numpy as np

from .monge import MongeJet
from .poly2 import Poly2
from .quartic import axiumbilic_branch, is_axiumbilic, monge_series
from . import tol as _tol


class NotAxiumbilicError(ValueError):
    """Input jet is not axiumbilic at the origin."""


class DegenerateAxiumbilicError(ValueError):
    """r = s = 0: outside the codimension <= 3 strata handled here."""


class NonReducibleError(ValueError):
    """No admissible rotation yields a usable y-coefficient."""


class NonAdaptedSeriesError(ValueError):
    """Series not in the a10 = b10 = 0, a01 = 1 chart."""


@dataclass
class CubicQuarticInvariants:
    r: float
    s: float
    al1: float
    al2: float
    al3: float
    al4: float
    be1: float
    be2: float
    be3: float
    be4: float
    be5: float
    be6: float


def invariants_from_jet(jet):
    r_, s_ = jet.r, jet.s
    return CubicQuarticInvariants(
        r=r_[(0, 2)] - r_[(2, 0)],
        s=s_[(0, 2)] - s_[(2, 0)],
        al1=s_[(1, 2)] - s_[(3, 0)] + 2.0 * r_[(2, 1)],
        al2=r_[(3, 0)] - r_[(1, 2)] + 2.0 * s_[(2, 1)],
        al3=s_[(0, 3)] - s_[(2, 1)] + 2.0 * r_[(1, 2)],
        al4=r_[(2, 1)] - r_[(0, 3)] + 2.0 * s_[(1, 2)],
        be1=s_[(2, 2)] - s_[(4, 0)] + 2.0 * r_[(3, 1)],
        be2=r_[(4, 0)] - r_[(2, 2)] + 2.0 * s_[(3, 1)],
        be3=s_[(1, 3)] - s_[(3, 1)] + 2.0 * r_[(2, 2)],
        be4=r_[(3, 1)] - r_[(1, 3)] + 2.0 * s_[(2, 2)],
        be5=s_[(0, 4)] - s_[(2, 2)] + 2.0 * r_[(1, 3)],
        be6=r_[(2, 2)] - r_[(0, 4)] + 2.0 * s_[(1, 3)],
    )


def transversality_T(inv):
    """T = al2 al3 - al1 al4 and the full linear-part determinant T (r^2 + s^2)."""
    T = inv.al2 * inv.al3 - inv.al1 * inv.al4
    return T, T * (inv.r * inv.r + inv.s * inv.s)


def rotation_quintic(a10, a01, b10, b01):
    """Real roots t = tan(theta) of the chart-rotation quintic.

    The rotation x = c u + s v, y = -s u + c v kills the u-coefficient of a0
    exactly when t solves
        -a01 t^5 + (a10 - b01) t^4 + (6 a01 + b10) t^3
            + (b01 - 6 a10) t^2 - (a01 + b10) t + a10 = 0.
    When a01 = 0 a rotation by pi/2 also works; it is reported as math.inf.
    """
    coeffs = [-a01, a10 - b01, 6.0 * a01 + b10, b01 - 6.0 * a10,
               -(a01 + b10), a10]
    scale = max(abs(c) for c in coeffs)
    if scale == 0.0:
        raise NonReducibleError("identically-zero rotation quintic")
    cs = [c for c in coeffs]
    while cs and abs(cs[0]) <= 1e-14 * scale:
        cs = cs[1:]
    roots = []
    if len(cs) > 1:
        for z in np.roots(cs):
            if abs(z.imag) <= 1e-9 * (1.0 + abs(z.real)):
                roots.append(float(z.real))
    out = sorted(roots, key=abs)
    if abs(a01) <= 1e-14 * scale:
        out.append(math.inf)
    # polish and keep only genuine roots of the full quintic
    def resid(t):
        return ((((coeffs[0] * t + coeffs[1]) * t + coeffs[2]) * t
                 + coeffs[3]) * t + coeffs[4]) * t + coeffs[5]
    kept = []
    for t in out:
        if math.isinf(t):
            kept.append(t)
            continue
        tt = t
        for _ in range(3):  # Newton polish
            d = ((((5 * coeffs[0] * tt + 4 * coeffs[1]) * tt + 3 * coeffs[2]) * tt
                  + 2 * coeffs[3]) * tt + coeffs[4])
            if d != 0.0:
                tt -= resid(tt) / d
        if abs(resid(tt)) <= 1e-8 * scale * (1.0 + abs(tt)) ** 5:
            kept.append(tt)
    if not kept:
        raise NonReducibleError("rotation quintic has no usable real root")
    return kept


def rotate_jet(jet, theta):
    """Chart rotation x = c u + s v, y = -s u + c v as exact jet composition."""
    c, s = math.cos(theta), math.sin(theta)
    px = Poly2.linear(c, s)
    py = Poly2.linear(-s, c)
    pr = jet.r_poly().compose(px, py)
    ps = jet.s_poly().compose(px, py)
    return MongeJet.from_polys(pr, ps, drop_tol=1e-12 * (1.0 + jet.magnitude()))


def scale_jet(jet, lam):
    """Homothety: degree-n coefficients scale by lam^(1-n)."""
    if not lam > 0.0:
        raise ValueError("homothety factor must be positive")
    r = {k: v * lam ** (1 - k[0] - k[1]) for k, v in jet.r.items()}
    s = {k: v * lam ** (1 - k[0] - k[1]) for k, v in jet.s.items()}
    return MongeJet(r, s)


def _flip_s_jet(jet):
    return MongeJet(dict(jet.r), {k: -v for k, v in jet.s.items()})


@dataclass
class NormalFormAB:
    a: float
    b: float
    theta: float
    lam: float
    transversal: bool
    T: float
    adapted_jet: MongeJet   # rotated + scaled jet: a10 = b10 = 0 (if T = 0), a01 = 1


def reduce_to_normal_form(jet, tolerance=None):
    """Rotation + homothety normalizing the linear part of (a0, a1).

    Root choice: among quintic roots that actually kill a10, the one
    maximizing |a01| after rotation (best conditioned), ties to smallest
    |theta|.  The rotation angle is then shifted by pi if needed so a01 > 0,
    making the homothety factor real.
    """
    chk = is_axiumbilic(jet)
    if not chk.is_axiumbilic:
        raise NotAxiumbilicError(
            f"residuals a0 = {chk.residual_a0:g}, a1 = {chk.residual_b0:g}")
    if chk.degenerate:
        raise DegenerateAxiumbilicError("r = s = 0")
    work = jet if axiumbilic_branch(jet) != "+" else _flip_s_jet(jet)
    ser = monge_series(work)
    mag = work.magnitude()
    eps = tolerance if tolerance is not None else _tol.tol(1e-7) * (1.0 + mag) ** 2
    cands = []
    for t in rotation_quintic(ser.a10, ser.a01, ser.b10, ser.b01):
        theta = math.pi / 2.0 if math.isinf(t) else math.atan(t)
        rj = rotate_jet(work, theta)
        rs = monge_series(rj)
        if abs(rs.a10) <= eps and abs(rs.a01) > eps:
            cands.append((theta, rj, rs))
    if not cands:
        raise NonReducibleError("no rotation kills a10 with usable a01")
    best_a01 = max(abs(c[2].a01) for c in cands)
    cands = [c for c in cands if abs(c[2].a01) >= (1.0 - 1e-9) * best_a01]
    theta, rj, rs = min(cands, key=lambda c: abs(c[0]))
    if rs.a01 < 0.0:
        theta = theta - math.pi if theta > 0.0 else theta + math.pi
        rj = rotate_jet(work, theta)
        rs = monge_series(rj)
    lam = rs.a01 ** (1.0 / 3.0)
    adapted = scale_jet(rj, lam)
    aser = monge_series(adapted)
    a = aser.b10
    b = aser.b01
    inv = invariants_from_jet(jet)
    T, _ = transversality_T(inv)
    transversal = abs(T) > _tol.tol(1e-9) * (1.0 + mag) ** 2
    return NormalFormAB(a, b, theta, lam, transversal, T, adapted)


def chi_invariant(series, tolerance=None):
    """chi = b20 - a20 b01 in the adapted chart (a10 = b10 = 0, a01 = 1)."""
    eps = tolerance if tolerance is not None else _tol.tol(1e-6)
    scale = 1.0 + max(abs(series.a01), abs(series.b01))
    if abs(series.a10) > eps * scale or abs(series.b10) > eps * scale \
            or abs(series.a01 - 1.0) > eps * scale:
        raise NonAdaptedSeriesError(
            f"series not adapted: a10 = {series.a10:g}, b10 = {series.b10:g}, "
            f"a01 = {series.a01:g}")
    if not series.quadratic_valid:
        raise NonAdaptedSeriesError("quadratic series data not valid for this jet")
    return series.b20 - series.a20 * series.b01
