"""The quartic differential equation of axial curvature lines.

Directions (dx : dy) of the axial crossings at a point solve

    a4 dy^4 + a3 dy^3 dx + a2 dy^2 dx^2 + a1 dy dx^3 + a0 dx^4 = 0,

the vanishing locus of Jac(|k_n - H|^2, I) over the projective tangent line.
The closed-form coefficients below were machine-derived from that Jacobian
(cleared of its EG - F^2 denominator); the a2 coefficient is
12 E^2 F (g1^2 + g2^2) - 12 F G^2 (e1^2 + e2^2) + ..., which also restores the
antisymmetry of the quintuple under swapping the chart axes.

Coefficients are projective: only the common zero set matters.
"""

import math
from dataclasses import dataclass

from ._scalars import Jet2, value
from .monge import fundamental_forms_at
from . import tol as _tol


class NotIsothermicError(ValueError):
    """Raised when an isothermic-only routine gets E != G or F != 0."""


@dataclass
class QuarticCoefficients:
    """Coefficients (a4, a3, a2, a1, a0) of a4 dy^4 + ... + a0 dx^4."""

    a4: float
    a3: float
    a2: float
    a1: float
    a0: float

    def as_tuple(self):
        return (self.a4, self.a3, self.a2, self.a1, self.a0)

    def values(self):
        return tuple(value(c) for c in self.as_tuple())

    def normalized(self):
        """Scale so the largest-magnitude entry is 1 (projective normal form)."""
        vals = self.values()
        m = max(abs(v) for v in vals)
        if m == 0.0:
            return vals
        piv = max(range(5), key=lambda i: abs(vals[i]))
        return tuple(v / vals[piv] for v in vals)


def _pair_sums(f):
    see = f.e1 * f.e1 + f.e2 * f.e2
    sef = f.e1 * f.f1 + f.e2 * f.f2
    seg = f.e1 * f.g1 + f.e2 * f.g2
    sff = f.f1 * f.f1 + f.f2 * f.f2
    sfg = f.f1 * f.g1 + f.f2 * f.g2
    sgg = f.g1 * f.g1 + f.g2 * f.g2
    return see, sef, seg, sff, sfg, sgg


def general_a0_a1(f):
    """The dx^4 and dy dx^3 coefficients; their common zeros are the axiumbilics."""
    E, F, G = f.E, f.F, f.G
    see, sef, seg, sff, sfg, _ = _pair_sums(f)
    eg4f = E * G - 4.0 * F * F
    eg2f = E * G - 2.0 * F * F
    E2 = E * E
    a0 = (4.0 * F * eg2f * see - 4.0 * E * eg4f * sef
          + 4.0 * E2 * E * sfg - 4.0 * E2 * F * seg - 8.0 * E2 * F * sff)
    a1 = (4.0 * G * eg4f * see + 32.0 * E * F * G * sef
          + 4.0 * E2 * E * (f.g1 * f.g1 + f.g2 * f.g2)
          - 8.0 * E2 * G * seg - 16.0 * E2 * G * sff)
    return a0, a1


def quartic_general(f):
    """Full quintuple in a general chart."""
    E, F, G = f.E, f.F, f.G
    see, sef, seg, sff, sfg, sgg = _pair_sums(f)
    eg4f = E * G - 4.0 * F * F
    eg2f = E * G - 2.0 * F * F
    E2, G2 = E * E, G * G
    a4 = (-4.0 * F * eg2f * sgg + 4.0 * G * eg4f * sfg
          + 8.0 * F * G2 * sff + 4.0 * F * G2 * seg - 4.0 * G2 * G * sef)
    a3 = (-4.0 * E * eg4f * sgg - 32.0 * E * F * G * sfg
          + 16.0 * E * G2 * sff - 4.0 * G2 * G * see + 8.0 * E * G2 * seg)
    a2 = (-12.0 * F * G2 * see + 12.0 * E2 * F * sgg
          + 24.0 * E * G2 * sef - 24.0 * E2 * G * sfg)
    a1 = (4.0 * E2 * E * sgg + 4.0 * G * eg4f * see
          + 32.0 * E * F * G * sef - 16.0 * E2 * G * sff - 8.0 * E2 * G * seg)
    a0 = (4.0 * F * eg2f * see - 4.0 * E * eg4f * sef
          + 4.0 * E2 * E * sfg - 4.0 * E2 * F * seg - 8.0 * E2 * F * sff)
    return QuarticCoefficients(a4, a3, a2, a1, a0)


def quartic_prop1(f):
    """Reduced quintuple built from a0, a1 alone; projectively equal to quartic_general."""
    E, F, G = f.E, f.F, f.G
    a0, a1 = general_a0_a1(f)
    E2 = E * E
    c4 = a0 * G * (E * G - 4.0 * F * F) + a1 * F * (2.0 * F * F - E * G)
    c3 = -8.0 * a0 * E * F * G + a1 * E * (4.0 * F * F - E * G)
    c2 = -6.0 * a0 * G * E2 + 3.0 * a1 * F * E2
    c1 = a1 * E2 * E
    c0 = a0 * E2 * E
    return QuarticCoefficients(c4, c3, c2, c1, c0)


def quartic_isothermic(f):
    """Quintuple for isothermic forms (E = G, F = 0).

    Both coefficients carry the same overall factor 4; this makes the
    quadruple agree with quartic_general on isothermic input (cross-checked
    against the Jacobian construction; dropping the 4 from a1 alone would
    change the direction field).
    """
    scale = max(abs(value(f.E)), abs(value(f.G)), 1e-300)
    if abs(value(f.E - f.G)) > _tol.tol(1e-9) * scale or \
            abs(value(f.F)) > _tol.tol(1e-9) * scale:
        raise NotIsothermicError("requires E = G and F = 0")
    E3 = f.E * f.E * f.E
    a1 = 4.0 * E3 * (f.e1 * f.e1 + f.e2 * f.e2 + f.g1 * f.g1 + f.g2 * f.g2
                     - 4.0 * (f.f1 * f.f1 + f.f2 * f.f2)
                     - 2.0 * (f.e1 * f.g1 + f.e2 * f.g2))
    a0 = 4.0 * E3 * (f.f1 * f.g1 + f.f2 * f.g2 - f.e1 * f.f1 - f.e2 * f.f2)
    return QuarticCoefficients(a0, -a1, -6.0 * a0, a1, a0)


def eval_G(q, p):
    """G(p) = a4 p^4 + a3 p^3 + a2 p^2 + a1 p + a0 (Horner)."""
    return (((q.a4 * p + q.a3) * p + q.a2) * p + q.a1) * p + q.a0


def jet_quartic_at(jet, x, y):
    return quartic_general(fundamental_forms_at(jet, x, y))


# ---------------------------------------------------------------------------
# Taylor series of a0, a1 at the origin of a Monge chart


@dataclass
class QuarticSeries:
    """Second-order Taylor data of (a0, a1)/4 at the origin.

    Semantics: a0(x, y) = a00 + a10 x + a01 y + a20 x^2 + a11 x y + a02 y^2
    + h.o.t. (raw monomial coefficients; likewise a1 with b's).  The overall
    /4 matches the classical printed linear coefficients.  Quadratic entries
    are valid only under the axiumbilic normalization r11 = -s/2, s11 = r/2
    (quadratic_valid flag); the linear entries hold for any jet.
    """

    a00: float
    a10: float
    a01: float
    a20: float
    a11: float
    a02: float
    b00: float
    b10: float
    b01: float
    b20: float
    b11: float
    b02: float
    quadratic_valid: bool = True


def _series_linear(jr, js):
    r20, r11, r02 = jr[(2, 0)], jr[(1, 1)], jr[(0, 2)]
    s20, s11, s02 = js[(2, 0)], js[(1, 1)], js[(0, 2)]
    r30, r21, r12, r03 = jr[(3, 0)], jr[(2, 1)], jr[(1, 2)], jr[(0, 3)]
    s30, s21, s12, s03 = js[(3, 0)], js[(2, 1)], js[(1, 2)], js[(0, 3)]
    rr, ss = r02 - r20, s02 - s20
    a00 = r11 * rr + s11 * ss
    a10 = r21 * rr + r11 * (r12 - r30) + s11 * (s12 - s30) + s21 * ss
    a01 = r12 * rr + r11 * (r03 - r21) + s11 * (s03 - s21) + s12 * ss
    b00 = rr * rr + ss * ss - 4.0 * (r11 * r11 + s11 * s11)
    b10 = 2.0 * (r12 - r30) * rr + 2.0 * (s12 - s30) * ss - 8.0 * (r21 * r11 + s21 * s11)
    b01 = 2.0 * (r03 - r21) * rr + 2.0 * (s03 - s21) * ss - 8.0 * (r12 * r11 + s12 * s11)
    return a00, a10, a01, b00, b10, b01


def _series_quadratic(jr, js):
    # valid only under r11 = -s/2, s11 = r/2; corrected closed forms,
    # machine-verified against the exact expansion of general_a0_a1 / 4.
    r20, s20 = jr[(2, 0)], js[(2, 0)]
    r = jr[(0, 2)] - r20
    s = js[(0, 2)] - s20
    r30, r21, r12, r03 = jr[(3, 0)], jr[(2, 1)], jr[(1, 2)], jr[(0, 3)]
    s30, s21, s12, s03 = js[(3, 0)], js[(2, 1)], js[(1, 2)], js[(0, 3)]
    r40, r31, r22, r13, r04 = (jr[(4, 0)], jr[(3, 1)], jr[(2, 2)], jr[(1, 3)], jr[(0, 4)])
    s40, s31, s22, s13, s04 = (js[(4, 0)], js[(3, 1)], js[(2, 2)], js[(1, 3)], js[(0, 4)])
    al1 = s12 - s30 + 2.0 * r21
    al2 = r30 - r12 + 2.0 * s21
    al3 = s03 - s21 + 2.0 * r12
    al4 = r21 - r03 + 2.0 * s12
    be1 = s22 - s40 + 2.0 * r31
    be2 = r40 - r22 + 2.0 * s31
    be3 = s13 - s31 + 2.0 * r22
    be4 = r31 - r13 + 2.0 * s22
    be5 = s04 - s22 + 2.0 * r13
    be6 = r22 - r04 + 2.0 * s13
    rs2 = r20 * r20 + s20 * s20
    r2s2 = r * r + s * s
    cross = r * s20 - s * r20        # rotation-odd metric pairing
    dot = r * r20 + s * s20

    a20 = (-al2 * r21 + al1 * s21
           + (be1 / 4.0 + s20 / 2.0 * rs2) * r + (be2 / 4.0 - r20 / 2.0 * rs2) * s
           + (r20 * r20 - s20 * s20) * s * r
           - 0.375 * r2s2 * cross + r20 * s20 * (s * s - r * r))
    a11 = (-r12 * al2 + s12 * al1 - r21 * al4 + s21 * al3
           + (be3 / 2.0 - r20 * rs2) * r + (be4 / 2.0 - s20 * rs2) * s
           - 2.0 * s20 * r20 * r * s
           - 0.5 * (3.0 * s20 * s20 + r20 * r20) * s * s
           - 0.5 * (3.0 * r20 * r20 + s20 * s20) * r * r
           - 0.375 * r2s2 * r2s2 - 1.25 * r2s2 * dot)
    a02 = (-r12 * al4 + s12 * al3
           + (be5 / 4.0 - s20 / 2.0 * rs2) * r + (be6 / 4.0 + r20 / 2.0 * rs2) * s
           + 2.0 * (r20 * r20 - s20 * s20) * s * r
           + 2.0 * r20 * s20 * (s * s - r * r) - 1.125 * r2s2 * cross)
    b20 = (al1 * al1 + al2 * al2 - 4.0 * (s21 * al2 + r21 * al1)
           + (-be2 + 2.0 * r20 * rs2) * r + (be1 + 2.0 * s20 * rs2) * s
           - 0.5 * r2s2 * dot + 4.0 * cross * cross)
    b11 = (2.0 * (al3 * al1 + al2 * al4)
           - 4.0 * (al1 * r12 + al2 * s12 + al3 * r21 + al4 * s21)
           + 2.0 * (-be4 + 2.0 * s20 * rs2) * r + 2.0 * (be3 - 2.0 * r20 * rs2) * s
           + 4.0 * (s20 * s20 - r20 * r20) * r * s
           + 4.0 * r20 * s20 * (r * r - s * s) + 3.0 * r2s2 * cross)
    b02 = (al3 * al3 + al4 * al4 - 4.0 * (r12 * al3 + s12 * al4)
           + be5 * s - be6 * r
           - 1.5 * r2s2 * r2s2 - 5.5 * r2s2 * dot - 2.0 * rs2 * dot
           - 6.0 * dot * dot + 2.0 * cross * cross)
    return a20, a11, a02, b20, b11, b02


def axiumbilic_branch(jet, tolerance=None):
    """Which branch of the axiumbilic normalization holds, if any.

    Returns '+' for (r11, s11) = (s/2, -r/2), '-' for (-s/2, r/2),
    'both' when r = s = 0 matches both, None otherwise.
    """
    r = jet.r[(0, 2)] - jet.r[(2, 0)]
    s = jet.s[(0, 2)] - jet.s[(2, 0)]
    r11, s11 = jet.r[(1, 1)], jet.s[(1, 1)]
    eps = tolerance if tolerance is not None else \
        _tol.tol(1e-9) * (1.0 + jet.magnitude())
    minus = abs(r11 + s / 2.0) <= eps and abs(s11 - r / 2.0) <= eps
    plus = abs(r11 - s / 2.0) <= eps and abs(s11 + r / 2.0) <= eps
    if plus and minus:
        return "both"
    if minus:
        return "-"
    if plus:
        return "+"
    return None


def _flip_s(jet):
    from .monge import MongeJet
    return MongeJet({k: v for k, v in jet.r.items()},
                    {k: -v for k, v in jet.s.items()})


def monge_series(jet):
    """All twelve series coefficients; quadratic data flagged when invalid.

    The quartic is invariant under reflecting the second normal component, so
    a '+'-branch jet is evaluated through its reflected '-'-branch twin.
    """
    branch = axiumbilic_branch(jet)
    work = jet
    if branch == "+":
        work = _flip_s(jet)
    a00, a10, a01, b00, b10, b01 = _series_linear(work.r, work.s)
    if branch is None:
        a20 = a11 = a02 = b20 = b11 = b02 = float("nan")
        quadratic_valid = False
    else:
        a20, a11, a02, b20, b11, b02 = _series_quadratic(work.r, work.s)
        quadratic_valid = True
    return QuarticSeries(a00, a10, a01, a20, a11, a02,
                         b00, b10, b01, b20, b11, b02, quadratic_valid)


@dataclass
class AxiumbilicCheck:
    is_axiumbilic: bool
    residual_a0: float
    residual_b0: float
    branch: str | None
    degenerate: bool    # r = s = 0


def is_axiumbilic(jet, tolerance=None):
    """Test a0 = a1 = 0 at the origin, with residuals and the branch of the
    circle/line intersection that realizes it."""
    ser = monge_series(jet)
    scale = 1.0 + jet.magnitude() ** 2
    eps = tolerance if tolerance is not None else _tol.tol(1e-9) * scale
    ok = abs(ser.a00) <= eps and abs(ser.b00) <= eps
    r = jet.r[(0, 2)] - jet.r[(2, 0)]
    s = jet.s[(0, 2)] - jet.s[(2, 0)]
    degenerate = math.hypot(r, s) <= _tol.tol(1e-9) * (1.0 + jet.magnitude())
    return AxiumbilicCheck(ok, ser.a00, ser.b00, axiumbilic_branch(jet), degenerate)


def series_from_sampling(jet):
    """Series coefficients read off analytically from the exact a0, a1.

    Independent cross-check of the closed forms: evaluates general_a0_a1 on
    Jet2 coordinates at the origin and converts the 2-jets to raw monomial
    coefficients (with the same /4 normalization).
    """
    x = Jet2.var_x(0.0)
    y = Jet2.var_y(0.0)
    f = fundamental_forms_at(jet, x, y)
    a0, a1 = general_a0_a1(f)
    return (a0.v / 4.0, a0.x / 4.0, a0.y / 4.0,
            a0.xx / 8.0, a0.xy / 4.0, a0.yy / 8.0,
            a1.v / 4.0, a1.x / 4.0, a1.y / 4.0,
            a1.xx / 8.0, a1.xy / 4.0, a1.yy / 8.0)
