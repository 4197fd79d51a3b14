"""Surface patches in R^4 given by a fourth-order Monge jet.

A patch is the graph (x, y, R(x, y), S(x, y)) with R, S polynomial of degree
<= 4 and vanishing constant/linear parts.  Coefficients are pure Taylor
derivatives: R(x, y) = sum r_jk x^j y^k / (j! k!).  All evaluations are
analytic in the jet; passing Jet2 coordinates yields exact (x, y)-partials of
every derived quantity.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from ._scalars import sqrt_, value
from .poly2 import Poly2
from . import tol as _tol

JET_KEYS = ((2, 0), (1, 1), (0, 2),
            (3, 0), (2, 1), (1, 2), (0, 3),
            (4, 0), (3, 1), (2, 2), (1, 3), (0, 4))

_FACT = {k: math.factorial(k[0]) * math.factorial(k[1]) for k in JET_KEYS}

# flags for the curvature ellipse
NONDEGENERATE = "nondegenerate"
CIRCLE = "circle"
SEGMENT = "segment"
POINT = "point"


class DegenerateFrameError(ValueError):
    """Raised when the evaluated frame is numerically unusable."""


class DegenerateMetricError(ValueError):
    """Raised when EG - F^2 is not positive."""


def _clean(coeffs):
    out = {k: 0.0 for k in JET_KEYS}
    for k, v in coeffs.items():
        key = (int(str(k)[0]), int(str(k)[1])) if isinstance(k, str) else tuple(k)
        if key not in out:
            raise ValueError(f"invalid jet index {k!r}")
        v = float(v)
        if not math.isfinite(v):
            raise ValueError(f"non-finite jet coefficient at {k!r}")
        out[key] = v
    return out


@dataclass(frozen=True)
class MongeJet:
    """Taylor data r_jk, s_jk of the two graph functions, 2 <= j+k <= 4."""

    r: dict
    s: dict

    @classmethod
    def from_coeffs(cls, r=None, s=None):
        return cls(_clean(r or {}), _clean(s or {}))

    @classmethod
    def zero(cls):
        return cls.from_coeffs()

    @classmethod
    def from_json_dict(cls, d):
        return cls.from_coeffs(d.get("r", {}), d.get("s", {}))

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))

    def to_json_dict(self):
        return {
            "r": {f"{j}{k}": self.r[(j, k)] for (j, k) in JET_KEYS},
            "s": {f"{j}{k}": self.s[(j, k)] for (j, k) in JET_KEYS},
        }

    def magnitude(self):
        m = max(max(abs(v) for v in self.r.values()),
                max(abs(v) for v in self.s.values()))
        return m

    def r_poly(self):
        return Poly2(4, {k: self.r[k] / _FACT[k] for k in JET_KEYS})

    def s_poly(self):
        return Poly2(4, {k: self.s[k] / _FACT[k] for k in JET_KEYS})

    @classmethod
    def from_polys(cls, pr, ps, drop_tol=0.0):
        """Rebuild from graph polynomials, checking constant/linear parts."""
        bad = max(abs(pr.c[0][0]), abs(pr.c[1][0]), abs(pr.c[0][1]),
                  abs(ps.c[0][0]), abs(ps.c[1][0]), abs(ps.c[0][1]))
        if bad > max(drop_tol, 1e-9 * (1.0 + pr.max_abs() + ps.max_abs())):
            raise ValueError(f"graph polynomials not in Monge position (|low| = {bad:g})")
        r = {k: pr.c[k[0]][k[1]] * _FACT[k] for k in JET_KEYS}
        s = {k: ps.c[k[0]][k[1]] * _FACT[k] for k in JET_KEYS}
        return cls(r, s)


_PARTIAL_ORDERS = (("Rx", "r", 1, 0), ("Ry", "r", 0, 1),
                   ("Sx", "s", 1, 0), ("Sy", "s", 0, 1),
                   ("Rxx", "r", 2, 0), ("Rxy", "r", 1, 1), ("Ryy", "r", 0, 2),
                   ("Sxx", "s", 2, 0), ("Sxy", "s", 1, 1), ("Syy", "s", 0, 2))


def partial_tables(jet):
    """Precomputed monomial tables for the ten graph partials.

    Each entry is a list of (i, j, coefficient) meaning coefficient x^i y^j;
    evaluating them shares the power lists, which matters in the integrator.
    """
    tables = {}
    for name, comp, dx, dy in _PARTIAL_ORDERS:
        coeffs = jet.r if comp == "r" else jet.s
        terms = []
        for (j, k), c in coeffs.items():
            if c == 0.0 or j < dx or k < dy:
                continue
            jj, kk = j - dx, k - dy
            terms.append((jj, kk, c / (math.factorial(jj) * math.factorial(kk))))
        tables[name] = terms
    return tables


def eval_partial_tables(tables, x, y):
    """Evaluate all ten partials at (x, y); generic scalars."""
    xp = [1.0, x]
    yp = [1.0, y]
    for _ in range(2):
        xp.append(xp[-1] * x)
        yp.append(yp[-1] * y)
    out = {}
    for name, terms in tables.items():
        tot = 0.0
        for i, j, c in terms:
            tot = tot + c * xp[i] * yp[j]
        out[name] = tot
    return out


def graph_partials(jet, x, y):
    """First and second partials of R and S at (x, y); generic scalars."""
    return eval_partial_tables(partial_tables(jet), x, y)


@dataclass
class Frame:
    t1: tuple
    t2: tuple
    n1: tuple
    n2: tuple


def _wedge3(a, b, c, d):
    """n2tilde with det(t1, t2, n1tilde, v) = <n2tilde, v>; a,b,c,d = Rx,Sx,Ry,Sy."""
    return (a * c * d - b * c * c - b,
            -a * a * d + a * b * c - d,
            -a * b - c * d,
            a * a + c * c + 1.0)


def _frame_from_partials(g):
    a, b, c, d = g["Rx"], g["Sx"], g["Ry"], g["Sy"]
    t1 = (1.0, 0.0, a, b)
    t2 = (0.0, 1.0, c, d)
    n1t = (-a, -c, 1.0, 0.0)
    n2t = _wedge3(a, b, c, d)
    n1len = sqrt_(a * a + c * c + 1.0)
    n2len = sqrt_(n2t[0] * n2t[0] + n2t[1] * n2t[1] + n2t[2] * n2t[2] + n2t[3] * n2t[3])
    v1, v2 = value(n1len), value(n2len)
    if not (math.isfinite(v1) and math.isfinite(v2)) or v1 < 1e-14 or v2 < 1e-14:
        raise DegenerateFrameError("degenerate frame")
    n1 = tuple(u / n1len for u in n1t)
    n2 = tuple(u / n2len for u in n2t)
    return Frame(t1, t2, n1, n2)


def frame_at(jet, x, y):
    """Tangent/normal frame {t1, t2, N1, N2}; positively oriented, N's unit."""
    return _frame_from_partials(graph_partials(jet, x, y))


@dataclass
class FundamentalForms:
    E: float
    F: float
    G: float
    e1: float
    f1: float
    g1: float
    e2: float
    f2: float
    g2: float


def forms_from_partials(g):
    """Fundamental forms from precomputed graph partials."""
    a, b, c, d = g["Rx"], g["Sx"], g["Ry"], g["Sy"]
    E = 1.0 + a * a + b * b
    F = a * c + b * d
    G = 1.0 + c * c + d * d
    fr = _frame_from_partials(g)
    n1z = fr.n1[2]  # n1 has zero fourth component by construction
    n2z, n2w = fr.n2[2], fr.n2[3]
    e1 = g["Rxx"] * n1z
    f1 = g["Rxy"] * n1z
    g1 = g["Ryy"] * n1z
    e2 = g["Rxx"] * n2z + g["Sxx"] * n2w
    f2 = g["Rxy"] * n2z + g["Sxy"] * n2w
    g2 = g["Ryy"] * n2z + g["Syy"] * n2w
    return FundamentalForms(E, F, G, e1, f1, g1, e2, f2, g2)


def fundamental_forms_at(jet, x, y):
    """First and second fundamental forms in the frame of frame_at."""
    return forms_from_partials(graph_partials(jet, x, y))


def mean_curvature_vector(f):
    """(h1, h2) in the (N1, N2) frame."""
    den = f.E * f.G - f.F * f.F
    if value(den) <= 0.0:
        raise DegenerateMetricError("EG - F^2 must be positive")
    h1 = (f.E * f.g1 - 2.0 * f.F * f.f1 + f.G * f.e1) / (2.0 * den)
    h2 = (f.E * f.g2 - 2.0 * f.F * f.f2 + f.G * f.e2) / (2.0 * den)
    return h1, h2


def normal_curvature(f, direction):
    """Normal curvature vector components II_i(v)/I(v) for v = (dx, dy)."""
    dx, dy = direction
    quad = f.E * dx * dx + 2.0 * f.F * dx * dy + f.G * dy * dy
    if value(quad) <= 0.0:
        raise ValueError("direction must be nonzero")
    k1 = (f.e1 * dx * dx + 2.0 * f.f1 * dx * dy + f.g1 * dy * dy) / quad
    k2 = (f.e2 * dx * dx + 2.0 * f.f2 * dx * dy + f.g2 * dy * dy) / quad
    return k1, k2


@dataclass
class CurvatureEllipse:
    center: tuple
    l_max: float
    l_min: float
    axes: tuple          # two unit 2-vectors in the (N1, N2) plane
    flag: str
    half_phase: tuple    # (C, D): k_n(theta) = H + C cos 2theta + D sin 2theta


def curvature_ellipse_at(jet, x, y):
    """Curvature ellipse at (x, y): center H, semi-axes, axis directions, flag.

    The image of the metric unit circle under the normal curvature map is
    H + C cos(2t) + D sin(2t); semi-axes are the singular values of [C D].
    """
    f = fundamental_forms_at(jet, x, y)
    E, F, G = f.E, f.F, f.G
    den = E * G - F * F
    if den <= 0.0:
        raise DegenerateMetricError("EG - F^2 must be positive")
    sE = math.sqrt(E)
    w = math.sqrt(E * den)
    u1 = (1.0 / sE, 0.0)
    u2 = (-F / w, E / w)

    def quad_entries(e, ff, g):
        b00 = e * u1[0] * u1[0]
        b01 = u1[0] * (e * u2[0] + ff * u2[1])
        b11 = e * u2[0] * u2[0] + 2.0 * ff * u2[0] * u2[1] + g * u2[1] * u2[1]
        return b00, b01, b11

    b100, b101, b111 = quad_entries(f.e1, f.f1, f.g1)
    b200, b201, b211 = quad_entries(f.e2, f.f2, f.g2)
    center = ((b100 + b111) / 2.0, (b200 + b211) / 2.0)
    C = ((b100 - b111) / 2.0, (b200 - b211) / 2.0)
    D = (b101, b201)
    m = np.array([[C[0], D[0]], [C[1], D[1]]])
    uu, sv, _ = np.linalg.svd(m)
    l_max, l_min = float(sv[0]), float(sv[1])
    axes = (tuple(uu[:, 0]), tuple(uu[:, 1]))

    scale = max(abs(f.e1), abs(f.f1), abs(f.g1), abs(f.e2), abs(f.f2), abs(f.g2), 1e-300)
    eps = _tol.tol(1e-10) * scale
    if l_max <= eps:
        flag = POINT
    elif abs(np.linalg.det(m)) <= eps * scale:
        flag = SEGMENT
    elif l_max - l_min <= eps:
        flag = CIRCLE
    else:
        flag = NONDEGENERATE
    return CurvatureEllipse(center, l_max, l_min, axes, flag, (C, D))
