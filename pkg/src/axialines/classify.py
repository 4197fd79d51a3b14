"""Classification of axiumbilic points from the normal-form pair (a, b).

The singular directions over the point are the roots of P(p) = p R(p) with
R(p) = (p^4 - 6 p^2 + 1) + (1 - p^2)(a + b p); the sign of the discriminant
Delta(a, b) of R, together with the sign of a, separates the stable types
E3 / E4 / E5, and the codimension-one transitions appear on Delta = 0 or at
a = -1 (double root of P at p = 0).  The root-multiplicity structure of P is
the deciding authority whenever the sign rules sit inside a tolerance band.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .normalform import (DegenerateAxiumbilicError, NonReducibleError,
                         invariants_from_jet, reduce_to_normal_form,
                         transversality_T, chi_invariant)
from .quartic import is_axiumbilic, monge_series
from . import tol as _tol

E3 = "E3"
E4 = "E4"
E5 = "E5"
E34_1 = "E34_1"
E45_1 = "E45_1"
DEGENERATE = "Degenerate"
UNCLASSIFIED = "Unclassified"

CUSP_B = 5.0 * math.sqrt(5.0) / 2.0
CUSPS = ((-13.5, CUSP_B), (-13.5, -CUSP_B))


class NotAxiumbilicInput(ValueError):
    """classify_point requires an axiumbilic jet."""


def discriminant_delta(a, b):
    """Discriminant of R as a quintic in a; exact for int/Fraction inputs."""
    q = 16 + b * b
    return (16 * a ** 5 + 4 * (b * b + 68) * a ** 4 + 16 * (b * b + 144) * a ** 3
            - 8 * (b * b - 80) * q * a * a + 96 * q * q * a + 4 * q ** 3)


def delta_scale(a, b):
    """Sum of absolute term magnitudes of Delta; reference for the zero band."""
    q = 16 + b * b
    return (16 * abs(a) ** 5 + 4 * (b * b + 68) * a ** 4
            + 16 * (b * b + 144) * abs(a) ** 3
            + 8 * abs(b * b - 80) * q * a * a + 96 * q * q * abs(a) + 4 * q ** 3)


def r_coefficients(a, b):
    """Coefficients of R(p), leading first."""
    return [1.0, -b, -(6.0 + a), b, 1.0 + a]


def eval_R(a, b, p):
    """R(p) in structural form; R(+-1) = -4 exactly, R(0) = 1 + a exactly."""
    return (((p * p - 6.0) * p * p + 1.0)) + (1.0 - p * p) * (a + b * p)


def _cluster(roots, radius):
    roots = sorted(roots)
    groups = []
    for v in roots:
        if groups and abs(v - groups[-1][-1]) <= radius * (1.0 + abs(v)):
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(float(np.mean(g)), len(g)) for g in groups]


def _real_roots(coeffs, cluster_radius=1e-6):
    arr = [float(c) for c in coeffs]
    scale = max(abs(c) for c in arr)
    while arr and abs(arr[0]) <= 1e-13 * scale:
        arr = arr[1:]
    if len(arr) <= 1:
        return []
    out = []
    for z in np.roots(arr):
        if abs(z.imag) <= 1e-8 * (1.0 + abs(z.real)):
            out.append(float(z.real))
    return _cluster(out, cluster_radius)


def real_roots_R(a, b):
    """Real roots of R with multiplicities; always one < -1 and one > 1."""
    return _real_roots(r_coefficients(a, b))


def p_roots(a, b):
    """Real roots of P = p R(p) with multiplicities."""
    flat = [0.0]
    for v, m in real_roots_R(a, b):
        flat.extend([v] * m)
    return _cluster(flat, 1e-6)


@dataclass
class AxiumbilicClass:
    tag: str
    delta: float | None = None
    a: float | None = None
    b: float | None = None
    p_roots: list = field(default_factory=list)
    chi: float | None = None
    T: float | None = None
    reason: str = ""


def _multiplicity_signature(roots):
    return tuple(sorted(m for _, m in roots))


def classify_ab(a, b):
    """Type from (a, b): sign rules plus the P-root census as arbiter."""
    eps0 = _tol.tol(1e-9) * (1.0 + abs(a))
    delta = discriminant_delta(a, b)
    roots = p_roots(a, b)
    sig = _multiplicity_signature(roots)
    ev = dict(delta=delta, a=a, b=b, p_roots=roots)
    if abs(a) <= eps0:
        return AxiumbilicClass(UNCLASSIFIED, reason="a = 0: transversality fails",
                               **ev)
    band = _tol.tol(1e-7) * delta_scale(a, b)
    near_minus1 = abs(a + 1.0) <= _tol.tol(1e-7) * (1.0 + abs(a))
    excl = _tol.tol(1e-6)
    at_excluded = (near_minus1 and abs(b) <= excl) or any(
        math.hypot(a - ca, b - cb) <= excl * (1.0 + abs(ca) + abs(cb))
        for ca, cb in CUSPS)
    if abs(delta) <= band or near_minus1:
        if at_excluded:
            return AxiumbilicClass(DEGENERATE, reason="excluded boundary point", **ev)
        if sig == (1, 1, 1, 2):
            return AxiumbilicClass(E34_1, **ev)
        return AxiumbilicClass(
            UNCLASSIFIED, reason=f"boundary band but root signature {sig}", **ev)
    if delta < 0.0:
        want, tag = (1, 1, 1), E3
    elif a > 0.0:
        want, tag = (1, 1, 1, 1, 1), E5
    else:
        want, tag = (1, 1, 1, 1, 1), E4
    if sig != want:
        return AxiumbilicClass(
            UNCLASSIFIED,
            reason=f"delta sign suggests {tag} but root signature is {sig}", **ev)
    return AxiumbilicClass(tag, **ev)


def classify_point(jet):
    """Full pipeline: axiumbilic test, T, reduction, (a, b) or chi route."""
    chk = is_axiumbilic(jet)
    if not chk.is_axiumbilic:
        raise NotAxiumbilicInput(
            f"not axiumbilic: residuals ({chk.residual_a0:g}, {chk.residual_b0:g})")
    if chk.degenerate:
        return AxiumbilicClass(DEGENERATE, reason="r=s=0")
    inv = invariants_from_jet(jet)
    T, _ = transversality_T(inv)
    mag = jet.magnitude()
    t_eps = _tol.tol(1e-9) * (1.0 + mag) ** 2
    try:
        nf = reduce_to_normal_form(jet)
    except (DegenerateAxiumbilicError, NonReducibleError) as exc:
        return AxiumbilicClass(DEGENERATE, T=T, reason=str(exc))
    if abs(T) > t_eps:
        cls = classify_ab(nf.a, nf.b)
        cls.T = T
        return cls
    # T = 0: quadratic-contact test through the adapted chart
    ser = monge_series(nf.adapted_jet)
    chi = chi_invariant(ser)
    ev = dict(a=nf.a, b=nf.b, T=T, chi=chi)
    if abs(chi) > _tol.tol(1e-9) * (1.0 + mag) ** 3:
        return AxiumbilicClass(E45_1, delta=discriminant_delta(nf.a, nf.b), **ev)
    return AxiumbilicClass(DEGENERATE, reason="T = 0 and chi = 0", **ev)


@dataclass
class DiagramData:
    a_vals: np.ndarray
    b_vals: np.ndarray
    delta: np.ndarray       # delta[i, j] at (a_vals[j], b_vals[i])
    tags: list              # tags[i][j]
    contour: list           # list of ((a0, b0), (a1, b1)) segments of Delta = 0
    markers: list           # special points: cusps and (-1, 0)
    fit_c: float | None     # measured coefficient in a + 1 ~ c b^2 near (-1, 0)


def _marching_segments(A, B, Z):
    """Zero-level segments of Z on the grid (A columns, B rows), by triangulation."""
    segs = []
    ni, nj = Z.shape
    for i in range(ni - 1):
        for j in range(nj - 1):
            corners = [(A[j], B[i], Z[i, j]), (A[j + 1], B[i], Z[i, j + 1]),
                       (A[j + 1], B[i + 1], Z[i + 1, j + 1]), (A[j], B[i + 1], Z[i + 1, j])]
            cx = 0.25 * sum(c[0] for c in corners)
            cy = 0.25 * sum(c[1] for c in corners)
            cz = 0.25 * sum(c[2] for c in corners)
            pts = []
            for k in range(4):
                x0, y0, z0 = corners[k]
                x1, y1, z1 = corners[(k + 1) % 4]
                tri = ((x0, y0, z0), (x1, y1, z1), (cx, cy, cz))
                cross = []
                for m in range(3):
                    xa, ya, za = tri[m]
                    xb, yb, zb = tri[(m + 1) % 3]
                    if za == 0.0 and zb == 0.0:
                        continue
                    if za * zb <= 0.0 and (za != 0.0 or zb != 0.0):
                        t = za / (za - zb)
                        cross.append((xa + t * (xb - xa), ya + t * (yb - ya)))
                if len(cross) == 2:
                    pts.append((cross[0], cross[1]))
            segs.extend(pts)
    return segs


def stability_diagram(a_range=(-20.0, 5.0), b_range=(-12.0, 12.0), resolution=120):
    """Per-cell class tags, the Delta = 0 contour, and the marked special points."""
    a_vals = np.linspace(a_range[0], a_range[1], resolution)
    b_vals = np.linspace(b_range[0], b_range[1], resolution)
    delta = np.empty((resolution, resolution))
    tags = []
    for i, b in enumerate(b_vals):
        row = []
        for j, a in enumerate(a_vals):
            delta[i, j] = discriminant_delta(a, b)
            row.append(classify_ab(a, b).tag)
        tags.append(row)
    contour = _marching_segments(a_vals, b_vals, delta)
    markers = [(-1.0, 0.0), CUSPS[0], CUSPS[1]]
    fit_c = _fit_parabola_near_minus1(contour)
    return DiagramData(a_vals, b_vals, delta, tags, contour, markers, fit_c)


def _fit_parabola_near_minus1(contour, window=1.5):
    """Least-squares c with a + 1 = c b^2 on contour points near (-1, 0)."""
    pts = []
    for (p0, p1) in contour:
        for (a, b) in (p0, p1):
            if abs(a + 1.0) < window and abs(b) < window and abs(b) > 1e-9:
                pts.append((a, b))
    if len(pts) < 4:
        return None
    num = sum((a + 1.0) * b * b for a, b in pts)
    den = sum(b ** 4 for a, b in pts)
    return num / den if den > 0 else None


def expected_census(tag):
    """Equilibrium kind-counts on the projective line for each stable type."""
    return {
        E3: {"Saddle": 3},
        E4: {"Saddle": 4, "Node": 1},
        E5: {"Saddle": 5},
        E34_1: {"Saddle": 3, "SaddleNode": 1},
    }[tag]
