"""Lift of the quartic equation to the surface G(x, y, p) = 0 and its flow.

With p = dy/dx the lifted surface carries the tangent field

    X = G_p d/dx + p G_p d/dy - (G_x + p G_y) d/dp,

whose integral curves project onto the axial curvature lines; X . grad G = 0
identically by construction.  Near-vertical directions switch to the chart
q = dx/dy, where the quartic coefficients simply reverse order.

All partial derivatives of G come from evaluating the coefficient functions
on Jet2 scalars; nothing is differenced numerically.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._scalars import Jet1, Jet2
from .monge import (eval_partial_tables, forms_from_partials,
                    fundamental_forms_at, partial_tables)
from .quartic import quartic_general
from .classify import r_coefficients, real_roots_R
from . import tol as _tol

SADDLE = "Saddle"
NODE = "Node"
SADDLE_NODE = "SaddleNode"
MORSE_CONE = "MorseCone"


# ---------------------------------------------------------------------------
# G sources: anything that yields the quartic coefficient field (x, y) -> a[0..4]


class QuarticField:
    """G(x, y, p) = sum a_i(x, y) p^i from a coefficient-field callable."""

    def __init__(self, coeff_fn):
        self._fn = coeff_fn

    def coeffs(self, x, y):
        """(a4, a3, a2, a1, a0) -> stored ascending: index i multiplies p^i."""
        a4, a3, a2, a1, a0 = self._fn(x, y)
        return (a0, a1, a2, a3, a4)

    def coeffs_jet(self, x, y):
        return self.coeffs(Jet2.var_x(x), Jet2.var_y(y))

    def coeffs_d1(self, x, y):
        return self.coeffs(Jet1.var_x(x), Jet1.var_y(y))

    def value(self, x, y, u, chart="p"):
        c = self.coeffs(x, y)
        if chart == "q":
            c = c[::-1]
        tot = 0.0
        for ci in reversed(c):
            tot = tot * u + ci
        return tot


def jet_source(jet):
    tables = partial_tables(jet)

    def fn(x, y):
        g = eval_partial_tables(tables, x, y)
        return quartic_general(forms_from_partials(g)).as_tuple()
    return QuarticField(fn)


def normal_form_source(a, b):
    """G = y (p^4 - 6 p^2 + 1) + (a x + b y) p (1 - p^2)."""
    def fn(x, y):
        a0 = y * 1.0
        a1 = a * x + b * y
        return (a0, -a1, -6.0 * a0, a1, a0)
    return QuarticField(fn)


def series_source(ser):
    """G from the quadratic Taylor model of (a0, a1) in the adapted chart."""
    def fn(x, y):
        a0 = (ser.a00 + ser.a10 * x + ser.a01 * y
              + ser.a20 * x * x + ser.a11 * x * y + ser.a02 * y * y)
        a1 = (ser.b00 + ser.b10 * x + ser.b01 * y
              + ser.b20 * x * x + ser.b11 * x * y + ser.b02 * y * y)
        return (a0, -a1, -6.0 * a0, a1, a0)
    return QuarticField(fn)


# ---------------------------------------------------------------------------
# the field


@dataclass
class LCState:
    x: float
    y: float
    u: float            # slope in the active chart
    chart: str = "p"    # 'p': u = dy/dx, 'q': u = dx/dy

    @property
    def p(self):
        if self.chart == "p":
            return self.u
        return math.inf if self.u == 0.0 else 1.0 / self.u


def _eval_G_parts(source, x, y, u, chart):
    """G, (G_x, G_y, G_u) at the state, from analytic coefficient jets."""
    cj = source.coeffs_d1(x, y)
    if chart == "q":
        cj = cj[::-1]
    G = Jet1(0.0)
    Gu = 0.0
    upow = 1.0
    for i, ci in enumerate(cj):
        G = G + ci * upow
        if i >= 1:
            Gu += i * ci.v * (u ** (i - 1))
        upow *= u
    return G.v, G.x, G.y, Gu


def lc_field(source, state):
    """(xdot, ydot, udot) of the Lie-Cartan field in the active chart."""
    G, Gx, Gy, Gu = _eval_G_parts(source, state.x, state.y, state.u, state.chart)
    if state.chart == "p":
        return (Gu, state.u * Gu, -(Gx + state.u * Gy)), G
    return (state.u * Gu, Gu, -(Gy + state.u * Gx)), G


def tangency_residual(source, state):
    """X . grad G, relative to |X| |grad G|; identically zero in exact arithmetic."""
    G, Gx, Gy, Gu = _eval_G_parts(source, state.x, state.y, state.u, state.chart)
    if state.chart == "p":
        X = (Gu, state.u * Gu, -(Gx + state.u * Gy))
        dot = X[0] * Gx + X[1] * Gy + X[2] * Gu
    else:
        X = (state.u * Gu, Gu, -(Gy + state.u * Gx))
        dot = X[0] * Gx + X[1] * Gy + X[2] * Gu
    nx = math.sqrt(X[0] ** 2 + X[1] ** 2 + X[2] ** 2)
    ng = math.sqrt(Gx * Gx + Gy * Gy + Gu * Gu)
    return abs(dot) / (nx * ng + 1e-300)


# ---------------------------------------------------------------------------
# equilibria over the axiumbilic point


@dataclass
class LCEquilibrium:
    p: float                 # slope (math.inf for the vertical direction)
    multiplicity: int
    lam1: float              # eigenvalue transversal to the projective line
    lam2: float              # eigenvalue along the projective line
    kind: str
    eigvec: tuple            # 3-vector in (x, y, slope-chart) coordinates
    chart: str = "p"


def _kind(lam1, lam2, zero_tol):
    if abs(lam1) <= zero_tol or abs(lam2) <= zero_tol:
        return SADDLE_NODE
    return SADDLE if lam1 * lam2 < 0.0 else NODE


def lc_equilibria(a, b):
    """Equilibria of the normal-form field on the projective line.

    Eigenvalues: at p = 0, (a, -(a+1)); at nonzero roots of R,
    ((p^2+1)^3/(p^2-1), -p R'(p)).
    """
    out = []
    scale = 1.0 + abs(a) + abs(b)
    ztol = _tol.tol(1e-7) * scale
    rc = r_coefficients(a, b)
    rder = np.polyder(np.array(rc))
    entries = [(0.0, 1)]
    for v, m in real_roots_R(a, b):
        entries.append((v, m))
    # collapse a root of R at 0 into the p = 0 equilibrium (multiplicity 2)
    merged = []
    for v, m in sorted(entries):
        if merged and abs(v - merged[-1][0]) <= 1e-6 * (1.0 + abs(v)):
            merged[-1] = (merged[-1][0], merged[-1][1] + m)
        else:
            merged.append((v, m))
    for v, m in merged:
        if abs(v) <= 1e-9:
            lam1, lam2 = a, -(a + 1.0)
            v = 0.0
        else:
            lam1 = (v * v + 1.0) ** 3 / (v * v - 1.0)
            lam2 = -v * float(np.polyval(rder, v))
        out.append(LCEquilibrium(v, m, lam1, lam2, _kind(lam1, lam2, ztol),
                                 (1.0, v, 0.0), "p"))
    return out


def lc_eigenvalues_e34(b, p):
    """(lam1, lam2) for the a = -1 normal form at (0, 0, p)."""
    lam1 = 4.0 * p ** 4 - 3.0 * b * p ** 3 - 9.0 * p * p + b * p - 1.0
    lam2 = p * (-5.0 * p ** 3 + 4.0 * b * p * p + 15.0 * p - 2.0 * b)
    return lam1, lam2


def dx_eigenvalues(a, b, p):
    """Eigenvalues of DX(0,0,p) for the transversal normal form, any p."""
    lam1 = a * (1.0 - 3.0 * p * p) + p * (4.0 * p ** 3 + b * (1.0 - 3.0 * p * p) - 12.0 * p)
    P = np.polymul([1.0, 0.0], r_coefficients(a, b))
    lam2 = -float(np.polyval(np.polyder(P), p))
    return lam1, lam2


def equilibria_from_source(source, mag_scale=1.0):
    """Equilibria over the origin for an arbitrary G-source (both charts).

    On the projective line G(0, 0, .) vanishes identically; the field reduces
    to -W(p) d/dp with W(p) = G_x(0,0,p) + p G_y(0,0,p).  Eigenvalues are
    lam1 = G_px + p G_py and lam2 = -W'(p); the transversal eigenvector picks
    up a slope component from the second derivatives of G.
    """
    cj = source.coeffs_jet(0.0, 0.0)
    out = []
    for chart in ("p", "q"):
        c = cj if chart == "p" else cj[::-1]
        gx = [ci.x for ci in c]
        gy = [ci.y for ci in c]
        if chart == "q":
            gx, gy = gy, gx
        # W(u) = sum gx_i u^i + sum gy_i u^{i+1}
        W = np.zeros(6)
        for i in range(5):
            W[5 - i] += gx[i]
            W[4 - i] += gy[i]
        Wd = np.polyder(W)
        scale = max(np.abs(W).max(), 1e-300)
        roots = [z.real for z in np.roots(W)
                 if abs(z.imag) <= 1e-8 * (1.0 + abs(z.real))]
        for u0 in roots:
            if chart == "q" and abs(u0) > 0.5:
                continue  # that direction is owned by the p chart
            lam1 = sum(i * (gx[i] + u0 * gy[i]) * u0 ** (i - 1) for i in range(1, 5))
            lam2 = -float(np.polyval(Wd, u0))
            gxx = sum(ci.xx * u0 ** i for i, ci in enumerate(c))
            gxy = sum(ci.xy * u0 ** i for i, ci in enumerate(c))
            gyy = sum(ci.yy * u0 ** i for i, ci in enumerate(c))
            if chart == "q":
                gxx, gyy = gyy, gxx
            num = -(gxx + 2.0 * u0 * gxy + u0 * u0 * gyy)
            den = lam1 - lam2
            vp = num / den if abs(den) > 1e-12 * (1.0 + abs(lam1)) else 0.0
            if chart == "p":
                vec = (1.0, u0, vp)
                slope = u0
            else:
                vec = (u0, 1.0, vp)
                slope = math.inf if u0 == 0.0 else 1.0 / u0
            ztol = _tol.tol(1e-7) * max(scale, 1e-12)
            out.append(LCEquilibrium(slope, 1, lam1, lam2,
                                     _kind(lam1, lam2, ztol), vec, chart))
    # project away duplicates across charts (same direction)
    dedup = []
    for eq in out:
        ang = math.atan(eq.p) if math.isfinite(eq.p) else math.pi / 2.0
        if not any(abs(ang - (math.atan(e.p) if math.isfinite(e.p) else math.pi / 2))
                   < 1e-7 for e in dedup):
            dedup.append(eq)
    return dedup


# ---------------------------------------------------------------------------
# Morse analysis of the E45 lift


@dataclass
class MorseReport:
    cone_points: list        # (p, lam1, lam2, hessian)
    disc_S: float
    resultant: float         # Res(S, Hess G)
    resultant_expected: float
    saddle_node_eigvecs: tuple
    chi: float


class DegenerateContactError(ValueError):
    """chi = 0: beyond the quadratic-contact stratum."""


def morse_analysis_e45(ser):
    """Cone points of the lifted surface for an adapted E45 series.

    S(p) = (p^4 - 6 p^2 + 1) + b01 p (1 - p^2) has 4 simple real roots, one in
    each of (-inf, -1), (-1, 0), (0, 1), (1, inf); the Hessian determinant of
    G along the line is -(a20 (1 - 6p^2 + p^4) + b20 p (1 - p^2)) S'(p)^2,
    nonzero at the roots exactly when chi != 0.
    """
    b01, a20, b20 = ser.b01, ser.a20, ser.b20
    chi = b20 - a20 * b01
    if abs(chi) <= _tol.tol(1e-12) * (1.0 + abs(b20) + abs(a20 * b01)):
        raise DegenerateContactError("chi = 0")
    S = np.array([1.0, -b01, -6.0, b01, 1.0])
    Sd = np.polyder(S)
    roots = sorted(z.real for z in np.roots(S) if abs(z.imag) < 1e-9 * (1 + abs(z)))
    if len(roots) != 4:
        raise DegenerateContactError(f"S has {len(roots)} real roots")
    cones = []
    res = 1.0
    for p in roots:
        binom = p ** 4 - 6.0 * p * p + 1.0
        wedge = p * (1.0 - p * p)
        hess = -(a20 * binom + b20 * wedge) * float(np.polyval(Sd, p)) ** 2
        lam1 = (p * p + 1.0) ** 3 / (p * p - 1.0)
        cones.append((p, lam1, -lam1, hess))
        res *= hess
    disc = 4.0 * (16.0 + b01 * b01) ** 3
    expected = 256.0 * chi ** 4 * (16.0 + b01 * b01) ** 6
    return MorseReport(cones, disc, res, expected, ((1.0, -a20), (0.0, 1.0)), chi)


# ---------------------------------------------------------------------------
# restricted 2-jet in the (x, p) chart at a saddle-node


@dataclass
class ChartJetReport:
    xdot: dict               # 2-jet coefficients of xdot, keys 'x','p','xx','xp','pp'
    pdot: dict
    y_xx: float              # x^2 coefficient of the implicit y(x, p)
    time_scale: float        # |hyperbolic eigenvalue| divided out
    comparisons: dict        # named expected-vs-measured residuals


def _implicit_y(source, x, u, y0=0.0):
    y = y0
    for _ in range(60):
        cj = source.coeffs_d1(x, y)
        G = 0.0
        Gy = 0.0
        for i, ci in enumerate(cj):
            G += ci.v * u ** i
            Gy += ci.y * u ** i
        if Gy == 0.0:
            raise ZeroDivisionError("G_y = 0: chart invalid")
        step = G / Gy
        y -= step
        if abs(step) < 1e-15 * (1.0 + abs(y)):
            break
    return y


def saddle_node_chart_check(source, kind, expectations=None, h=1e-3):
    """Numeric 2-jet of the field restricted to G = 0 in the (x, p) chart.

    The jet is time-normalized so the hyperbolic eigenvalue of the linear
    part is -1.  `expectations` maps names to (coefficient-path, value);
    residuals for the classical model readings are always included.
    """
    xs = [-2 * h, -h, 0.0, h, 2 * h]
    fx = {}
    fp = {}
    yy = {}
    for i, xv in enumerate(xs):
        for j, uv in enumerate(xs):
            y = _implicit_y(source, xv, uv)
            st = LCState(xv, y, uv, "p")
            (xd, _, ud), _ = lc_field(source, st)
            fx[(i, j)] = xd
            fp[(i, j)] = ud
            yy[(i, j)] = y

    # fourth-order central differences on the 5-point stencil
    w1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
    w2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0

    def jet2(tab):
        gx = sum(w1[i] * tab[(i, 2)] for i in range(5)) / h
        gp = sum(w1[j] * tab[(2, j)] for j in range(5)) / h
        gxx = sum(w2[i] * tab[(i, 2)] for i in range(5)) / h**2
        gpp = sum(w2[j] * tab[(2, j)] for j in range(5)) / h**2
        gxp = sum(w1[i] * w1[j] * tab[(i, j)] for i in range(5) for j in range(5)) / h**2
        return {"x": gx, "p": gp, "xx": 0.5 * gxx, "xp": gxp, "pp": 0.5 * gpp}

    jx, jp, jy = jet2(fx), jet2(fp), jet2(yy)
    lin = np.array([[jx["x"], jx["p"]], [jp["x"], jp["p"]]])
    eig = np.linalg.eigvals(lin)
    hyper = float(max(np.abs(eig)))
    if hyper <= 0.0:
        raise ValueError("no hyperbolic eigenvalue at the saddle-node")
    for d in (jx, jp):
        for k in d:
            d[k] /= hyper
    comparisons = {}
    if expectations:
        table = {"xdot": jx, "pdot": jp}
        for name, (which, key, want) in expectations.items():
            got = jy["xx"] if which == "y" else table[which][key]
            comparisons[name] = {"expected": want, "measured": got,
                                 "residual": got - want}
    return ChartJetReport(jx, jp, jy["xx"], hyper, comparisons)


# ---------------------------------------------------------------------------
# constrained integration


@dataclass
class LCTrajectory:
    points: list = field(default_factory=list)  # (x, y, p, chart, G_residual)
    arclength: float = 0.0
    stop_reason: str = "budget"
    final_direction: float = 1.0   # effective sign vs the canonical field, final chart

    def xy(self):
        return np.array([(pt[0], pt[1]) for pt in self.points])


def _project(source, x, y, u, chart, gtol):
    for _ in range(4):
        cj = source.coeffs_d1(x, y)
        c = cj if chart == "p" else cj[::-1]
        G, Gx, Gy, Gu = 0.0, 0.0, 0.0, 0.0
        for i, ci in enumerate(c):
            upi = u ** i
            G += ci.v * upi
            Gx += ci.x * upi
            Gy += ci.y * upi
            if i >= 1:
                Gu += i * ci.v * u ** (i - 1)
        if chart == "q":
            Gx, Gy = Gy, Gx
        n2 = Gx * Gx + Gy * Gy + Gu * Gu
        if n2 == 0.0 or abs(G) <= gtol:
            return x, y, u, G
        step = G / n2
        x -= step * Gx
        y -= step * Gy
        u -= step * Gu
    return x, y, u, G


def _gscale(source, x, y, u, chart):
    c = source.coeffs(x, y)
    if chart == "q":
        c = c[::-1]
    m = max(1.0, abs(u)) ** 4
    return sum(abs(ci) for ci in c) * m + 1e-300


def integrate_lc(source, start, direction=1.0, budget=2.0, window=None,
                 stop_near=(), stop_radius=1e-4, max_steps=20000, h0=1e-3):
    """Arc-length integration of the Lie-Cartan field on G = 0.

    Bogacki-Shampine 3(2) steps on the unit field, each followed by a Newton
    projection back onto the surface; the chart switches to q = 1/p when the
    active slope passes 1.2.  Stops on budget, window exit, equilibrium
    approach, proximity to a listed point, or step underflow.
    """
    x, y, u, chart = start.x, start.y, start.u, start.chart
    gtol = _tol.tol(1e-9)
    x, y, u, G = _project(source, x, y, u, chart, gtol * _gscale(source, x, y, u, chart))
    traj = LCTrajectory()
    sgn = 1.0 if direction >= 0 else -1.0

    def field(xx, yy, uu, ch):
        (f1, f2, f3), g = lc_field(source, LCState(xx, yy, uu, ch))
        return np.array([f1, f2, f3]), g

    def unit(xx, yy, uu, ch):
        # speed in the chart-independent metric dx^2 + dy^2 + dtheta^2,
        # theta = atan(slope): round trips across chart switches stay consistent
        f, _ = field(xx, yy, uu, ch)
        n = math.sqrt(f[0] * f[0] + f[1] * f[1] + (f[2] / (1.0 + uu * uu)) ** 2)
        return (f / n if n > 0 else f), n

    h = h0
    s = 0.0
    eqtol = _tol.tol(1e-11)
    for _ in range(max_steps):
        f0, n0 = unit(x, y, u, chart)
        gs = _gscale(source, x, y, u, chart)
        if n0 * 0 != 0 or not math.isfinite(n0):
            traj.stop_reason = "numerical failure"
            break
        cj = source.coeffs_d1(x, y)
        gradmag = max(max(abs(ci.x), abs(ci.y)) for ci in cj) * max(1.0, abs(u)) ** 5 + 1e-300
        resid = source.value(x, y, u, chart) / gs
        traj.points.append((x, y, (u if chart == "p" else (math.inf if u == 0 else 1 / u)),
                            chart, resid))
        if n0 <= eqtol * gradmag:
            traj.stop_reason = "equilibrium"
            break
        if window is not None and (abs(x) > window or abs(y) > window):
            traj.stop_reason = "window"
            break
        if any(math.hypot(x - px, y - py) < stop_radius for px, py in stop_near):
            traj.stop_reason = "near-equilibrium point"
            break
        if s >= budget * (1.0 - 1e-12):
            traj.stop_reason = "budget"
            break
        h = min(h, budget - s)  # land on the arclength budget
        f0s = sgn * f0
        accepted = False
        for _try in range(40):
            k1 = f0s
            k2, _ = unit(*(np.array([x, y, u]) + 0.5 * h * k1), chart)
            k2 = sgn * k2
            k3, _ = unit(*(np.array([x, y, u]) + 0.75 * h * k2), chart)
            k3 = sgn * k3
            znew = np.array([x, y, u]) + h * (2 * k1 + 3 * k2 + 4 * k3) / 9.0
            k4, _ = unit(*znew, chart)
            k4 = sgn * k4
            zlow = np.array([x, y, u]) + h * (7 * k1 + 6 * k2 + 8 * k3 + 3 * k4) / 24.0
            err = float(np.max(np.abs(znew - zlow)))
            if err > _tol.tol(1e-8) * (1.0 + float(np.max(np.abs(znew)))):
                h *= 0.5
                continue
            xn, yn, un = znew
            gs2 = _gscale(source, xn, yn, un, chart)
            xn, yn, un, G = _project(source, xn, yn, un, chart, gtol * gs2)
            if abs(G) > 10.0 * gtol * gs2:
                h *= 0.5
                continue
            accepted = True
            break
        if not accepted or h < 1e-13:
            traj.stop_reason = "step underflow"
            break
        s += h  # unit-speed field: parameter time is arclength
        x, y, u = xn, yn, un
        if err < 0.1 * _tol.tol(1e-8) * (1.0 + float(np.max(np.abs(znew)))):
            h = min(h * 2.0, 0.05)
        # chart switch
        if abs(u) > 1.2:
            (vx, vy, _), _ = lc_field(source, LCState(x, y, u, chart))
            newchart = "q" if chart == "p" else "p"
            u = 1.0 / u
            chart = newchart
            (wx, wy, _), _ = lc_field(source, LCState(x, y, u, chart))
            if vx * wx + vy * wy < 0.0:
                sgn = -sgn
    else:
        traj.stop_reason = "max steps"
    traj.arclength = s
    traj.final_direction = sgn
    return traj
