"""Axial curvature nets: direction fields, traced lines, separatrices, portraits.

At a non-axiumbilic point the quartic has four direction roots, split 2 + 2 by
ranking |k_n - H| (top pair: principal net, ellipse large axis; bottom pair:
mean net).  Lines are traced by lifting a seed to the surface G = 0 and
integrating the Lie-Cartan field; separatrices are the projections of the
invariant manifolds (transversal to the projective line) of the equilibria
over the axiumbilic point.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .monge import fundamental_forms_at, mean_curvature_vector, normal_curvature
from .quartic import jet_quartic_at
from .liecartan import (LCState, MORSE_CONE, NODE, SADDLE, SADDLE_NODE,
                        equilibria_from_source, integrate_lc, jet_source,
                        lc_field)
from . import tol as _tol

PRINCIPAL = "principal"
MEAN = "mean"
SEPARATRIX = "separatrix"
GENERIC = "generic"


class AxiumbilicPointError(ValueError):
    """All directions are axial: the 2+2 split is undefined here."""


@dataclass
class AxialDirections:
    angles: list          # direction angles in [0, pi), one per root
    slopes: list          # tan(angle); math.inf for the vertical direction
    deviations: list      # |k_n - H| along each direction
    principal: tuple      # indices of the large-axis pair
    mean: tuple           # indices of the small-axis pair
    reliable: bool        # False when the split sits inside the tie tolerance


def _deviation(f, h, direction):
    k = normal_curvature(f, direction)
    return math.hypot(k[0] - h[0], k[1] - h[1])


def directions_at(jet, x, y):
    """The four axial directions with their principal/mean pairing."""
    q = jet_quartic_at(jet, x, y)
    vals = q.values()
    scale = max(abs(v) for v in vals)
    if scale <= _tol.tol(1e-12) * (1.0 + jet.magnitude()) ** 2:
        raise AxiumbilicPointError(f"axiumbilic at ({x}, {y}): split undefined")
    # roots in both affine charts, merged projectively (angle mod pi)
    angles = []
    for chart, coeffs in (("p", [vals[0], vals[1], vals[2], vals[3], vals[4]]),
                          ("q", [vals[4], vals[3], vals[2], vals[1], vals[0]])):
        c = list(coeffs)
        while c and abs(c[0]) <= 1e-12 * scale:
            c = c[1:]
        if len(c) <= 1:
            continue
        for z in np.roots(c):
            if abs(z.imag) > 1e-8 * (1.0 + abs(z.real)):
                continue
            u = float(z.real)
            ang = math.atan(u) if chart == "p" else (math.pi / 2.0 - math.atan(u))
            angles.append(ang % math.pi)
    angles.sort()
    dedup = []
    for ang in angles:
        gap = min((min(abs(ang - a), math.pi - abs(ang - a)) for a in dedup),
                  default=math.inf)
        if gap > 1e-7:
            dedup.append(ang)
    f = fundamental_forms_at(jet, x, y)
    h = mean_curvature_vector(f)
    devs = [_deviation(f, h, (math.cos(a), math.sin(a))) for a in dedup]
    order = sorted(range(len(dedup)), key=lambda i: -devs[i])
    principal = tuple(sorted(order[:2]))
    mean = tuple(sorted(order[2:4])) if len(order) >= 4 else tuple(order[2:])
    reliable = True
    if len(order) >= 3:
        gap = devs[order[1]] - devs[order[2]]
        reliable = gap > _tol.tol(1e-10) * (devs[order[0]] + 1e-300)
    slopes = [math.tan(a) if abs(a - math.pi / 2) > 1e-12 else math.inf
              for a in dedup]
    return AxialDirections(dedup, slopes, devs, principal, mean, reliable)


@dataclass
class TaggedLine:
    xy: np.ndarray
    net: str            # 'principal' | 'mean'
    kind: str           # 'separatrix' | 'generic'
    meta: dict = field(default_factory=dict)


def _lift_state(slope):
    if not math.isfinite(slope) or abs(slope) > 1.0:
        return LCState(0.0, 0.0, 0.0 if not math.isfinite(slope) else 1.0 / slope, "q")
    return LCState(0.0, 0.0, slope, "p")


def trace_line(jet, seed, net=PRINCIPAL, which=0, budget=1.0, window=None,
               source=None, stop_near=()):
    """Axial line through `seed`: lift to the chosen direction root, integrate
    both ways, project.  Returns a TaggedLine through the seed."""
    x0, y0 = seed
    dirs = directions_at(jet, x0, y0)
    pair = dirs.principal if net == PRINCIPAL else dirs.mean
    slope = dirs.slopes[pair[which % len(pair)]]
    src = source if source is not None else jet_source(jet)
    st = _lift_state(slope)
    st.x, st.y = x0, y0
    halves = []
    for d in (1.0, -1.0):
        traj = integrate_lc(src, LCState(st.x, st.y, st.u, st.chart),
                            direction=d, budget=budget, window=window,
                            stop_near=stop_near)
        halves.append(traj)
    fwd = halves[0].xy()
    bwd = halves[1].xy()
    xy = np.vstack([bwd[::-1], fwd[1:]]) if len(bwd) and len(fwd) else fwd
    return TaggedLine(xy, net, GENERIC,
                      {"seed": seed, "slope": slope,
                       "stops": (halves[1].stop_reason, halves[0].stop_reason)})


def _net_tag_of_direction(jet, x, y, slope):
    try:
        dirs = directions_at(jet, x, y)
    except AxiumbilicPointError:
        return None
    ang = math.atan(slope) % math.pi if math.isfinite(slope) else math.pi / 2.0
    gaps = [min(abs(ang - a), math.pi - abs(ang - a)) for a in dirs.angles]
    i = int(np.argmin(gaps))
    return PRINCIPAL if i in dirs.principal else MEAN


@dataclass
class EquilibriumMarker:
    slope: float
    kind: str
    lam1: float
    lam2: float


def separatrices(jet, classification=None, budget=0.8, window=0.5,
                 offset=1e-4, source=None):
    """Projected invariant manifolds of the Lie-Cartan equilibria.

    Saddles contribute the manifold transversal to the projective line (two
    branches joined through the singular point); a saddle-node contributes its
    transversal manifold, whose two sides are kept separate (they behave
    differently).  Manifolds along the projective line project to the point
    itself and produce nothing visible.
    """
    from .classify import classify_point
    cls = classification if classification is not None else classify_point(jet)
    src = source if source is not None else jet_source(jet)
    eqs = equilibria_from_source(src)
    lines = []
    markers = []
    ztol_ref = max(abs(e.lam1) + abs(e.lam2) for e in eqs) if eqs else 1.0
    for eq in eqs:
        markers.append(EquilibriumMarker(eq.p, eq.kind, eq.lam1, eq.lam2))
        v = np.array(eq.eigvec, dtype=float)
        v /= np.linalg.norm(v)
        zero1 = abs(eq.lam1) <= _tol.tol(1e-7) * ztol_ref
        if zero1 and cls.tag != "E45_1":
            # transversal eigenvalue vanishes and the center manifold lies
            # along the line: nothing transversal to draw
            continue
        if eq.chart == "p":
            base = np.array([0.0, 0.0, eq.p])
        else:
            base = np.array([0.0, 0.0, 0.0 if not math.isfinite(eq.p) else 1.0 / eq.p])
        branches = []
        for sgn in (1.0, -1.0):
            z0 = base + sgn * offset * v
            (fx, fy, fu), _ = lc_field(src, LCState(z0[0], z0[1], z0[2], eq.chart))
            outward = fx * (z0[0] - base[0]) + fy * (z0[1] - base[1]) \
                + fu * (z0[2] - base[2])
            d = 1.0 if outward >= 0 else -1.0
            traj = integrate_lc(src, LCState(z0[0], z0[1], z0[2], eq.chart),
                                direction=d, budget=budget, window=window)
            branches.append(traj.xy())
        sample = branches[0][min(len(branches[0]) - 1, len(branches[0]) // 2)]
        tag = _net_tag_of_direction(jet, sample[0], sample[1],
                                    eq.p if math.isfinite(eq.p) else math.inf)
        meta = {"slope": eq.p, "kind": eq.kind}
        if eq.kind == SADDLE_NODE and zero1:
            # E45 flavor: the two sides of the transversal center manifold
            for b in branches:
                lines.append(TaggedLine(b, tag or PRINCIPAL, SEPARATRIX,
                                        dict(meta, side=len(lines))))
        else:
            xy = np.vstack([branches[1][::-1], [[0.0, 0.0]], branches[0]])
            lines.append(TaggedLine(xy, tag or PRINCIPAL, SEPARATRIX, meta))
    return lines, markers, cls


@dataclass
class Portrait:
    window: float
    lines: list                  # TaggedLine, separatrices first
    equilibria: list             # EquilibriumMarker
    axiumbilic_points: list      # (x, y)
    classification: object = None


def portrait(jet, window=0.5, density=12, budget=None, source=None,
             nets=(PRINCIPAL, MEAN)):
    """Separatrices plus a ring of generic lines for each requested net."""
    from .quartic import is_axiumbilic
    src = source if source is not None else jet_source(jet)
    budget = budget if budget is not None else 4.0 * window
    chk = is_axiumbilic(jet)
    lines = []
    markers = []
    cls = None
    if chk.is_axiumbilic:
        seps, markers, cls = separatrices(jet, budget=budget, window=window,
                                          source=src)
        lines.extend(seps)
    seeds = []
    for k in range(density):
        ang = 2.0 * math.pi * (k + 0.5) / density
        seeds.append((0.98 * window * math.cos(ang), 0.98 * window * math.sin(ang)))
    stop_near = [(0.0, 0.0)] if chk.is_axiumbilic else ()
    for idx, seed in enumerate(seeds):
        for net in nets:
            for which in (0, 1):
                try:
                    ln = trace_line(jet, seed, net, which, budget=budget,
                                    window=window, source=src,
                                    stop_near=stop_near)
                except AxiumbilicPointError:
                    continue
                ln.meta["seed_index"] = idx
                lines.append(ln)
    pts = [(0.0, 0.0)] if chk.is_axiumbilic else []
    return Portrait(window, lines, markers, pts, cls)


def separatrix_census(port):
    """Counts used by the combinatorial portrait checks."""
    seps = [ln for ln in port.lines if ln.kind == SEPARATRIX]
    kinds = {}
    for m in port.equilibria:
        kinds[m.kind] = kinds.get(m.kind, 0) + 1
    return {"separatrices": len(seps), "equilibria": kinds}
