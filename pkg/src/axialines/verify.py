"""Identity suite: the algebraic facts the implementation rests on.

Each check recomputes one identity with an independent method (exact rational
arithmetic for the resultant/discriminant facts, analytic jets for the Taylor
facts, random sampling for the structural ones) and reports its worst
residual.  The CLI `verify` command runs the suite; the acceptance tests call
the same functions.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classify import (classify_ab, delta_scale, discriminant_delta,
                       expected_census, real_roots_R, E3, E4, E5)
from .liecartan import (dx_eigenvalues, lc_equilibria, normal_form_source,
                        jet_source, tangency_residual, LCState)
from .quartic import monge_series, series_from_sampling


# ---------------------------------------------------------------------------
# exact polynomial helpers (lists of Fractions, highest degree first)


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_eval(p, x):
    tot = Fraction(0)
    for c in p:
        tot = tot * x + c
    return tot


def _poly_deriv(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def _sylvester(p, q):
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(p) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(q) + [Fraction(0)] * (size - n - 1 - i))
    return rows


def _det_fraction(rows):
    n = len(rows)
    rows = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = Fraction(1, 1) / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col] != 0:
                f = rows[r][col] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return det


def resultant(p, q):
    """Exact resultant of two Fraction polynomials."""
    return _det_fraction(_sylvester(p, q))


def delta_poly_in_b(a):
    """Delta(a, .) as an exact polynomial in b (degree 6, even)."""
    a = Fraction(a)
    q0 = [Fraction(1), Fraction(0), Fraction(16)]          # b^2 + 16
    out = [Fraction(0)] * 7

    def add(poly, scale):
        poly = [c * scale for c in poly]
        for i, c in enumerate(reversed(poly)):
            out[6 - i] += c

    add([Fraction(1)], 16 * a ** 5)
    add([Fraction(1), Fraction(0), Fraction(68)], 4 * a ** 4)
    add([Fraction(1), Fraction(0), Fraction(144)], 16 * a ** 3)
    add(_poly_mul([Fraction(1), Fraction(0), Fraction(-80)], q0), -8 * a * a)
    add(_poly_mul(q0, q0), 96 * a)
    add(_poly_mul(_poly_mul(q0, q0), q0), Fraction(4))
    return out


def resultant_delta_db(a):
    """Res_b(Delta, dDelta/db), exact."""
    p = delta_poly_in_b(a)
    return resultant(p, _poly_deriv(p))


def s_poly(b01):
    b = Fraction(b01)
    return [Fraction(1), -b, Fraction(-6), b, Fraction(1)]


def disc_S_exact(b01):
    p = s_poly(b01)
    return resultant(p, _poly_deriv(p))


def hess_poly(a20, b20, b01):
    """-(a20 (1 - 6p^2 + p^4) + b20 p (1 - p^2)) S'(p)^2, exact in p."""
    a20, b20 = Fraction(a20), Fraction(b20)
    binom = [Fraction(1), Fraction(0), Fraction(-6), Fraction(0), Fraction(1)]
    wedge = [Fraction(-1), Fraction(0), Fraction(1), Fraction(0)]
    base = [a20 * c for c in binom]
    for i, c in enumerate(wedge):
        base[i + 1] += b20 * c
    sd = _poly_deriv(s_poly(b01))
    return [-c for c in _poly_mul(base, _poly_mul(sd, sd))]


def resultant_S_hess(a20, b20, b01):
    return resultant(s_poly(b01), hess_poly(a20, b20, b01))


# ---------------------------------------------------------------------------
# the check registry


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    detail: str = ""


def check_delta_factorization(rng, delta_fn=None, n=100):
    delta_fn = delta_fn or discriminant_delta
    worst = 0.0
    for a in rng.uniform(-30.0, 10.0, size=n):
        want = 16.0 * (a + 1.0) * (a * a + 8.0 * a + 32.0) ** 2
        got = delta_fn(a, 0.0)
        worst = max(worst, abs(got - want) / (abs(want) + delta_scale(a, 0.0)))
    return CheckResult("delta-factorization", worst <= 1e-9, worst,
                       "Delta(a,0) vs 16(a+1)(a^2+8a+32)^2")


def check_resultant_delta(rng=None, delta_fn=None):
    worst = 0.0
    ok = True
    for a in (Fraction(2), Fraction(-2), Fraction(3), Fraction(-5), Fraction(1, 2)):
        res = resultant_delta_db(a)
        want = (Fraction(274877906944) * (1 + a) * (a * a + 8 * a + 32) ** 2
                * a ** 16 * (2 * a + 27) ** 6)
        if want == 0:
            ok &= res == 0
        else:
            rel = abs(float((res - want) / want))
            worst = max(worst, rel)
            ok &= rel <= 1e-6
    return CheckResult("resultant-delta", ok, worst,
                       "Res_b(Delta, dDelta/db) closed form at 5 rational a")


def check_disc_S(rng, delta_fn=None, n=100):
    worst = 0.0
    for b01 in rng.uniform(-8.0, 8.0, size=n):
        got = disc_S_exact(b01)
        b = Fraction(b01)
        want = 4 * (16 + b * b) ** 3
        rel = abs(float((got - want) / want))
        worst = max(worst, rel)
    return CheckResult("disc-S", worst <= 1e-9, worst,
                       "disc(S) = 4 (16 + b01^2)^3, exact rational arithmetic")


def check_resultant_morse(rng, delta_fn=None, n=25):
    worst = 0.0
    for _ in range(n):
        a20, b20, b01 = rng.uniform(-3.0, 3.0, size=3)
        got = resultant_S_hess(a20, b20, b01)
        chi = Fraction(b20) - Fraction(a20) * Fraction(b01)
        want = 256 * chi ** 4 * (16 + Fraction(b01) ** 2) ** 6
        if want == 0:
            continue
        rel = abs(float((got - want) / want))
        worst = max(worst, rel)
    return CheckResult("resultant-morse", worst <= 1e-6, worst,
                       "Res(S, Hess G) = 256 chi^4 (16 + b01^2)^6")


def check_eigenvalue_formulas(rng, delta_fn=None, n=300):
    worst = 0.0
    for _ in range(n):
        a = rng.uniform(-20.0, 5.0)
        b = rng.uniform(-10.0, 10.0)
        if abs(a) < 1e-3:
            continue
        for p, m in real_roots_R(a, b):
            if m != 1 or abs(p) < 1e-9 or abs(p * p - 1.0) < 1e-9:
                continue
            lam1, _ = dx_eigenvalues(a, b, p)
            want = (p * p + 1.0) ** 3 / (p * p - 1.0)
            worst = max(worst, abs(lam1 - want) / (1.0 + abs(want)))
    return CheckResult("eigenvalue-formulas", worst <= 1e-8, worst,
                       "DX lambda1 vs (p^2+1)^3/(p^2-1) at roots of R")


def check_tangency(rng, delta_fn=None, n=500, jets=()):
    worst = 0.0
    sources = [normal_form_source(2.0, 0.0), normal_form_source(-4.0, 1.0)]
    sources += [jet_source(j) for j in jets]
    for src in sources:
        for _ in range(n // max(1, len(sources))):
            x, y = rng.uniform(-0.4, 0.4, size=2)
            u = rng.uniform(-1.2, 1.2)
            chart = "p" if rng.uniform() < 0.5 else "q"
            worst = max(worst, tangency_residual(src, LCState(x, y, u, chart)))
    return CheckResult("tangency", worst <= 1e-12, worst,
                       "X . grad G relative to |X||grad G|")


def _random_axiumbilic_jet(rng):
    from .monge import MongeJet
    keys = ["20", "11", "02", "30", "21", "12", "03", "40", "31", "22", "13", "04"]
    r = {k: rng.normal() for k in keys}
    s = {k: rng.normal() for k in keys}
    rr = r["02"] - r["20"]
    ss = s["02"] - s["20"]
    r["11"] = -ss / 2.0
    s["11"] = rr / 2.0
    return MongeJet.from_coeffs(r=r, s=s)


def check_taylor(rng, delta_fn=None, n=40):
    worst = 0.0
    for _ in range(n):
        jet = _random_axiumbilic_jet(rng)
        ser = monge_series(jet)
        exact = series_from_sampling(jet)
        mine = (ser.a00, ser.a10, ser.a01, ser.a20, ser.a11, ser.a02,
                ser.b00, ser.b10, ser.b01, ser.b20, ser.b11, ser.b02)
        scale = 1.0 + max(abs(v) for v in exact)
        worst = max(worst, max(abs(m - e) for m, e in zip(mine, exact)) / scale)
    return CheckResult("taylor-series", worst <= 1e-9, worst,
                       "closed-form series vs analytic 2-jet of the exact a0, a1")


def check_census(rng, delta_fn=None, n=150):
    bad = 0
    checked = 0
    for _ in range(n):
        a = rng.uniform(-20.0, 5.0)
        b = rng.uniform(-10.0, 10.0)
        cls = classify_ab(a, b)
        if cls.tag not in (E3, E4, E5):
            continue
        checked += 1
        counts = {}
        for eq in lc_equilibria(a, b):
            counts[eq.kind] = counts.get(eq.kind, 0) + 1
        if counts != expected_census(cls.tag):
            bad += 1
    return CheckResult("census", bad == 0, float(bad),
                       f"classify_ab vs equilibrium kinds on {checked} stable samples")


def check_cusp_model(rng=None, delta_fn=None):
    delta_fn = delta_fn or discriminant_delta
    b0 = 5.0 * math.sqrt(5.0) / 2.0
    a0 = -13.5
    h = 1e-4
    faa = (delta_fn(a0 + h, b0) - 2 * delta_fn(a0, b0) + delta_fn(a0 - h, b0)) / h**2
    fbb = (delta_fn(a0, b0 + h) - 2 * delta_fn(a0, b0) + delta_fn(a0, b0 - h)) / h**2
    fab = (delta_fn(a0 + h, b0 + h) - delta_fn(a0 + h, b0 - h)
           - delta_fn(a0 - h, b0 + h) + delta_fn(a0 - h, b0 - h)) / (4 * h**2)
    wants = (-54675.0 * 2.0, -54675.0 * 10.0, -54675.0 * 2.0 * math.sqrt(5.0))
    worst = max(abs(g - w) / abs(w) for g, w in zip((faa, fbb, fab), wants))
    membership = max(abs(delta_fn(a0, b0)), abs(delta_fn(a0, -b0))) / delta_scale(a0, b0)
    ok = worst <= 1e-3 and membership <= 1e-6
    return CheckResult("cusp-model", ok, max(worst, membership),
                       "cusp membership and local Hessian of Delta at p+")


ALL_CHECKS = {
    "delta-factorization": check_delta_factorization,
    "resultant-delta": check_resultant_delta,
    "disc-S": check_disc_S,
    "resultant-morse": check_resultant_morse,
    "eigenvalue-formulas": check_eigenvalue_formulas,
    "tangency": check_tangency,
    "taylor-series": check_taylor,
    "census": check_census,
    "cusp-model": check_cusp_model,
}

RESULTANT_CHECKS = ("resultant-delta", "resultant-morse")


def run_checks(only=None, delta_fn=None, seed=0):
    """Run the suite (or the subset matching `only`); returns CheckResults."""
    rng = np.random.default_rng(seed)
    results = []
    for name, fn in ALL_CHECKS.items():
        if only and only not in (name, "resultants") :
            continue
        if only == "resultants" and name not in RESULTANT_CHECKS:
            continue
        results.append(fn(rng, delta_fn=delta_fn))
    return results
