"""Dense bivariate polynomials truncated at a fixed total degree.

Backbone of the exact jet transforms (rotation, homothety, re-centering,
deformation): everything is polynomial algebra on degree-4 truncations, so
identities are preserved to machine precision.
"""


class Poly2:
    """Polynomial sum c[i][j] x^i y^j over i + j <= deg."""

    __slots__ = ("deg", "c")

    def __init__(self, deg=4, coeffs=None):
        self.deg = deg
        self.c = [[0.0] * (deg + 1) for _ in range(deg + 1)]
        if coeffs:
            for (i, j), v in coeffs.items():
                if i + j <= deg:
                    self.c[i][j] = float(v)

    def copy(self):
        p = Poly2(self.deg)
        p.c = [row[:] for row in self.c]
        return p

    def __add__(self, o):
        p = self.copy()
        for i in range(self.deg + 1):
            for j in range(self.deg + 1 - i):
                p.c[i][j] += o.c[i][j]
        return p

    def __sub__(self, o):
        p = self.copy()
        for i in range(self.deg + 1):
            for j in range(self.deg + 1 - i):
                p.c[i][j] -= o.c[i][j]
        return p

    def scaled(self, k):
        p = self.copy()
        for i in range(self.deg + 1):
            for j in range(self.deg + 1 - i):
                p.c[i][j] *= k
        return p

    def __mul__(self, o):
        d = self.deg
        p = Poly2(d)
        for i1 in range(d + 1):
            for j1 in range(d + 1 - i1):
                a = self.c[i1][j1]
                if a == 0.0:
                    continue
                for i2 in range(d + 1 - i1 - j1):
                    for j2 in range(d + 1 - i1 - j1 - i2):
                        b = o.c[i2][j2]
                        if b != 0.0:
                            p.c[i1 + i2][j1 + j2] += a * b
        return p

    @classmethod
    def const(cls, v, deg=4):
        p = cls(deg)
        p.c[0][0] = float(v)
        return p

    @classmethod
    def linear(cls, cx, cy, c0=0.0, deg=4):
        p = cls(deg)
        p.c[0][0] = float(c0)
        p.c[1][0] = float(cx)
        p.c[0][1] = float(cy)
        return p

    def eval(self, x, y):
        tot = 0.0
        xi = 1.0
        for i in range(self.deg + 1):
            yj = 1.0
            for j in range(self.deg + 1 - i):
                a = self.c[i][j]
                if a != 0.0:
                    tot += a * xi * yj
                yj *= y
            xi *= x
        return tot

    def dx(self):
        p = Poly2(self.deg)
        for i in range(1, self.deg + 1):
            for j in range(self.deg + 1 - i):
                p.c[i - 1][j] = i * self.c[i][j]
        return p

    def dy(self):
        p = Poly2(self.deg)
        for i in range(self.deg + 1):
            for j in range(1, self.deg + 1 - i):
                p.c[i][j - 1] = j * self.c[i][j]
        return p

    def compose(self, px, py):
        """Substitute polynomials px, py for x, y, truncating at self.deg."""
        d = self.deg
        xp = [Poly2.const(1.0, d)]
        yp = [Poly2.const(1.0, d)]
        for _ in range(d):
            xp.append(xp[-1] * px)
            yp.append(yp[-1] * py)
        out = Poly2(d)
        for i in range(d + 1):
            for j in range(d + 1 - i):
                a = self.c[i][j]
                if a != 0.0:
                    out = out + (xp[i] * yp[j]).scaled(a)
        return out

    def max_abs(self):
        return max(abs(self.c[i][j])
                   for i in range(self.deg + 1)
                   for j in range(self.deg + 1 - i))


def invert_map(px, py, order=4):
    """Series inverse of the map (x, y) -> (px, py) with invertible linear part.

    Returns (qx, qy) with px(qx, qy) = x + O(order+1), py(qx, qy) = y + O(order+1).
    Constant terms of px, py must vanish.
    """
    a, b = px.c[1][0], px.c[0][1]
    c, d = py.c[1][0], py.c[0][1]
    det = a * d - b * c
    if det == 0.0:
        raise ValueError("map has singular linear part")
    ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
    # nonlinear remainders
    nx, ny = px.copy(), py.copy()
    for (p_, rm) in ((nx, (a, b)), (ny, (c, d))):
        p_.c[0][0] = 0.0
        p_.c[1][0] -= rm[0]
        p_.c[0][1] -= rm[1]
    qx = Poly2.linear(ia, ib, deg=order)
    qy = Poly2.linear(ic, id_, deg=order)
    for _ in range(order):
        rx = nx.compose(qx, qy)
        ry = ny.compose(qx, qy)
        # q <- Ainv (identity - N(q))
        ex = Poly2.linear(1.0, 0.0, deg=order) - rx
        ey = Poly2.linear(0.0, 1.0, deg=order) - ry
        qx = ex.scaled(ia) + ey.scaled(ib)
        qy = ex.scaled(ic) + ey.scaled(id_)
    return qx, qy
