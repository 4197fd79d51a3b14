"""Scalar type carrying first and second partials with respect to two parameters.

Running the geometry pipeline on Jet2 inputs yields analytic derivatives of
every downstream quantity (metric, normal frame, quartic coefficients), so the
core never falls back on numerical differentiation.
"""

import math


class Jet2:
    """Truncated second-order Taylor data (v; v_x, v_y; v_xx, v_xy, v_yy)."""

    __slots__ = ("v", "x", "y", "xx", "xy", "yy")

    def __init__(self, v, x=0.0, y=0.0, xx=0.0, xy=0.0, yy=0.0):
        self.v = v
        self.x = x
        self.y = y
        self.xx = xx
        self.xy = xy
        self.yy = yy

    @classmethod
    def var_x(cls, v):
        return cls(v, 1.0, 0.0)

    @classmethod
    def var_y(cls, v):
        return cls(v, 0.0, 1.0)

    def __repr__(self):
        return (f"Jet2({self.v!r}, {self.x!r}, {self.y!r}, "
                f"{self.xx!r}, {self.xy!r}, {self.yy!r})")

    def __neg__(self):
        return Jet2(-self.v, -self.x, -self.y, -self.xx, -self.xy, -self.yy)

    def __add__(self, o):
        if isinstance(o, Jet2):
            return Jet2(self.v + o.v, self.x + o.x, self.y + o.y,
                        self.xx + o.xx, self.xy + o.xy, self.yy + o.yy)
        return Jet2(self.v + o, self.x, self.y, self.xx, self.xy, self.yy)

    __radd__ = __add__

    def __sub__(self, o):
        return self.__add__(-o if isinstance(o, Jet2) else -o)

    def __rsub__(self, o):
        return (-self).__add__(o)

    def __mul__(self, o):
        if isinstance(o, Jet2):
            return Jet2(
                self.v * o.v,
                self.x * o.v + self.v * o.x,
                self.y * o.v + self.v * o.y,
                self.xx * o.v + 2.0 * self.x * o.x + self.v * o.xx,
                self.xy * o.v + self.x * o.y + self.y * o.x + self.v * o.xy,
                self.yy * o.v + 2.0 * self.y * o.y + self.v * o.yy,
            )
        return Jet2(self.v * o, self.x * o, self.y * o,
                    self.xx * o, self.xy * o, self.yy * o)

    __rmul__ = __mul__

    def _compose(self, f0, f1, f2):
        # f(self) with f value/first/second derivatives at self.v
        return Jet2(
            f0,
            f1 * self.x,
            f1 * self.y,
            f2 * self.x * self.x + f1 * self.xx,
            f2 * self.x * self.y + f1 * self.xy,
            f2 * self.y * self.y + f1 * self.yy,
        )

    def reciprocal(self):
        w = 1.0 / self.v
        return self._compose(w, -w * w, 2.0 * w * w * w)

    def __truediv__(self, o):
        if isinstance(o, Jet2):
            return self * o.reciprocal()
        return self * (1.0 / o)

    def __rtruediv__(self, o):
        return self.reciprocal() * o

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("Jet2 powers must be non-negative integers")
        out = Jet2(1.0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt(self):
        s = math.sqrt(self.v)
        return self._compose(s, 0.5 / s, -0.25 / (s * self.v))


class Jet1:
    """First-order variant of Jet2 for derivative-light hot paths."""

    __slots__ = ("v", "x", "y")

    def __init__(self, v, x=0.0, y=0.0):
        self.v = v
        self.x = x
        self.y = y

    @classmethod
    def var_x(cls, v):
        return cls(v, 1.0, 0.0)

    @classmethod
    def var_y(cls, v):
        return cls(v, 0.0, 1.0)

    def __neg__(self):
        return Jet1(-self.v, -self.x, -self.y)

    def __add__(self, o):
        if isinstance(o, Jet1):
            return Jet1(self.v + o.v, self.x + o.x, self.y + o.y)
        return Jet1(self.v + o, self.x, self.y)

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, Jet1):
            return Jet1(self.v - o.v, self.x - o.x, self.y - o.y)
        return Jet1(self.v - o, self.x, self.y)

    def __rsub__(self, o):
        return Jet1(o - self.v, -self.x, -self.y)

    def __mul__(self, o):
        if isinstance(o, Jet1):
            return Jet1(self.v * o.v, self.x * o.v + self.v * o.x,
                        self.y * o.v + self.v * o.y)
        return Jet1(self.v * o, self.x * o, self.y * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, Jet1):
            w = 1.0 / o.v
            ww = w * w
            return Jet1(self.v * w, (self.x * o.v - self.v * o.x) * ww,
                        (self.y * o.v - self.v * o.y) * ww)
        w = 1.0 / o
        return Jet1(self.v * w, self.x * w, self.y * w)

    def __rtruediv__(self, o):
        w = 1.0 / self.v
        s = -o * w * w
        return Jet1(o * w, s * self.x, s * self.y)

    def __pow__(self, n):
        out = Jet1(1.0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt(self):
        s = math.sqrt(self.v)
        d = 0.5 / s
        return Jet1(s, d * self.x, d * self.y)


def sqrt_(u):
    """sqrt dispatching on plain floats and jet scalars."""
    if isinstance(u, (Jet1, Jet2)):
        return u.sqrt()
    return math.sqrt(u)


def value(u):
    """Underlying float of a plain number or a jet scalar."""
    return u.v if isinstance(u, (Jet1, Jet2)) else u
