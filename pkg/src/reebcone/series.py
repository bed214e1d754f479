"""Scalar types the evaluators can run on besides Fraction and float.

``Laurent``: truncated univariate Laurent series in ``t`` with exact
coefficients, used for limits at non-generic Reeb vectors and for boundary
leading terms.

``Jet``: multivariate forward-mode derivatives (value, gradient and
optionally Hessian) over any coefficient field (Fraction or float).
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Number


class InsufficientPrecision(ArithmeticError):
    pass


class Laurent:
    """``sum coeffs[i] * t**(val + i) + O(t**prec)``, leading coefficient nonzero."""

    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, val, coeffs, prec):
        coeffs = list(coeffs)[: max(prec - val, 0)]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        if not coeffs:
            val = prec
        self.val, self.coeffs, self.prec = val, coeffs, prec

    @classmethod
    def line(cls, a, b, prec):
        """The series a + b t known to O(t**prec)."""
        return cls(0, [Fraction(a), Fraction(b)] + [Fraction(0)] * max(prec - 2, 0), prec)

    def is_zero(self):
        return not self.coeffs

    def coeff(self, e):
        if e >= self.prec:
            raise InsufficientPrecision(f"coefficient of t^{e} not known (precision {self.prec})")
        i = e - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def leading(self):
        if not self.coeffs:
            raise InsufficientPrecision("series vanishes to working precision")
        return self.val, self.coeffs[0]

    def _scaled(self, c):
        return Laurent(self.val, [c * x for x in self.coeffs], self.prec)

    def __add__(self, other):
        if isinstance(other, Laurent):
            prec = min(self.prec, other.prec)
            lo = min(self.val, other.val)
            return Laurent(lo, [self.coeff(e) + other.coeff(e) for e in range(lo, prec)], prec)
        if isinstance(other, Number):
            if other == 0 or self.prec <= 0:
                return self
            lo = min(self.val, 0)
            cs = [self.coeff(e) for e in range(lo, self.prec)]
            cs[-lo] += other
            return Laurent(lo, cs, self.prec)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self._scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Laurent):
            prec = min(self.val + other.prec, other.val + self.prec)
            val = self.val + other.val
            n = max(prec - val, 0)
            a, b = self.coeffs, other.coeffs
            out = [Fraction(0)] * n
            for i, x in enumerate(a[:n]):
                if x:
                    for j, y in enumerate(b[: n - i]):
                        out[i + j] += x * y
            return Laurent(val, out, prec)
        if isinstance(other, Number):
            return self._scaled(other)
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self):
        v, c0 = self.leading()
        n = len(self.coeffs)
        c = self.coeffs
        inv = [1 / Fraction(c0)]
        for i in range(1, n):
            s = sum(c[j] * inv[i - j] for j in range(1, i + 1))
            inv.append(-s / c0)
        return Laurent(-v, inv, -v + n)

    def __truediv__(self, other):
        if isinstance(other, Laurent):
            return self * other.reciprocal()
        if isinstance(other, Number):
            return self._scaled(1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.reciprocal() ** (-e)
        out = None
        base = self
        while e:
            if e & 1:
                out = base if out is None else out * base
            e >>= 1
            if e:
                base = base * base
        return out if out is not None else Laurent(0, [Fraction(1)], self.prec - self.val)

    def sign(self):
        _, c = self.leading()
        return (c > 0) - (c < 0)

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    def __repr__(self):
        terms = " + ".join(f"({c})t^{self.val + i}" for i, c in enumerate(self.coeffs) if c)
        return f"Laurent({terms or '0'} + O(t^{self.prec}))"


class Jet:
    """Value with gradient (and Hessian when ``hess`` is not None)."""

    __slots__ = ("val", "grad", "hess")

    def __init__(self, val, grad, hess=None):
        self.val, self.grad, self.hess = val, tuple(grad), hess

    @classmethod
    def variables(cls, point, order=1):
        k = len(point)
        zero = point[0] * 0
        one = zero + 1
        out = []
        for i, x in enumerate(point):
            g = [one if j == i else zero for j in range(k)]
            h = tuple(tuple(zero for _ in range(k)) for _ in range(k)) if order > 1 else None
            out.append(cls(x, g, h))
        return out

    def _lift(self, c):
        zero = c * 0
        h = None
        if self.hess is not None:
            h = tuple(tuple(zero for _ in row) for row in self.hess)
        return Jet(c, [zero] * len(self.grad), h)

    def __add__(self, other):
        if isinstance(other, Jet):
            h = None
            if self.hess is not None and other.hess is not None:
                h = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.hess, other.hess))
            return Jet(self.val + other.val, [a + b for a, b in zip(self.grad, other.grad)], h)
        if isinstance(other, Number):
            return Jet(self.val + other, self.grad, self.hess)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        h = None if self.hess is None else tuple(tuple(-a for a in r) for r in self.hess)
        return Jet(-self.val, [-a for a in self.grad], h)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            u, v = self, other
            g = [u.val * b + v.val * a for a, b in zip(u.grad, v.grad)]
            h = None
            if u.hess is not None and v.hess is not None:
                k = len(g)
                h = tuple(tuple(u.val * v.hess[i][j] + v.val * u.hess[i][j]
                                + u.grad[i] * v.grad[j] + u.grad[j] * v.grad[i]
                                for j in range(k)) for i in range(k))
            return Jet(u.val * v.val, g, h)
        if isinstance(other, Number):
            h = None if self.hess is None else tuple(tuple(a * other for a in r) for r in self.hess)
            return Jet(self.val * other, [a * other for a in self.grad], h)
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self):
        if self.val == 0:
            raise ZeroDivisionError("jet with zero value is not invertible")
        r = 1 / self.val
        r2 = r * r
        g = [-a * r2 for a in self.grad]
        h = None
        if self.hess is not None:
            k = len(g)
            r3 = r2 * r
            h = tuple(tuple(2 * r3 * self.grad[i] * self.grad[j] - r2 * self.hess[i][j]
                            for j in range(k)) for i in range(k))
        return Jet(r, g, h)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        if isinstance(other, Number):
            return self * (1 / other if not isinstance(other, int) else Fraction(1, other))
        return NotImplemented

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.reciprocal() ** (-e)
        out = None
        base = self
        while e:
            if e & 1:
                out = base if out is None else out * base
            e >>= 1
            if e:
                base = base * base
        return out if out is not None else self._lift(self.val * 0 + 1)

    def sign(self):
        return (self.val > 0) - (self.val < 0)

    def __abs__(self):
        return self if self.val >= 0 else -self

    def __repr__(self):
        return f"Jet({self.val}, {self.grad})"


def is_zero(x):
    if isinstance(x, Laurent):
        return x.is_zero()
    if isinstance(x, Jet):
        return x.val == 0
    return x == 0


def sign(x):
    if isinstance(x, (Laurent, Jet)):
        return x.sign()
    return (x > 0) - (x < 0)
