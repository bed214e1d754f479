"""Small exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction`` (ints are accepted on input).
Dimensions here never exceed a handful, so plain Gaussian elimination is
the right tool.
"""
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted where exact rationals are required")
    return Fraction(x)


def vec(xs):
    return tuple(as_fraction(x) for x in xs)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _echelon(rows):
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    m = [list(map(as_fraction, r)) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(_echelon(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of {x : rows . x = 0} as a list of Fraction tuples."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    m, pivots = _echelon(rows)
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -m[i][f]
        basis.append(tuple(x))
    return basis


def det(rows):
    m = [list(map(as_fraction, r)) for r in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def solve(rows, rhs):
    """Solve the square system rows . x = rhs exactly; raises on singular input."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular system")
    return tuple(m[i][n] for i in range(n))


def inverse(rows):
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    m, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [tuple(m[i][n:]) for i in range(n)]


def primitive(v):
    """Smallest positive rescaling of a nonzero rational vector lying in Z^k."""
    v = vec(v)
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise ValueError("zero vector has no primitive rescaling")
    return tuple(i // g for i in ints)


def content(v):
    """gcd of an integer vector."""
    return reduce(gcd, (int(x) for x in v), 0)


def lattice_index(vectors):
    """Index of the Z-span of integer vectors inside its saturation (R-span cap Z^k).

    Equals the product of the nonzero invariant factors of the Smith normal form.
    """
    if not vectors:
        return 1
    snf = smith_normal_form(Matrix([list(map(int, v)) for v in vectors]), domain=ZZ)
    idx = 1
    for i in range(min(snf.shape)):
        if snf[i, i] != 0:
            idx *= abs(int(snf[i, i]))
    return idx


def fmt(q):
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_vector(text):
    """Parse "p/q,p/q,..." (or a sequence of strings/ints) into a Fraction tuple."""
    if isinstance(text, str):
        parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
        return tuple(Fraction(p.strip()) for p in parts)
    return vec(text)
