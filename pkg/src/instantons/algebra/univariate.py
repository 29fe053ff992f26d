"""Dense univariate polynomials over an exact field-like coefficient ring.

A polynomial is a list of coefficients, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).  Coefficients may be
``Fraction`` or tower elements; inverting a leading coefficient over a tower
may raise :class:`~instantons.algebra.tower.SplitEvent`, which callers are
expected to propagate.
"""

from fractions import Fraction


def inverse(c):
    if isinstance(c, int):
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(1, c)
    if isinstance(c, Fraction):
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return 1 / c
    return c.inverse()


def trim(f):
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def degree(f):
    return len(f) - 1 if f else -1


def add(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def sub(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)])


def scale(f, c):
    return trim([c * a for a in f])


def mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for k, b in enumerate(g):
            out[i + k] = out[i + k] + a * b
    return trim(out)


def divmod_poly(f, g):
    """Quotient and remainder of ``f`` by ``g`` (``g`` nonzero)."""
    g = trim(g)
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    r = trim(f)
    q = [0] * max(len(r) - len(g) + 1, 0)
    lead_inv = inverse(g[-1])
    while len(r) >= len(g):
        c = r[-1] * lead_inv
        s = len(r) - len(g)
        q[s] = c
        for i, b in enumerate(g):
            r[s + i] = r[s + i] - c * b
        r.pop()
        r = trim(r)
    return trim(q), r


def monic(f):
    f = trim(f)
    if not f:
        return f
    inv = inverse(f[-1])
    return [a * inv for a in f[:-1]] + [f[-1] * inv]


def gcd(f, g):
    """Monic gcd by the Euclidean algorithm.

    >>> gcd([Fraction(-1), 0, 1], [Fraction(-1), 1])
    [Fraction(-1, 1), Fraction(1, 1)]
    """
    a, b = trim(f), trim(g)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)


def xgcd(f, g):
    """Return ``(d, s, t)`` with ``d = s f + t g`` and ``d`` monic."""
    r0, r1 = trim(f), trim(g)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    inv = inverse(r0[-1])
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(f):
    return trim([i * f[i] for i in range(1, len(f))])


def squarefree_part(f):
    """Monic squarefree part ``f / gcd(f, f')`` (characteristic zero).

    >>> squarefree_part([0, 0, 0, Fraction(-1), Fraction(1)])  # t^3 (t - 1)
    [Fraction(0, 1), Fraction(-1, 1), Fraction(1, 1)]
    """
    f = trim(f)
    if degree(f) <= 0:
        return monic(f) if f else f
    g = gcd(f, derivative(f))
    q, _ = divmod_poly(f, g)
    return monic(q)


def evaluate(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def compose_shift(f, c):
    """Coefficients of ``f(t + c)``."""
    out = []
    for a in reversed(f):
        out = add(mul(out, [c, 1]), [a] if a else [])
    return out
