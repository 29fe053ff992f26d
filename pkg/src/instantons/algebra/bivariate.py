"""Sparse polynomials in ``x, y`` (coefficients in Q or a field tower)."""

from fractions import Fraction
from math import comb

from . import univariate as up


class Poly2:
    """Immutable sparse bivariate polynomial ``{(a, b): coeff}`` for ``x^a y^b``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if c:
                clean[k] = c
        self.terms = clean

    @classmethod
    def from_dict(cls, d):
        out = {}
        for k, c in d.items():
            out[k] = out.get(k, 0) + c
        return cls(out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly2) and (self - other).terms == {}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Poly2(out)

    def __neg__(self):
        return Poly2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            return Poly2({k: c * other for k, c in self.terms.items()})
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return Poly2(out)

    __rmul__ = __mul__

    def map_coeffs(self, f):
        return Poly2({k: f(c) for k, c in self.terms.items()})

    def constant_term(self):
        return self.terms.get((0, 0), 0)

    def total_degree(self):
        return max((a + b for a, b in self.terms), default=-1)

    def order(self):
        """Least total degree of a monomial (the multiplicity at the origin)."""
        return min((a + b for a, b in self.terms), default=None)

    def homogeneous_part(self, d):
        return Poly2({(a, b): c for (a, b), c in self.terms.items() if a + b == d})

    def diff_x(self):
        return Poly2({(a - 1, b): a * c for (a, b), c in self.terms.items() if a})

    def diff_y(self):
        return Poly2({(a, b - 1): b * c for (a, b), c in self.terms.items() if b})

    def swap(self):
        return Poly2({(b, a): c for (a, b), c in self.terms.items()})

    def truncate(self, k):
        """Drop monomials of total degree above ``k``."""
        return Poly2({m: c for m, c in self.terms.items() if m[0] + m[1] <= k})

    def shift(self, a, b):
        return Poly2({(i + a, k + b): c for (i, k), c in self.terms.items()})

    def x_degree(self):
        return max((a for a, _ in self.terms), default=-1)

    def y_degree(self):
        return max((b for _, b in self.terms), default=-1)

    def __repr__(self):
        return f"Poly2({format_xy(self)!r})"

    def __str__(self):
        return format_xy(self)


def format_xy(f, names=("x", "y")):
    if not f.terms:
        return "0"
    out = ""
    for (a, b), c in sorted(f.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
        factors = []
        for e, n in ((a, names[0]), (b, names[1])):
            if e == 1:
                factors.append(n)
            elif e > 1:
                factors.append(f"{n}^{e}")
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        if isinstance(mag, Fraction):
            cs = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        else:
            cs = f"({mag!r})"
        if not factors:
            body = cs
        elif cs == "1":
            body = "*".join(factors)
        else:
            body = cs + "*" + "*".join(factors)
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def blow_up_chart1(f, root, m):
    """Strict transform ``f(x, x (root + y')) / x^m`` in the chart ``y = x y'``.

    ``root`` is the tangent slope (``0`` for the direction ``y = 0``); the
    returned polynomial is in ``(x, y')`` centred at ``y' = 0``.
    """
    out = {}
    for (a, b), c in f.terms.items():
        # x^a (x (root + y'))^b = x^(a+b) * sum_k C(b,k) root^(b-k) y'^k
        for k in range(b + 1):
            if not root and k != b:
                continue
            coef = c * comb(b, k)
            if b - k:
                coef = coef * _power(root, b - k)
            key = (a + b - m, k)
            out[key] = out.get(key, 0) + coef
    if any(a < 0 for (a, _), v in out.items() if v):
        raise ValueError("strict transform is not divisible by x^m")
    return Poly2(out)


def blow_up_chart2(f, m):
    """Strict transform ``f(x' y, y) / y^m`` at the origin of the chart ``x = x' y``."""
    out = {}
    for (a, b), c in f.terms.items():
        key = (a, a + b - m)
        out[key] = out.get(key, 0) + c
    return Poly2(out)


def _power(x, n):
    r = 1
    for _ in range(n):
        r = r * x
    return r


# ---------------------------------------------------------------------------
# gcd over Q via primitive remainder sequences in Q[x][y]


def _as_y_poly(f):
    """Q[x][y] view: list indexed by y-degree of univariate x-polynomials."""
    n = f.y_degree()
    out = [[] for _ in range(n + 1)]
    for (a, b), c in f.terms.items():
        col = out[b]
        while len(col) <= a:
            col.append(Fraction(0))
        col[a] = col[a] + c
    return [up.trim(c) for c in out]


def _from_y_poly(p):
    terms = {}
    for b, col in enumerate(p):
        for a, c in enumerate(col):
            if c:
                terms[(a, b)] = c
    return Poly2(terms)


def _ytrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _content(p):
    g = []
    for c in p:
        g = up.gcd(g, c) if g else up.monic(c)
        if len(g) == 1:
            break
    return g


def _primitive(p):
    c = _content(p)
    if not c:
        return p
    return _ytrim([up.divmod_poly(col, c)[0] for col in p])


def _prem(a, b):
    a = _ytrim(a)
    lb = b[-1]
    while len(a) >= len(b):
        la = a[-1]
        s = len(a) - len(b)
        new = [up.mul(lb, col) for col in a]
        for i, col in enumerate(b):
            new[s + i] = up.sub(new[s + i], up.mul(la, col))
        a = _ytrim(new)
    return a


def gcd2(f, g):
    """Greatest common divisor of two rational bivariate polynomials.

    Normalized so that its leading coefficient (highest y-degree, then
    highest x-degree) is 1.
    """
    if not f:
        return _normalize(g)
    if not g:
        return _normalize(f)
    a, b = _ytrim(_as_y_poly(f)), _ytrim(_as_y_poly(g))
    ca, cb = _content(a), _content(b)
    cont = up.gcd(ca, cb)
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            break
        a, b = b, _primitive(r)
    if len(b) <= 1:
        res = [cont]
    else:
        res = [up.mul(cont, col) for col in b]
    return _normalize(_from_y_poly(res))


def _normalize(f):
    if not f.terms:
        return f
    lead = max(f.terms, key=lambda k: (k[1], k[0]))
    inv = 1 / f.terms[lead]
    return f * inv


def is_squarefree(f):
    """True iff ``f`` has no repeated factor (characteristic zero)."""
    g = gcd2(gcd2(f, f.diff_x()), f.diff_y())
    return g.total_degree() <= 0
