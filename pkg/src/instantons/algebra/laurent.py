"""Sparse polynomials in ``u`` and Laurent polynomials in ``z``.

Exponent pairs are stored as ``(l, i)`` for the monomial ``z^l u^i``: ``l`` is
the z-exponent (any integer), ``i`` the u-exponent (nonnegative).  The
blow-up charts are ``(z, u)`` and ``(xi, v) = (1/z, z u)``, so ``z^l u^i``
is regular on the second chart exactly when ``l <= i``.
"""

from fractions import Fraction


class LaurentZU:
    """Immutable sparse element of ``Q[z, 1/z, u]``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for (l, i), c in (terms or {}).items():
            if i < 0:
                raise ValueError("u-exponents must be nonnegative")
            if c:
                key = (int(l), int(i))
                c = c if type(c) is Fraction else Fraction(c)
                if key not in clean:
                    clean[key] = c
                    continue
                s = clean[key] + c
                if s:
                    clean[key] = s
                else:
                    del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, l, i, c=1):
        return cls({(l, i): c})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """Terms in canonical order: u-degree, then z-degree, ascending."""
        return sorted(self._terms.items(), key=lambda t: (t[0][1], t[0][0]))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentZU):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentZU(out)

    def __neg__(self):
        return LaurentZU({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentZU):
            c = Fraction(other)
            return LaurentZU({k: c * v for k, v in self._terms.items()})
        out = {}
        for (l1, i1), c1 in self._terms.items():
            for (l2, i2), c2 in other._terms.items():
                k = (l1 + l2, i1 + i2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentZU(out)

    __rmul__ = __mul__

    def shift(self, l, i):
        """Multiply by the monomial ``z^l u^i``."""
        if i < 0 and any(k + i < 0 for (_, k) in self._terms):
            raise ValueError("u-exponents must be nonnegative")
        out = LaurentZU()
        out._terms = {(a + l, b + i): c for (a, b), c in self._terms.items()}
        return out

    def u_degrees(self):
        return sorted({i for _, i in self._terms})

    def u_slice(self, i):
        """``{l: coeff}`` for the u-degree ``i`` part."""
        return {l: c for (l, k), c in self._terms.items() if k == i}

    def z_range(self, i):
        """``(min, max)`` z-degree inside u-degree ``i``; ``None`` if empty."""
        ls = [l for (l, k) in self._terms if k == i]
        return (min(ls), max(ls)) if ls else None

    def min_u_degree(self):
        return min((i for _, i in self._terms), default=None)

    def max_u_degree(self):
        return max((i for _, i in self._terms), default=None)

    def __str__(self):
        return format_zu(self)

    def __repr__(self):
        return f"LaurentZU({format_zu(self)!r})"


def zu_multiply(a, b):
    return a * b


def _coeff_str(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_zu(p):
    """Stable text form, e.g. ``-z^2*u^5`` or ``u^2 + z^(-1)*u^3``."""
    if not p:
        return "0"
    parts = []
    for (l, i), c in p.items():
        factors = []
        if l == 1:
            factors.append("z")
        elif l > 1:
            factors.append(f"z^{l}")
        elif l < 0:
            factors.append(f"z^({l})")
        if i == 1:
            factors.append("u")
        elif i > 1:
            factors.append(f"u^{i}")
        mag = abs(c)
        if not factors:
            body = _coeff_str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _coeff_str(mag) + "*" + "*".join(factors)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
