"""Rank-2 bundles on the blown-up plane given by a pair ``(j, p)``.

The bundle ``E(j, p)`` has transition matrix ``[[z^j, p], [0, z^-j]]`` from
the chart ``(z, u)`` to the chart ``(1/z, z u)``.  It is an extension of
``O(j)`` by ``O(-j)`` and restricts to the exceptional line as
``O(j) + O(-j)``.

Monomials ``z^l u^i`` of ``p`` outside the window ``1 <= i <= 2j-2``,
``i-j+1 <= l <= j-1`` are coboundaries: ``l >= j`` is absorbed by a change of
frame holomorphic on the first chart, ``l <= i-j`` by one holomorphic on the
second.  Deleting them is therefore a complete reduction to the window.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra.bivariate import Poly2
from .algebra.laurent import LaurentZU


class ExtensionClassError(ValueError):
    pass


def in_window(j, l, i):
    return 1 <= i <= 2 * j - 2 and i - j + 1 <= l <= j - 1


def window_monomials(j):
    """Window exponents ``(l, i)`` in lexicographic order (u first, then z)."""
    return [(l, i) for i in range(1, 2 * j - 1) for l in range(i - j + 1, j)]


def window_size(j):
    """Number of coefficients ``(j-1)(2j-1)`` of a canonical class."""
    return (j - 1) * (2 * j - 1) if j >= 1 else 0


def _check_u_degrees(p):
    if any(i == 0 for (_, i) in p.terms):
        raise ExtensionClassError("extension class has u-degree-0 term")


@dataclass(frozen=True)
class RawExtensionData:
    j: int
    p: LaurentZU

    def __post_init__(self):
        if self.j < 1:
            raise ExtensionClassError("splitting type must be a positive integer")
        _check_u_degrees(self.p)


@dataclass(frozen=True)
class CanonicalBundle:
    """A pair ``(j, p)`` with ``p`` supported in the canonical window."""

    j: int
    p: LaurentZU

    def __post_init__(self):
        if self.j < 1:
            raise ExtensionClassError("splitting type must be a positive integer")
        bad = [k for k in self.p.terms if not in_window(self.j, *k)]
        if bad:
            raise ExtensionClassError(f"monomials outside the canonical window: {sorted(bad)}")

    def transition_matrix(self):
        """``((z^j, p), (0, z^-j))`` as LaurentZU entries."""
        j = self.j
        return ((LaurentZU.monomial(j, 0), self.p), (LaurentZU(), LaurentZU.monomial(-j, 0)))

    def coefficients(self):
        """Coefficient vector in window order."""
        t = self.p.terms
        return [t.get(k, Fraction(0)) for k in window_monomials(self.j)]

    def is_split(self):
        return not self.p


def canonicalize(raw, j=None):
    """Reduce extension data to the canonical window by deleting coboundaries.

    Accepts a :class:`RawExtensionData` or ``(p, j)`` through the ``j``
    keyword.

    >>> from instantons.algebra.laurent import LaurentZU
    >>> str(canonicalize(RawExtensionData(2, LaurentZU({(1, 2): 1, (2, 2): 1}))).p)
    'z*u^2'
    """
    if j is not None:
        raw = RawExtensionData(j, raw)
    elif isinstance(raw, CanonicalBundle):
        raw = RawExtensionData(raw.j, raw.p)
    _check_u_degrees(raw.p)
    kept = {k: c for k, c in raw.p.terms.items() if in_window(raw.j, *k)}
    return CanonicalBundle(raw.j, LaurentZU(kept))


def curve_to_class(curve):
    """Substitute ``x -> u``, ``y -> z u``: ``x^a y^b`` becomes ``z^b u^(a+b)``."""
    if curve.constant_term():
        raise ExtensionClassError("curve does not pass through origin")
    terms = {}
    for (a, b), c in curve.terms.items():
        if not isinstance(c, Fraction):
            raise ExtensionClassError("curve coefficients must be rational")
        terms[(b, a + b)] = terms.get((b, a + b), 0) + c
    return LaurentZU(terms)


def from_curve(curve, j):
    """The bundle ``E(j, p(u, z u))`` attached to a plane curve germ."""
    if not isinstance(curve, Poly2):
        raise TypeError("curve must be a Poly2")
    return canonicalize(RawExtensionData(j, curve_to_class(curve)))


def embed_next(b):
    """The embedding ``(j, p) -> (j+1, z u^2 p)`` into the next moduli space."""
    q = b.p * LaurentZU.monomial(1, 2)
    return CanonicalBundle(b.j + 1, q)


def splits_on_neighborhood(b, n):
    """Whether ``E(j, p)`` splits on the ``n``-th formal neighbourhood of the
    exceptional line, i.e. ``p`` has no monomial of u-degree ``<= n``."""
    if n < 0:
        raise ValueError("neighbourhood order must be nonnegative")
    return all(i > n for (_, i) in b.p.terms)
