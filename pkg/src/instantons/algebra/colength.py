"""Colength at the origin of a submodule of ``Q[x, y]^n``.

The length of ``R^n / N`` localized at the origin is read off from jets:
``d_K = dim (R/m^(K+1))^n / (N mod m^(K+1))``.  Once ``d_K == d_(K+1)`` we
have ``m^(K+1) R^n`` inside ``N + m^(K+2) R^n`` and Nakayama gives
``m^(K+1) R^n`` inside ``N`` locally, so ``d_K`` is the answer.
"""

from .linalg import Echelon


class ColengthError(RuntimeError):
    """The jet dimensions did not stabilize below the cap."""


def _jet_span_dim(gens, n, K):
    """``dim`` of the image of ``N`` in ``(R/m^(K+1))^n``."""
    ech = Echelon()
    for g in gens:
        order = min((f.order() for f in g if f), default=None)
        if order is None or order > K:
            continue
        for d in range(K - order + 1):
            for t in range(d + 1):
                a = d - t
                v = {}
                for comp, f in enumerate(g):
                    for (p, q), c in f.terms.items():
                        if p + q + d <= K:
                            v[(p + q + d, comp, p + a)] = c
                if v:
                    ech.add(v)
    return len(ech)


def jet_dims(gens, n, K):
    total = n * (K + 1) * (K + 2) // 2
    return total - _jet_span_dim(gens, n, K)


def module_colength(gens, n, cap):
    """Colength of the span of ``gens`` (each a length-``n`` list of Poly2).

    Raises :class:`ColengthError` if it is infinite or exceeds what ``cap``
    jets can certify.
    """
    if n == 0:
        return 0
    prev = jet_dims(gens, n, 0)
    for K in range(1, cap + 1):
        cur = jet_dims(gens, n, K)
        if cur == prev:
            return prev
        prev = cur
    raise ColengthError("colength did not stabilize")


def colength(polys, cap):
    """Colength of the ideal generated by ``polys`` (a list of Poly2)."""
    return module_colength([[f] for f in polys], 1, cap)
