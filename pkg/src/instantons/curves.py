"""Classical invariants of a plane curve germ at the origin.

Multiplicity, Milnor and Tjurina numbers (colengths of jet truncations,
certified by Nakayama) and the delta invariant with the number of branches,
obtained by blowing up infinitely near points.  Tangent directions that are
not rational are handled as a whole Galois orbit over a field tower; zero
divisors met on the way split the tower and the computation is redone on
each factor.
"""

from dataclasses import dataclass, field

from .algebra import univariate as up
from .algebra.bivariate import Poly2, blow_up_chart1, blow_up_chart2, is_squarefree
from .algebra.colength import ColengthError, colength
from .algebra.tower import FieldTower, SplitEvent, TowerError, TowerElement, decide_nonzero, transport


class SingularityError(ValueError):
    """Non-reduced curve or non-isolated singularity."""


class ConsistencyError(AssertionError):
    pass


MAX_DEPTH = 64
MAX_TOWER = 4


def _check_germ(g):
    if not g:
        raise SingularityError("zero polynomial has no multiplicity")
    if g.constant_term():
        raise SingularityError("curve does not pass through origin")


def multiplicity(g):
    """Least total degree of a monomial of ``g``."""
    _check_germ(g)
    return g.order()


def default_cap(gens):
    d = max((f.total_degree() for f in gens), default=0)
    return 2 * d * d + 10


def jet_colength(gens, hard_cap=None):
    """Colength of the ideal generated by ``gens`` at the origin.

    >>> jet_colength([Poly2({(1, 0): 2}), Poly2({(0, 6): -7})])
    6
    """
    gens = [g for g in gens if g]
    if hard_cap is None:
        hard_cap = default_cap(gens)
    try:
        return colength(gens, hard_cap)
    except ColengthError:
        raise SingularityError("non-isolated singularity or cap too small") from None


def milnor_tjurina(g):
    """``(mu, tau)`` of the germ ``g`` at the origin."""
    _check_germ(g)
    gx, gy = g.diff_x(), g.diff_y()
    cap = default_cap([g])
    return jet_colength([gx, gy], cap), jet_colength([g, gx, gy], cap)


def reducedness_check(g):
    """True iff ``g`` has no repeated factor."""
    return bool(g) and is_squarefree(g)


# ---------------------------------------------------------------------------
# resolution


@dataclass
class ResolutionNode:
    depth: int
    multiplicity: int
    orbit_degree: int
    germ: Poly2
    tower: FieldTower
    children: list = field(default_factory=list)

    @property
    def is_leaf(self):
        return self.multiplicity == 1


@dataclass
class ResolutionTree:
    roots: list

    def nodes(self):
        stack = list(self.roots)
        while stack:
            n = stack.pop()
            yield n
            stack.extend(n.children)

    @property
    def delta(self):
        return sum(n.orbit_degree * n.multiplicity * (n.multiplicity - 1) // 2 for n in self.nodes())

    @property
    def branches(self):
        return sum(n.orbit_degree for n in self.nodes() if n.is_leaf)

    def multiplicity_sequence(self):
        return sorted(((n.depth, n.multiplicity, n.orbit_degree) for n in self.nodes()), key=lambda t: t)


def _decided_order(f):
    """Order of ``f`` where every coefficient inspected is decided nonzero."""
    by_degree = {}
    for (a, b), c in f.terms.items():
        by_degree.setdefault(a + b, []).append(c)
    for d in sorted(by_degree):
        if any([decide_nonzero(c) for c in by_degree[d]]):
            return d
    return None


def _finite_slopes(lowest, m):
    """Monic squarefree polynomial whose roots are the finite tangent slopes."""
    q = [0] * (m + 1)
    for (a, b), c in lowest.terms.items():
        q[b] = q[b] + c
    q = up.trim(q)
    while q and not decide_nonzero(q[-1]):
        q.pop()
    if len(q) <= 1:
        return []
    return up.squarefree_part(q)


def _transport_poly(f, tower):
    return Poly2({k: transport(c, tower, tower.height) for k, c in f.terms.items()})


def _resolve(f, tower, depth):
    """Resolution subtree(s) of the germ ``f`` over ``tower``.

    Returns a list of nodes: one normally, several if the tower split.
    """
    try:
        return [_resolve_point(f, tower, depth)]
    except SplitEvent as ev:
        out = []
        for branch in tower.branches(ev):
            out.extend(_resolve(_transport_poly(f, branch), branch, depth))
        return out


def _resolve_point(f, tower, depth):
    if depth > MAX_DEPTH:
        raise SingularityError("resolution depth cap exceeded")
    m = _decided_order(f)
    if m is None or m == 0:
        raise SingularityError("germ does not pass through the point")
    node = ResolutionNode(depth, m, tower.degree(), f, tower)
    if m == 1:
        return node
    lowest = f.homogeneous_part(m)
    slopes = _finite_slopes(lowest, m)
    if len(slopes) == 2:
        theta = -slopes[0] * up.inverse(slopes[1])
        node.children.extend(_resolve(blow_up_chart1(f, theta, m), tower, depth + 1))
    elif len(slopes) > 2:
        if tower.height >= MAX_TOWER:
            raise TowerError("unsupported field tower")
        ext = tower.extend([_lift_to(c, tower) for c in up.monic(slopes)])
        theta = ext.generator()
        g = _transport_poly(f, ext)
        node.children.extend(_resolve(blow_up_chart1(g, theta, m), ext, depth + 1))
    if not decide_nonzero(lowest.terms.get((0, m), 0)):
        node.children.extend(_resolve(blow_up_chart2(f, m), tower, depth + 1))
    return node


def _lift_to(c, tower):
    if tower.height == 0:
        return c
    if isinstance(c, TowerElement) and c.level == tower.height:
        return c
    return tower.lift(c, tower.height)


def resolution_tree(g):
    _check_germ(g)
    return ResolutionTree(_resolve(g, FieldTower(), 0))


def delta_and_branches(g):
    """``(delta, r, tree)`` for a reduced germ ``g``.

    >>> delta_and_branches(Poly2({(1, 1): 1}))[:2]
    (1, 2)
    """
    _check_germ(g)
    if not reducedness_check(g):
        raise SingularityError("curve not reduced")
    tree = resolution_tree(g)
    return tree.delta, tree.branches, tree


@dataclass(frozen=True)
class CurveInvariants:
    multiplicity: int
    milnor: int
    tjurina: int
    delta: int
    branches: int

    @property
    def consistent(self):
        return 2 * self.delta == self.milnor + self.branches - 1


def curve_invariants(g):
    """All classical invariants, with Milnor's relation enforced."""
    _check_germ(g)
    if not reducedness_check(g):
        raise SingularityError("curve not reduced")
    mu, tau = milnor_tjurina(g)
    delta, r, _ = delta_and_branches(g)
    inv = CurveInvariants(multiplicity(g), mu, tau, delta, r)
    if not inv.consistent or tau > mu:
        raise ConsistencyError(f"inconsistent invariants {inv}")
    return inv
