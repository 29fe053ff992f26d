"""Instanton numbers of ``E(j, p)``: height, width and charge.

Conventions.  A section of ``E`` over the chart ``(z, u)`` is a pair
``(a, b)`` of polynomials; on the chart ``(1/z, z u)`` it reads
``(z^j a + p b, z^-j b)``.  A monomial ``z^k u^m`` is regular on the second
chart iff ``k <= m``.  The module ``M = pi_* E`` is a module over
``R = Q[x, y]`` with ``x = u`` and ``y = z u``, so the u-degree of a
monomial is its total degree in ``x, y`` and every length below is local at
the origin.

* height ``h = dim H^1(E)``: the Cech cokernel of the two-chart cover.
  Eliminating the (surjective) second row leaves the quotient of
  ``Q[z, 1/z, u]`` by the regular functions on either chart, with basis
  ``z^k u^m, m < k < j``, modulo the span of ``p b`` for ``b`` a section of
  ``O(j)`` (``0 <= deg_z b_m <= m + j``).
* width ``w = length(Q)`` with ``Q = M^vv / M``, computed as the length of
  ``Ext^1(M, R)`` from a minimal presentation of ``M`` (``width``), and
  independently from ``M^vv`` = sections off the exceptional line
  (``width_from_sections_off_line``).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra.bivariate import Poly2
from .algebra.laurent import LaurentZU
from .algebra.linalg import Echelon, kernel_of_images, rank_of
from .algebra.colength import ColengthError, module_colength
from .bundle import ExtensionClassError


class CertificationError(RuntimeError):
    """A truncation bound was too small to certify the result."""


def _check(j, p):
    if j < 1:
        raise ExtensionClassError("splitting type must be a positive integer")
    if any(i == 0 for (_, i) in p.terms):
        raise ExtensionClassError("extension class has u-degree-0 term")


def _as_p(p):
    return p if isinstance(p, LaurentZU) else LaurentZU(p)


# ---------------------------------------------------------------------------
# height


def height_windows(j):
    """Basis ``(k, m)`` of ``Q[z,1/z,u]`` modulo functions regular on a chart."""
    return [(k, m) for m in range(0, j - 1) for k in range(m + 1, j)]


def height_matrix(j, p):
    """Columns of the Cech map ``b -> [p b]`` restricted to the windows.

    Sources are the monomials ``z^s u^n`` of sections of ``O(j)`` that can
    reach a window (``n <= j-3``); each column is a sparse vector on
    ``height_windows(j)``.
    """
    p = _as_p(p)
    _check(j, p)
    columns = []
    for n in range(0, j - 2):
        for s in range(0, n + j + 1):
            col = {}
            for (l, i), c in p.terms.items():
                k, m = l + s, i + n
                if m + 1 <= k <= j - 1:
                    col[(k, m)] = col.get((k, m), 0) + c
            columns.append({key: v for key, v in col.items() if v})
    return columns


def height(j, p):
    """Length of ``R^1 pi_* E(j, p)``.

    >>> height(4, LaurentZU({(0, 2): 1}))
    5
    """
    p = _as_p(p)
    cols = height_matrix(j, p)
    return len(height_windows(j)) - rank_of([c for c in cols if c])


# ---------------------------------------------------------------------------
# sections of E over the chart (z, u), truncated in u-degree


def _high_part(j, prod):
    """Forced correction ``a`` cancelling z-degrees ``>= max(j, m+1)`` of ``p b``."""
    a = {}
    for (d, m), c in prod.terms.items():
        if d >= j and d >= m + 1:
            a[(d - j, m)] = -c
    return LaurentZU(a)


def _window_part(j, prod):
    return {(d, m): c for (d, m), c in prod.terms.items() if m + 1 <= d <= j - 1}


def forced_a(j, p, b):
    """The ``a`` with no free part making ``(a, b)`` a section (if one exists)."""
    return _high_part(j, p * b)


def is_section(j, p, a, b):
    """Check regularity of ``(a, b)`` on both charts."""
    if any(l < 0 for (l, _) in a.terms) or any(l < 0 for (l, _) in b.terms):
        return False
    if any(l > i + j for (l, i) in b.terms):
        return False
    alpha = LaurentZU.monomial(j, 0) * a + p * b
    return all(l <= i for (l, i) in alpha.terms)


def _vec(a, b):
    v = {}
    for (k, m), c in a.terms.items():
        v[(m, 0, k)] = c
    for (k, m), c in b.terms.items():
        v[(m, 1, k)] = c
    return v


def _unvec(v):
    a, b = {}, {}
    for (m, comp, k), c in v.items():
        (a if comp == 0 else b)[(k, m)] = c
    return LaurentZU(a), LaurentZU(b)


def _truncate(v, top):
    return {key: c for key, c in v.items() if key[0] <= top}


def _low_b_kernel(j, p, top):
    """Sections of ``O(j)``-part in u-degrees ``<= min(top, j-3)`` that satisfy
    every window condition in degrees ``<= top``."""
    nmax = min(top, j - 3)
    unknowns = [(s, n) for n in range(0, nmax + 1) for s in range(0, n + j + 1)]
    images = []
    for s, n in unknowns:
        prod = p.shift(s, n)
        images.append({key: c for key, c in _window_part(j, prod).items() if key[1] <= top})
    out = []
    for rel in kernel_of_images(images):
        out.append(LaurentZU({unknowns[i]: c for i, c in rel.items()}))
    return out


@lru_cache(maxsize=256)
def section_basis(j, p, top):
    """A basis of ``M / M_{>top}`` adapted to the u-degree filtration.

    Returned as sparse vectors keyed by ``(m, component, k)`` (component 0
    is ``a``, 1 is ``b``), sorted by their lowest u-degree.
    """
    p = _as_p(p)
    raw = []
    for b in _low_b_kernel(j, p, top):
        raw.append(_truncate(_vec(forced_a(j, p, b), b), top))
    for n in range(max(0, j - 2), top + 1):
        for s in range(0, n + j + 1):
            b = LaurentZU.monomial(s, n)
            raw.append(_truncate(_vec(_high_part(j, p.shift(s, n)), b), top))
    for m in range(j, top + 1):
        for k in range(0, m - j + 1):
            raw.append({(m, 0, k): Fraction(1)})
    ech = Echelon()
    for v in raw:
        ech.add(v)
    return tuple(ech.basis())


def section_space_dim(j, p, D):
    """Dimensions of the graded pieces ``M_{>=m} / M_{>=m+1}`` for ``m <= D``.

    >>> section_space_dim(2, LaurentZU(), 1)
    [3, 4]
    """
    p = _as_p(p)
    _check(j, p)
    if D < 0:
        raise ValueError("truncation degree must be nonnegative")
    dims = [0] * (D + 1)
    for v in section_basis(j, p, D):
        dims[min(v)[0]] += 1
    return dims


def lift_section(j, p, v, top):
    """Extend a truncated section vector to an honest polynomial section."""
    a, b = _unvec(v)
    forced = forced_a(j, p, b)
    free = a - LaurentZU({k: c for k, c in forced.terms.items() if k[1] <= top})
    a_full = forced + free
    if not is_section(j, p, a_full, b):
        raise CertificationError("presentation bounds too small; rerun with --max-degree")
    return a_full, b


# ---------------------------------------------------------------------------
# presentation


@dataclass
class Bounds:
    """Truncation bounds for the presentation and the Ext computation."""

    gen_bound: int
    rel_bound: int
    coker_cap: int

    @classmethod
    def default(cls, j, max_degree=None):
        """Default bounds; ``max_degree`` caps every truncation degree."""
        if max_degree is not None:
            d = int(max_degree)
            return cls(d, d, d)
        gen = 2 * j + 2
        rel = gen + 2 * j + 2
        return cls(gen, rel, rel + j * j + 2)


@dataclass
class Presentation:
    """``R^s --phi--> R^g --> M --> 0``; rows of ``phi`` are generators."""

    j: int
    p: LaurentZU
    generators: list  # (a, b) pairs of LaurentZU
    degrees: list
    phi: list  # g rows x s columns of Poly2
    hilbert: list = field(default_factory=list)

    @property
    def relation_count(self):
        return len(self.phi[0]) if self.phi else 0


def _mono_action(a, b, alpha, beta):
    """``x^alpha y^beta`` acting on a section: multiply by ``z^beta u^(alpha+beta)``."""
    return a.shift(beta, alpha + beta), b.shift(beta, alpha + beta)


def _monomials(deg):
    return [(deg - t, t) for t in range(deg + 1)]


def _monomials_upto(deg):
    return [m for d in range(deg + 1) for m in _monomials(d)]


def _find_generators(j, p, gen_bound):
    top = max(gen_bound, j - 2, 0)
    basis = section_basis(j, p, top)
    lower = section_basis(j, p, top - 1) if top >= 1 else []
    ech = Echelon()
    for v in lower:
        a, b = _unvec(v)
        for alpha, beta in ((1, 0), (0, 1)):
            a2, b2 = _mono_action(a, b, alpha, beta)
            w = _truncate(_vec(a2, b2), top)
            if w:
                ech.add(w)
    by_degree = {}
    for v in basis:
        by_degree.setdefault(min(v)[0], []).append(v)
    gens = []
    for d in range(top, -1, -1):
        for v in by_degree.get(d, []):
            independent = ech.add(v) is None
            if independent and d <= gen_bound:
                gens.append((d, v))
    gens.sort(key=lambda t: (t[0], sorted(t[1])))
    out = []
    for d, v in gens:
        a, b = lift_section(j, p, v, top)
        out.append((d, a, b))
    return out


def _poly_of(coeffs):
    return Poly2({(alpha, beta): c for (alpha, beta), c in coeffs.items()})


def _order(vec_polys):
    return min((f.order() for f in vec_polys if f), default=None)


class _SyzygySearch:
    """Polynomial syzygies ``sum c_i g_i = 0`` with ``deg c_i + deg g_i <= cap``.

    The cap is raised one step at a time; earlier kernel vectors stay valid,
    so only the new unknowns are reduced at each step.
    """

    def __init__(self, gens):
        self.gens = gens
        self.unknowns = []
        self.echelon = Echelon(track=True)
        self.found = []
        self.cap = -1

    def raise_cap(self, cap):
        while self.cap < cap:
            self.cap += 1
            for idx, (d, a, b) in enumerate(self.gens):
                if self.cap - d < 0:
                    continue
                for mono in _monomials(self.cap - d):
                    a2, b2 = _mono_action(a, b, *mono)
                    i = len(self.unknowns)
                    self.unknowns.append((idx, mono))
                    rel = self.echelon.add(_vec(a2, b2), {i: Fraction(1)})
                    if rel is not None:
                        self.found.append(self._as_polys(rel))
        return self.found

    def _as_polys(self, rel):
        comps = [dict() for _ in self.gens]
        for i, c in rel.items():
            idx, mono = self.unknowns[i]
            comps[idx][mono] = c
        return [_poly_of(cc) for cc in comps]


def _trunc_vec(vec_polys, top):
    """Sparse vector of ``R^g`` modulo ``m^(top+1)``, keyed by (deg, comp, a)."""
    v = {}
    for comp, f in enumerate(vec_polys):
        for (a, b), c in f.terms.items():
            if a + b <= top:
                v[(a + b, comp, a)] = c
    return v


def _select_minimal(candidates):
    """Greedy choice of minimal generators of the syzygy module.

    The candidates are first rewritten in a basis adapted to the m-adic
    filtration, then processed by increasing order; one is kept when its
    initial form is not produced, modulo ``m^(order+1)``, by multiples of
    the ones kept so far.
    """
    g = len(candidates[0])
    tagged = Echelon(track=True)
    for i, s in enumerate(candidates):
        deg = max((f.total_degree() for f in s if f), default=0)
        tagged.add(_trunc_vec(s, deg), {i: Fraction(1)})
    adapted = []
    for piv in tagged.pivots():
        comb = [Poly2() for _ in range(g)]
        for i, c in tagged.tags[piv].items():
            comb = [acc + f * c for acc, f in zip(comb, candidates[i])]
        adapted.append((piv[0], comb))
    chosen = []
    for order, s in adapted:
        span = Echelon()
        for t in chosen:
            for mono in _monomials_upto(order - _order(t)):
                w = _trunc_vec([f.shift(*mono) for f in t], order)
                if w:
                    span.add(w)
        if span.add(_trunc_vec(s, order)) is None:
            chosen.append(s)
    return chosen


def _full_column_rank(phi, ncols):
    """Rank over the fraction field, by evaluation at a few rational points."""
    if ncols == 0:
        return True
    points = [(Fraction(3), Fraction(5)), (Fraction(-2), Fraction(7)), (Fraction(11), Fraction(-13))]
    for x0, y0 in points:
        rows = []
        for row in phi:
            vals = {}
            for c, f in enumerate(row):
                val = sum((coef * x0 ** a * y0 ** b for (a, b), coef in f.terms.items()), Fraction(0))
                if val:
                    vals[c] = val
            rows.append(vals)
        # rank of the g x s matrix == rank of its transpose
        cols = [{r: rows[r][c] for r in range(len(rows)) if c in rows[r]} for c in range(ncols)]
        if rank_of([c for c in cols if c]) == ncols:
            return True
    return False


def _hilbert_check(j, p, pres, n_max):
    """Compare ``dim R^g / (im phi + m^n R^g)`` with ``dim M / m^n M``.

    The right side is computed in ``M / M_{>j+n-1}``; sections of order
    above ``j`` lie in ``m M`` (free rank-2 growth past degree ``j``), so
    ``M_{>=j+n} = m^n M_{>=j}`` and the truncation is exact.
    """
    g = len(pres.generators)
    out = []
    for n in range(1, n_max + 1):
        top = j + n - 1
        basis = section_basis(j, p, top)
        ech = Echelon()
        lower = section_basis(j, p, top - n) if top - n >= 0 else []
        for v in lower:
            a, b = _unvec(v)
            for mono in _monomials(n):
                a2, b2 = _mono_action(a, b, *mono)
                w = _truncate(_vec(a2, b2), top)
                if w:
                    ech.add(w)
        target = len(basis) - len(ech)
        span = Echelon()
        cols = [[pres.phi[r][c] for r in range(g)] for c in range(pres.relation_count)]
        for col in cols:
            ot = _order(col)
            if ot is None or ot >= n:
                continue
            for mono in _monomials_upto(n - 1 - ot):
                w = _trunc_vec([f.shift(*mono) for f in col], n - 1)
                if w:
                    span.add(w)
        have = g * n * (n + 1) // 2 - len(span)
        out.append((n, have, target))
        if have != target:
            raise CertificationError("presentation bounds too small; rerun with --max-degree")
    return out


def module_presentation(j, p, bounds=None):
    """Minimal presentation of ``M = pi_* E(j, p)`` (local at the origin).

    Generators are chosen by filtered Nakayama on ``M / m M``; relations
    are minimal generators of the syzygy module, selected greedily by
    order.  The result is certified before it is returned: generators span
    ``M / M_{>j+1}``, there are exactly ``g - 2`` relations of full column
    rank, and the Hilbert functions of ``coker(phi)`` and ``M`` agree.
    """
    p = _as_p(p)
    _check(j, p)
    bounds = bounds or Bounds.default(j)
    gens = _find_generators(j, p, bounds.gen_bound)
    g = len(gens)
    degrees = [d for d, _, _ in gens]

    # surjectivity onto M / M_{>j+1}
    check_top = j + 1
    if bounds.rel_bound < check_top:
        raise CertificationError("presentation bounds too small; rerun with --max-degree")
    target = section_basis(j, p, check_top)
    span = Echelon()
    for d, a, b in gens:
        for mono in _monomials_upto(check_top - d):
            a2, b2 = _mono_action(a, b, *mono)
            w = _truncate(_vec(a2, b2), check_top)
            if w:
                span.add(w)
    if len(span) != len(target):
        raise CertificationError("presentation bounds too small; rerun with --max-degree")

    phi_cols = None
    start = max(degrees) + 1 if degrees else 1
    search = _SyzygySearch(gens)
    for cap in range(start, bounds.rel_bound + 1):
        cands = search.raise_cap(cap)
        if len(cands) < g - 2:
            continue
        chosen = _select_minimal(cands) if cands else []
        if len(chosen) == g - 2:
            phi_cols = chosen
            break
    if phi_cols is None:
        raise CertificationError("presentation bounds too small; rerun with --max-degree")
    phi = [[phi_cols[c][r] for c in range(len(phi_cols))] for r in range(g)]
    if not _full_column_rank(phi, len(phi_cols)):
        raise CertificationError("presentation bounds too small; rerun with --max-degree")
    pres = Presentation(j, p, [(a, b) for _, a, b in gens], degrees, phi)
    pres.hilbert = _hilbert_check(j, p, pres, min(bounds.rel_bound, j + 2))
    return pres


def ext1_length(pres, cap):
    """Length of ``Ext^1(M, R) = coker(phi^T)`` at the origin."""
    s = pres.relation_count
    if s == 0:
        return 0
    rows = [list(r) for r in pres.phi]
    return module_colength(rows, s, cap)


def width(j, p, bounds=None):
    """Width ``w = length(M^vv / M) = length(Ext^1(M, R))``.

    >>> width(4, LaurentZU({(0, 2): 1}))
    3
    """
    p = _as_p(p)
    bounds = bounds or Bounds.default(j)
    pres = module_presentation(j, p, bounds)
    try:
        return ext1_length(pres, bounds.coker_cap)
    except ColengthError as exc:
        raise CertificationError("width computation failed certification") from exc


# ---------------------------------------------------------------------------
# independent route: sections off the exceptional line


def width_from_sections_off_line(j, p):
    """Width as ``dim N / M`` with ``N`` the sections of ``E`` off the line.

    ``N`` allows negative powers of ``u``.  Both ``N`` and ``M`` contain the
    sections ``(a, 0)`` with ``a`` in ``x^j R``, and the window conditions
    only involve ``b`` in u-degrees ``<= j-3``; hence ``N/M`` is the
    projection to negative u-degrees of the finite solution space below.
    """
    p = _as_p(p)
    _check(j, p)
    unknowns = [(s, n) for n in range(-j, max(j - 2, 0)) for s in range(0, n + j + 1)]
    images = []
    for s, n in unknowns:
        img = {}
        for (l, i), c in p.terms.items():
            d, m = l + s, i + n
            if m <= j - 2 and m + 1 <= d <= j - 1:
                img[(d, m)] = img.get((d, m), 0) + c
        images.append({k: v for k, v in img.items() if v})
    kernel = kernel_of_images(images)
    proj = [{i: c for i, c in v.items() if unknowns[i][1] < 0} for v in kernel]
    return rank_of([v for v in proj if v])


# ---------------------------------------------------------------------------
# charge


@dataclass(frozen=True)
class InstantonNumbers:
    width: int
    height: int

    @property
    def charge(self):
        return self.width + self.height

    def as_tuple(self):
        return (self.width, self.height, self.charge)


class BoundViolation(AssertionError):
    pass


def check_bounds(j, nums):
    w, h, k = nums.as_tuple()
    problems = []
    if w < 1:
        problems.append(f"width {w} < 1")
    if h < j - 1:
        problems.append(f"height {h} < j-1 = {j - 1}")
    if not j <= k <= j * j:
        problems.append(f"charge {k} outside [{j}, {j * j}]")
    return problems


def charge_report(j, p, bounds=None):
    """``(w, h, w + h)`` with the charge bounds ``j <= w + h <= j^2`` asserted."""
    p = _as_p(p)
    nums = InstantonNumbers(width(j, p, bounds), height(j, p))
    problems = check_bounds(j, nums)
    if problems:
        raise BoundViolation("; ".join(problems))
    return nums


def instanton_numbers_of(bundle, bounds=None):
    return charge_report(bundle.j, bundle.p, bounds)
