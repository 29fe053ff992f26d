"""Exact linear algebra over Q (or any exact field-like coefficient type).

Two flavours live here:

* ``rref_rank_kernel`` works on small dense matrices and follows the
  textbook pivot rule (first nonzero column, smallest row index), so the
  output is reproducible entry for entry.
* ``Echelon`` is an incremental, sparse, leading-term echelon basis.  Vectors
  are dicts ``{column_key: coefficient}`` and the pivot of a row is its
  smallest key under a caller supplied ordering.  Every heavier computation
  in the package (section spaces, syzygies, colengths) goes through it.
"""

from fractions import Fraction


def _is_zero(c):
    return not c


def rref(rows):
    """Reduced row echelon form of a dense matrix (list of lists).

    Returns ``(reduced_rows, pivot_columns)``.  The input is not modified.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if not _is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], int) else Fraction(1, m[r][c])
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rref_rank_kernel(rows, ncols=None):
    """Rank and a kernel basis of a dense matrix.

    ``ncols`` is only needed for matrices with zero rows.  Kernel vectors are
    the standard ones attached to free columns (free variable set to 1, the
    other free variables to 0).

    >>> rref_rank_kernel([[1, 2], [2, 4]])
    (1, [[Fraction(-2, 1), Fraction(1, 1)]])
    """
    rows = [[Fraction(v) if isinstance(v, int) else v for v in r] for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return 0, [[Fraction(int(i == k)) for i in range(ncols)] for k in range(ncols)]
    red, pivots = rref(rows)
    rank = len(pivots)
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        kernel.append(v)
    return rank, kernel


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def mat_vec(rows, v):
    return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in rows]


# ---------------------------------------------------------------------------
# sparse vectors


def vadd(v, w, scale=1):
    """Return ``v + scale * w`` for sparse dict vectors (new dict)."""
    out = dict(v)
    for k, c in w.items():
        s = out.get(k, 0) + scale * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _axpy_inplace(v, w, scale):
    for k, c in w.items():
        s = v.get(k, 0) + scale * c
        if s:
            v[k] = s
        else:
            v.pop(k, None)


class Echelon:
    """Incremental sparse echelon basis.

    ``key`` orders the column keys; the pivot of a stored row is its least
    column.  Rows are normalized to have pivot coefficient 1.  When
    ``track`` is true every inserted vector carries a tag vector (another
    sparse dict) that records the combination of inputs it came from, which
    is how kernels are extracted.
    """

    def __init__(self, key=None, track=False):
        self.key = key if key is not None else (lambda c: c)
        self.rows = {}
        self.tags = {} if track else None
        self.track = track

    def __len__(self):
        return len(self.rows)

    def _lead(self, v):
        return min(v, key=self.key)

    def reduce(self, v, tag=None):
        """Leading-term reduce ``v`` against the basis.

        Returns the reduced copy (and the updated tag when tracking).  The
        leading column of a nonzero result is never a pivot.
        """
        v = dict(v)
        tag = dict(tag) if tag is not None else None
        rows, tags = self.rows, self.tags
        while v:
            c = self._lead(v)
            row = rows.get(c)
            if row is None:
                break
            f = v[c]
            _axpy_inplace(v, row, -f)
            if tag is not None:
                _axpy_inplace(tag, tags[c], -f)
        return v, tag

    def add(self, v, tag=None):
        """Insert ``v``; return ``None`` if it was independent, else the
        reduced tag (a relation among inputs) when tracking, or ``{}``."""
        r, t = self.reduce(v, tag)
        if not r:
            return t if t is not None else {}
        c = self._lead(r)
        inv = 1 / r[c] if not isinstance(r[c], int) else Fraction(1, r[c])
        r = {k: x * inv for k, x in r.items()}
        self.rows[c] = r
        if self.track:
            self.tags[c] = {k: x * inv for k, x in t.items()}
        return None

    def contains(self, v):
        r, _ = self.reduce(v)
        return not r

    def pivots(self):
        return sorted(self.rows, key=self.key)

    def basis(self):
        """Rows sorted by pivot."""
        return [self.rows[c] for c in self.pivots()]


def rank_of(vectors, key=None):
    e = Echelon(key)
    for v in vectors:
        if v:
            e.add(v)
    return len(e)


def kernel_of_images(images, key=None):
    """Kernel of the linear map sending unknown ``i`` to ``images[i]``.

    ``images`` is a list of sparse vectors; the result is a list of sparse
    dicts over unknown indices forming a basis of the kernel.
    """
    e = Echelon(key, track=True)
    kernel = []
    for i, img in enumerate(images):
        rel = e.add(img, {i: Fraction(1)})
        if rel is not None:
            kernel.append(rel)
    return kernel
