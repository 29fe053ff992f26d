"""Towers of finite extensions of Q with dynamic evaluation.

Level 0 is Q itself (``Fraction``).  Level ``k`` is
``L_{k-1}[t_k] / (q_k)`` with ``q_k`` monic and squarefree over ``L_{k-1}``
but not necessarily irreducible, so a level is a product of fields.  When an
inversion hits a zero divisor the modulus factors, and a :class:`SplitEvent`
carrying the two coprime monic factors is raised.  The caller re-runs its
computation on each branch (D5 / Duval style); no factorization over number
fields is ever attempted.
"""

from fractions import Fraction

from . import univariate as up


class SplitEvent(Exception):
    """A modulus factored while inverting a zero divisor."""

    def __init__(self, tower, level, factors):
        super().__init__(f"modulus at level {level} splits")
        self.tower = tower
        self.level = level
        self.factors = factors


class TowerError(Exception):
    pass


class FieldTower:
    """Immutable stack of moduli; ``moduli[k-1]`` defines level ``k``."""

    def __init__(self, moduli=()):
        self.moduli = tuple(tuple(q) for q in moduli)
        for q in self.moduli:
            if not q or q[-1] != 1:
                raise TowerError("extension modulus must be monic")

    @property
    def height(self):
        return len(self.moduli)

    def degree(self):
        """Degree of the top level over Q."""
        d = 1
        for q in self.moduli:
            d *= len(q) - 1
        return d

    def extend(self, modulus):
        """Adjoin a root of ``modulus`` (monic, coefficients at the top level)."""
        return FieldTower(self.moduli + (tuple(modulus),))

    def generator(self, level=None):
        level = self.height if level is None else level
        q = self.moduli[level - 1]
        if len(q) == 2:
            return self.reduce_into(level, [0, 1])
        return TowerElement(self, level, (0, 1))

    def element(self, coeffs, level=None):
        level = self.height if level is None else level
        if level == 0:
            return Fraction(coeffs[0]) if coeffs else Fraction(0)
        return self.reduce_into(level, list(coeffs))

    def reduce_into(self, level, coeffs):
        q = list(self.moduli[level - 1])
        coeffs = up.trim(coeffs)
        if len(coeffs) >= len(q):
            _, coeffs = up.divmod_poly(coeffs, q)
        return TowerElement(self, level, tuple(coeffs))

    def lift(self, x, level):
        """Coerce a Fraction/int or lower-level element up to ``level``."""
        if isinstance(x, TowerElement):
            if x.level == level:
                return x
            if x.level > level:
                raise TowerError("cannot lower an element's level")
        elif level == 0:
            return Fraction(x)
        return TowerElement(self, level, (x,) if x else ())

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self):
        return f"FieldTower({self.moduli!r})"

    def branches(self, event):
        """Towers obtained by replacing the split modulus by each factor.

        Moduli above the split level are re-reduced coefficientwise.
        """
        out = []
        for factor in event.factors:
            moduli = list(self.moduli)
            moduli[event.level - 1] = tuple(factor)
            new = FieldTower(moduli[: event.level])
            for q in self.moduli[event.level:]:
                lvl = new.height
                q2 = tuple(transport(c, new, lvl) for c in q)
                new = FieldTower(new.moduli + (q2,))
            out.append(new)
        return out


def transport(x, tower, level):
    """Map an element into ``tower`` (same shape, possibly split moduli)."""
    if isinstance(x, TowerElement):
        coeffs = [transport(c, tower, x.level - 1) for c in x.coeffs]
        return tower.reduce_into(x.level, coeffs)
    return x


class TowerElement:
    """Residue class of a polynomial in ``t_level`` over the level below."""

    __slots__ = ("tower", "level", "coeffs")

    def __init__(self, tower, level, coeffs):
        self.tower = tower
        self.level = level
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, TowerElement):
            if other.level == self.level:
                return other
            if other.level < self.level:
                return TowerElement(self.tower, self.level, (other,))
            return None
        if isinstance(other, (int, Fraction)):
            return TowerElement(self.tower, self.level, (other,) if other else ())
        return None

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, TowerElement):
                return other == self
            return NotImplemented
        return not up.sub(list(self.coeffs), list(o.coeffs))

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, self.level, up.add(list(self.coeffs), list(o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, self.level, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, self.level, up.sub(list(self.coeffs), list(o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or (
            isinstance(other, TowerElement) and other.level < self.level
        ):
            return TowerElement(self.tower, self.level, up.trim([a * other for a in self.coeffs]))
        if not isinstance(other, TowerElement):
            return NotImplemented
        if other.level > self.level:
            return other * self
        prod = up.mul(list(self.coeffs), list(other.coeffs))
        return self.tower.reduce_into(self.level, prod)

    __rmul__ = __mul__

    def inverse(self):
        """Inverse, or raise :class:`SplitEvent` on a zero divisor."""
        if not self.coeffs:
            raise ZeroDivisionError("division by zero")
        q = list(self.tower.moduli[self.level - 1])
        d, s, _ = up.xgcd(list(self.coeffs), q)
        if len(d) > 1:
            other, _ = up.divmod_poly(q, d)
            raise SplitEvent(self.tower, self.level, (tuple(d), tuple(up.monic(other))))
        return self.tower.reduce_into(self.level, s)

    def __truediv__(self, other):
        if isinstance(other, TowerElement):
            return self * other.inverse()
        return self * up.inverse(other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __repr__(self):
        return f"T{self.level}{list(self.coeffs)!r}"


def tower_invert(x):
    """Invert a field-tower element (or a rational)."""
    return up.inverse(x)


def decide_nonzero(x):
    """True if ``x`` is a unit, False if it is zero; split on zero divisors."""
    if not x:
        return False
    if isinstance(x, TowerElement):
        x.inverse()
    return True
