"""Fast exact elements of Q(zeta_{2r}) for the state-sum inner loop.

A value is an integer coefficient vector plus one integer denominator.
Multiplication is an integer convolution followed by reduction with the
(integral) rows of x^k mod Phi_{2r}; this is an order of magnitude cheaper
than per-coefficient Fraction arithmetic and exactly equivalent.  Used
internally by statesum and recoupling's identity checks; CycNumber remains
the public carrier.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclotomic import CycNumber, _field


class ZField:
    """Shared reduction data (integral) for one level."""

    def __init__(self, r: int):
        base = _field(r)
        self.r = r
        self.degree = base.degree
        rows = []
        for row in base.reduction_rows:
            assert all(c.denominator == 1 for c in row)
            rows.append(tuple(int(c) for c in row))
        self.rows = rows


@lru_cache(maxsize=None)
def zfield(r: int) -> ZField:
    return ZField(r)


class ZElt:
    """num (tuple of ints, length = field degree) over den (positive int)."""

    __slots__ = ("f", "num", "den")

    def __init__(self, f: ZField, num, den: int = 1):
        self.f = f
        self.num = tuple(num)
        self.den = den

    @staticmethod
    def from_cyc(x: CycNumber) -> "ZElt":
        f = zfield(x.level)
        den = 1
        for c in x.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = [int(c * den) for c in x.coeffs]
        return ZElt(f, num, den).normalized()

    def to_cyc(self, level: int) -> CycNumber:
        return CycNumber(level, [Fraction(n, self.den) for n in self.num])

    def normalized(self) -> "ZElt":
        g = self.den
        for n in self.num:
            g = gcd(g, n)
            if g == 1:
                return self
        if g > 1:
            return ZElt(self.f, tuple(n // g for n in self.num), self.den // g)
        return self

    def __mul__(self, other: "ZElt") -> "ZElt":
        f = self.f
        d = f.degree
        a, b = self.num, other.num
        conv = [0] * (2 * d - 1)
        for i in range(d):
            x = a[i]
            if x:
                for j in range(d):
                    y = b[j]
                    if y:
                        conv[i + j] += x * y
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = f.rows[k - d]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        res = ZElt(f, out, self.den * other.den)
        # keep numbers small without paying gcd on every step
        if res.den.bit_length() > 128:
            return res.normalized()
        return res

    def __add__(self, other: "ZElt") -> "ZElt":
        da, db = self.den, other.den
        if da == db:
            return ZElt(self.f, [x + y for x, y in zip(self.num, other.num)], da)
        g = gcd(da, db)
        ma, mb = db // g, da // g
        return ZElt(self.f,
                    [x * ma + y * mb for x, y in zip(self.num, other.num)],
                    da * ma)

    def __eq__(self, other):
        if not isinstance(other, ZElt):
            return NotImplemented
        a = self.normalized()
        b = other.normalized()
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        a = self.normalized()
        return hash((a.num, a.den))

    def is_zero(self) -> bool:
        return all(n == 0 for n in self.num)


class FastTables:
    """ZElt view of a SymbolTables instance (exact mode)."""

    def __init__(self, tables):
        if tables.mode != "exact":
            raise ValueError("fast view requires exact tables")
        self._tables = tables
        r = tables.level.r
        self.f = zfield(r)
        self.adm = tables.adm
        self.one = ZElt(self.f, (1,) + (0,) * (self.f.degree - 1))
        self.delta = [ZElt.from_cyc(d) for d in tables.delta]
        self.dim_total = tables.dim_total
        self._theta_inv: dict = {}
        self._tet: dict = {}

    def theta_inv(self, a, b, c):
        key = (a, b, c) if a <= b <= c else tuple(sorted((a, b, c)))
        val = self._theta_inv.get(key)
        if val is None:
            val = ZElt.from_cyc(self._tables.theta_inv(*key))
            self._theta_inv[key] = val
        return val

    def tet(self, A, B, C, D, E, F):
        key = (A, B, C, D, E, F)
        val = self._tet.get(key)
        if val is None:
            val = ZElt.from_cyc(self._tables.tet(*key))
            self._tet[key] = val
        return val


@lru_cache(maxsize=32)
def fast_tables(r: int) -> FastTables:
    from .recoupling import tables
    return FastTables(tables(r, "exact"))
