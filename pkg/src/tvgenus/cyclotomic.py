"""Exact arithmetic in the cyclotomic field Q(zeta) with zeta = e^(i*pi/r).

zeta is a primitive 2r-th root of unity, so the field is Q[x]/(Phi_{2r}(x))
with Phi_{2r} the 2r-th cyclotomic polynomial.  Elements are represented as
polynomials in zeta with rational coefficients, reduced modulo Phi_{2r}.
This is enough to carry every quantity the recoupling theory produces at
q = e^(i*pi/r): quantum integers, theta- and tetrahedral symbols, and the
state-sum values built from them, all without square roots.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n (index = power), computed by exact division
    of x^n - 1 by the product of Phi_d over proper divisors d of n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul_int(den, list(cyclotomic_polynomial(d)))
    quot, rem = _poly_divmod_int(num, den)
    if any(rem):
        raise AssertionError("cyclotomic division left a remainder")
    return tuple(quot)


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    num = num[:]
    dd = len(den) - 1
    while den[dd] == 0:
        dd -= 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1 - dd, -1, -1):
        c = num[i + dd]
        if c % den[dd] != 0 and c != 0:
            raise AssertionError("non-monic division")
        q = c // den[dd]
        quot[i] = q
        if q:
            for j in range(dd + 1):
                num[i + j] -= q * den[j]
    return quot, num


class _Field:
    """Reduction data for Q[x]/(Phi_{2r}), shared by all CycNumber at level r."""

    def __init__(self, r: int):
        self.r = r
        self.n = 2 * r
        phi = cyclotomic_polynomial(self.n)
        self.degree = len(phi) - 1
        # x^k mod Phi for k = degree .. 2*degree-2, as Fraction rows
        top = [Fraction(-c) for c in phi[:-1]]
        rows = [top]
        for _ in range(self.degree - 2):
            prev = rows[-1]
            row = [Fraction(0)] + prev[:-1]
            if prev[-1]:
                row = [row[i] + prev[-1] * top[i] for i in range(self.degree)]
            rows.append(row)
        self.reduction_rows = rows
        self.phi = phi
        # zeta^k reduced, for k = 0 .. 2r-1
        zp = []
        cur = [Fraction(0)] * self.degree
        cur[0] = Fraction(1)
        for _ in range(self.n):
            zp.append(tuple(cur))
            cur = self._shift(cur)
        self.zeta_powers = zp
        self.zeta_complex = cmath.exp(1j * math.pi / r)

    def _shift(self, coeffs):
        out = [Fraction(0)] + list(coeffs[:-1])
        lead = coeffs[-1]
        if lead:
            red = self.reduction_rows[0]
            out = [out[i] + lead * red[i] for i in range(self.degree)]
        return out

    def reduce(self, coeffs):
        """Reduce a coefficient list of length <= 2*degree-1."""
        d = self.degree
        out = list(coeffs[:d]) + [Fraction(0)] * (d - min(d, len(coeffs)))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = self.reduction_rows[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return out


@lru_cache(maxsize=None)
def _field(r: int) -> _Field:
    return _Field(r)


class CycNumber:
    """An element of Q(zeta_{2r}), zeta = e^(i*pi/r), at level r >= 3.

    Immutable.  Supports +, -, *, /, ** and exact equality; division by
    zero (the only non-invertible element, Phi_{2r} being irreducible)
    raises ZeroDivisionError.
    """

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        if level < 3:
            raise ValueError("level must be >= 3")
        f = _field(level)
        if len(coeffs) != f.degree:
            raise ValueError("coefficient vector has wrong length")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, *a):
        raise AttributeError("CycNumber is immutable")

    # --- constructors -----------------------------------------------------
    @staticmethod
    def zero(level: int) -> "CycNumber":
        return CycNumber(level, [0] * _field(level).degree)

    @staticmethod
    def one(level: int) -> "CycNumber":
        return CycNumber.from_rational(level, 1)

    @staticmethod
    def from_rational(level: int, value) -> "CycNumber":
        f = _field(level)
        coeffs = [Fraction(0)] * f.degree
        coeffs[0] = Fraction(value)
        return CycNumber(level, coeffs)

    @staticmethod
    def zeta_power(level: int, k: int) -> "CycNumber":
        """zeta^k for any integer k (negative allowed)."""
        f = _field(level)
        return CycNumber(level, f.zeta_powers[k % f.n])

    # --- ring operations ---------------------------------------------------
    def _check(self, other: "CycNumber"):
        if not isinstance(other, CycNumber):
            raise TypeError("expected CycNumber")
        if other.level != self.level:
            raise ValueError("mixed levels")

    def __add__(self, other):
        self._check(other)
        return CycNumber(self.level,
                         [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return CycNumber(self.level,
                         [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CycNumber(self.level, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.level, [a * other for a in self.coeffs])
        self._check(other)
        f = _field(self.level)
        a, b = self.coeffs, other.coeffs
        d = f.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return CycNumber(self.level, f.reduce(conv))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        f = _field(self.level)
        # extended gcd of self (as polynomial) and Phi
        a = list(self.coeffs)
        b = [Fraction(c) for c in f.phi]
        s0, s1 = [Fraction(1)], [Fraction(0)]
        while any(b):
            q, rem = _poly_divmod_frac(a, b)
            a, b = b, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul_frac(q, s1))
        # a is now the (degree 0) gcd; normalize
        lead = _poly_lead(a)
        inv_coeffs = [c / lead for c in s0]
        return CycNumber(self.level, f.reduce(inv_coeffs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycNumber(self.level, [a / other for a in self.coeffs])
        self._check(other)
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycNumber.one(self.level)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- predicates and embeddings ------------------------------------------
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycNumber.from_rational(self.level, other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def conjugate(self) -> "CycNumber":
        """Complex conjugation, i.e. the field automorphism zeta -> zeta^(2r-1)."""
        f = _field(self.level)
        out = [Fraction(0)] * f.degree
        for k, c in enumerate(self.coeffs):
            if c:
                row = f.zeta_powers[(-k) % f.n]
                for i in range(f.degree):
                    out[i] += c * row[i]
        return CycNumber(self.level, out)

    def is_real(self) -> bool:
        """Exact test: fixed by complex conjugation."""
        return self == self.conjugate()

    def to_complex(self) -> complex:
        z = _field(self.level).zeta_complex
        out = 0j
        for c in reversed(self.coeffs):
            out = out * z + complex(c)
        return out

    def to_float(self) -> float:
        """Real embedding; requires the element to be exactly real."""
        if not self.is_real():
            raise ValueError("element is not real")
        return self.to_complex().real

    def __repr__(self):
        return f"CycNumber(r={self.level}, {self})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append(f"-{mon}")
                else:
                    terms.append(f"{c}*{mon}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _poly_lead(p):
    for c in reversed(p):
        if c != 0:
            return c
    return Fraction(0)


def _poly_deg(p):
    for i in range(len(p) - 1, -1, -1):
        if p[i] != 0:
            return i
    return -1


def _poly_mul_frac(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod_frac(a, b):
    da, db = _poly_deg(a), _poly_deg(b)
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [Fraction(0)] * max(1, da - db + 1)
    lead = b[db]
    for i in range(da - db, -1, -1):
        c = rem[i + db]
        if c:
            q = c / lead
            quot[i] = q
            for j in range(db + 1):
                rem[i + j] -= q * b[j]
    return quot, rem
