"""Quantum integers, dimensions, theta- and tetrahedral symbols at q = e^(i*pi/r).

All quantities follow the Kauffman-Lins sign convention: the loop value of a
strand of twice-color i is the signed dimension delta_i = (-1)^i [i+1], and
theta and the tetrahedral symbol carry the signs this induces.  With these
conventions the state sum over a closed triangulation needs no square roots
and no per-tetrahedron sign bookkeeping; the convention is pinned end to end
by the known values of the sphere and of S^2 x S^1 (see statesum).

Every symbol exists in two carriers: exact (CycNumber over Q(zeta_{2r})) and
float (double-precision complex evaluation at zeta = e^(i*pi/r) of the same
formulas).  SymbolTables memoizes both.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .cyclotomic import CycNumber


@dataclass(frozen=True)
class Level:
    """The root-of-unity parameter r >= 3; twice-colors run over 0..r-2."""

    r: int

    def __post_init__(self):
        if self.r < 3:
            raise ValueError("level r must be >= 3")

    @property
    def colors(self) -> range:
        return range(self.r - 1)

    def admissible_triples(self):
        for a in self.colors:
            for b in self.colors:
                for c in self.colors:
                    if admissible(a, b, c, self):
                        yield (a, b, c)


def _lv(level) -> int:
    return level.r if isinstance(level, Level) else int(level)


# --------------------------------------------------------------------------
# exact carrier
# --------------------------------------------------------------------------

def quantum_integer(n: int, level) -> CycNumber:
    """[n] = (zeta^n - zeta^-n)/(zeta - zeta^-1) = sum of zeta^(n-1-2k)."""
    r = _lv(level)
    if n < 0:
        raise ValueError("n must be >= 0")
    out = CycNumber.zero(r)
    for k in range(n):
        out = out + CycNumber.zeta_power(r, n - 1 - 2 * k)
    return out


@lru_cache(maxsize=None)
def _qint(r: int, n: int) -> CycNumber:
    return quantum_integer(n, r)


@lru_cache(maxsize=None)
def _qfact(r: int, n: int) -> CycNumber:
    if n <= 0:
        return CycNumber.one(r)
    return _qfact(r, n - 1) * _qint(r, n)


def quantum_factorial(n: int, level) -> CycNumber:
    """[n]! = [1][2]...[n], with [0]! = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _qfact(_lv(level), n)


def qdim(i: int, level) -> CycNumber:
    """Signed quantum dimension delta_i = (-1)^i [i+1]."""
    r = _lv(level)
    if not 0 <= i <= r - 2:
        raise ValueError(f"color {i} out of range 0..{r - 2}")
    d = _qint(r, i + 1)
    return -d if i % 2 else d


def global_dim(level) -> CycNumber:
    """dim(C) = sum of delta_i^2 = sum of [i+1]^2 over the color set."""
    r = _lv(level)
    out = CycNumber.zero(r)
    for i in range(r - 1):
        out = out + _qint(r, i + 1) * _qint(r, i + 1)
    return out


def admissible(i: int, j: int, k: int, level) -> bool:
    """Parity, triangle inequality, and the level cutoff i+j+k <= 2r-4."""
    r = _lv(level)
    return ((i + j + k) % 2 == 0
            and abs(i - j) <= k <= i + j
            and i + j + k <= 2 * r - 4)


def theta(a: int, b: int, c: int, level) -> CycNumber:
    """Theta network value; symmetric in a, b, c; nonzero when admissible."""
    r = _lv(level)
    if not admissible(a, b, c, r):
        raise ValueError(f"inadmissible triple {(a, b, c)} at r={r}")
    m = (a + b - c) // 2
    n = (b + c - a) // 2
    p = (a + c - b) // 2
    num = _qfact(r, m + n + p + 1) * _qfact(r, m) * _qfact(r, n) * _qfact(r, p)
    den = _qfact(r, m + n) * _qfact(r, n + p) * _qfact(r, m + p)
    val = num / den
    return -val if (m + n + p) % 2 else val


# faces of Tet[A B E; C D F]; opposite edge pairs are (A,C), (B,D), (E,F)
_TET_FACES = ((0, 1, 4), (2, 3, 4), (0, 3, 5), (1, 2, 5))


def tet_symbol(A: int, B: int, C: int, D: int, E: int, F: int, level) -> CycNumber:
    """Tetrahedral network Tet[A B E; C D F].

    The four vertices carry the admissible triples (A,B,E), (C,D,E), (A,D,F)
    and (B,C,F); the value is invariant under the order-24 symmetry group of
    the tetrahedron acting on the edge labels.
    """
    r = _lv(level)
    labels = (A, B, C, D, E, F)
    for fa in _TET_FACES:
        tri = tuple(labels[i] for i in fa)
        if not admissible(*tri, r):
            raise ValueError(f"inadmissible face {tri} at r={r}")
    a_half = [(labels[i] + labels[j] + labels[k]) // 2 for (i, j, k) in _TET_FACES]
    b_half = [(A + B + C + D) // 2, (A + C + E + F) // 2, (B + D + E + F) // 2]
    interior = CycNumber.one(r)
    for bj in b_half:
        for ai in a_half:
            interior = interior * _qfact(r, bj - ai)
    exterior = CycNumber.one(r)
    for x in labels:
        exterior = exterior * _qfact(r, x)
    total = CycNumber.zero(r)
    for s in range(max(a_half), min(b_half) + 1):
        term = _qfact(r, s + 1)
        for ai in a_half:
            term = term / _qfact(r, s - ai)
        for bj in b_half:
            term = term / _qfact(r, bj - s)
        total = total + (-term if s % 2 else term)
    return interior / exterior * total


# --------------------------------------------------------------------------
# float carrier: the same formulas evaluated at zeta = e^(i*pi/r) in doubles
# --------------------------------------------------------------------------

def quantum_integer_f(n: int, level) -> float:
    r = _lv(level)
    z = cmath.exp(1j * math.pi / r)
    if n == 0:
        return 0.0
    return ((z ** n - z ** (-n)) / (z - z ** (-1))).real


@lru_cache(maxsize=None)
def _qfact_f(r: int, n: int) -> float:
    if n <= 0:
        return 1.0
    return _qfact_f(r, n - 1) * quantum_integer_f(n, r)


def qdim_f(i: int, level) -> float:
    r = _lv(level)
    if not 0 <= i <= r - 2:
        raise ValueError(f"color {i} out of range 0..{r - 2}")
    d = quantum_integer_f(i + 1, r)
    return -d if i % 2 else d


def global_dim_f(level) -> float:
    r = _lv(level)
    return sum(quantum_integer_f(i + 1, r) ** 2 for i in range(r - 1))


def theta_f(a: int, b: int, c: int, level) -> float:
    r = _lv(level)
    if not admissible(a, b, c, r):
        raise ValueError(f"inadmissible triple {(a, b, c)} at r={r}")
    m = (a + b - c) // 2
    n = (b + c - a) // 2
    p = (a + c - b) // 2
    val = (_qfact_f(r, m + n + p + 1) * _qfact_f(r, m) * _qfact_f(r, n)
           * _qfact_f(r, p) / (_qfact_f(r, m + n) * _qfact_f(r, n + p)
                               * _qfact_f(r, m + p)))
    return -val if (m + n + p) % 2 else val


def tet_symbol_f(A: int, B: int, C: int, D: int, E: int, F: int, level) -> float:
    r = _lv(level)
    labels = (A, B, C, D, E, F)
    for fa in _TET_FACES:
        tri = tuple(labels[i] for i in fa)
        if not admissible(*tri, r):
            raise ValueError(f"inadmissible face {tri} at r={r}")
    a_half = [(labels[i] + labels[j] + labels[k]) // 2 for (i, j, k) in _TET_FACES]
    b_half = [(A + B + C + D) // 2, (A + C + E + F) // 2, (B + D + E + F) // 2]
    interior = 1.0
    for bj in b_half:
        for ai in a_half:
            interior *= _qfact_f(r, bj - ai)
    exterior = 1.0
    for x in labels:
        exterior *= _qfact_f(r, x)
    total = 0.0
    for s in range(max(a_half), min(b_half) + 1):
        term = _qfact_f(r, s + 1)
        for ai in a_half:
            term /= _qfact_f(r, s - ai)
        for bj in b_half:
            term /= _qfact_f(r, bj - s)
        total += -term if s % 2 else term
    return interior / exterior * total


# --------------------------------------------------------------------------
# memoized tables for the state sum
# --------------------------------------------------------------------------

class SymbolTables:
    """Per-level caches of delta, 1/theta and Tet, in one carrier.

    Values are filled on first use (precompute() forces the full Tet table;
    for the state sum the lazy fill touches exactly the tuples that occur,
    which keeps small runs fast while still evaluating each symbol once).
    Entries are never mutated once written, and a racing duplicate fill
    computes the identical value, so concurrent readers are safe; call
    precompute() first to pin the construction to a single thread.
    """

    def __init__(self, level, mode: str = "exact"):
        if mode not in ("exact", "float"):
            raise ValueError("mode must be 'exact' or 'float'")
        self.level = level if isinstance(level, Level) else Level(level)
        self.mode = mode
        r = self.level.r
        self.adm = [[[admissible(a, b, c, r) for c in range(r - 1)]
                     for b in range(r - 1)] for a in range(r - 1)]
        if mode == "exact":
            self.delta = [qdim(i, r) for i in self.level.colors]
            self.one = CycNumber.one(r)
            self.dim_total = global_dim(r)
        else:
            self.delta = [qdim_f(i, r) for i in self.level.colors]
            self.one = 1.0
            self.dim_total = global_dim_f(r)
        self._theta_inv: dict = {}
        self._tet: dict = {}

    def theta_inv(self, a: int, b: int, c: int):
        key = (a, b, c) if a <= b <= c else tuple(sorted((a, b, c)))
        val = self._theta_inv.get(key)
        if val is None:
            r = self.level.r
            if self.mode == "exact":
                val = theta(*key, r).inverse()
            else:
                val = 1.0 / theta_f(*key, r)
            self._theta_inv[key] = val
        return val

    def tet(self, A: int, B: int, C: int, D: int, E: int, F: int):
        key = (A, B, C, D, E, F)
        val = self._tet.get(key)
        if val is None:
            r = self.level.r
            if self.mode == "exact":
                val = tet_symbol(*key, r)
            else:
                val = tet_symbol_f(*key, r)
            self._tet[key] = val
        return val

    def precompute(self):
        """Force the full Tet table over all admissible 6-tuples (O(r^6))."""
        cols = self.level.colors
        for A, B, E in itertools.product(cols, repeat=3):
            if not self.adm[A][B][E]:
                continue
            for C, D in itertools.product(cols, repeat=2):
                if not self.adm[C][D][E]:
                    continue
                for F in cols:
                    if self.adm[A][D][F] and self.adm[B][C][F]:
                        self.tet(A, B, C, D, E, F)
        return self


@lru_cache(maxsize=32)
def tables(r: int, mode: str) -> SymbolTables:
    """Shared memoized tables; keyed by (r, mode)."""
    return SymbolTables(Level(r), mode)


# --------------------------------------------------------------------------
# identity self-verification
# --------------------------------------------------------------------------

# the 6 edges of the reference tetrahedron as vertex pairs, in the argument
# order (A, B, C, D, E, F) of tet_symbol
_EDGE_OF_ARG = ((1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (2, 4))


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    witness: tuple | None = None


@dataclass
class IdentityReport:
    r: int
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_identities(level, tables_override: SymbolTables | None = None) -> IdentityReport:
    """Exhaustive exact checks of the recoupling identities at one level.

    Checks, over all admissible tuples:
      * theta(a, a, 0) = delta_a;
      * invariance of Tet under the 24 edge relabelings induced by vertex
        permutations of the tetrahedron;
      * orthogonality of the recoupling transform:
          sum_j delta_j Tet[a b i; c d j] Tet[a b i'; c d j]
                / (theta(a,d,j) theta(b,c,j))
          = delta_{i,i'} theta(a,b,i) theta(c,d,i) / delta_i;
      * the Biedenharn-Elliott (pentagon) identity for the normalized
        coefficient N[a b i; c d j] = delta_j Tet[a b i; c d j]
                                      / (theta(a,d,j) theta(b,c,j)):
          sum_z N[a b x; c y z] N[a z y; d t v] N[b c z; d v w]
          = N[x c y; d t w] N[a b x; w t v].

    Failures are reported with the first counterexample tuple.
    """
    lv = level if isinstance(level, Level) else Level(level)
    r = lv.r
    tab = tables_override if tables_override is not None else SymbolTables(lv, "exact")
    report = IdentityReport(r=r)
    cols = list(lv.colors)

    witness = None
    for a in cols:
        if not (tab.delta[a] == theta(a, a, 0, r)):
            witness = (a,)
            break
    report.checks.append(IdentityCheck("theta(a,a,0) = delta_a", witness is None, witness))

    witness = None
    seen_tuples = []
    for tup in _admissible_tet_tuples(lv):
        seen_tuples.append(tup)
        base = tab.tet(*tup)
        for sigma in itertools.permutations((1, 2, 3, 4)):
            relabeled = _relabel_tet(tup, sigma)
            if not (tab.tet(*relabeled) == base):
                witness = (tup, sigma)
                break
        if witness:
            break
    report.checks.append(IdentityCheck("tetrahedral symmetry of Tet",
                                       witness is None, witness))

    witness = None
    for a, b, c, d in itertools.product(cols, repeat=4):
        i_vals = [i for i in cols if tab.adm[a][b][i] and tab.adm[c][d][i]]
        if not i_vals:
            continue
        j_vals = [j for j in cols if tab.adm[a][d][j] and tab.adm[b][c][j]]
        for i in i_vals:
            for i2 in i_vals:
                acc = CycNumber.zero(r)
                for j in j_vals:
                    acc = acc + (tab.delta[j] * tab.tet(a, b, c, d, i, j)
                                 * tab.tet(a, b, c, d, i2, j)
                                 * tab.theta_inv(a, d, j) * tab.theta_inv(b, c, j))
                if i == i2:
                    want = (theta(a, b, i, r) * theta(c, d, i, r)
                            / tab.delta[i])
                else:
                    want = CycNumber.zero(r)
                if not (acc == want):
                    witness = (a, b, c, d, i, i2)
                    break
            if witness:
                break
        if witness:
            break
    report.checks.append(IdentityCheck("orthogonality", witness is None, witness))

    def N(a, b, i, c, d, j):
        return (tab.delta[j] * tab.tet(a, b, c, d, i, j)
                * tab.theta_inv(a, d, j) * tab.theta_inv(b, c, j))

    witness = None
    for a, b, c, d, t in itertools.product(cols, repeat=5):
        for x in cols:
            if not tab.adm[a][b][x]:
                continue
            for y in cols:
                if not (tab.adm[x][c][y] and tab.adm[y][d][t]):
                    continue
                for w in cols:
                    if not (tab.adm[c][d][w] and tab.adm[x][w][t]):
                        continue
                    for v in cols:
                        if not (tab.adm[b][w][v] and tab.adm[a][v][t]):
                            continue
                        lhs = CycNumber.zero(r)
                        for z in cols:
                            if (tab.adm[b][c][z] and tab.adm[a][z][y]
                                    and tab.adm[z][d][v]):
                                lhs = lhs + (N(a, b, x, c, y, z)
                                             * N(a, z, y, d, t, v)
                                             * N(b, c, z, d, v, w))
                        rhs = N(x, c, y, d, t, w) * N(a, b, x, w, t, v)
                        if not (lhs == rhs):
                            witness = (a, b, c, d, t, x, y, w, v)
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    report.checks.append(IdentityCheck("Biedenharn-Elliott (pentagon)",
                                       witness is None, witness))
    return report


def _admissible_tet_tuples(level: Level):
    cols = level.colors
    for A, B, E in itertools.product(cols, repeat=3):
        if not admissible(A, B, E, level):
            continue
        for C, D in itertools.product(cols, repeat=2):
            if not admissible(C, D, E, level):
                continue
            for F in cols:
                if admissible(A, D, F, level) and admissible(B, C, F, level):
                    yield (A, B, C, D, E, F)


def _relabel_tet(tup, sigma):
    """Edge labels after the vertex permutation sigma of {1,2,3,4}."""
    lookup = {}
    for idx, (u, v) in enumerate(_EDGE_OF_ARG):
        lookup[frozenset((u, v))] = tup[idx]
    out = []
    for (u, v) in _EDGE_OF_ARG:
        out.append(lookup[frozenset((sigma[u - 1], sigma[v - 1]))])
    return tuple(out)
