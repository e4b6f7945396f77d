"""Integer Smith normal form and first homology of a triangulation.

H_1 is computed from the orbit CW structure: an integer kernel basis of the
edge-to-vertex boundary map is extracted from a Smith decomposition with
transforms, the face boundaries are rewritten in that basis, and a second
Smith form gives the invariant factors.  All arithmetic is exact (Python
integers), since intermediate entries blow up well before census-sized
matrices become large.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex3 import EDGES, EDGE_INDEX, FACE_VERTS, Triangulation


class IntMatrix:
    """Dense integer matrix with exact (arbitrary precision) entries."""

    def __init__(self, entries: list[list[int]]):
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
        self.entries = [[int(x) for x in row] for row in entries]

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.entries[i][j] = int(v)

    def copy(self) -> "IntMatrix":
        return IntMatrix([row[:] for row in self.entries])

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.entries]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __repr__(self):
        return f"IntMatrix({self.entries!r})"


@dataclass(frozen=True)
class SnfResult:
    """U @ A @ V = D with U, V unimodular; V_inv = V^-1.

    diagonal holds the invariant factors d_1 | d_2 | ... (nonnegative,
    padded with zeros up to min(rows, cols))."""

    diagonal: tuple[int, ...]
    U: IntMatrix | None = None
    V: IntMatrix | None = None
    V_inv: IntMatrix | None = None


def smith_normal_form(mat: IntMatrix | list[list[int]],
                      transforms: bool = False) -> SnfResult:
    """Smith normal form over Z.

    Row/column reduction with smallest-pivot selection; after
    diagonalization the divisibility chain d_i | d_{i+1} is enforced by
    gcd/lcm folding, and all factors are made nonnegative.
    """
    if not isinstance(mat, IntMatrix):
        mat = IntMatrix(mat)
    m = [row[:] for row in mat.entries]
    R, C = mat.rows, mat.cols
    want = transforms
    U = IntMatrix.identity(R) if want else None
    V = IntMatrix.identity(C) if want else None
    Vinv = IntMatrix.identity(C) if want else None

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        if want:
            U.entries[i], U.entries[j] = U.entries[j], U.entries[i]

    def row_sub(i, j, q):
        if q == 0:
            return
        mi, mj = m[i], m[j]
        for k in range(C):
            mi[k] -= q * mj[k]
        if want:
            ui, uj = U.entries[i], U.entries[j]
            for k in range(R):
                ui[k] -= q * uj[k]

    def col_swap(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        if want:
            for row in V.entries:
                row[i], row[j] = row[j], row[i]
            Vinv.entries[i], Vinv.entries[j] = Vinv.entries[j], Vinv.entries[i]

    def col_sub(i, j, q):
        """col i -= q * col j; keeps A@V-relation, so Vinv row j += q * row i."""
        if q == 0:
            return
        for row in m:
            row[i] -= q * row[j]
        if want:
            for row in V.entries:
                row[i] -= q * row[j]
            vi, vj = Vinv.entries[i], Vinv.entries[j]
            for k in range(C):
                vj[k] += q * vi[k]

    pivot = 0
    while pivot < R and pivot < C:
        best = None
        for i in range(pivot, R):
            for j in range(pivot, C):
                v = m[i][j]
                if v != 0 and (best is None or abs(v) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(pivot, best[0])
        col_swap(pivot, best[1])
        while True:
            dirty = False
            for i in range(pivot + 1, R):
                if m[i][pivot]:
                    q = m[i][pivot] // m[pivot][pivot]
                    row_sub(i, pivot, q)
                    if m[i][pivot]:
                        row_swap(pivot, i)
                        dirty = True
            for j in range(pivot + 1, C):
                if m[pivot][j]:
                    q = m[pivot][j] // m[pivot][pivot]
                    col_sub(j, pivot, q)
                    if m[pivot][j]:
                        col_swap(pivot, j)
                        dirty = True
            if not dirty:
                break
        pivot += 1

    diag = [m[i][i] for i in range(min(R, C))]
    # enforce the divisibility chain without breaking the decomposition:
    # fold adjacent pairs (a, b) with a ∤ b into (gcd, lcm) via explicit
    # row/column operations on the diagonal 2x2 block.
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if a == 0 and b != 0:
                row_swap(i, i + 1)
                col_swap(i, i + 1)
                diag[i], diag[i + 1] = b, a
                changed = True
            elif a != 0 and b % a != 0:
                # [[a,0],[0,b]] -> [[g,0],[0,lcm]] by unimodular ops
                col_sub(i, i + 1, -1)           # col i += col i+1
                while True:
                    aa, bb = m[i][i], m[i + 1][i]
                    if bb == 0:
                        break
                    q = aa // bb
                    row_sub(i, i + 1, q)
                    row_swap(i, i + 1)
                # clear the off-diagonal remnants
                if m[i][i + 1]:
                    col_sub(i + 1, i, m[i][i + 1] // m[i][i])
                if m[i + 1][i]:
                    row_sub(i + 1, i, m[i + 1][i] // m[i][i])
                if m[i + 1][i + 1] == 0 and (a != 0 and b != 0):
                    raise AssertionError("divisibility folding lost rank")
                diag[i], diag[i + 1] = m[i][i], m[i + 1][i + 1]
                changed = True
    # normalize signs (flip the row in m and in U together)
    for i, d in enumerate(diag):
        if d < 0:
            diag[i] = -d
            for k in range(C):
                m[i][k] = -m[i][k]
            if want:
                for k in range(R):
                    U.entries[i][k] = -U.entries[i][k]
    return SnfResult(tuple(diag), U, V, Vinv)


@dataclass(frozen=True)
class H1Summary:
    """H_1 in invariant-factor form: free rank plus torsion d_1 | d_2 | ..."""

    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion factors must be >= 2")
            if prev is not None and d % prev != 0:
                raise ValueError("torsion factors must form a divisibility chain")
            prev = d

    @property
    def min_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    def __str__(self):
        return format_h1(self)


def format_h1(h: H1Summary) -> str:
    """Census-report style: free part first, torsion ascending,
    e.g. '2 Z + Z_3', 'Z_2 + Z_10', '0'."""
    terms = []
    if h.free_rank == 1:
        terms.append("Z")
    elif h.free_rank > 1:
        terms.append(f"{h.free_rank} Z")
    i = 0
    tor = h.torsion
    while i < len(tor):
        j = i
        while j < len(tor) and tor[j] == tor[i]:
            j += 1
        count = j - i
        terms.append(f"Z_{tor[i]}" if count == 1 else f"{count} Z_{tor[i]}")
        i = j
    return " + ".join(terms) if terms else "0"


def parse_h1(text: str) -> H1Summary:
    """Inverse of format_h1 (tolerant of whitespace)."""
    text = text.strip()
    if text == "0":
        return H1Summary(0, ())
    free = 0
    torsion: list[int] = []
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ValueError(f"empty term in H1 string {text!r}")
        parts = term.split()
        if len(parts) == 2:
            count, base = int(parts[0]), parts[1]
        elif len(parts) == 1:
            count, base = 1, parts[0]
        else:
            raise ValueError(f"bad H1 term {term!r}")
        if base == "Z":
            free += count
        elif base.startswith("Z_"):
            torsion.extend([int(base[2:])] * count)
        else:
            raise ValueError(f"bad H1 term {term!r}")
    return H1Summary(free, tuple(sorted(torsion)))


def boundary_matrices(tri: Triangulation) -> tuple[IntMatrix, IntMatrix]:
    """(d1, d2) of the orbit CW chain complex: d1 maps edges to vertices,
    d2 maps faces to edges.  Orientations come from the per-incidence signs
    recorded on the orbits; H_1 does not depend on the choices."""
    nv = len(tri.vertex_orbits)
    ne = len(tri.edge_orbits)
    nf = len(tri.face_orbits)
    d1 = IntMatrix.zeros(nv, ne)
    for orbit in tri.edge_orbits:
        t, e, sign = orbit.members[0]
        u, v = EDGES[e]
        if sign < 0:
            u, v = v, u
        d1[tri.vertex_orbit_index[4 * t + v], orbit.index] += 1
        d1[tri.vertex_orbit_index[4 * t + u], orbit.index] -= 1
    d2 = IntMatrix.zeros(ne, nf)
    for fo in tri.face_orbits:
        t, f = fo.slots[0]
        a, b, c = FACE_VERTS[f]
        for (u, v, s) in ((b, c, 1), (a, c, -1), (a, b, 1)):
            slot = 6 * t + EDGE_INDEX[(u, v)]
            d2[tri.edge_orbit_index[slot], fo.index] += s * tri.edge_orbit_sign[slot]
    return d1, d2


def h1_from_matrices(d1: IntMatrix, d2: IntMatrix) -> H1Summary:
    """ker d1 / im d2 in invariant-factor form (requires d1 @ d2 = 0)."""
    ne = d1.cols
    snf1 = smith_normal_form(d1, transforms=True)
    rank1 = sum(1 for d in snf1.diagonal if d != 0)
    kernel_pos = [j for j in range(ne)
                  if j >= len(snf1.diagonal) or snf1.diagonal[j] == 0]
    # coordinates of each face boundary in the V-basis; kernel coords only
    rows = []
    for pos in kernel_pos:
        vrow = snf1.V_inv.entries[pos]
        rows.append([sum(vrow[i] * d2[i, c] for i in range(ne))
                     for c in range(d2.cols)])
    # non-kernel coordinates must vanish since im d2 lies in ker d1
    for pos in range(min(rank1, ne)):
        vrow = snf1.V_inv.entries[pos]
        for c in range(d2.cols):
            if sum(vrow[i] * d2[i, c] for i in range(ne)) != 0:
                raise ValueError("d1 @ d2 != 0: inconsistent boundary maps")
    if not rows:
        return H1Summary(0, ())
    snf2 = smith_normal_form(IntMatrix(rows))
    rank2 = sum(1 for d in snf2.diagonal if d != 0)
    torsion = tuple(d for d in snf2.diagonal if d not in (0, 1))
    return H1Summary(len(kernel_pos) - rank2, torsion)


def h1(tri: Triangulation) -> H1Summary:
    """First homology of the underlying closed manifold."""
    return h1_from_matrices(*boundary_matrices(tri))
