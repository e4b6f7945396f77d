"""Closed 3-manifold triangulations presented by face gluings.

A triangulation is a list of tetrahedra; face k of a tetrahedron is the one
opposite vertex k, and a gluing of face k of tetrahedron t is a pair
(t', p) with p a permutation of {0,1,2,3} carrying the vertices of t into
the vertices of t' (so the target face is p[k]).  Construction eagerly
computes vertex/edge/face orbits with orientation data and validates that
the complex is a connected closed 3-manifold: gluings involutive and free of
face self-identifications, every edge link a circle, every vertex link a
2-sphere.  Non-orientable inputs are accepted (the state sum is defined for
them); orientability is recorded on the triangulation.

The 6 edges of a tetrahedron are indexed by vertex pairs in lexicographic
order: 01, 02, 03, 12, 13, 23.  Opposite edge pairs are (01,23), (02,13),
(03,12); the state sum relies on this convention, as does the codec in
isosig.
"""

from __future__ import annotations

from dataclasses import dataclass

# edge index <-> vertex pair tables
EDGES: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX: dict[tuple[int, int], int] = {}
for _i, (_u, _v) in enumerate(EDGES):
    EDGE_INDEX[(_u, _v)] = _i
    EDGE_INDEX[(_v, _u)] = _i
FACE_VERTS: tuple[tuple[int, int, int], ...] = tuple(
    tuple(v for v in range(4) if v != f) for f in range(4))
OPPOSITE_EDGE: tuple[int, ...] = (5, 4, 3, 2, 1, 0)

Perm = tuple[int, int, int, int]
IDENTITY_PERM: Perm = (0, 1, 2, 3)


def perm_inverse(p: Perm) -> Perm:
    q = [0] * 4
    for i, v in enumerate(p):
        q[v] = i
    return tuple(q)


def perm_compose(p: Perm, q: Perm) -> Perm:
    """p after q: (p*q)[i] = p[q[i]]."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def perm_sign(p: Perm) -> int:
    s = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                s = -s
    return s


class TriangulationError(ValueError):
    """Invalid gluing data: not a connected closed 3-manifold.

    When the defect is attributable to one tetrahedron, its index is carried
    in .tet so error reporters (the gluing parser) can point at a source
    location."""

    def __init__(self, message: str, tet: int | None = None):
        self.tet = tet
        super().__init__(message)


class GluingParseError(TriangulationError):
    """Syntax or consistency error in a gluing file, with 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


@dataclass(frozen=True)
class Tetrahedron:
    """Gluings of one tetrahedron: entry k is (target tet, vertex permutation)."""

    gluings: tuple[tuple[int, Perm], ...]

    def __post_init__(self):
        if len(self.gluings) != 4:
            raise TriangulationError("tetrahedron needs exactly 4 gluings")
        for entry in self.gluings:
            if entry is None:
                raise TriangulationError(
                    "missing gluing: complex is not closed")
            t, p = entry
            if sorted(p) != [0, 1, 2, 3]:
                raise TriangulationError(f"not a vertex permutation: {p}")


@dataclass(frozen=True)
class EdgeOrbit:
    """One edge class: members are (tet, edge index, sign) with sign the
    orientation of that slot relative to the representative; the member list
    is the cyclic sequence obtained by walking around the edge."""

    index: int
    members: tuple[tuple[int, int, int], ...]

    @property
    def degree(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class FaceOrbit:
    """One face class: exactly two slots (tet, face) of a closed complex."""

    index: int
    slots: tuple[tuple[int, int], tuple[int, int]]


class Triangulation:
    """Immutable validated triangulation of a connected closed 3-manifold."""

    def __init__(self, tetrahedra: list[Tetrahedron] | list[list[tuple[int, Perm]]],
                 name: str | None = None):
        tets = []
        for t in tetrahedra:
            if isinstance(t, Tetrahedron):
                tets.append(t)
            else:
                tets.append(Tetrahedron(tuple(
                    None if g is None else (int(g[0]), tuple(g[1]))
                    for g in t)))
        self.tetrahedra: tuple[Tetrahedron, ...] = tuple(tets)
        self.name = name
        if not self.tetrahedra:
            raise TriangulationError("empty triangulation")
        self._validate_gluings()
        self._compute_orbits()
        self._validate_manifold()
        self.orientable = self._orientability()

    # -- basic accessors ----------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.tetrahedra)

    def gluing(self, t: int, f: int) -> tuple[int, Perm]:
        return self.tetrahedra[t].gluings[f]

    @property
    def euler_characteristic(self) -> int:
        return (len(self.vertex_orbits) - len(self.edge_orbits)
                + len(self.face_orbits) - self.size)

    def counts(self) -> tuple[int, int, int, int]:
        """(vertices, edges, faces, tetrahedra) of the orbit CW structure."""
        return (len(self.vertex_orbits), len(self.edge_orbits),
                len(self.face_orbits), self.size)

    # -- validation ----------------------------------------------------------
    def _validate_gluings(self):
        n = self.size
        for t in range(n):
            for f in range(4):
                t2, p = self.gluing(t, f)
                if not 0 <= t2 < n:
                    raise TriangulationError(
                        f"face {f} of tetrahedron {t} glued to missing "
                        f"tetrahedron {t2} (dangling gluing)", tet=t)
                f2 = p[f]
                if (t2, f2) == (t, f):
                    raise TriangulationError(
                        f"invalid self-gluing: face {f} of tetrahedron {t} "
                        "glued to itself", tet=t)
                t3, p2 = self.gluing(t2, f2)
                if t3 != t or perm_compose(p2, p) != IDENTITY_PERM:
                    raise TriangulationError(
                        f"gluing of face {f} of tetrahedron {t} is not "
                        "involutive", tet=t)
        # connectivity
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for f in range(4):
                t2, _ = self.gluing(t, f)
                if t2 not in seen:
                    seen.add(t2)
                    stack.append(t2)
        if len(seen) != n:
            raise TriangulationError("triangulation is not connected")

    def _compute_orbits(self):
        n = self.size
        # vertices: plain union-find over slots 4*t + v
        vparent = list(range(4 * n))

        def vfind(x):
            root = x
            while vparent[root] != root:
                root = vparent[root]
            while vparent[x] != root:
                vparent[x], x = root, vparent[x]
            return root

        # edges: union-find with relative orientation sign
        eparent = list(range(6 * n))
        esign = [1] * (6 * n)

        def efind(x):
            sign = 1
            root = x
            while eparent[root] != root:
                sign *= esign[root]
                root = eparent[root]
            return root, sign

        def eunion(a, b, rel):
            ra, sa = efind(a)
            rb, sb = efind(b)
            if ra == rb:
                if sa * sb != rel:
                    raise TriangulationError(
                        "edge identified with itself in reverse (non-manifold)")
                return
            eparent[ra] = rb
            esign[ra] = sa * sb * rel

        for t in range(n):
            for f in range(4):
                t2, p = self.gluing(t, f)
                vs = FACE_VERTS[f]
                for v in vs:
                    ra, rb = vfind(4 * t + v), vfind(4 * t2 + p[v])
                    if ra != rb:
                        vparent[ra] = rb
                for (u, v) in ((vs[0], vs[1]), (vs[0], vs[2]), (vs[1], vs[2])):
                    rel = 1 if (u < v) == (p[u] < p[v]) else -1
                    eunion(6 * t + EDGE_INDEX[(u, v)],
                           6 * t2 + EDGE_INDEX[(p[u], p[v])], rel)

        vroots: dict[int, int] = {}
        self.vertex_orbit_index = [0] * (4 * n)
        for x in range(4 * n):
            rt = vfind(x)
            if rt not in vroots:
                vroots[rt] = len(vroots)
            self.vertex_orbit_index[x] = vroots[rt]
        self.vertex_orbits = [[] for _ in range(len(vroots))]
        for t in range(n):
            for v in range(4):
                self.vertex_orbits[self.vertex_orbit_index[4 * t + v]].append((t, v))

        eroots: dict[int, int] = {}
        self.edge_orbit_index = [0] * (6 * n)
        self.edge_orbit_sign = [1] * (6 * n)
        for x in range(6 * n):
            rt, sg = efind(x)
            if rt not in eroots:
                eroots[rt] = len(eroots)
            self.edge_orbit_index[x] = eroots[rt]
            self.edge_orbit_sign[x] = sg
        # fix per-orbit representative = first slot; renormalize signs to it
        first_sign = {}
        for x in range(6 * n):
            o = self.edge_orbit_index[x]
            if o not in first_sign:
                first_sign[o] = self.edge_orbit_sign[x]
        for x in range(6 * n):
            self.edge_orbit_sign[x] *= first_sign[self.edge_orbit_index[x]]

        # face orbits: paired slots
        self.face_orbit_index = [[-1] * 4 for _ in range(n)]
        face_orbits: list[FaceOrbit] = []
        for t in range(n):
            for f in range(4):
                if self.face_orbit_index[t][f] >= 0:
                    continue
                t2, p = self.gluing(t, f)
                f2 = p[f]
                idx = len(face_orbits)
                face_orbits.append(FaceOrbit(idx, ((t, f), (t2, f2))))
                self.face_orbit_index[t][f] = idx
                self.face_orbit_index[t2][f2] = idx
        self.face_orbits = face_orbits

        # edge orbits with the cyclic walk around each edge
        self.edge_orbits = [self._edge_cycle(o) for o in range(len(eroots))]

    def _edge_cycle(self, orbit: int) -> EdgeOrbit:
        """Walk around one edge orbit through face gluings, producing the
        cyclic incidence sequence; its length must equal the orbit size."""
        n = self.size
        slots = [x for x in range(6 * n) if self.edge_orbit_index[x] == orbit]
        start = slots[0]
        t0, e0 = start // 6, start % 6
        u0, v0 = EDGES[e0]
        # faces of t0 containing edge e0: the two faces not opposite u0/v0
        containing = [f for f in range(4) if u0 != f and v0 != f]
        members = []
        visited = set()
        t, e, f = t0, e0, containing[0]
        while True:
            members.append((t, e, self.edge_orbit_sign[6 * t + e]))
            visited.add((t, e, f))
            t2, p = self.gluing(t, f)
            u, v = EDGES[e]
            e2 = EDGE_INDEX[(p[u], p[v])]
            f2 = p[f]
            # continue through the other face of t2 containing e2
            u2, v2 = EDGES[e2]
            f_next = next(g for g in range(4)
                          if g != f2 and g != u2 and g != v2)
            t, e, f = t2, e2, f_next
            if (t, e, f) == (t0, e0, containing[0]):
                break
            if len(members) > len(slots):
                raise TriangulationError(
                    "edge link walk does not close up (non-manifold edge)")
        if len(members) != len(slots):
            raise TriangulationError(
                "edge link is not a single circle (non-manifold edge)")
        return EdgeOrbit(orbit, tuple(members))

    def _validate_manifold(self):
        """Vertex links must be 2-spheres: connected (automatic for an orbit,
        via the face gluings used to build it) with Euler characteristic 2."""
        n = self.size
        # link-vertex classes = edge-end classes; ends tracked as (slot, k)
        parent: dict[tuple[int, int], tuple[int, int]] = {}

        def find(x):
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(x, x) != root:
                parent[x], x = root, parent[x]
            return root

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for t in range(n):
            for f in range(4):
                t2, p = self.gluing(t, f)
                vs = FACE_VERTS[f]
                for (u, v) in ((vs[0], vs[1]), (vs[0], vs[2]), (vs[1], vs[2])):
                    e1 = EDGE_INDEX[(u, v)]
                    e2 = EDGE_INDEX[(p[u], p[v])]
                    a, b = min(u, v), max(u, v)
                    same = p[a] < p[b]
                    if same:
                        union(((6 * t + e1), 0), ((6 * t2 + e2), 0))
                        union(((6 * t + e1), 1), ((6 * t2 + e2), 1))
                    else:
                        union(((6 * t + e1), 0), ((6 * t2 + e2), 1))
                        union(((6 * t + e1), 1), ((6 * t2 + e2), 0))

        link_vertices = [0] * len(self.vertex_orbits)
        seen_roots = set()
        for t in range(n):
            for e in range(6):
                for k in (0, 1):
                    rt = find((6 * t + e, k))
                    if rt in seen_roots:
                        continue
                    seen_roots.add(rt)
                    vslot = 4 * t + EDGES[e][k]
                    link_vertices[self.vertex_orbit_index[vslot]] += 1
        corners = [len(m) for m in self.vertex_orbits]
        for o, c in enumerate(corners):
            chi = link_vertices[o] - (3 * c) // 2 + c
            if chi != 2:
                raise TriangulationError(
                    f"link of vertex orbit {o} is not a sphere (chi={chi}); "
                    "not a closed 3-manifold")
        if self.euler_characteristic != 0:
            raise TriangulationError("Euler characteristic is nonzero")

    def _orientability(self) -> bool:
        ori = [0] * self.size
        ori[0] = 1
        stack = [0]
        while stack:
            t = stack.pop()
            for f in range(4):
                t2, p = self.gluing(t, f)
                want = -ori[t] * perm_sign(p)
                if ori[t2] == 0:
                    ori[t2] = want
                    stack.append(t2)
                elif ori[t2] != want:
                    return False
        return True

    # -- derived views used by statesum and homology ------------------------
    def face_edge_orbits(self) -> list[tuple[int, int, int]]:
        """For each face orbit, the edge orbits of its three sides (at the
        representative slot, sides ordered 01, 02, 12 of the face chart)."""
        out = []
        for fo in self.face_orbits:
            t, f = fo.slots[0]
            a, b, c = FACE_VERTS[f]
            out.append((self.edge_orbit_index[6 * t + EDGE_INDEX[(a, b)]],
                        self.edge_orbit_index[6 * t + EDGE_INDEX[(a, c)]],
                        self.edge_orbit_index[6 * t + EDGE_INDEX[(b, c)]]))
        return out

    def tet_edge_orbits(self) -> list[tuple[int, ...]]:
        """For each tetrahedron, the edge orbits of its 6 edges in the fixed
        order 01, 02, 03, 12, 13, 23."""
        return [tuple(self.edge_orbit_index[6 * t + e] for e in range(6))
                for t in range(self.size)]

    # -- transformations ------------------------------------------------------
    def relabeled(self, tet_perm: list[int], vertex_perms: list[Perm]) -> "Triangulation":
        """The combinatorially isomorphic triangulation with tetrahedron t
        renamed tet_perm[t] and its vertices renamed by vertex_perms[t]."""
        n = self.size
        rows: list[list] = [[None] * 4 for _ in range(n)]
        for t in range(n):
            vp = vertex_perms[t]
            for f in range(4):
                t2, p = self.gluing(t, f)
                q = perm_compose(vertex_perms[t2], perm_compose(p, perm_inverse(vp)))
                rows[tet_perm[t]][vp[f]] = (tet_perm[t2], q)
        return Triangulation(rows, name=self.name)

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        v, e, f, t = self.counts()
        return f"<Triangulation{nm}: {t} tet, V={v} E={e} F={f}>"


def orbits(tri: Triangulation):
    """(vertex, edge, face) orbit structures of a triangulation.

    Vertex orbits are lists of (tet, vertex) slots; edge orbits carry the
    cyclic incidence sequence with per-slot orientation signs; face orbits
    pair the two glued slots."""
    return tri.vertex_orbits, tri.edge_orbits, tri.face_orbits


# --------------------------------------------------------------------------
# gluing file format
# --------------------------------------------------------------------------

def parse_gluing_file(text: str, name: str | None = None) -> Triangulation:
    """Parse the plain-text gluing format.

    Format: comments start with '#'; the first data line is ``tets <N>``;
    then one line per tetrahedron, ``i: j0 p0 j1 p1 j2 p2 j3 p3`` where face
    k of tetrahedron i is glued to tetrahedron jk by the permutation pk,
    written as 4 digits giving the images of vertices 0123.
    """
    n = None
    rows: list[list[tuple[int, Perm]] | None] = []
    seen: set[int] = set()
    line_of_tet: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "tets":
                raise GluingParseError("expected header 'tets <N>'", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise GluingParseError(f"bad tetrahedron count {parts[1]!r}", lineno)
            if n <= 0:
                raise GluingParseError("tetrahedron count must be positive", lineno)
            rows = [None] * n
            continue
        head, _, rest = line.partition(":")
        if not _:
            raise GluingParseError("expected 'i: ...' gluing line", lineno)
        try:
            idx = int(head.strip())
        except ValueError:
            raise GluingParseError(f"bad tetrahedron index {head.strip()!r}", lineno)
        if not 0 <= idx < n:
            raise GluingParseError(f"tetrahedron index {idx} out of range", lineno)
        if idx in seen:
            raise GluingParseError(f"duplicate tetrahedron {idx}", lineno)
        seen.add(idx)
        line_of_tet[idx] = lineno
        parts = rest.split()
        if len(parts) != 8:
            raise GluingParseError(
                f"expected 8 fields (4 target/permutation pairs), got {len(parts)}",
                lineno)
        row = []
        for k in range(4):
            try:
                tgt = int(parts[2 * k])
            except ValueError:
                raise GluingParseError(f"bad target {parts[2 * k]!r}", lineno)
            ps = parts[2 * k + 1]
            if len(ps) != 4 or not ps.isdigit() or sorted(ps) != ["0", "1", "2", "3"]:
                raise GluingParseError(f"bad permutation {ps!r}", lineno)
            row.append((tgt, tuple(int(c) for c in ps)))
        rows[idx] = row
    if n is None:
        raise GluingParseError("empty gluing file")
    missing = [i for i in range(n) if rows[i] is None]
    if missing:
        raise GluingParseError(f"missing gluing lines for tetrahedra {missing}")
    try:
        return Triangulation(rows, name=name)
    except GluingParseError:
        raise
    except TriangulationError as exc:
        raise GluingParseError(str(exc), line_of_tet.get(exc.tet)) from exc


def format_gluing_file(tri: Triangulation, header_comment: str | None = None) -> str:
    """Serialize to the gluing format parsed by parse_gluing_file."""
    lines = []
    if header_comment:
        for ln in header_comment.splitlines():
            lines.append(f"# {ln}".rstrip())
    lines.append(f"tets {tri.size}")
    for t in range(tri.size):
        parts = []
        for f in range(4):
            t2, p = tri.gluing(t, f)
            parts.append(f"{t2} {''.join(str(x) for x in p)}")
        lines.append(f"{t}: " + " ".join(parts))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Pachner 2-3 move
# --------------------------------------------------------------------------

class PachnerError(ValueError):
    """The requested bistellar move is not available at this face."""


def pachner_23(tri: Triangulation, face_orbit: int) -> Triangulation:
    """Replace the two tetrahedra sharing a face by three around a new edge.

    The face orbit must join two distinct tetrahedra.  The result is a valid
    triangulation of the same manifold with one more tetrahedron and one
    more edge; the Turaev-Viro invariant is unchanged (this is the move
    invariance that makes the state sum a manifold invariant).
    """
    fo = tri.face_orbits[face_orbit]
    (ta, fa), (tb, fb) = fo.slots
    if ta == tb:
        raise PachnerError(
            f"face orbit {face_orbit} is shared by a single tetrahedron")
    p = tri.gluing(ta, fa)[1]  # ta -> tb, p[fa] = fb
    bases = FACE_VERTS[fa]

    # local charts: new tetrahedron N_i has vertices
    #   0 = apex of ta (vertex fa), 1 = apex of tb (vertex fb),
    #   2, 3 = the two base vertices other than bases[i], in base order.
    corr_a = []  # N_i local -> vertex of ta
    corr_b = []  # N_i local -> vertex of tb
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        corr_a.append((fa, bases[i], bases[j], bases[k]))
        corr_b.append((p[bases[i]], fb, p[bases[j]], p[bases[k]]))

    survivors = [t for t in range(tri.size) if t not in (ta, tb)]
    remap = {t: i for i, t in enumerate(survivors)}
    base_idx = len(survivors)

    # old boundary slot -> (new tet, new face, local chart of the new tet)
    slot_map: dict[tuple[int, int], tuple[int, int, tuple[int, ...]]] = {}
    for i in range(3):
        slot_map[(ta, bases[i])] = (base_idx + i, 1, corr_a[i])
        slot_map[(tb, p[bases[i]])] = (base_idx + i, 0, corr_b[i])

    rows: list[list] = [[None] * 4 for _ in range(base_idx + 3)]

    # survivors keep their gluings, re-targeted where they met ta/tb
    for t in survivors:
        for f in range(4):
            t2, q = tri.gluing(t, f)
            tgt = slot_map.get((t2, q[f]))
            if tgt is None:
                rows[remap[t]][f] = (remap[t2], q)
            else:
                nt, nf, corr = tgt
                corr_inv = {v: l for l, v in enumerate(corr)}
                rows[remap[t]][f] = (nt, tuple(corr_inv[q[v]] for v in range(4)))

    # external faces of the three new tetrahedra
    for i in range(3):
        for (src_t, src_f, my_face, corr_src) in (
                (ta, bases[i], 1, corr_a[i]),
                (tb, p[bases[i]], 0, corr_b[i])):
            t2, q = tri.gluing(src_t, src_f)
            tgt = slot_map.get((t2, q[src_f]))
            if tgt is None:
                rows[base_idx + i][my_face] = (
                    remap[t2], tuple(q[corr_src[l]] for l in range(4)))
            else:
                nt, nf, corr_t = tgt
                corr_inv = {v: l for l, v in enumerate(corr_t)}
                rows[base_idx + i][my_face] = (
                    nt, tuple(corr_inv[q[corr_src[l]]] for l in range(4)))

    # internal faces around the new central edge (apex-apex)
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        for m in (j, k):
            c = next(x for x in range(3) if x not in (i, m))
            li_m = 2 if m == min(j, k) else 3
            li_c = 5 - li_m
            jm, km = [x for x in range(3) if x != m]
            lm_i = 2 if i == min(jm, km) else 3
            lm_c = 5 - lm_i
            q = [0, 1, 0, 0]
            q[li_c] = lm_c
            q[li_m] = lm_i
            rows[base_idx + i][li_m] = (base_idx + m, tuple(q))

    return Triangulation(rows, name=tri.name)
