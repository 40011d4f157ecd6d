"""Branched generalized triangulations of 3-manifolds.

Internally every tetrahedron's corners are labelled by its local branching
order, so corner ``i`` is local vertex ``i`` and the tet edge ``(i, j)`` with
``i < j`` is directed ``i -> j``. A gluing identifies face ``f`` of one tet
with face ``f'`` of another by the unique order-preserving map of their
corners. This is the Delta-complex form of a branched triangulation; it
allows one-vertex triangulations and self-gluings.

``eps[t]`` compares the orientation given by the local order of tet ``t``
with the orientation of the manifold. Two tets glued along faces ``f`` and
``f'`` induce opposite orientations on the face exactly when
``eps[t] * eps[t'] == (-1) ** (f + f' + 1)``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .._unionfind import UnionFind
from ..errors import InvalidInput

FACE_CORNERS = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
EDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {p: k for k, p in enumerate(EDGE_PAIRS)}
SIDES = ("in", "out")

Face = tuple[int, int]


@dataclass(frozen=True)
class Skeleton:
    """The branched 2-skeleton: what colorings and the pi_1 oracle need.

    ``edge_ends[e] = (tail, head)`` vertex classes; ``triangles[f] =
    (e01, e12, e02)`` edge classes, each directed along the branching.
    """

    n_vertices: int
    edge_ends: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]

    @property
    def n_edges(self) -> int:
        return len(self.edge_ends)


def _edge_face_sign(face_position: int) -> int:
    return 1 if face_position < 2 else -1


class Triangulation:
    """Immutable branched generalized triangulation.

    ``gluings`` is an iterable of ``((t, f), (t2, f2))`` pairs (or a mapping
    face -> face); ``boundary`` maps unglued faces to ``(label, side)``.
    The constructor does not validate; use :func:`validate`.
    """

    def __init__(self, tet_count: int, gluings, eps: Iterable[int] | None = None,
                 boundary: Mapping[Face, tuple[str, str]] | None = None):
        if isinstance(gluings, Mapping):
            gluings = gluings.items()
        pairs = set()
        for a, b in gluings:
            a, b = (int(a[0]), int(a[1])), (int(b[0]), int(b[1]))
            pairs.add((a, b) if a <= b else (b, a))
        self.tet_count = int(tet_count)
        self.gluings: tuple[tuple[Face, Face], ...] = tuple(sorted(pairs))
        self.eps: tuple[int, ...] = tuple(int(e) for e in (eps if eps is not None else [1] * tet_count))
        self.boundary: dict[Face, tuple[str, str]] = dict(sorted((boundary or {}).items()))

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return (self.tet_count, self.gluings, self.eps, self.boundary) == (
            other.tet_count, other.gluings, other.eps, other.boundary)

    __hash__ = None

    def __repr__(self):
        return (f"Triangulation(tets={self.tet_count}, glued={len(self.gluings)}, "
                f"boundary={len(self.boundary)})")

    def replace(self, **changes) -> Triangulation:
        kw = dict(tet_count=self.tet_count, gluings=self.gluings, eps=self.eps,
                  boundary=self.boundary)
        kw.update(changes)
        return Triangulation(**kw)

    # derived structure
    @cached_property
    def partner(self) -> dict[Face, Face]:
        out = {}
        for a, b in self.gluings:
            out.setdefault(a, b)
            out.setdefault(b, a)
        return out

    @cached_property
    def unglued_faces(self) -> list[Face]:
        return [(t, f) for t in range(self.tet_count) for f in range(4)
                if (t, f) not in self.partner]

    @property
    def closed(self) -> bool:
        return not self.unglued_faces

    @cached_property
    def _classes(self):
        n = self.tet_count
        verts = UnionFind(4 * n)
        edges = UnionFind(6 * n)
        for (t, f), (t2, f2) in self.gluings:
            if not (0 <= t < n and 0 <= t2 < n):
                continue
            c1, c2 = FACE_CORNERS[f], FACE_CORNERS[f2]
            for a, b in zip(c1, c2):
                verts.union(4 * t + a, 4 * t2 + b)
            for i, j in ((0, 1), (1, 2), (0, 2)):
                edges.union(6 * t + EDGE_INDEX[(c1[i], c1[j])],
                            6 * t2 + EDGE_INDEX[(c2[i], c2[j])])
        vlab = np.array(verts.labels(), dtype=np.int64).reshape(n, 4) if n else np.zeros((0, 4), int)
        elab = np.array(edges.labels(), dtype=np.int64).reshape(n, 6) if n else np.zeros((0, 6), int)
        return vlab, elab

    @property
    def tet_vertices(self) -> np.ndarray:
        """``tet_vertices[t, i]`` is the vertex class of corner ``i``."""
        return self._classes[0]

    @property
    def tet_edges(self) -> np.ndarray:
        """``tet_edges[t, k]`` is the edge class of ``EDGE_PAIRS[k]``."""
        return self._classes[1]

    @property
    def n0(self) -> int:
        return int(self.tet_vertices.max()) + 1 if self.tet_count else 0

    @property
    def edge_count(self) -> int:
        return int(self.tet_edges.max()) + 1 if self.tet_count else 0

    @cached_property
    def edge_reps(self) -> list[tuple[int, int, int]]:
        """Representative ``(t, i, j)`` per edge class: the smallest occurrence."""
        reps: dict[int, tuple[int, int, int]] = {}
        for t in range(self.tet_count):
            for k, (i, j) in enumerate(EDGE_PAIRS):
                reps.setdefault(int(self.tet_edges[t, k]), (t, i, j))
        return [reps[e] for e in range(self.edge_count)]

    @cached_property
    def edge_ends(self) -> tuple[tuple[int, int], ...]:
        tv = self.tet_vertices
        return tuple((int(tv[t, i]), int(tv[t, j])) for t, i, j in self.edge_reps)

    @cached_property
    def tet_faces(self) -> np.ndarray:
        """``tet_faces[t, f]`` is the triangle class of face ``f``."""
        n = self.tet_count
        out = -np.ones((n, 4), dtype=np.int64)
        k = 0
        for t in range(n):
            for f in range(4):
                if out[t, f] >= 0:
                    continue
                out[t, f] = k
                other = self.partner.get((t, f))
                if other is not None and 0 <= other[0] < n:
                    out[other] = k
                k += 1
        return out

    @property
    def face_count(self) -> int:
        return int(self.tet_faces.max()) + 1 if self.tet_count else 0

    def face_edges(self, t: int, f: int) -> tuple[int, int, int]:
        """Edge classes ``(e01, e12, e02)`` of face ``f`` of tet ``t``."""
        a, b, c = FACE_CORNERS[f]
        te = self.tet_edges[t]
        return (int(te[EDGE_INDEX[(a, b)]]), int(te[EDGE_INDEX[(b, c)]]),
                int(te[EDGE_INDEX[(a, c)]]))

    @cached_property
    def triangles(self) -> tuple[tuple[int, int, int], ...]:
        reps: dict[int, Face] = {}
        for t in range(self.tet_count):
            for f in range(4):
                reps.setdefault(int(self.tet_faces[t, f]), (t, f))
        return tuple(self.face_edges(*reps[k]) for k in range(self.face_count))

    @cached_property
    def skeleton(self) -> Skeleton:
        return Skeleton(self.n0, self.edge_ends, self.triangles)

    def boundary_faces(self, side: str | None = None, label: str | None = None) -> list[Face]:
        """Marked boundary faces, ordered by (label, tet, face)."""
        items = [(lab, face) for face, (lab, s) in self.boundary.items()
                 if (side is None or s == side) and (label is None or lab == label)]
        return [face for _, face in sorted(items)]

    @property
    def boundary_labels(self) -> list[str]:
        return sorted({lab for lab, _ in self.boundary.values()})

    def boundary_vertices(self) -> set[int]:
        tv = self.tet_vertices
        return {int(tv[t, c]) for t, f in self.unglued_faces for c in FACE_CORNERS[f]}

    def boundary_surface(self, side: str | None = None, label: str | None = None
                         ) -> tuple[SurfaceTriangulation, tuple[int, ...]]:
        """The triangulated boundary on ``side`` (or component ``label``) and its edge map.

        Surface edges are numbered by first appearance over the faces in
        (label, tet, face) order; ``edge_map[i]`` is the complex edge class of
        surface edge ``i``.
        """
        faces = self.boundary_faces(side, label)
        ids: dict[int, int] = {}
        tris = []
        for t, f in faces:
            tris.append(tuple(ids.setdefault(e, len(ids)) for e in self.face_edges(t, f)))
        edge_map = tuple(sorted(ids, key=ids.get))
        return SurfaceTriangulation(tris, len(ids)), edge_map


class SurfaceTriangulation:
    """Branched Delta-complex surface: triangles as ``(e01, e12, e02)`` edge ids."""

    def __init__(self, triangles: Iterable[Iterable[int]], edge_count: int | None = None):
        self.triangles: tuple[tuple[int, int, int], ...] = tuple(
            tuple(int(e) for e in tri) for tri in triangles)
        used = max((max(t) for t in self.triangles), default=-1) + 1
        self.edge_count = used if edge_count is None else int(edge_count)

    def __eq__(self, other):
        if not isinstance(other, SurfaceTriangulation):
            return NotImplemented
        return (self.triangles, self.edge_count) == (other.triangles, other.edge_count)

    __hash__ = None

    def __repr__(self):
        return f"SurfaceTriangulation(triangles={len(self.triangles)}, edges={self.edge_count})"

    def canonical(self) -> SurfaceTriangulation:
        ids: dict[int, int] = {}
        tris = [tuple(ids.setdefault(e, len(ids)) for e in tri) for tri in self.triangles]
        return SurfaceTriangulation(tris, len(ids))

    @cached_property
    def edge_ends(self) -> tuple[tuple[int, int], ...]:
        uf = UnionFind(2 * self.edge_count)
        for a, b, c in self.triangles:
            uf.union(2 * a, 2 * c)          # tail(e01) = tail(e02)
            uf.union(2 * a + 1, 2 * b)      # head(e01) = tail(e12)
            uf.union(2 * b + 1, 2 * c + 1)  # head(e12) = head(e02)
        lab = uf.labels()
        # renumber so vertex ids follow first appearance in edge order
        return tuple((lab[2 * e], lab[2 * e + 1]) for e in range(self.edge_count))

    @property
    def n0(self) -> int:
        return max((max(p) for p in self.edge_ends), default=-1) + 1

    @property
    def euler_characteristic(self) -> int:
        return self.n0 - self.edge_count + len(self.triangles)

    @cached_property
    def skeleton(self) -> Skeleton:
        return Skeleton(self.n0, self.edge_ends, self.triangles)

    @cached_property
    def orientation(self) -> tuple[int, ...] | None:
        """Sign per triangle making the surface coherently oriented, or ``None``.

        A triangle with sign ``s`` induces ``+s`` on ``e01`` and ``e12`` and
        ``-s`` on ``e02``; the two incidences of every edge must cancel.
        """
        inc = defaultdict(list)
        for k, tri in enumerate(self.triangles):
            for pos, e in enumerate(tri):
                inc[e].append((k, _edge_face_sign(pos)))
        adj = defaultdict(list)
        for e, pair in inc.items():
            if len(pair) != 2:
                return None
            (k1, s1), (k2, s2) = pair
            # s_k1 * s1 + s_k2 * s2 = 0
            adj[k1].append((k2, -s1 * s2))
            adj[k2].append((k1, -s1 * s2))
        signs = [0] * len(self.triangles)
        for start in range(len(signs)):
            if signs[start]:
                continue
            signs[start] = 1
            stack = [start]
            while stack:
                k = stack.pop()
                for k2, rel in adj[k]:
                    want = signs[k] * rel
                    if signs[k2] == 0:
                        signs[k2] = want
                        stack.append(k2)
                    elif signs[k2] != want:
                        return None
        return tuple(signs)

    def validate(self) -> list[str]:
        problems = []
        count = defaultdict(int)
        for tri in self.triangles:
            for e in tri:
                count[e] += 1
        for e in range(self.edge_count):
            if count[e] != 2:
                problems.append(f"surface edge {e} lies in {count[e]} triangle sides")
        if not problems and self.orientation is None:
            problems.append("surface is not orientable")
        return problems


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    tets: int = 0
    n0: int = 0
    edges: int = 0
    faces: int = 0
    closed: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    @property
    def euler_characteristic(self) -> int:
        return self.n0 - self.edges + self.faces - self.tets

    def __str__(self):
        if self.ok:
            return (f"pass (tets={self.tets}, n0={self.n0}, edges={self.edges}, "
                    f"faces={self.faces}, closed={str(self.closed).lower()})")
        return "fail: " + "; ".join(self.violations)


def validate(T: Triangulation) -> ValidationReport:
    """Check every structural invariant; violations are listed in a fixed order."""
    v: list[str] = []
    n = T.tet_count
    report = ValidationReport(v, tets=n)
    if len(T.eps) != n or any(e not in (1, -1) for e in T.eps):
        v.append("eps must list one sign +1/-1 per tet")
    seen: dict[Face, Face] = {}
    for a, b in T.gluings:
        for t, f in (a, b):
            if not (0 <= t < n and 0 <= f < 4):
                v.append(f"gluing references missing face {(t, f)}")
        if a == b:
            v.append(f"face {a} is glued to itself")
        for x, y in ((a, b), (b, a)):
            if x in seen and seen[x] != y:
                v.append(f"face {x} is glued twice")
            seen[x] = y
    if v:
        return report
    for (t, f), (t2, f2) in T.gluings:
        if T.eps[t] * T.eps[t2] != (-1) ** (f + f2 + 1):
            v.append(f"orientation mismatch across faces {(t, f)} and {(t2, f2)}")
    for face, (label, side) in T.boundary.items():
        if face in T.partner:
            v.append(f"boundary mark on glued face {face}")
        if side not in SIDES:
            v.append(f"boundary face {face} has side {side!r}, expected in/out")
    unmarked = [fc for fc in T.unglued_faces if fc not in T.boundary]
    for fc in unmarked:
        if T.boundary:
            v.append(f"unglued face {fc} has no boundary mark")
    if unmarked and not T.boundary:
        v.append(f"{len(unmarked)} unglued faces but no boundary marks (first {unmarked[0]})")
    report.n0, report.edges, report.faces = T.n0, T.edge_count, T.face_count
    report.closed = T.closed
    v.extend(_edge_link_problems(T))
    v.extend(_vertex_link_problems(T))
    if T.closed and report.euler_characteristic != 0:
        v.append(f"Euler characteristic {report.euler_characteristic} != 0")
    return report


def _edge_link_problems(T: Triangulation) -> list[str]:
    """The tets around every edge class must form one fan (cycle or path)."""
    nodes = [(t, k) for t in range(T.tet_count) for k in range(6)]
    uf = UnionFind(len(nodes))
    for t in range(T.tet_count):
        for k, (i, j) in enumerate(EDGE_PAIRS):
            for f in range(4):
                if f in (i, j):
                    continue
                other = T.partner.get((t, f))
                if other is None:
                    continue
                t2, f2 = other
                corr = dict(zip(FACE_CORNERS[f], FACE_CORNERS[f2]))
                k2 = EDGE_INDEX[(corr[i], corr[j])]
                uf.union(6 * t + k, 6 * t2 + k2)
    comps = defaultdict(set)
    for t in range(T.tet_count):
        for k in range(6):
            comps[int(T.tet_edges[t, k])].add(uf.find(6 * t + k))
    return [f"edge class {e} has a disconnected link ({len(c)} fans)"
            for e, c in sorted(comps.items()) if len(c) > 1]


def _vertex_link_problems(T: Triangulation) -> list[str]:
    tv = T.tet_vertices
    chi = defaultdict(int)
    for a, b in T.edge_ends:
        chi[a] += 1
        chi[b] += 1
    reps = {}
    for t in range(T.tet_count):
        for f in range(4):
            reps.setdefault(int(T.tet_faces[t, f]), (t, f))
    for t, f in reps.values():
        for c in FACE_CORNERS[f]:
            chi[int(tv[t, c])] -= 1
    for t in range(T.tet_count):
        for c in range(4):
            chi[int(tv[t, c])] += 1
    bverts = T.boundary_vertices()
    out = []
    for vtx in range(T.n0):
        want = 1 if vtx in bverts else 2
        if chi[vtx] != want:
            out.append(f"vertex class {vtx} has link Euler characteristic {chi[vtx]}, expected {want}")
    return out


def orient(T: Triangulation) -> Triangulation:
    """Recompute ``eps`` by propagation so every gluing reverses orientation.

    The first tet of each connected component keeps its sign.
    """
    eps = [0] * T.tet_count
    for start in range(T.tet_count):
        if eps[start]:
            continue
        eps[start] = T.eps[start] if len(T.eps) == T.tet_count else 1
        stack = [start]
        while stack:
            t = stack.pop()
            for f in range(4):
                other = T.partner.get((t, f))
                if other is None:
                    continue
                t2, f2 = other
                want = eps[t] * (-1) ** (f + f2 + 1)
                if eps[t2] == 0:
                    eps[t2] = want
                    stack.append(t2)
                elif eps[t2] != want:
                    raise InvalidInput(f"complex is not orientable (conflict at tet {t2})")
    return T.replace(eps=eps)
