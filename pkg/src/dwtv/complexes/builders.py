"""Standard complexes: S^3, T^3, surfaces, Sigma x I and Sigma x S^1, gluing."""
from __future__ import annotations

import itertools
from typing import Hashable, Iterable, Sequence

import numpy as np

from ..errors import InvalidInput, InvalidParameter
from .core import FACE_CORNERS, SurfaceTriangulation, Triangulation, orient


def glue_by_keys(face_keys: Sequence[Sequence[Hashable]], eps: Sequence[int] | None = None,
                 boundary_side: dict | None = None) -> Triangulation:
    """Glue tets whose faces carry equal keys.

    ``face_keys[t][f]`` names face ``f`` of tet ``t``; the corner correspondence
    is the order-preserving one. Keys must occur once or twice. Faces whose key
    occurs once become boundary if ``boundary_side`` maps the key to a
    ``(label, side)`` pair; otherwise they are left unmarked.
    """
    where: dict[Hashable, list[tuple[int, int]]] = {}
    for t, keys in enumerate(face_keys):
        for f, key in enumerate(keys):
            where.setdefault(key, []).append((t, f))
    gluings, boundary = [], {}
    for key, faces in where.items():
        if len(faces) == 2:
            gluings.append((faces[0], faces[1]))
        elif len(faces) == 1:
            if boundary_side is not None:
                boundary[faces[0]] = boundary_side(key) if callable(boundary_side) else boundary_side[key]
        else:
            raise InvalidInput(f"face key {key!r} occurs {len(faces)} times")
    return Triangulation(len(face_keys), gluings, eps, boundary)


def from_ordered_simplices(simplices: Iterable[Sequence[int]], boundary: dict | None = None,
                           eps: Sequence[int] | None = None) -> Triangulation:
    """Simplicial input: tets as 4-tuples of globally ordered vertex ids.

    The global order is the branching. Faces shared by two tets are glued;
    ``boundary`` maps a sorted vertex triple to ``(label, side)``. Without
    ``eps`` the orientation is propagated from the first tet of each
    component.
    """
    tets = [tuple(sorted(int(v) for v in s)) for s in simplices]
    for s in tets:
        if len(set(s)) != 4:
            raise InvalidInput(f"simplex {s} needs 4 distinct vertices")
    keys = [[tuple(s[c] for c in FACE_CORNERS[f]) for f in range(4)] for s in tets]
    T = glue_by_keys(keys, eps)
    if boundary:
        T = T.replace(boundary={fc: boundary[keys[fc[0]][fc[1]]] for fc in T.unglued_faces
                                if keys[fc[0]][fc[1]] in boundary})
    return T if eps is not None else orient(T)


def sphere3() -> Triangulation:
    """Boundary of the 4-simplex, branched by the order 0<1<2<3<4."""
    return from_ordered_simplices(itertools.combinations(range(5), 4))


def torus3() -> Triangulation:
    """The cube [0,1]^3 cut into six tets along the main diagonal, opposite faces identified.

    Tet ``sigma`` walks from 000 to 111 adding coordinate directions in the
    order ``sigma``; its sign is the sign of ``sigma``.
    """
    keys, eps = [], []
    for sigma in itertools.permutations(range(3)):
        pts = [np.zeros(3, dtype=int)]
        for axis in sigma:
            pts.append(pts[-1] + np.eye(3, dtype=int)[axis])
        tet_keys = []
        for f in range(4):
            face = np.array([pts[c] for c in FACE_CORNERS[f]])
            for axis in range(3):
                if (face[:, axis] == 1).all():
                    face[:, axis] = 0
            tet_keys.append(tuple(map(tuple, face.tolist())))
        keys.append(tet_keys)
        eps.append(_perm_sign(sigma))
    return glue_by_keys(keys, eps)


def _perm_sign(p: Sequence[int]) -> int:
    inv = sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])
    return -1 if inv % 2 else 1


# surfaces
def surface_from_vertex_triangles(triangles: Sequence[tuple[int, int, int]],
                                  edge_id: dict[tuple[int, int], Hashable]) -> SurfaceTriangulation:
    """Build a surface from triangles ``(x, y, z)`` with branching x<y<z.

    ``edge_id`` maps a directed pair to an edge name; pairs naming the same
    edge are identified. Edge ids are renumbered by first appearance.
    """
    ids: dict[Hashable, int] = {}
    tris = []
    for x, y, z in triangles:
        tri = []
        for pair in ((x, y), (y, z), (x, z)):
            if pair not in edge_id:
                raise InvalidInput(f"no directed edge {pair} in the surface edge table")
            tri.append(ids.setdefault(edge_id[pair], len(ids)))
        tris.append(tuple(tri))
    return SurfaceTriangulation(tris, len(ids))


def torus_surface(k: int = 1) -> SurfaceTriangulation:
    """The k x k square grid on the torus, each square cut by its rising diagonal.

    ``k = 1`` is the one-vertex square with three edges and two triangles.
    """
    if k < 1:
        raise InvalidParameter("torus grid size must be >= 1")

    def v(i, j):
        return (i % k, j % k)

    # key edges by grid position: for k = 1 directed vertex pairs collide
    tris_edges = []
    for i in range(k):
        for j in range(k):
            lower = (("x", v(i, j)), ("y", v(i + 1, j)), ("d", v(i, j)))
            upper = (("y", v(i, j)), ("x", v(i, j + 1)), ("d", v(i, j)))
            tris_edges += [lower, upper]
    tris = []
    ids: dict = {}
    for tri in tris_edges:
        tris.append(tuple(ids.setdefault(e, len(ids)) for e in tri))
    return SurfaceTriangulation(tris, len(ids))


def genus_surface(g: int) -> SurfaceTriangulation:
    """One-vertex triangulation of the closed genus-g surface, g >= 1.

    The 4g-gon ``P_0 .. P_{4g-1}`` with word ``a_1 b_1 a_1^-1 b_1^-1 ...``.
    Block i has corners ``p, q, r, s, t = P_{4i} .. P_{4i+4}``: sides
    ``p->q = a_i``, ``q->r = b_i``, ``s->r = a_i``, ``t->s = b_i``, diagonals
    ``p->r`` and ``t->r``, and the chord between ``p`` and ``t``. Chords and
    the central fan ``(P_0, P_{4j}, P_{4j+4})`` are directed away from
    ``P_0``, then along the polygon. This fixes every direction the usual
    polygon picture leaves open.
    """
    if g < 1:
        raise InvalidParameter("genus must be >= 1")
    if g == 1:
        return torus_surface(1)
    n = 4 * g
    P = lambda i: i % n  # noqa: E731
    edge_id: dict[tuple[int, int], Hashable] = {}
    tris = []

    def chord(u, w):
        # direction: away from P0, otherwise increasing polygon index
        if w == 0 or (u != 0 and w < u):
            u, w = w, u
        edge_id[(u, w)] = ("c", u, w)
        return u, w

    for i in range(g):
        p, q, r, s, t = (P(4 * i + d) for d in range(5))
        edge_id[(p, q)] = ("a", i)
        edge_id[(s, r)] = ("a", i)
        edge_id[(q, r)] = ("b", i)
        edge_id[(t, s)] = ("b", i)
        edge_id[(p, r)] = ("pr", i)
        edge_id[(t, r)] = ("tr", i)
        tris.append((p, q, r))
        tris.append((t, s, r))
        u, w = chord(p, t)
        tris.append((u, w, r))
    for j in range(1, g - 1):
        a, b = P(4 * j), P(4 * j + 4)
        chord(0, a), chord(0, b), chord(a, b)
        tris.append((0, a, b))
    return surface_from_vertex_triangles(tris, edge_id)


def sphere_surface() -> SurfaceTriangulation:
    """Boundary of the tetrahedron, branched by 0<1<2<3."""
    edge_id = {(a, b): (a, b) for a, b in itertools.combinations(range(4), 2)}
    tris = [tuple(c for c in range(4) if c != f) for f in (3, 2, 1, 0)]
    return surface_from_vertex_triangles(tris, edge_id)


def parse_surface_spec(spec: str) -> SurfaceTriangulation:
    """``torus``, ``torus:<k>``, ``genus:<g>`` or ``sphere``."""
    kind, _, arg = spec.partition(":")
    if kind == "torus":
        return torus_surface(int(arg) if arg else 1)
    if kind == "genus":
        return genus_surface(int(arg))
    if kind == "sphere":
        return sphere_surface()
    raise InvalidParameter(f"unknown surface {spec!r}; valid: torus, torus:<k>, genus:<g>, sphere")


# prisms
def _prism_complex(S: SurfaceTriangulation, periodic: bool) -> Triangulation:
    """Triangle x interval prisms, each cut into three tets.

    For a triangle with corners a<b<c, bottom copies ``*0`` and top copies
    ``*1``, the tets are A = (a0,b0,c0,c1), B = (a0,b0,b1,c1) and
    C = (a0,a1,b1,c1). Each side quad over an edge u->w is cut by the
    diagonal u0->w1. With a triangle's surface orientation s the signs are
    (s, -s, s).
    """
    problems = S.validate()
    if problems:
        raise InvalidInput("; ".join(problems))
    signs = S.orientation
    keys, eps = [], []
    for k, (ab, bc, ac) in enumerate(S.triangles):
        s = signs[k]
        bottom = ("horiz", k) if periodic else ("bottom", k)
        top = ("horiz", k) if periodic else ("top", k)
        keys.append([("quad", bc, "lo"), ("quad", ac, "lo"), ("int", k, "AB"), bottom])
        keys.append([("quad", bc, "hi"), ("int", k, "BC"), ("int", k, "AB"), ("quad", ab, "lo")])
        keys.append([top, ("int", k, "BC"), ("quad", ac, "hi"), ("quad", ab, "hi")])
        eps += [s, -s, s]
    side = None if periodic else (lambda key: ("0", "in") if key[0] == "bottom" else ("1", "out"))
    return glue_by_keys(keys, eps, side)


def cylinder(S: SurfaceTriangulation) -> Triangulation:
    """S x [0,1]; ``in`` is S x 0 (label "0"), ``out`` is S x 1 (label "1")."""
    return _prism_complex(S, periodic=False)


def surface_cross_s1(S: SurfaceTriangulation) -> Triangulation:
    return _prism_complex(S, periodic=True)


def sigma_cross_s1(g: int) -> Triangulation:
    """Sigma_g x S^1 with 3 (4g - 2) tets and a single vertex."""
    return surface_cross_s1(genus_surface(g))


# combination
def disjoint_union(M: Triangulation, N: Triangulation) -> Triangulation:
    off = M.tet_count
    gl = list(M.gluings) + [((a + off, f), (b + off, h)) for (a, f), (b, h) in N.gluings]
    bd = dict(M.boundary)
    bd.update({(t + off, f): v for (t, f), v in N.boundary.items()})
    return Triangulation(off + N.tet_count, gl, M.eps + N.eps, bd)


def glue(M: Triangulation, N: Triangulation) -> Triangulation:
    """The composite ``M o N``: N's ``out`` boundary glued onto M's ``in``.

    Both sides must carry the same canonical surface triangulation; boundary
    faces are matched in (label, tet, face) order.
    """
    s_in, _ = M.boundary_surface("in")
    s_out, _ = N.boundary_surface("out")
    if s_in != s_out:
        raise InvalidInput("boundary triangulations of M (in) and N (out) differ")
    U = disjoint_union(N, M)
    off = N.tet_count
    m_in = [(t + off, f) for t, f in M.boundary_faces("in")]
    n_out = N.boundary_faces("out")
    bd = {fc: v for fc, v in U.boundary.items() if fc not in set(m_in) | set(n_out)}
    return Triangulation(U.tet_count, list(U.gluings) + list(zip(n_out, m_in)), U.eps, bd)


def parse_complex_spec(spec: str) -> Triangulation:
    """Builder names (``sphere3``, ``torus3``, ``sigma:<g>``, ``cylinder:<surface>``) or a file path."""
    if spec == "sphere3":
        return sphere3()
    if spec == "torus3":
        return torus3()
    if spec.startswith("sigma:"):
        return sigma_cross_s1(int(spec[6:]))
    if spec.startswith("cylinder:"):
        return cylinder(parse_surface_spec(spec[9:]))
    from pathlib import Path
    if Path(spec).is_file():
        from .io import read_triangulation
        return read_triangulation(Path(spec).read_text())
    raise InvalidParameter(
        f"unknown complex {spec!r}; valid: sphere3, torus3, sigma:<g>, cylinder:<surface>, or a file path")
