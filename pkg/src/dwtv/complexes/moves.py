"""Pachner moves 1-4 and 2-3, and branching relabels.

All moves return new complexes; the input is never modified.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterable, Mapping, Sequence

from ..errors import InvalidParameter, MoveInapplicable, MoveRejected
from .core import EDGE_PAIRS, FACE_CORNERS, Face, Triangulation


def _perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def _remap_gluings(T: Triangulation, face_map: Mapping[Face, Face], drop: set = frozenset()):
    gluings = []
    for a, b in T.gluings:
        if a in drop or b in drop:
            continue
        gluings.append((face_map.get(a, a), face_map.get(b, b)))
    boundary = {face_map.get(fc, fc): v for fc, v in T.boundary.items()}
    return gluings, boundary


def pachner_14(T: Triangulation, tet: int) -> Triangulation:
    """Star tet ``tet`` from a new interior vertex.

    The new vertex is local corner 4, above every old corner. New tet ``T_f``
    spans old face ``f`` and the new vertex; ``T_0`` keeps index ``tet`` and
    ``T_1 .. T_3`` are appended.
    """
    n = T.tet_count
    if not 0 <= tet < n:
        raise MoveInapplicable(f"no tet {tet}")
    new_index = [tet, n, n + 1, n + 2]
    face_map = {(tet, f): (new_index[f], 3) for f in range(4)}
    gluings, boundary = _remap_gluings(T, face_map)
    for f, g in itertools.combinations(range(4), 2):
        gluings.append(((new_index[f], FACE_CORNERS[f].index(g)),
                        (new_index[g], FACE_CORNERS[g].index(f))))
    eps = list(T.eps) + [0, 0, 0]
    for f in range(4):
        eps[new_index[f]] = T.eps[tet] * (-1) ** (3 - f)
    return Triangulation(n + 3, gluings, eps, boundary)


def _acyclic_order(names: Sequence, beats) -> list | None:
    """Linear order of a 4-vertex tournament, source first; ``None`` if cyclic."""
    wins = {x: sum(1 for y in names if y != x and beats(x, y)) for x in names}
    if len(set(wins.values())) != len(names):
        return None
    return sorted(names, key=lambda x: -wins[x])


def pachner_23(T: Triangulation, face: Face) -> Triangulation:
    """Replace the two tets sharing ``face`` by three tets around the edge joining their apexes.

    The direction of the new edge is p->q (p the apex of ``face``'s tet) when
    that keeps all three new tets acyclic, else q->p.
    """
    t1, f1 = face
    other = T.partner.get((t1, f1))
    if other is None:
        raise MoveInapplicable(f"face {face} is not glued")
    t2, f2 = other
    if t1 == t2:
        raise MoveInapplicable(f"face {face} is glued to the same tet")
    shared1, shared2 = FACE_CORNERS[f1], FACE_CORNERS[f2]
    labels = ("A", "B", "C")
    # corner of each point in t1 / t2
    in1 = {lab: c for lab, c in zip(labels, shared1)}
    in2 = {lab: c for lab, c in zip(labels, shared2)}
    in1["p"], in2["q"] = f1, f2

    def base_beats(x, y):
        if x in in1 and y in in1:
            return in1[x] < in1[y]
        return in2[x] < in2[y]

    for p_first in (True, False):
        def beats(x, y):
            if {x, y} == {"p", "q"}:
                return (x == "p") == p_first
            return base_beats(x, y)

        orders = {}
        for z in labels:
            names = [v for v in ("A", "B", "C", "p", "q") if v != z]
            order = _acyclic_order(names, beats)
            if order is None:
                break
            orders[z] = order
        else:
            break
    else:
        raise MoveRejected(f"neither direction of the new edge keeps the tets at face {face} acyclic")

    n = T.tet_count
    index = {"A": t1, "B": t2, "C": n}
    eps = list(T.eps) + [0]
    face_map: dict[Face, Face] = {}
    seq1 = ["?"] * 4
    for lab, c in in1.items():
        seq1[c] = lab
    for z in labels:
        order = orders[z]
        pos = {v: k for k, v in enumerate(order)}
        replaced = [pos["q" if v == z else v] for v in seq1]
        eps[index[z]] = T.eps[t1] * _perm_sign(replaced)
        face_map[(t1, in1[z])] = (index[z], pos["q"])
        face_map[(t2, in2[z])] = (index[z], pos["p"])
    gluings, boundary = _remap_gluings(T, face_map, drop={(t1, f1), (t2, f2)})
    for x, y in itertools.combinations(labels, 2):
        # tet_x and tet_y share the face spanned by p, q and the third label
        gluings.append(((index[x], orders[x].index(y)), (index[y], orders[y].index(x))))
    return Triangulation(n + 1, gluings, eps, boundary)


def relabel(T: Triangulation, vertex_order: Sequence[int] | None = None,
            reverse_edges: Iterable[int] = ()) -> Triangulation:
    """Change the branching, keeping the complex.

    ``vertex_order`` ranks vertex classes (edges run from lower to higher rank;
    an edge with both ends in one class is rejected). ``reverse_edges`` flips
    the listed edge classes afterwards. Each tet's corners are re-sorted by the
    new order, eps follows the corner permutation.
    """
    rev = set(int(e) for e in reverse_edges)
    tv, te = T.tet_vertices, T.tet_edges
    if vertex_order is not None:
        rank = [0] * T.n0
        if sorted(vertex_order) != list(range(T.n0)):
            raise InvalidParameter("vertex_order must be a permutation of the vertex classes")
        for r, v in enumerate(vertex_order):
            rank[v] = r
    new_orders = []
    for t in range(T.tet_count):
        fwd = {}
        for k, (i, j) in enumerate(EDGE_PAIRS):
            d = True
            if vertex_order is not None:
                ri, rj = rank[tv[t, i]], rank[tv[t, j]]
                if ri == rj:
                    raise MoveRejected(f"edge class {te[t, k]} is a loop; a vertex order cannot direct it")
                d = ri < rj
            if int(te[t, k]) in rev:
                d = not d
            fwd[(i, j)], fwd[(j, i)] = d, not d
        order = _acyclic_order(range(4), lambda x, y: fwd[(x, y)])
        if order is None:
            raise MoveRejected(f"new branching is cyclic in tet {t}")
        new_orders.append(order)
    # Q[t][old corner] = new corner
    Q = [[order.index(c) for c in range(4)] for order in new_orders]
    face_map = {(t, f): (t, Q[t][f]) for t in range(T.tet_count) for f in range(4)}
    gluings, boundary = _remap_gluings(T, face_map)
    eps = [T.eps[t] * _perm_sign(new_orders[t]) for t in range(T.tet_count)]
    return Triangulation(T.tet_count, gluings, eps, boundary)


def random_move(T: Triangulation, rng: random.Random, kinds: Sequence[str] = ("14", "23", "relabel")):
    """Apply one random accepted move; returns ``(new complex, description)``.

    Candidates are tried in an order drawn from ``rng``, so the result is a
    pure function of the generator state.
    """
    kinds = list(kinds)
    for _ in range(100):
        kind = rng.choice(kinds)
        if kind == "14":
            t = rng.randrange(T.tet_count)
            return pachner_14(T, t), f"1-4 on tet {t}"
        if kind == "23":
            faces = [a for a, b in T.gluings if a[0] != b[0]]
            rng.shuffle(faces)
            for fc in faces:
                try:
                    return pachner_23(T, fc), f"2-3 on face {fc}"
                except MoveRejected:
                    continue
        if kind == "relabel":
            for _ in range(20):
                if T.n0 > 1 and rng.random() < 0.5:
                    order = list(range(T.n0))
                    rng.shuffle(order)
                    try:
                        return relabel(T, vertex_order=order), f"relabel vertex order {order}"
                    except MoveRejected:
                        continue
                edges = sorted(e for e in range(T.edge_count) if rng.random() < 0.5)
                try:
                    return relabel(T, reverse_edges=edges), f"reverse edge classes {edges}"
                except MoveRejected:
                    continue
    raise MoveRejected("no random move could be applied")
