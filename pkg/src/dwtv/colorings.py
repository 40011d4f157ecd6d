"""Admissible colorings (flat G-connections), the gauge action and the pi_1 oracle.

A coloring assigns a group element to every edge class along its branching
direction; flatness on a triangle ``(e01, e12, e02)`` reads
``g(e01) * g(e12) == g(e02)``. Colorings are handled in bulk as integer
arrays of shape ``(count, n_edges)``.
"""
from __future__ import annotations

from collections import deque
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import groups
from .complexes.core import Skeleton, SurfaceTriangulation, Triangulation
from .errors import InvalidBoundary, InvalidParameter, SizeLimitError, Unsupported
from .groups import FiniteGroup

MAX_FRONTIER = 20_000_000  # rows x edges cells held during the search


def _skeleton(X) -> Skeleton:
    if isinstance(X, Skeleton):
        return X
    if isinstance(X, (Triangulation, SurfaceTriangulation)):
        return X.skeleton
    raise InvalidParameter(f"expected a complex, surface or skeleton, got {type(X).__name__}")


def search_order(skel: Skeleton, pinned: Sequence[int] = ()) -> list[int]:
    """Edge order for the search: pinned edges first, then greedily the edge
    that closes a triangle, else one touching the most assigned triangles, ties
    by index."""
    E = skel.n_edges
    tris_of = [[] for _ in range(E)]
    for k, tri in enumerate(skel.triangles):
        for e in set(tri):
            tris_of[e].append(k)
    done = np.zeros(E, dtype=bool)
    order = []
    for e in sorted(set(pinned)):
        order.append(e)
        done[e] = True
    remaining = set(range(E)) - set(order)
    while remaining:
        best, best_key = None, None
        for e in sorted(remaining):
            closes = touches = 0
            for k in tris_of[e]:
                others = [x for x in skel.triangles[k] if x != e]
                known = sum(done[x] for x in others)
                if others and known == len(others):
                    closes += 1
                touches += known
            key = (closes > 0, touches)
            if best_key is None or key > best_key:
                best, best_key = e, key
        order.append(best)
        done[best] = True
        remaining.discard(best)
    return order


def enumerate_array(X, G: FiniteGroup, fixed: Mapping[int, int] | None = None) -> np.ndarray:
    """All admissible colorings extending ``fixed`` (edge -> element), sorted lexicographically.

    Breadth-first search over partial assignments in the greedy edge order;
    every triangle is checked the moment its last edge is assigned, and an edge
    that closes a triangle gets its value forced instead of branched.
    """
    skel = _skeleton(X)
    E = skel.n_edges
    fixed = dict(fixed or {})
    n = G.order
    mul, inv = G.mul_table, G.inverses
    for e, v in fixed.items():
        if not (0 <= e < E and 0 <= v < n):
            raise InvalidBoundary(f"pinned value {e}:{v} is out of range")
    _check_pins_flat(skel, G, fixed)
    order = search_order(skel, list(fixed))
    position = {e: i for i, e in enumerate(order)}
    # triangles checked/forced when the edge at a given position is assigned
    closing: list[list[tuple[int, int, int]]] = [[] for _ in range(E)]
    for tri in skel.triangles:
        closing[max(position[e] for e in tri)].append(tri)

    rows = np.zeros((1, E), dtype=np.int64)
    for step, e in enumerate(order):
        tris = closing[step]
        forcing = None
        for a, b, c in tris:
            if [a, b, c].count(e) == 1:
                forcing = (a, b, c)
                break
        if e in fixed:
            rows[:, e] = fixed[e]
        elif forcing is not None:
            a, b, c = forcing
            if e == c:
                rows[:, e] = mul[rows[:, a], rows[:, b]]
            elif e == a:
                rows[:, e] = mul[rows[:, c], inv[rows[:, b]]]
            else:
                rows[:, e] = mul[inv[rows[:, a]], rows[:, c]]
        else:
            if rows.shape[0] * n * E > MAX_FRONTIER:
                raise SizeLimitError("coloring search frontier exceeds the size cap")
            rows = np.repeat(rows, n, axis=0)
            rows[:, e] = np.tile(np.arange(n), len(rows) // n)
        if tris:
            ok = np.ones(len(rows), dtype=bool)
            for a, b, c in tris:
                ok &= mul[rows[:, a], rows[:, b]] == rows[:, c]
            rows = rows[ok]
    if len(rows) > 1:
        rows = rows[np.lexsort(rows.T[::-1])]
    return rows


def _check_pins_flat(skel: Skeleton, G: FiniteGroup, fixed: Mapping[int, int]) -> None:
    for a, b, c in skel.triangles:
        if a in fixed and b in fixed and c in fixed and G.mul(fixed[a], fixed[b]) != fixed[c]:
            raise InvalidBoundary(f"boundary coloring is not flat on triangle {(a, b, c)}")


def enumerate_colorings(X, G: FiniteGroup, fixed: Mapping[int, int] | None = None
                        ) -> Iterator[tuple[int, ...]]:
    """Stream of admissible colorings as tuples, in lexicographic order."""
    for row in enumerate_array(X, G, fixed):
        yield tuple(int(v) for v in row)


def count(X, G: FiniteGroup, fixed: Mapping[int, int] | None = None) -> int:
    return len(enumerate_array(X, G, fixed))


def is_admissible(X, G: FiniteGroup, coloring: Sequence[int]) -> bool:
    skel = _skeleton(X)
    c = np.asarray(coloring)
    return all(G.mul(c[a], c[b]) == c[cc] for a, b, cc in skel.triangles)


def format_coloring(coloring: Sequence[int]) -> str:
    return " ".join(f"{e}:{int(v)}" for e, v in enumerate(coloring))


def parse_coloring(line: str) -> dict[int, int]:
    out = {}
    for tok in line.split():
        e, _, v = tok.partition(":")
        out[int(e)] = int(v)
    return out


# gauge action
def gauge_act(X, G: FiniteGroup, gamma, delta) -> np.ndarray:
    """``gamma^delta(e) = delta(tail) * gamma(e) * delta(head)^-1``.

    ``gamma`` may be one coloring or an array of colorings.
    """
    skel = _skeleton(X)
    ends = np.asarray(skel.edge_ends, dtype=np.int64).reshape(-1, 2)
    d = np.asarray(delta, dtype=np.int64)
    if d.shape != (skel.n_vertices,):
        raise InvalidParameter(f"gauge field needs {skel.n_vertices} entries")
    g = np.asarray(gamma, dtype=np.int64)
    mul = G.mul_table
    return mul[mul[d[ends[:, 0]], g], G.inverses[d[ends[:, 1]]]]


def orbits(X, G: FiniteGroup) -> list[tuple[tuple[int, ...], int]]:
    """Gauge orbits of the admissible colorings of a closed complex.

    Returns ``(representative, size)`` pairs; the representative is the
    lexicographically smallest member and the list is sorted by it.
    """
    skel = _skeleton(X)
    cols = enumerate_array(skel, G)
    if not len(cols):
        return []
    index = {row.tobytes(): i for i, row in enumerate(cols)}
    parent = np.arange(len(cols))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for v in range(skel.n_vertices):
        for g in range(1, G.order):
            delta = np.zeros(skel.n_vertices, dtype=np.int64)
            delta[v] = g
            moved = gauge_act(skel, G, cols, delta)
            for i, row in enumerate(moved):
                j = index[row.tobytes()]
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(len(cols))])
    reps, sizes = np.unique(roots, return_counts=True)
    return [(tuple(int(x) for x in cols[r]), int(s)) for r, s in zip(reps, sizes)]


# fundamental group oracle
Word = list  # list of (generator, +1/-1)


def _free_reduce(word: Word) -> Word:
    out: Word = []
    for x in word:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    while len(out) > 1 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
        out = out[1:-1]
    return out


def _invert(word: Word) -> Word:
    return [(g, -s) for g, s in reversed(word)]


def presentation(X) -> tuple[list[int], list[Word]]:
    """A presentation of pi_1 read off the 2-skeleton.

    Generators are the edges outside a breadth-first spanning tree; each
    triangle gives the relation ``e01 e12 e02^-1``. Generators occurring
    exactly once in some relation are then eliminated (Tietze moves).
    """
    skel = _skeleton(X)
    adj = [[] for _ in range(skel.n_vertices)]
    for e, (u, v) in enumerate(skel.edge_ends):
        adj[u].append((e, v))
        adj[v].append((e, u))
    seen = [False] * skel.n_vertices
    tree = set()
    if skel.n_vertices:
        seen[0] = True
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for e, v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    tree.add(e)
                    queue.append(v)
    if not all(seen):
        raise Unsupported("complex is not connected")
    gens = [e for e in range(skel.n_edges) if e not in tree]
    rels = []
    for a, b, c in skel.triangles:
        word = [(x, s) for x, s in ((a, 1), (b, 1), (c, -1)) if x not in tree]
        word = _free_reduce(word)
        if word:
            rels.append(word)
    return _tietze(gens, rels)


def _tietze(gens: list[int], rels: list[Word]) -> tuple[list[int], list[Word]]:
    gens, rels = list(gens), [list(r) for r in rels]
    changed = True
    while changed:
        changed = False
        for i, rel in enumerate(rels):
            counts: dict[int, int] = {}
            for g, _ in rel:
                counts[g] = counts.get(g, 0) + 1
            single = [g for g in sorted(counts) if counts[g] == 1]
            if not single:
                continue
            x = single[0]
            k = next(j for j, (g, _) in enumerate(rel) if g == x)
            s = rel[k][1]
            rest = rel[k + 1:] + rel[:k]          # x^s * rest = 1
            value = _invert(rest) if s == 1 else rest
            new_rels = []
            for j, other in enumerate(rels):
                if j == i:
                    continue
                sub: Word = []
                for g, t in other:
                    if g == x:
                        sub.extend(value if t == 1 else _invert(value))
                    else:
                        sub.append((g, t))
                sub = _free_reduce(sub)
                if sub:
                    new_rels.append(sub)
            rels = new_rels
            gens.remove(x)
            changed = True
            break
    return gens, rels


def hom_tuples(X, G: FiniteGroup, max_tuples: int = 20_000_000) -> np.ndarray:
    """Images of the surviving generators over all homomorphisms pi_1 -> G."""
    gens, rels = presentation(X)
    r = len(gens)
    n = G.order
    if n ** r > max_tuples:
        raise SizeLimitError(f"{n}^{r} candidate homomorphisms exceed the cap")
    col = {g: i for i, g in enumerate(gens)}
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.indices((n,) * r).reshape(r, -1).T
    ok = np.ones(len(grid), dtype=bool)
    mul, inv = G.mul_table, G.inverses
    for rel in rels:
        acc = np.zeros(len(grid), dtype=np.int64)
        for g, s in rel:
            v = grid[:, col[g]]
            acc = mul[acc, v if s == 1 else inv[v]]
        ok &= acc == 0
    return grid[ok]


def hom_count(X, G: FiniteGroup) -> int:
    """``#Hom(pi_1, G)``, independent of the coloring search."""
    return len(hom_tuples(X, G))


def hom_count_mod_conj(X, G: FiniteGroup) -> int:
    """``#Hom(pi_1, G) / conjugation`` by brute force over a presentation."""
    tuples = hom_tuples(X, G)
    if tuples.shape[1] == 0:
        return 1
    return groups.conjugacy_quotient(tuples, G)
