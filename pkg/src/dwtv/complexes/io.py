"""The ``dwtv-tri`` text format.

::

    format dwtv-tri 1
    tets <N>
    eps <s_0> ... <s_{N-1}>
    gluing <t> <f> <t'> <f'> <a b c>   # corners of t' matched to face f's corners
    branch <edge-class-id> <t> <i> <j> # edge class runs corner i -> corner j of t
    boundary <label> <in|out> <t> <f>

The reader accepts arbitrary corner correspondences and corner labels; it
re-sorts every tet by the branching and returns the canonical internal form.
The writer emits the canonical form, so ``read(write(T)) == T``.
"""
from __future__ import annotations

import itertools

from .._unionfind import ParityUnionFind
from ..errors import InvalidInput
from .core import EDGE_INDEX, EDGE_PAIRS, FACE_CORNERS, SIDES, Triangulation
from .moves import _acyclic_order, _perm_sign


def write_triangulation(T: Triangulation) -> str:
    lines = ["format dwtv-tri 1", f"tets {T.tet_count}",
             "eps " + " ".join(str(e) for e in T.eps)]
    for (t, f), (t2, f2) in T.gluings:
        lines.append(f"gluing {t} {f} {t2} {f2} " + " ".join(map(str, FACE_CORNERS[f2])))
    for e, (t, i, j) in enumerate(T.edge_reps):
        lines.append(f"branch {e} {t} {i} {j}")
    for (t, f), (label, side) in T.boundary.items():
        lines.append(f"boundary {label} {side} {t} {f}")
    return "\n".join(lines) + "\n"


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            yield lineno, toks


def read_triangulation(text: str) -> Triangulation:
    n = None
    eps = None
    gluings = []
    branches = []
    boundary = {}
    seen_format = False
    for lineno, toks in _tokens(text):
        key, args = toks[0], toks[1:]
        try:
            if key == "format":
                if args != ["dwtv-tri", "1"]:
                    raise InvalidInput(f"unsupported format {' '.join(args)!r}")
                seen_format = True
            elif key == "tets":
                n = int(args[0])
            elif key == "eps":
                eps = [int(a) for a in args]
            elif key == "gluing":
                t, f, t2, f2, *corr = (int(a) for a in args)
                if len(corr) != 3:
                    raise InvalidInput("gluing needs three corner indices")
                gluings.append((t, f, t2, f2, tuple(corr)))
            elif key == "branch":
                branches.append(tuple(int(a) for a in args[1:4]))
            elif key == "boundary":
                label, side, t, f = args
                if side not in SIDES:
                    raise InvalidInput(f"boundary side must be in/out, got {side!r}")
                boundary[(int(t), int(f))] = (label, side)
            else:
                raise InvalidInput(f"unknown keyword {key!r}")
        except (ValueError, IndexError) as exc:
            if isinstance(exc, InvalidInput):
                raise InvalidInput(f"line {lineno}: {exc}") from None
            raise InvalidInput(f"line {lineno}: malformed {key!r} record") from None
    if not seen_format or n is None:
        raise InvalidInput("missing 'format dwtv-tri 1' or 'tets' header")
    if eps is None:
        eps = [1] * n
    if len(eps) != n:
        raise InvalidInput(f"eps lists {len(eps)} signs for {n} tets")
    return _canonicalize(n, eps, gluings, branches, boundary)


def _canonicalize(n, eps, gluings, branches, boundary) -> Triangulation:
    # edge node (t, k) stands for the unordered corner pair EDGE_PAIRS[k];
    # parity 1 means "runs from the larger corner to the smaller one"
    edges = ParityUnionFind(6 * n)
    for t, f, t2, f2, corr in gluings:
        if not (0 <= t < n and 0 <= t2 < n and 0 <= f < 4 and 0 <= f2 < 4):
            raise InvalidInput(f"gluing references a missing face ({t}, {f}) / ({t2}, {f2})")
        if sorted(corr) != list(FACE_CORNERS[f2]):
            raise InvalidInput(f"gluing {t} {f} {t2} {f2}: corners {corr} are not face {f2}")
        m = dict(zip(FACE_CORNERS[f], corr))
        for a, b in itertools.combinations(FACE_CORNERS[f], 2):
            x, y = m[a], m[b]
            edges.union(6 * t + EDGE_INDEX[(a, b)], 6 * t2 + EDGE_INDEX[tuple(sorted((x, y)))], int(x > y))
    if edges.conflicts:
        raise InvalidInput("gluings identify an edge with its own reverse")
    direction: dict[int, int] = {}
    for t, i, j in branches:
        if not (0 <= t < n) or i == j or not (0 <= i < 4 and 0 <= j < 4):
            raise InvalidInput(f"bad branch record ({t}, {i}, {j})")
        root, par = edges.find(6 * t + EDGE_INDEX[tuple(sorted((i, j)))])
        want = par ^ int(i > j)
        if direction.setdefault(root, want) != want:
            raise InvalidInput(f"branch records disagree on the edge class of tet {t} corners {i},{j}")
    # classes without a branch record run along the corner order of their first occurrence
    for node in range(6 * n):
        root, par = edges.find(node)
        direction.setdefault(root, par)
    orders = []
    for t in range(n):
        fwd = {}
        for k, (i, j) in enumerate(EDGE_PAIRS):
            root, par = edges.find(6 * t + k)
            d = not (par ^ direction[root])
            fwd[(i, j)], fwd[(j, i)] = d, not d
        order = _acyclic_order(range(4), lambda x, y: fwd[(x, y)])
        if order is None:
            raise InvalidInput(f"branching is cyclic in tet {t}")
        orders.append(order)
    Q = [[order.index(c) for c in range(4)] for order in orders]
    new_gluings = []
    for t, f, t2, f2, corr in gluings:
        m = dict(zip(FACE_CORNERS[f], corr))
        a = sorted(FACE_CORNERS[f], key=lambda c: Q[t][c])
        if [Q[t2][m[c]] for c in a] != sorted(Q[t2][m[c]] for c in a):
            raise InvalidInput(f"gluing {t} {f} {t2} {f2} does not respect the branching")
        new_gluings.append(((t, Q[t][f]), (t2, Q[t2][f2])))
    new_boundary = {(t, Q[t][f]): v for (t, f), v in boundary.items() if 0 <= t < n}
    new_eps = [eps[t] * _perm_sign(orders[t]) for t in range(n)]
    return Triangulation(n, new_gluings, new_eps, new_boundary)

