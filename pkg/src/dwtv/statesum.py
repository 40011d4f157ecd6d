"""The Dijkgraaf-Witten state sum and its Turaev-Viro (6j) evaluation.

For a closed branched complex with ``n0`` vertex classes,

    Z(M) = |G|^-n0 * sum_gamma prod_tets alpha(g01, g12, g23)^eps

where ``gij`` is the coloring of the tet edge ``i -> j``. Products of cocycle
values are sums of exponents, so every coloring contributes a single residue
mod ``m`` and the sum is an exponent histogram.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import colorings
from .cocycles import Cochain3, check_cocycle
from .complexes.core import EDGE_INDEX, Triangulation
from .cyclotomics import CycNumber
from .errors import CocycleError, InvalidBoundary, InvalidInput, SizeLimitError, Unsupported
from .groups import FiniteGroup

SLOW_PATH_LIMIT = 10 ** 7

# tet edge slots (as EDGE_PAIRS indices) feeding the three cocycle arguments
STANDARD_SLOTS = (EDGE_INDEX[(0, 1)], EDGE_INDEX[(1, 2)], EDGE_INDEX[(2, 3)])


@dataclass(frozen=True, eq=False)
class GroupCategory:
    """Pointed category with simples ``group``, associator ``alpha`` and dims.

    Only ``dims == +1`` is supported by the state sums; a ``-1`` entry is
    accepted here so that the hypothesis can be checked where it matters.
    """

    group: FiniteGroup
    associator: Cochain3
    dims: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.associator.group != self.group:
            raise InvalidInput("associator lives on a different group")
        report = check_cocycle(self.associator)
        if not report:
            raise CocycleError(f"associator {report}", report.witness)
        dims = self.dims or (1,) * self.group.order
        if len(dims) != self.group.order or any(d not in (1, -1) for d in dims):
            raise InvalidInput("dims must list +1 or -1 per simple object")
        object.__setattr__(self, "dims", tuple(dims))

    def tensor(self, a: int, b: int) -> int:
        return self.group.mul(a, b)

    def dual(self, a: int) -> int:
        return self.group.inverse(a)

    def hom_dim(self, a: int, b: int) -> int:
        return int(a == b)

    @property
    def global_dim(self) -> int:
        """``sum dim(X)^2``, equal to |G|."""
        return sum(d * d for d in self.dims)

    def sixj(self, b: int, c: int, d: int) -> int:
        return sixj(self, b, c, d)


def sixj(C: GroupCategory, b: int, c: int, d: int) -> int:
    """Exponent of the 6j symbol with outer labels b, c, d.

    The other three labels are forced to ``bc``, ``cd`` and ``bcd``; the
    symbol is then the associator value ``alpha(b, c, d)``.
    """
    return C.associator(b, c, d)


@dataclass(frozen=True)
class TetWeight:
    exponent: int
    eps: int

    @property
    def signed_exponent(self) -> int:
        return self.eps * self.exponent


def _slot_columns(T: Triangulation, g20_convention: bool):
    """Edge-class columns and inversion flags for the three cocycle arguments per tet."""
    te = T.tet_edges
    if g20_convention:
        # alpha(g01, g12, g20) with g20 = g02^-1
        cols = np.stack([te[:, EDGE_INDEX[(0, 1)]], te[:, EDGE_INDEX[(1, 2)]],
                         te[:, EDGE_INDEX[(0, 2)]]], axis=1)
        flip = (False, False, True)
    else:
        cols = te[:, list(STANDARD_SLOTS)]
        flip = (False, False, False)
    return cols, flip


def tet_weight(T: Triangulation, tet: int, coloring: Sequence[int], alpha: Cochain3,
               g20_convention: bool = False) -> TetWeight:
    cols, flip = _slot_columns(T, g20_convention)
    inv = alpha.group.inverses
    args = [int(inv[coloring[c]]) if f else int(coloring[c]) for c, f in zip(cols[tet], flip)]
    return TetWeight(alpha(*args), T.eps[tet])


def coloring_exponents(T: Triangulation, cols: np.ndarray, alpha: Cochain3,
                       g20_convention: bool = False) -> np.ndarray:
    """Total signed exponent ``sum eps * exponent`` mod m for each coloring row."""
    slots, flip = _slot_columns(T, g20_convention)
    inv = alpha.group.inverses
    total = np.zeros(len(cols), dtype=np.int64)
    eps = np.asarray(T.eps, dtype=np.int64)
    for t in range(T.tet_count):
        args = [inv[cols[:, c]] if f else cols[:, c] for c, f in zip(slots[t], flip)]
        total += eps[t] * alpha.table[args[0], args[1], args[2]]
    return np.mod(total, alpha.root_order)


def _require_cocycle(alpha: Cochain3) -> None:
    report = check_cocycle(alpha)
    if not report:
        raise CocycleError(f"not a 3-cocycle: {report}", report.witness)


def _histogram_value(exps: np.ndarray, m: int, scale: Fraction) -> CycNumber:
    counts = np.bincount(exps, minlength=m) if len(exps) else np.zeros(m, dtype=np.int64)
    return CycNumber.from_histogram(m, counts, scale)


def dw_invariant(T: Triangulation, G: FiniteGroup, alpha: Cochain3, *,
                 g20_convention: bool = False, check: bool = True) -> CycNumber:
    """The Dijkgraaf-Witten invariant of a closed complex."""
    if not T.closed:
        raise InvalidInput("dw_invariant needs a closed complex; use dw_relative")
    return dw_relative(T, G, alpha, {}, g20_convention=g20_convention, check=check)


def boundary_pins(T: Triangulation, tau: Mapping[str, Sequence[int]]) -> dict[int, int]:
    """Translate per-component surface colorings into pinned complex edges."""
    pins: dict[int, int] = {}
    labels = set(T.boundary_labels)
    for label, values in tau.items():
        if label not in labels:
            raise InvalidBoundary(f"no boundary component labelled {label!r}")
        surface, edge_map = T.boundary_surface(label=label)
        if len(values) != len(edge_map):
            raise InvalidBoundary(
                f"component {label!r} has {len(edge_map)} edges, coloring gives {len(values)}")
        for e, v in zip(edge_map, values):
            if pins.setdefault(e, int(v)) != int(v):
                raise InvalidBoundary(f"conflicting boundary values on edge class {e}")
    return pins


def dw_relative(T: Triangulation, G: FiniteGroup, alpha: Cochain3,
                tau: Mapping[str, Sequence[int]] | None = None, *,
                g20_convention: bool = False, check: bool = True) -> CycNumber:
    """``Z_M(tau)``: the state sum over colorings extending the boundary coloring ``tau``.

    ``tau`` maps a boundary label to values on that component's surface edges
    (numbered as in :meth:`Triangulation.boundary_surface`). ``n0`` counts all
    vertex classes, boundary ones included.
    """
    if alpha.group != G:
        raise InvalidInput("cocycle and group do not match")
    if check:
        _require_cocycle(alpha)
    pins = boundary_pins(T, tau or {})
    cols = colorings.enumerate_array(T, G, pins)
    exps = coloring_exponents(T, cols, alpha, g20_convention)
    return _histogram_value(exps, alpha.root_order, Fraction(1, G.order ** T.n0))


def trace(T: Triangulation, G: FiniteGroup, alpha: Cochain3, g20_convention: bool = False):
    """Per-coloring signed exponents, for small inputs."""
    cols = colorings.enumerate_array(T, G)
    return list(zip((tuple(int(x) for x in row) for row in cols),
                    (int(e) for e in coloring_exponents(T, cols, alpha, g20_convention))))


def tv_invariant(T: Triangulation, C: GroupCategory, *, fast: bool = False,
                 chunk: int = 200_000) -> CycNumber:
    """Turaev-Viro state sum for a group category with all dims equal to 1.

    ``dim(C)^-n0 * sum over all labelings of edges by simples of
    prod_edges dim * prod_tets 6j``. The 6j symbol of a tet vanishes unless
    the labels of each of its faces are compatible (``g01 g12 = g02``); the
    slow path runs over every labeling and lets these zeros appear, the fast
    path starts from the admissible labelings.
    """
    if any(d != 1 for d in C.dims):
        raise Unsupported("the Turaev-Viro evaluation assumes every simple has dimension 1")
    G, alpha = C.group, C.associator
    n, E, m = G.order, T.edge_count, alpha.root_order
    scale = Fraction(1, C.global_dim ** T.n0)
    if fast:
        cols = colorings.enumerate_array(T, G)
        return _histogram_value(coloring_exponents(T, cols, alpha), m, scale)
    if n ** E > SLOW_PATH_LIMIT:
        raise SizeLimitError(f"{n}^{E} labelings exceed the slow-path limit; use fast=True")
    te = T.tet_edges
    mul = G.mul_table
    face_slots = [(EDGE_INDEX[(a, b)], EDGE_INDEX[(b, c)], EDGE_INDEX[(a, c)])
                  for a, b, c in ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))]
    counts = np.zeros(m, dtype=np.int64)
    total = n ** E
    powers = n ** np.arange(E - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        labels = (idx[:, None] // powers[None, :]) % n
        weight = np.ones(len(labels), dtype=bool)     # product of 6j supports
        exps = np.zeros(len(labels), dtype=np.int64)
        for t in range(T.tet_count):
            row = te[t]
            for s01, s12, s02 in face_slots:
                weight &= mul[labels[:, row[s01]], labels[:, row[s12]]] == labels[:, row[s02]]
            b, c, d = (labels[:, row[s]] for s in STANDARD_SLOTS)
            exps += T.eps[t] * alpha.table[b, c, d]
        counts += np.bincount(np.mod(exps[weight], m), minlength=m)
    return CycNumber.from_histogram(m, counts, scale)
