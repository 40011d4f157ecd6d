"""Cochains on finite groups valued in roots of unity, stored as exponents.

``Cochain3.table[g, h, k] = e`` means ``alpha(g, h, k) = zeta_m^e``. The
group acts trivially on coefficients, so the coboundary is the plain
alternating sum

    (d a)(x, y, z, t) = a(y,z,t) - a(xy,z,t) + a(x,yz,t) - a(x,y,zt) + a(x,y,z)
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from . import groups
from .cyclotomics import merged_order
from .errors import InvalidParameter, SizeLimitError
from .groups import FiniteGroup


def _freeze(table, m):
    arr = np.mod(np.asarray(table, dtype=np.int64), m)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Cochain3:
    group: FiniteGroup
    root_order: int
    table: np.ndarray

    def __post_init__(self):
        n = self.group.order
        if self.root_order < 1:
            raise InvalidParameter("root order must be >= 1")
        table = _freeze(self.table, self.root_order)
        if table.shape != (n, n, n):
            raise InvalidParameter(f"3-cochain table must have shape {(n, n, n)}")
        object.__setattr__(self, "table", table)

    @property
    def normalized(self) -> bool:
        t = self.table
        return not (t[0].any() or t[:, 0].any() or t[:, :, 0].any())

    def __call__(self, g, h, k) -> int:
        return int(self.table[g, h, k])

    def __eq__(self, other):
        if not isinstance(other, Cochain3):
            return NotImplemented
        m = np.lcm(self.root_order, other.root_order)
        return self.group == other.group and np.array_equal(
            self.table * (m // self.root_order) % m, other.table * (m // other.root_order) % m
        )

    __hash__ = None

    def __mul__(self, other: Cochain3) -> Cochain3:
        return multiply(self, other)

    def inverse(self) -> Cochain3:
        return Cochain3(self.group, self.root_order, -self.table)


@dataclass(frozen=True, eq=False)
class Cochain2:
    group: FiniteGroup
    root_order: int
    table: np.ndarray

    def __post_init__(self):
        n = self.group.order
        table = _freeze(self.table, self.root_order)
        if table.shape != (n, n):
            raise InvalidParameter(f"2-cochain table must have shape {(n, n)}")
        object.__setattr__(self, "table", table)


@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    checked: int
    witness: tuple[int, int, int, int] | None = None
    value: int = 0

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"pass ({self.checked} quadruples)"
        return f"fail at {self.witness} (coboundary exponent {self.value})"


def coboundary4(a: Cochain3, x: int) -> np.ndarray:
    """``(d a)(x, y, z, t)`` for fixed ``x`` as a |G|^3 array, reduced mod m."""
    t = a.group.mul_table
    al = a.table
    n = a.group.order
    y = np.arange(n)[:, None, None]
    z = np.arange(n)[None, :, None]
    w = np.arange(n)[None, None, :]
    val = (al[y, z, w] - al[t[x, y], z, w] + al[x, t[y, z], w]
           - al[x, y, t[z, w]] + al[x, y, z])
    return np.mod(val, a.root_order)


def check_cocycle(a: Cochain3) -> CocycleReport:
    """Exhaustive pentagon check over all |G|^4 quadruples.

    Reports the lexicographically smallest failing quadruple, if any.
    """
    n = a.group.order
    for x in range(n):
        bad = np.argwhere(coboundary4(a, x))
        if len(bad):
            y, z, w = (int(v) for v in bad[0])
            val = int(coboundary4(a, x)[y, z, w])
            return CocycleReport(False, n ** 4, (x, y, z, w), val)
    return CocycleReport(True, n ** 4)


def trivial_cocycle(group: FiniteGroup, m: int = 1) -> Cochain3:
    n = group.order
    return Cochain3(group, m, np.zeros((n, n, n), dtype=np.int64))


def pairing_cocycle(group: FiniteGroup, lift: Callable[[int], int], m: int) -> Cochain3:
    """``a(x, y, z) = L(x) * (L(y) + L(z) - L(yz)) mod m``.

    This is the bilinear-pairing construction ``<s(x), s(y)s(z)s(yz)^-1>``
    where the pairing on the covering group factors through an additive
    integer invariant ``L`` of the chosen section.
    """
    n = group.order
    lv = np.array([lift(g) for g in range(n)], dtype=np.int64)
    carry = lv[:, None] + lv[None, :] - lv[group.mul_table]
    return Cochain3(group, m, lv[:, None, None] * carry[None, :, :])


def zn_cocycle(n: int) -> Cochain3:
    """The standard generator of H^3(Z_n, U(1)), root order n^2."""
    if n < 1:
        raise InvalidParameter("zn_cocycle needs n >= 1")
    return pairing_cocycle(groups.cyclic(n), lambda g: g, n * n)


def sn_cocycle(n: int) -> Cochain3:
    """Root-order-4 cocycle on S_n from the writhe of positive braid lifts.

    The positive reduced braid lifting a permutation has writhe equal to its
    inversion count, so the pairing ``exp(2 pi i/4 tr(x) tr(y))`` becomes an
    integer formula in inversion counts.
    """
    if not 2 <= n <= 5:
        raise SizeLimitError("sn_cocycle supports 2 <= n <= 5")
    group = groups.symmetric(n)
    return pairing_cocycle(group, lambda g: groups.inversions(group.labels[g]), 4)


def coboundary(b: Cochain2) -> Cochain3:
    """``(d b)(g, h, k) = b(h, k) - b(gh, k) + b(g, hk) - b(g, h)``."""
    t = b.group.mul_table
    bt = b.table
    n = b.group.order
    g = np.arange(n)[:, None, None]
    h = np.arange(n)[None, :, None]
    k = np.arange(n)[None, None, :]
    val = bt[h, k] - bt[t[g, h], k] + bt[g, t[h, k]] - bt[g, h]
    return Cochain3(b.group, b.root_order, val)


def multiply(a: Cochain3, b: Cochain3) -> Cochain3:
    """Pointwise product of the root-of-unity values (exponent addition)."""
    if a.group != b.group:
        raise InvalidParameter("cochains live on different groups")
    m = merged_order(a.root_order, b.root_order)
    return Cochain3(a.group, m, a.table * (m // a.root_order) + b.table * (m // b.root_order))


def beta(a: Cochain3, g: int, h: int, k: int) -> int:
    """Exponent of the alternating product of ``alpha`` over the six orderings."""
    al = a.table
    val = (al[g, h, k] + al[h, k, g] + al[k, g, h]
           - al[g, k, h] - al[h, g, k] - al[k, h, g])
    return int(val % a.root_order)


def beta_table(a: Cochain3) -> np.ndarray:
    al = a.table
    val = (al + al.transpose(2, 0, 1) + al.transpose(1, 2, 0)
           - al.transpose(0, 2, 1) - al.transpose(1, 0, 2) - al.transpose(2, 1, 0))
    return np.mod(val, a.root_order)


def random_cochain2(group: FiniteGroup, m: int, rng: random.Random) -> Cochain2:
    n = group.order
    return Cochain2(group, m, np.array([[rng.randrange(m) for _ in range(n)] for _ in range(n)]))


# file formats
def dumps_cochain3(a: Cochain3, group_spec: str) -> str:
    lines = [f"group {group_spec}", f"root-order {a.root_order}"]
    for g, h, k in np.argwhere(a.table):
        lines.append(f"{g} {h} {k} {a.table[g, h, k]}")
    return "\n".join(lines) + "\n"


def loads_cochain3(text: str, group: FiniteGroup | None = None) -> tuple[str, Cochain3]:
    """Parse the exponent file format; returns ``(group_spec, cochain)``."""
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 2 or lines[0][0] != "group" or lines[1][0] != "root-order":
        raise InvalidParameter("cocycle file must start with 'group' and 'root-order' lines")
    spec = lines[0][1]
    if group is None:
        group = groups.parse_group_spec(spec)
    m = int(lines[1][1])
    n = group.order
    table = np.zeros((n, n, n), dtype=np.int64)
    for row in lines[2:]:
        if len(row) != 4:
            raise InvalidParameter(f"bad cocycle line {' '.join(row)!r}")
        g, h, k, e = (int(v) for v in row)
        table[g, h, k] = e
    return spec, Cochain3(group, m, table)


def loads_cochain2(text: str, group: FiniteGroup) -> Cochain2:
    """Same layout as the 3-cochain file, with ``g h e`` rows."""
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 2 or lines[0][0] != "group" or lines[1][0] != "root-order":
        raise InvalidParameter("cochain file must start with 'group' and 'root-order' lines")
    m = int(lines[1][1])
    n = group.order
    table = np.zeros((n, n), dtype=np.int64)
    for row in lines[2:]:
        if len(row) != 3:
            raise InvalidParameter(f"bad cochain line {' '.join(row)!r}")
        g, h, e = (int(v) for v in row)
        table[g, h] = e
    return Cochain2(group, m, table)


def parse_cocycle_spec(spec: str, group: FiniteGroup) -> Cochain3:
    """``trivial``, ``zn``, ``sn``, ``file:<path>``, each optionally followed by
    ``*coboundary:<path>`` to twist by the coboundary of a stored 2-cochain."""
    base, *twists = spec.split("*")
    if base == "trivial":
        alpha = trivial_cocycle(group)
    elif base == "zn":
        if not group.name.startswith("Z"):
            raise InvalidParameter("cocycle 'zn' needs a cyclic group")
        alpha = zn_cocycle(group.order)
    elif base == "sn":
        if not group.name.startswith("S"):
            raise InvalidParameter("cocycle 'sn' needs a symmetric group")
        alpha = sn_cocycle(len(group.labels[0]))
    elif base.startswith("file:"):
        _, alpha = loads_cochain3(Path(base[5:]).read_text(), group)
    else:
        raise InvalidParameter(
            f"unknown cocycle spec {spec!r}; valid: trivial, zn, sn, file:<path>, "
            "optionally with *coboundary:<path>"
        )
    for tw in twists:
        if not tw.startswith("coboundary:"):
            raise InvalidParameter(f"unknown cocycle twist {tw!r}")
        b = loads_cochain2(Path(tw[len("coboundary:"):]).read_text(), group)
        alpha = multiply(alpha, coboundary(b))
    return alpha
