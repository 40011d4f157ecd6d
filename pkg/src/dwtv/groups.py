"""Finite groups stored as dense multiplication tables.

Elements are the integers ``0..order-1`` and the identity is always ``0``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameter, SizeLimitError

MAX_ORDER = 720


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``labels`` optionally carries a human-readable object per element (for
    symmetric groups these are the permutations in one-line notation).
    """

    name: str
    mul_table: np.ndarray
    labels: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        table = np.asarray(self.mul_table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidParameter("multiplication table must be a non-empty square array")
        table.setflags(write=False)
        object.__setattr__(self, "mul_table", table)

    @property
    def order(self) -> int:
        return self.mul_table.shape[0]

    @property
    def identity(self) -> int:
        return 0

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return np.array_equal(self.mul_table, other.mul_table)

    def __hash__(self):
        return hash(self.mul_table.tobytes())

    def mul(self, g: int, h: int) -> int:
        return int(self.mul_table[g, h])

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmax(self.mul_table == 0, axis=1)
        inv.setflags(write=False)
        return inv

    def inverse(self, g: int) -> int:
        return int(self.inverses[g])

    @cached_property
    def conjugation_table(self) -> np.ndarray:
        """``conj[x, g] = x g x^-1``."""
        t = self.mul_table
        conj = np.empty((self.order, self.order), dtype=np.int64)
        for xi in range(self.order):
            conj[xi] = t[t[xi, :], self.inverses[xi]]
        conj.setflags(write=False)
        return conj

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul_table, self.mul_table.T))

    def check(self) -> list[str]:
        """Exhaustive group-axiom check; returns a list of problems (empty if fine)."""
        t = self.mul_table
        n = self.order
        problems = []
        if t.min() < 0 or t.max() >= n:
            return ["table entries out of range"]
        e = np.arange(n)
        if not (np.array_equal(t[0], e) and np.array_equal(t[:, 0], e)):
            problems.append("element 0 is not a two-sided identity")
        for row in range(n):
            if len(set(t[row].tolist())) != n or len(set(t[:, row].tolist())) != n:
                problems.append(f"element {row} has no two-sided inverse")
                break
        lhs = t[t, :]  # lhs[g, h, k] = (g h) k
        rhs = t[:, t]  # rhs[g, h, k] = g (h k)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            g, h, k = bad[0]
            problems.append(f"not associative at ({g}, {h}, {k})")
        return problems


def from_table(table: Sequence[Sequence[int]], name: str = "table", labels=None) -> FiniteGroup:
    group = FiniteGroup(name, np.asarray(table), labels)
    problems = group.check()
    if problems:
        raise InvalidParameter(f"{name}: " + "; ".join(problems))
    return group


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter("cyclic group needs n >= 1")
    if n > MAX_ORDER:
        raise SizeLimitError(f"order {n} exceeds cap {MAX_ORDER}")
    x = np.arange(n)
    return FiniteGroup(f"Z{n}", (x[:, None] + x[None, :]) % n, tuple(range(n)))


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Composition ``p ∘ q`` (apply ``q`` first)."""
    return tuple(p[i] for i in q)


def symmetric(n: int) -> FiniteGroup:
    """S_n with elements in lexicographic one-line order (identity first)."""
    if n < 1:
        raise InvalidParameter("symmetric group needs n >= 1")
    if n > 6:
        raise SizeLimitError("symmetric groups are limited to n <= 6")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup(f"S{n}", np.array(table), tuple(perms))


def product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product; element ``(a, b)`` has index ``a * |g2| + b``."""
    n1, n2 = g1.order, g2.order
    if n1 * n2 > MAX_ORDER:
        raise SizeLimitError(f"order {n1 * n2} exceeds cap {MAX_ORDER}")
    a = np.repeat(np.arange(n1), n2)
    b = np.tile(np.arange(n2), n1)
    table = g1.mul_table[a[:, None], a[None, :]] * n2 + g2.mul_table[b[:, None], b[None, :]]
    labels = tuple(itertools.product(g1.labels or range(n1), g2.labels or range(n2)))
    return FiniteGroup(f"{g1.name}x{g2.name}", table, labels)


def inversions(p: Sequence[int]) -> int:
    """Number of pairs ``i < j`` with ``p[i] > p[j]`` (the Coxeter length)."""
    if sorted(p) != list(range(len(p))):
        raise InvalidParameter(f"{tuple(p)} is not a permutation")
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])


def centralizer(group: FiniteGroup, g: int) -> frozenset[int]:
    t = group.mul_table
    return frozenset(np.flatnonzero(t[:, g] == t[g, :]).tolist())


def conjugacy_orbits(tuples: Iterable[Sequence[int]], group: FiniteGroup) -> list[list[tuple]]:
    """Orbits of element tuples under simultaneous conjugation.

    Orbits are listed in order of their smallest member; members are sorted.
    """
    items = sorted({tuple(int(v) for v in t) for t in tuples})
    if not items:
        return []
    arity = len(items[0])
    if any(len(t) != arity for t in items):
        raise InvalidParameter("all tuples must have the same arity")
    conj = group.conjugation_table
    seen: dict[tuple, int] = {}
    orbits: list[list[tuple]] = []
    for t in items:
        if t in seen:
            continue
        arr = np.asarray(t, dtype=np.int64)
        members = sorted({tuple(row) for row in conj[:, arr].tolist()}) if arity else [()]
        for m in members:
            seen[m] = len(orbits)
        orbits.append(members)
    return orbits


def conjugacy_quotient(tuples: Iterable[Sequence[int]], group: FiniteGroup) -> int:
    """Number of orbits under simultaneous conjugation."""
    arr = np.asarray([tuple(t) for t in tuples], dtype=np.int64)
    if arr.size == 0:
        return 1 if len(arr) else 0
    if arr.ndim != 2:
        raise InvalidParameter("all tuples must have the same arity")
    arr = np.unique(arr, axis=0)
    # canonical representative = lexicographically smallest conjugate
    conj = group.conjugation_table
    best = arr.copy()
    for x in range(1, group.order):
        cand = conj[x][arr]
        diff = cand != best
        first = np.argmax(diff, axis=1)
        rows = np.arange(len(arr))
        smaller = diff.any(axis=1) & (cand[rows, first] < best[rows, first])
        best[smaller] = cand[smaller]
    return len(np.unique(best, axis=0))


def load_table(path: str | Path) -> FiniteGroup:
    """Read ``order <k>`` followed by ``k`` rows of ``k`` indices."""
    tokens = Path(path).read_text().split()
    if len(tokens) < 2 or tokens[0] != "order":
        raise InvalidParameter(f"{path}: expected 'order <k>' header")
    k = int(tokens[1])
    values = [int(v) for v in tokens[2:]]
    if len(values) != k * k:
        raise InvalidParameter(f"{path}: expected {k * k} table entries, got {len(values)}")
    return from_table(np.array(values).reshape(k, k), name=Path(path).stem)


def parse_group_spec(spec: str) -> FiniteGroup:
    """Parse ``cyclic:<n>``, ``symmetric:<n>``, ``product:<a>x<b>`` or ``table:<path>``."""
    kind, _, arg = spec.partition(":")
    if kind == "cyclic":
        return cyclic(int(arg))
    if kind == "symmetric":
        return symmetric(int(arg))
    if kind == "table":
        return load_table(arg)
    if kind == "product":
        left, sep, right = _split_product(arg)
        if not sep:
            raise InvalidParameter(f"bad product spec {spec!r}")
        return product(parse_group_spec(left), parse_group_spec(right))
    raise InvalidParameter(
        f"unknown group spec {spec!r}; valid: cyclic:<n>, symmetric:<n>, "
        "product:<spec>x<spec>, table:<path>"
    )


def _split_product(arg: str):
    # split on the first 'x' that follows a complete leaf spec
    for i, ch in enumerate(arg):
        if ch == "x" and i > 0 and arg[i - 1].isdigit():
            return arg[:i], "x", arg[i + 1:]
    return arg, "", ""

