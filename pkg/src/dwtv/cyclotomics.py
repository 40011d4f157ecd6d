"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A :class:`CycNumber` is a rational coefficient vector ``sum c_j zeta_m^j``.
Sums stay in the (unreduced) group-algebra form; reduction modulo the m-th
cyclotomic polynomial happens on demand for comparison and output.
"""
from __future__ import annotations

import cmath
import math
import os
from fractions import Fraction
from functools import lru_cache, reduce as _fold
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidParameter, RootOrderOverflow

DEFAULT_ROOT_ORDER_CAP = 10_000

Rational = Fraction
Scalar = Union[int, Fraction]


def root_order_cap() -> int:
    value = os.environ.get("DWTV_ROOT_ORDER_CAP")
    return int(value) if value else DEFAULT_ROOT_ORDER_CAP


def merged_order(*orders: int) -> int:
    lcm = math.lcm(*orders)
    cap = root_order_cap()
    if lcm > cap:
        raise RootOrderOverflow(f"root order lcm {lcm} exceeds cap {cap}")
    return lcm


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (lowest degree first) of the m-th cyclotomic polynomial.

    Computed by exact division of ``x^m - 1`` by ``Phi_d`` for proper divisors d.
    """
    if m < 1:
        raise InvalidParameter("cyclotomic polynomial needs m >= 1")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dn]
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


def totient(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _poly_rem(coeffs: Sequence[Fraction], m: int) -> list[Fraction]:
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rem = list(coeffs)
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c:
            for j in range(deg + 1):
                rem[i - deg + j] -= c * phi[j]
    rem = rem[:deg]
    return rem + [Fraction(0)] * (deg - len(rem))


def reduce_array(coeffs, m: int):
    """Reduce integer coefficient vectors along the last axis modulo Phi_m.

    Works on any leading shape; returns an object array of length phi(m)
    along the last axis so large intermediate values stay exact.
    """
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    arr = np.array(coeffs, dtype=object)
    if arr.shape[-1] != m:
        raise InvalidParameter(f"expected {m} coefficients along the last axis")
    for i in range(m - 1, deg - 1, -1):
        c = arr[..., i].copy()
        for j in range(deg + 1):
            if phi[j]:
                arr[..., i - deg + j] -= c * phi[j]
    return arr[..., :deg]


class CycNumber:
    """Immutable element of Q(zeta_m)."""

    __slots__ = ("root_order", "coeffs", "_canonical")

    def __init__(self, root_order: int, coeffs: Iterable[Scalar]):
        if root_order < 1:
            raise InvalidParameter("root order must be >= 1")
        vec = [Fraction(0)] * root_order
        for j, c in enumerate(coeffs):
            if c:
                vec[j % root_order] += c
        object.__setattr__(self, "root_order", root_order)
        object.__setattr__(self, "coeffs", tuple(vec))
        object.__setattr__(self, "_canonical", None)

    def __setattr__(self, name, value):
        raise AttributeError("CycNumber is immutable")

    # constructors
    @classmethod
    def zero(cls, root_order: int = 1) -> CycNumber:
        return cls(root_order, ())

    @classmethod
    def rational(cls, value: Scalar, root_order: int = 1) -> CycNumber:
        return cls(root_order, (Fraction(value),))

    @classmethod
    def root(cls, root_order: int, e: int) -> CycNumber:
        if root_order < 1:
            raise InvalidParameter("root order must be >= 1")
        vec = [0] * root_order
        vec[e % root_order] = 1
        return cls(root_order, vec)

    @classmethod
    def from_histogram(cls, root_order: int, counts: Sequence[int], scale: Scalar = 1) -> CycNumber:
        """``scale * sum counts[j] zeta^j``; the state-sum accumulator."""
        scale = Fraction(scale)
        return cls(root_order, [scale * int(c) for c in counts])

    # representation changes
    def embed(self, order: int) -> CycNumber:
        """Same value in Q(zeta_order); ``order`` must be a multiple of ours."""
        if order == self.root_order:
            return self
        if order % self.root_order:
            raise InvalidParameter(f"cannot embed order {self.root_order} into {order}")
        step = order // self.root_order
        vec = [Fraction(0)] * order
        for j, c in enumerate(self.coeffs):
            vec[j * step] = c
        return CycNumber(order, vec)

    def canonical(self) -> tuple[Fraction, ...]:
        """Coefficients of the reduced representative, length phi(m)."""
        if self._canonical is None:
            object.__setattr__(self, "_canonical", tuple(_poly_rem(self.coeffs, self.root_order)))
        return self._canonical

    def reduce(self) -> CycNumber:
        return CycNumber(self.root_order, self.canonical())

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def as_rational(self) -> Fraction | None:
        """The rational value if the canonical form is constant, else ``None``."""
        canon = self.canonical()
        if any(canon[1:]):
            return None
        return canon[0] if canon else Fraction(0)

    def to_complex(self) -> complex:
        """Floating approximation, for display only."""
        m = self.root_order
        return sum(
            (float(c) * cmath.exp(2j * math.pi * k / m) for k, c in enumerate(self.coeffs) if c),
            0j,
        )

    # arithmetic
    def _coerce(self, other) -> CycNumber | None:
        if isinstance(other, CycNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        m = merged_order(self.root_order, other.root_order)
        a, b = self.embed(m), other.embed(m)
        return CycNumber(m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.root_order, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.root_order, [c * other for c in self.coeffs])
        if not isinstance(other, CycNumber):
            return NotImplemented
        m = merged_order(self.root_order, other.root_order)
        a, b = self.embed(m), other.embed(m)
        vec = [Fraction(0)] * m
        bnz = [(k, c) for k, c in enumerate(b.coeffs) if c]
        for j, x in enumerate(a.coeffs):
            if x:
                for k, y in bnz:
                    vec[(j + k) % m] += x * y
        return CycNumber(m, vec)

    __rmul__ = __mul__

    def inverse(self) -> CycNumber:
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        m = self.root_order
        a = _trim(list(self.canonical()))
        if not a:
            raise ZeroDivisionError("inverse of zero")
        phi = [Fraction(c) for c in cyclotomic_polynomial(m)]
        # invariant: s * a == r (mod phi)
        r0, r1 = phi, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is not invertible")
        c = r1[0]
        return CycNumber(m, [x / c for x in s1]).reduce()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycNumber(self.root_order, [c / other for c in self.coeffs])
        if isinstance(other, CycNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.rational(1, self.root_order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycNumber({self.render()})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Bit-exact canonical text.

        ``<num>/<den>`` when rational, otherwise
        ``(<num>/<den>) * [c_0, ..., c_{phi-1}] zeta:<m>`` with a positive
        content factored out of primitive integer coefficients.
        """
        q = self.as_rational()
        if q is not None:
            return f"{q.numerator}/{q.denominator}"
        canon = self.canonical()
        den = math.lcm(*(c.denominator for c in canon))
        ints = [int(c * den) for c in canon]
        g = _fold(math.gcd, (abs(v) for v in ints))
        content = Fraction(g, den)
        body = ", ".join(str(v // g) for v in ints)
        return f"({content.numerator}/{content.denominator}) * [{body}] zeta:{self.root_order}"

    def approx(self) -> str:
        """Decimal rendering with 12 significant digits, for humans only."""
        z = self.to_complex()
        re_s = _fmt(z.real)
        if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
            return re_s
        sign = "+" if z.imag >= 0 else "-"
        return f"{re_s}{sign}{_fmt(abs(z.imag))}i"


def _fmt(x: float) -> str:
    if abs(x) < 5e-13:
        x = 0.0
    s = f"{x:.12g}"
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(v) for v in out])


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(q), _trim(a[: len(b) - 1])


# functional surface
def root(m: int, e: int) -> CycNumber:
    return CycNumber.root(m, e)


def add(a: CycNumber, b: CycNumber) -> CycNumber:
    return a + b


def mul(a: CycNumber, b: CycNumber | Scalar) -> CycNumber:
    return a * b


def scalar_mul(q: Scalar, a: CycNumber) -> CycNumber:
    return a * Fraction(q)


def reduce(a: CycNumber) -> CycNumber:
    return a.reduce()


def as_rational(a: CycNumber) -> Fraction | None:
    return a.as_rational()


def rank(matrix: Sequence[Sequence[CycNumber]]) -> int:
    """Rank over Q(zeta) by Gaussian elimination.

    The pivot is the first nonzero entry in row-major order of the remaining
    block, which makes the elimination sequence deterministic.
    """
    rows = [[x.reduce() if isinstance(x, CycNumber) else CycNumber.rational(x) for x in row]
            for row in matrix]
    r = 0
    while r < len(rows):
        pivot = next(((i, c) for i in range(r, len(rows))
                      for c, x in enumerate(rows[i]) if not x.is_zero()), None)
        if pivot is None:
            break
        i, c = pivot
        rows[r], rows[i] = rows[i], rows[r]
        inv = rows[r][c].inverse()
        prow = [(x * inv).reduce() for x in rows[r]]
        rows[r] = prow
        support = [j for j, x in enumerate(prow) if not x.is_zero()]
        for k in range(r + 1, len(rows)):
            f = rows[k][c]
            if not f.is_zero():
                row = list(rows[k])
                for j in support:
                    row[j] = (row[j] - f * prow[j]).reduce()
                rows[k] = row
        r += 1
    return r
