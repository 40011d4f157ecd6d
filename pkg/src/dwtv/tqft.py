"""The triangulated TQFT: coloring spaces, cobordism matrices, cylinder projectors.

``V(S)`` has one basis vector per flat coloring of the surface ``S``. A
cobordism ``M`` with ``in`` boundary ``S`` and ``out`` boundary ``S'`` gives
the matrix with entry ``[c', c] = TV(M)(c, c')``, where the unnormalized
amplitude weighs interior vertices only,

    TV(M)(c, c') = |G|^(n0(boundary)) * Z_M(c, c')

and ``Z_M`` is the relative state sum counting every vertex. These matrices
compose up to the anomaly ``V(M) V(N) = |G|^n0(middle) V(M o N)``; the
normalizations ``i``, ``o`` and ``m`` divide by ``|G|`` to the power
``n0(in)``, ``n0(out)`` or their average.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
import numpy as np

from . import colorings
from .cocycles import Cochain3
from .complexes.builders import cylinder
from .complexes.core import SurfaceTriangulation, Triangulation, validate
from .cyclotomics import CycNumber, merged_order, rank, reduce_array
from .errors import InvalidComposition, InvalidInput, InvalidParameter
from .groups import FiniteGroup
from .statesum import _require_cocycle, coloring_exponents

NORMALIZATIONS = ("i", "o", "m", "none")


@dataclass(frozen=True, eq=False)
class ColoringSpace:
    surface: SurfaceTriangulation
    group: FiniteGroup
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.basis)

    def same_as(self, other: ColoringSpace) -> bool:
        return (self.group == other.group and self.surface.canonical() == other.surface.canonical()
                and np.array_equal(self.basis, other.basis))

    def index_of(self, rows: np.ndarray) -> np.ndarray:
        """Basis position of each coloring row (rows must be basis colorings)."""
        n = self.group.order
        weights = n ** np.arange(self.basis.shape[1] - 1, -1, -1, dtype=object)
        keys = {int(np.dot(b.astype(object), weights)): i for i, b in enumerate(self.basis)}
        return np.array([keys[int(np.dot(r.astype(object), weights))] for r in rows], dtype=np.int64)


def coloring_space(S: SurfaceTriangulation, G: FiniteGroup) -> ColoringSpace:
    problems = S.validate()
    if problems:
        raise InvalidInput("; ".join(problems))
    S = S.canonical()
    return ColoringSpace(S, G, colorings.enumerate_array(S, G))


@dataclass(frozen=True, eq=False)
class CobordismMatrix:
    """Matrix ``|G|^half * scale * sum_j coeffs[:, :, j] zeta_m^j``, rows indexed by
    codomain colorings ``c'`` and columns by domain colorings ``c``.

    ``coeffs`` is an integer array; ``half`` is nonzero only for normalization
    ``m`` with an odd boundary vertex total, where it stays symbolic.
    """

    domain: ColoringSpace
    codomain: ColoringSpace
    coeffs: np.ndarray
    scale: Fraction
    root_order: int
    normalization: str = "i"
    half: Fraction = Fraction(0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.codomain.dim, self.domain.dim

    @cached_property
    def _reduced(self):
        # exact canonical coefficients with the scale folded in, as Fractions
        red = reduce_array(self.coeffs, self.root_order)
        return red * self.scale

    @cached_property
    def entries(self) -> tuple[tuple[CycNumber, ...], ...]:
        m = self.root_order
        return tuple(tuple(CycNumber(m, row[b]) for b in range(self.shape[1]))
                     for row in self._reduced)

    def __eq__(self, other):
        if not isinstance(other, CobordismMatrix):
            return NotImplemented
        if self.shape != other.shape or self.half != other.half:
            return False
        m = merged_order(self.root_order, other.root_order)
        a, b = self.embedded(m), other.embedded(m)
        return bool(np.all(a._reduced == b._reduced))

    __hash__ = None

    def embedded(self, m: int) -> CobordismMatrix:
        if m == self.root_order:
            return self
        step = m // self.root_order
        coeffs = np.zeros(self.coeffs.shape[:2] + (m,), dtype=self.coeffs.dtype)
        coeffs[:, :, ::step] = self.coeffs
        return CobordismMatrix(self.domain, self.codomain, coeffs, self.scale, m,
                               self.normalization, self.half)

    def scaled(self, q) -> CobordismMatrix:
        return CobordismMatrix(self.domain, self.codomain, self.coeffs, self.scale * Fraction(q),
                               self.root_order, self.normalization, self.half)

    def is_identity(self) -> bool:
        if self.half or self.shape[0] != self.shape[1]:
            return False
        eye = np.zeros_like(self.coeffs)
        eye[np.arange(self.shape[0]), np.arange(self.shape[0]), 0] = 1
        ident = CobordismMatrix(self.domain, self.codomain, eye, Fraction(1), self.root_order)
        return self == ident

    def is_idempotent(self) -> bool:
        return compose(self, self) == self

    def rank(self) -> int:
        return rank(self.entries)

    def render(self) -> list[str]:
        return [" ".join(x.render() for x in row) for row in self.entries]


def _cyclic_matmul(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    """Product of matrices over Z[zeta_m] stored as (rows, cols, m) coefficient arrays."""
    bound = int(np.abs(A).max(initial=0)) * int(np.abs(B).max(initial=0)) * A.shape[1] * m
    dtype = np.int64 if bound < 2 ** 62 else object
    A, B = A.astype(dtype), B.astype(dtype)
    out = np.zeros((A.shape[0], B.shape[1], m), dtype=dtype)
    nz_a = [i for i in range(m) if A[:, :, i].any()]
    nz_b = [j for j in range(m) if B[:, :, j].any()]
    for i in nz_a:
        for j in nz_b:
            out[:, :, (i + j) % m] += A[:, :, i] @ B[:, :, j]
    return out


def _side_space(M: Triangulation, side: str, G: FiniteGroup):
    # an empty side is the empty surface, whose space is one-dimensional
    surface, edge_map = M.boundary_surface(side)
    space = coloring_space(surface, G)
    if space.surface != surface:
        raise InvalidInput(f"'{side}' boundary triangulation is not in canonical numbering")
    return space, np.asarray(edge_map, dtype=np.int64)


def cobordism_matrix(M: Triangulation, G: FiniteGroup, alpha: Cochain3,
                     normalization: str = "i", check: bool = True) -> CobordismMatrix:
    """All amplitudes of ``M`` at once: every coloring of ``M`` is enumerated
    once and bucketed by its restriction to the two boundary sides."""
    if normalization not in NORMALIZATIONS:
        raise InvalidParameter(f"normalization must be one of {', '.join(NORMALIZATIONS)}")
    unmarked = [fc for fc in M.unglued_faces if fc not in M.boundary]
    if unmarked:
        raise InvalidInput(f"unglued face {unmarked[0]} has no boundary mark")
    report = validate(M)
    if not report:
        raise InvalidInput(str(report))
    if check:
        _require_cocycle(alpha)
    dom, in_edges = _side_space(M, "in", G)
    cod, out_edges = _side_space(M, "out", G)
    cols = colorings.enumerate_array(M, G)
    exps = coloring_exponents(M, cols, alpha)
    i_in = dom.index_of(cols[:, in_edges]) if len(cols) else np.zeros(0, dtype=np.int64)
    i_out = cod.index_of(cols[:, out_edges]) if len(cols) else np.zeros(0, dtype=np.int64)
    m = alpha.root_order
    hist = np.zeros((cod.dim, dom.dim, m), dtype=np.int64)
    np.add.at(hist, (i_out, i_in, exps), 1)

    n0_bd = len(M.boundary_vertices())
    n_in, n_out = dom.surface.n0, cod.surface.n0
    # TV(M) = |G|^(n0(bd) - n0(M)) * sum; then the normalization factor
    exponent = Fraction(n0_bd - M.n0)
    exponent -= {"i": n_in, "o": n_out, "m": Fraction(n_in + n_out, 2), "none": 0}[normalization]
    whole = Fraction(exponent.numerator // exponent.denominator)
    half = exponent - whole
    scale = Fraction(G.order) ** int(whole)
    return CobordismMatrix(dom, cod, hist, scale, m, normalization, half)


def compose(Mmat: CobordismMatrix, Nmat: CobordismMatrix) -> CobordismMatrix:
    """The matrix of ``M o N`` (N first): the plain product ``Mmat @ Nmat``."""
    if not Nmat.codomain.same_as(Mmat.domain):
        raise InvalidComposition(
            f"codomain of the first map (dim {Nmat.codomain.dim}) is not the domain of the second "
            f"(dim {Mmat.domain.dim})")
    m = merged_order(Mmat.root_order, Nmat.root_order)
    A, B = Mmat.embedded(m), Nmat.embedded(m)
    coeffs = _cyclic_matmul(A.coeffs, B.coeffs, m)
    scale = A.scale * B.scale
    half = A.half + B.half
    if half.denominator == 1:
        scale *= Fraction(Mmat.domain.group.order) ** int(half)
        half = Fraction(0)
    return CobordismMatrix(Nmat.domain, Mmat.codomain, coeffs, scale, m, Mmat.normalization, half)

def cylinder_matrix(S: SurfaceTriangulation, G: FiniteGroup, alpha: Cochain3,
                    normalization: str = "i") -> CobordismMatrix:
    return cobordism_matrix(cylinder(S.canonical()), G, alpha, normalization)


def tqft_dim(S: SurfaceTriangulation, G: FiniteGroup, alpha: Cochain3) -> int:
    """Dimension of the image of the ``i``-normalized cylinder over ``S``."""
    return cylinder_matrix(S, G, alpha, "i").rank()

