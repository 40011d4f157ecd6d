from fractions import Fraction

import numpy as np
import pytest

from dwtv import cocycles, colorings, groups, tqft
from dwtv.complexes import (cylinder, genus_surface, glue, parse_surface_spec, sphere3,
                            sphere_surface, torus3, torus_surface)
from dwtv.errors import InvalidComposition, InvalidInput, InvalidParameter
from dwtv.statesum import dw_invariant

Z2, Z3, S3 = groups.cyclic(2), groups.cyclic(3), groups.symmetric(3)


def test_coloring_space_dimension():
    V = tqft.coloring_space(torus_surface(), S3)
    assert V.dim == 18 == colorings.hom_count(torus_surface(), S3)
    assert V.same_as(tqft.coloring_space(torus_surface(), S3))
    assert not V.same_as(tqft.coloring_space(torus_surface(), Z2))
    assert list(V.index_of(V.basis[::-1])) == list(range(V.dim))[::-1]


@pytest.mark.parametrize("spec, n", [("torus", 2), ("torus", 3), ("genus:2", 2)])
def test_cylinder_is_identity_on_single_vertex_surfaces(spec, n):
    # with one boundary vertex per side, the gauge sum is already divided out
    a = cocycles.zn_cocycle(n)
    P = tqft.cylinder_matrix(parse_surface_spec(spec), a.group, a)
    assert P.is_identity() and P.is_idempotent()


@pytest.mark.parametrize("spec, G, alpha", [
    ("torus:2", Z2, cocycles.zn_cocycle(2)), ("sphere", S3, cocycles.sn_cocycle(3)),
    ("torus", S3, cocycles.trivial_cocycle(S3))])
def test_cylinder_projector_is_idempotent(spec, G, alpha):
    P = tqft.cylinder_matrix(parse_surface_spec(spec), G, alpha)
    assert P.is_idempotent()


def test_sphere_space_is_one_dimensional():
    assert tqft.tqft_dim(sphere_surface(), S3, cocycles.sn_cocycle(3)) == 1


def test_rank_independent_of_triangulation():
    for n in (2, 3):
        a = cocycles.zn_cocycle(n)
        assert tqft.tqft_dim(torus_surface(1), a.group, a) == tqft.tqft_dim(torus_surface(2), a.group, a)


def test_anomaly_law_and_normalizations():
    C = cylinder(torus_surface(2))
    a = cocycles.trivial_cocycle(Z2)
    raw = tqft.cobordism_matrix(C, Z2, a, "none")
    glued = tqft.cobordism_matrix(glue(C, C), Z2, a, "none")
    n0_mid = torus_surface(2).n0
    assert tqft.compose(raw, raw) == glued.scaled(Z2.order ** n0_mid)
    # the i-normalization is a functor
    Vi = tqft.cobordism_matrix(C, Z2, a, "i")
    assert tqft.compose(Vi, Vi) == tqft.cobordism_matrix(glue(C, C), Z2, a, "i")
    assert Vi == tqft.cobordism_matrix(C, Z2, a, "o")
    assert raw == Vi.scaled(Z2.order ** n0_mid)


def test_half_integer_normalization_stays_symbolic():
    C = cylinder(torus_surface())
    a = cocycles.trivial_cocycle(Z2)
    M = tqft.cobordism_matrix(C, Z2, a, "m")
    assert M.half == Fraction(0)
    # two half-power tags combine into an integer power of |G|
    half = tqft.CobordismMatrix(M.domain, M.codomain, M.coeffs, M.scale, M.root_order, "m",
                                Fraction(1, 2))
    both = tqft.compose(half, half)
    assert both.half == 0 and both == tqft.compose(M, M).scaled(2)


def test_closed_complex_gives_one_by_one_invariant():
    a = cocycles.zn_cocycle(3)
    M = tqft.cobordism_matrix(torus3(), a.group, a)
    assert M.shape == (1, 1)
    assert M.entries[0][0] == dw_invariant(torus3(), a.group, a)
    M = tqft.cobordism_matrix(sphere3(), S3, cocycles.sn_cocycle(3))
    assert M.entries[0][0] == Fraction(1, 6)


def test_render_and_errors():
    a = cocycles.zn_cocycle(2)
    P = tqft.cylinder_matrix(torus_surface(), Z2, a)
    assert P.render()[0] == "1/1 0/1 0/1 0/1"
    assert P.rank() == 4
    Q = tqft.cylinder_matrix(sphere_surface(), Z2, a)
    with pytest.raises(InvalidComposition):
        tqft.compose(P, Q)
    with pytest.raises(InvalidParameter):
        tqft.cobordism_matrix(cylinder(torus_surface()), Z2, a, "x")
    C = cylinder(torus_surface())
    with pytest.raises(InvalidInput):
        tqft.cobordism_matrix(C.replace(boundary={}), Z2, a)
