import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from dwtv.complexes import (EDGE_PAIRS, FACE_CORNERS, SurfaceTriangulation, Triangulation,
                            cylinder, disjoint_union, from_ordered_simplices, genus_surface, glue,
                            pachner_14, pachner_23, parse_complex_spec, parse_surface_spec,
                            random_move, read_triangulation, relabel, sigma_cross_s1, sphere3,
                            sphere_surface, surface_cross_s1, torus3, torus_surface, validate,
                            write_triangulation)
from dwtv.complexes.moves import _perm_sign
from dwtv.errors import InvalidInput, InvalidParameter, MoveInapplicable, MoveRejected

CLOSED = {"sphere3": sphere3, "torus3": torus3, "sigma1": lambda: sigma_cross_s1(1),
          "sigma2": lambda: sigma_cross_s1(2)}


def _betti1_mod2(T):
    """First Betti number over Z/2 from the 2-skeleton, by Gaussian elimination."""
    skel = T.skeleton
    rows = []
    for a, b, c in skel.triangles:
        v = 0
        for e in (a, b, c):
            v ^= 1 << e
        rows.append(v)
    rank2 = _rank_gf2(rows)
    d1 = []
    for u, w in skel.edge_ends:
        d1.append(0 if u == w else (1 << u) | (1 << w))
    rank1 = _rank_gf2(d1)
    return skel.n_edges - rank1 - rank2


def _rank_gf2(vectors):
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


@pytest.mark.parametrize("name, shape", [
    ("sphere3", (5, 5, 10, 10)), ("torus3", (6, 1, 7, 12)),
    ("sigma1", (6, 1, 7, 12)), ("sigma2", (18, 1, 19, 36))])
def test_builders_validate(name, shape):
    T = CLOSED[name]()
    report = validate(T)
    assert report, str(report)
    assert (T.tet_count, T.n0, T.edge_count, T.face_count) == shape
    assert report.euler_characteristic == 0
    assert str(report).startswith("pass (tets=")


@pytest.mark.parametrize("name, betti", [("sphere3", 0), ("torus3", 3), ("sigma1", 3), ("sigma2", 5)])
def test_first_homology_rank(name, betti):
    assert _betti1_mod2(CLOSED[name]()) == betti


def test_orientation_parity_holds_on_builders():
    for make in CLOSED.values():
        T = make()
        for (t, f), (t2, f2) in T.gluings:
            assert T.eps[t] * T.eps[t2] == (-1) ** (f + f2 + 1)


def test_validate_reports_flipped_sign():
    T = torus3()
    bad = T.replace(eps=(-T.eps[0],) + T.eps[1:])
    report = validate(bad)
    assert not report and "orientation mismatch" in str(report)


def test_validate_reports_structural_errors():
    T = sphere3()
    assert "glued twice" in str(validate(T.replace(gluings=list(T.gluings) + [((0, 0), (1, 1))])))
    assert "no boundary marks" in str(validate(T.replace(gluings=T.gluings[1:])))
    assert "eps must list" in str(validate(T.replace(eps=(1, 1))))


@pytest.mark.parametrize("spec, n0, chi, edges", [
    ("torus", 1, 0, 3), ("torus:2", 4, 0, 12), ("genus:2", 1, -2, 9), ("genus:3", 1, -4, 15),
    ("sphere", 4, 2, 6)])
def test_surfaces(spec, n0, chi, edges):
    S = parse_surface_spec(spec)
    assert S.validate() == []
    assert (S.n0, S.euler_characteristic, S.edge_count) == (n0, chi, edges)
    assert S.orientation is not None
    assert S.canonical() == S


def test_non_orientable_surface_rejected():
    # Klein bottle from one square: a b a^-1 b with a diagonal
    klein = SurfaceTriangulation([(0, 1, 2), (1, 0, 2)])
    assert klein.validate() == []
    mobius_like = SurfaceTriangulation([(0, 1, 2), (0, 2, 1)])
    assert "not orientable" in " ".join(mobius_like.validate())
    open_surface = SurfaceTriangulation([(0, 1, 2)])
    assert open_surface.validate()


@pytest.mark.parametrize("spec", ["torus", "torus:2", "genus:2", "sphere"])
def test_cylinder_boundary_reproduces_surface(spec):
    S = parse_surface_spec(spec)
    C = cylinder(S)
    assert validate(C)
    assert C.boundary_labels == ["0", "1"]
    for side in ("in", "out"):
        surf, edge_map = C.boundary_surface(side)
        assert surf == S
        assert len(set(edge_map)) == S.edge_count
    assert len(C.boundary_vertices()) == 2 * S.n0
    assert C.n0 == 2 * S.n0


def test_surface_cross_s1_is_closed():
    T = surface_cross_s1(torus_surface(2))
    assert validate(T) and T.closed


def test_glue_and_disjoint_union():
    C = cylinder(torus_surface())
    CC = glue(C, C)
    assert validate(CC)
    assert CC.tet_count == 2 * C.tet_count
    assert CC.boundary_surface("in")[0] == CC.boundary_surface("out")[0] == torus_surface()
    U = disjoint_union(sphere3(), torus3())
    assert validate(U) and U.n0 == 6 and U.edge_count == 17
    with pytest.raises(InvalidInput):
        glue(cylinder(sphere_surface()), C)


def test_from_ordered_simplices_sphere():
    T = from_ordered_simplices(itertools.combinations(range(5), 4))
    assert validate(T)
    assert (T.tet_count, T.n0, T.edge_count) == (5, 5, 10)
    with pytest.raises(InvalidInput):
        from_ordered_simplices([(0, 0, 1, 2)])


def test_parse_specs():
    assert parse_complex_spec("sigma:1") == sigma_cross_s1(1)
    assert parse_complex_spec("cylinder:torus") == cylinder(torus_surface())
    with pytest.raises(InvalidParameter):
        parse_complex_spec("lens:5")
    with pytest.raises(InvalidParameter):
        parse_surface_spec("klein")


# moves
def test_pachner_14_counts():
    T = pachner_14(sphere3(), 2)
    assert validate(T)
    assert (T.tet_count, T.n0, T.edge_count) == (8, 6, 14)


def test_pachner_23_counts():
    T = sphere3()
    face = next(a for a, b in T.gluings if a[0] != b[0])
    U = pachner_23(T, face)
    assert validate(U)
    assert (U.tet_count, U.n0, U.edge_count) == (6, 5, 11)


def test_pachner_23_inapplicable_on_self_glued_face():
    T = torus3()
    self_glued = [a for a, b in T.gluings if a[0] == b[0]]
    if self_glued:
        with pytest.raises((MoveInapplicable, MoveRejected)):
            pachner_23(T, self_glued[0])
    with pytest.raises((MoveInapplicable, MoveRejected, InvalidParameter)):
        pachner_23(cylinder(torus_surface()), cylinder(torus_surface()).unglued_faces[0])


def test_relabel_reverse_and_order():
    T = sphere3()
    U = relabel(T, vertex_order=[4, 3, 2, 1, 0])
    assert validate(U) and U.edge_count == 10
    everything = range(T.edge_count)
    assert relabel(relabel(T, reverse_edges=everything), reverse_edges=everything) == T
    with pytest.raises(MoveRejected):
        relabel(torus3(), vertex_order=[0])
    assert relabel(T, reverse_edges=[]) == T


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["sphere3", "torus3"]))
def test_random_moves_keep_complex_valid(seed, name):
    rng = random.Random(seed)
    T = CLOSED[name]()
    betti = _betti1_mod2(T)
    stars = 0
    for _ in range(4):
        kinds = ("14", "23", "relabel") if stars < 1 else ("23", "relabel")
        T, desc = random_move(T, rng, kinds)
        stars += desc.startswith("1-4")
        assert validate(T), desc
        assert _betti1_mod2(T) == betti


def test_random_move_is_seeded():
    a = random_move(torus3(), random.Random(3))
    b = random_move(torus3(), random.Random(3))
    assert a[1] == b[1] and a[0] == b[0]


# file format
@pytest.mark.parametrize("make", [sphere3, torus3, lambda: cylinder(torus_surface()),
                                  lambda: pachner_14(torus3(), 0)])
def test_io_round_trip(make):
    T = make()
    assert read_triangulation(write_triangulation(T)) == T


def _scrambled_text(T, rng):
    perms = []
    for _ in range(T.tet_count):
        p = list(range(4))
        rng.shuffle(p)
        perms.append(p)
    lines = ["format dwtv-tri 1", f"tets {T.tet_count}",
             "eps " + " ".join(str(T.eps[t] * _perm_sign(perms[t])) for t in range(T.tet_count))]
    for (t, f), (t2, f2) in T.gluings:
        if rng.random() < 0.5:
            (t, f), (t2, f2) = (t2, f2), (t, f)
        p, p2 = perms[t], perms[t2]
        inv = {p[c]: c for c in range(4)}
        corr = []
        for x in FACE_CORNERS[p[f]]:
            c = inv[x]
            c2 = FACE_CORNERS[f2][FACE_CORNERS[f].index(c)]
            corr.append(p2[c2])
        lines.append(f"gluing {t} {p[f]} {t2} {p2[f2]} " + " ".join(map(str, corr)))
    for e, (t, i, j) in enumerate(T.edge_reps):
        lines.append(f"branch {e} {t} {perms[t][i]} {perms[t][j]}   # edge class {e}")
    for (t, f), (label, side) in T.boundary.items():
        lines.append(f"boundary {label} {side} {t} {perms[t][f]}")
    rng.shuffle(lines[3:])
    return "\n".join(lines) + "\n"


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["sphere3", "torus3", "cyl"]))
def test_io_accepts_scrambled_corners(seed, name):
    T = cylinder(torus_surface()) if name == "cyl" else CLOSED[name]()
    assert read_triangulation(_scrambled_text(T, random.Random(seed))) == T


def test_io_errors():
    with pytest.raises(InvalidInput):
        read_triangulation("tets 1\n")
    with pytest.raises(InvalidInput):
        read_triangulation("format dwtv-tri 1\ntets 1\neps 1 1\n")
    with pytest.raises(InvalidInput):
        read_triangulation("format dwtv-tri 1\ntets 2\ngluing 0 0 1 0 0 1 2\n")
    with pytest.raises(InvalidInput):
        read_triangulation("format dwtv-tri 1\ntets 1\nfoo 1\n")
