import numpy as np
import pytest

from hermcover.arcs import rational_point_set
from hermcover.autgrp import (AutGroup, Collineation, GroupTooLarge, apply_all, explicit_element_list,
                              explicit_families, expected_group_order, fixes_line_at_infinity, generate_group,
                              matrix_inverse, orbit_stabilizer_checks, preserves_curve,
                              restriction_and_exact_sequence, tu_change, verify_group)
from hermcover.galois import _images

from conftest import curve, group, params, tu


def _point_set(C):
    return {tuple(r) for r in rational_point_set(C).tolist()}


def test_collineation_basics():
    F = params(2, 1, 1).field
    g = Collineation.from_matrix(F, [[2, 1, 0], [0, 3, 5], [0, 0, 1]])
    assert g @ g.inverse() == Collineation.identity(F)
    assert g.is_affine()
    P = (1, 4, 1)
    assert g.inverse().apply(g.apply(P)) == P
    scaled = Collineation.from_matrix(F, [[F.mul(7, v) for v in row] for row in g.rows()])
    assert scaled == g
    with pytest.raises(ValueError):
        Collineation.from_matrix(F, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])
    A, Ai = tu_change(params(2, 1, 1))
    assert matrix_inverse(F, Ai) == A or Collineation.from_matrix(F, matrix_inverse(F, Ai)) == \
        Collineation.from_matrix(F, A)


@pytest.mark.parametrize("pen,sizes,order", [
    ((2, 1, 1), {"a": 16, "b": 2, "c": 3, "d": 3}, 288),
    ((3, 1, 1), {"a": 81, "b": 3, "c": 8, "d": 4}, 7776),
])
def test_group_order_and_presentations(pen, sizes, order):
    P = params(*pen)
    fam = explicit_families(P)
    assert {k: len(v) for k, v in fam.items()} == sizes
    G = group(*pen)
    assert G.order == order == expected_group_order(P)
    assert G.is_closed()
    v = verify_group(P, G, curve(*pen))
    assert v.holds, v


def test_explicit_list_sizes():
    lst = explicit_element_list(params(2, 1, 1))
    assert (len(lst["i"]), len(lst["ii"])) == (0, 288)
    lst = explicit_element_list(params(3, 1, 1))
    assert (len(lst["i"]), len(lst["ii"])) == (5184, 2592)


@pytest.mark.parametrize("pen", [(2, 1, 1), (3, 1, 1)])
def test_elements_permute_rational_points(pen):
    C = curve(*pen)
    S = rational_point_set(C)
    target = _point_set(C)
    G = group(*pen)
    step = max(1, G.order // 200)
    for g in list(G)[::step]:
        img = _images(C.field, g.entries, S)
        assert {tuple(r) for r in img.tolist()} == target


def test_tu_model_group():
    P = params(3, 1, 1)
    A, Ai = tu_change(P)
    G_tu = group(3, 1, 1).conjugated(A, Ai)
    C = tu(3, 1, 1)
    for g in list(G_tu)[::97]:
        assert preserves_curve(g, C)
    fam = explicit_families(P, "tu")
    assert generate_group([g for k in "abcd" for g in fam[k]]).key_set() == G_tu.key_set()


@pytest.mark.parametrize("pen", [(2, 1, 1), (3, 1, 1)])
def test_random_matrices_do_not_preserve(pen):
    C = curve(*pen)
    F = C.field
    G = group(*pen)
    target = _point_set(C)
    S = rational_point_set(C)
    rng = np.random.default_rng(2024)
    tried = 0
    while tried < 100:
        m = rng.integers(0, F.order, 9).tolist()
        try:
            g = Collineation.from_matrix(F, m)
        except ValueError:
            continue
        tried += 1
        if g in G:
            continue
        assert not preserves_curve(g, C)
        img = {tuple(r) for r in _images(F, g.entries, S).tolist()}
        assert img != target


def test_line_at_infinity_fixed():
    assert fixes_line_at_infinity(group(2, 1, 1))
    assert fixes_line_at_infinity(group(3, 1, 1))


@pytest.mark.parametrize("pen,ker,img", [((2, 1, 1), 48, 6), ((3, 1, 1), 324, 24)])
def test_exact_sequence(pen, ker, img):
    r = restriction_and_exact_sequence(group(*pen), params(*pen))
    assert (r.kernel_order, r.image_order) == (ker, img)
    assert r.kernel_order * r.image_order == r.group_order
    assert r.translations_normal and r.trivial_intersection and r.full_product and r.image_in_quad
    assert r.holds, r.failures


@pytest.mark.parametrize("pen,orbit,stab", [((2, 1, 1), 3, 96), ((3, 1, 1), 4, 1944)])
def test_orbit_stabilizer(pen, orbit, stab):
    o = orbit_stabilizer_checks(group(*pen), params(*pen))
    assert (o.orbit_size, o.stabilizer_order) == (orbit, stab)
    assert o.holds


def test_orbit_of_affine_point():
    G = group(2, 1, 1)
    C = curve(2, 1, 1)
    P = tuple(int(v) for v in rational_point_set(C)[0])
    orb = {tuple(r) for r in apply_all(G, P).tolist()}
    assert orb <= _point_set(C)


def test_dump_load_round_trip(tmp_path):
    G = group(2, 1, 1)
    text = G.dump()
    assert len(text.splitlines()) == 288
    H = AutGroup.load(G.field, text)
    assert H.key_set() == G.key_set()
    path = tmp_path / "g.txt"
    G.save(path)
    assert AutGroup.load(G.field, path).keys == G.keys


def test_closure_bound():
    with pytest.raises(GroupTooLarge):
        generate_group(explicit_families(params(2, 1, 1))["a"] + explicit_families(params(2, 1, 1))["d"],
                       bound=10)
