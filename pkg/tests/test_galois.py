import functools

import numpy as np
import pytest

from hermcover.autgrp import generate_group
from hermcover.galois import (PointOnCurveError, cyclic_part, element_order, enumerate_outer_galois,
                              fiber_transitive, orbit_labels, pencil_stabilizer, plane_points, point_index,
                              to_csv, to_text, verify_generation, verify_projection_substitution)
from hermcover.gf import field

from conftest import curve, group, params


@functools.lru_cache(maxsize=None)
def scan(p, e, n):
    return enumerate_outer_galois(group(p, e, n), curve(p, e, n))


def test_plane_indexing_round_trip():
    F = field(3, 2)
    pts = plane_points(F)
    assert len(pts) == 81 + 9 + 1
    assert (point_index(F, pts) == np.arange(len(pts))).all()


def test_pencil_stabilizer_at_origin_direction():
    """At (1:0:0) the deck group is {(x, y) -> (lam x + beta, y)}: order 12 at q=2."""
    G, C = group(2, 1, 1), curve(2, 1, 1)
    P, F = params(2, 1, 1), C.field
    G_R = pencil_stabilizer(G, (1, 0, 0), C)
    assert G_R.order == 12 == C.degree
    from hermcover.poly import kernel_codes
    ker = set(kernel_codes(P.L))
    for g in G_R:
        z = F.inv(g.entries[8])
        e = tuple(F.mul(z, v) for v in g.entries)
        assert e[3:] == (0, 1, 0, 0, 0, 1) and e[2] in ker and F.pow(e[0], 3) == 1


def test_generic_point_is_not_galois():
    G, C = group(2, 1, 1), curve(2, 1, 1)
    for R in [(1, 5, 1), (3, 7, 1), (0, 0, 1)]:
        R = tuple(int(v) for v in R)
        if not C.contains(R):
            assert pencil_stabilizer(G, R, C).order < C.degree


def test_point_on_curve_rejected():
    C = curve(2, 1, 1)
    from hermcover.arcs import rational_point_set
    P = tuple(int(v) for v in rational_point_set(C)[0])
    with pytest.raises(PointOnCurveError):
        pencil_stabilizer(group(2, 1, 1), P, C)


@pytest.mark.parametrize("pen,count", [((2, 1, 1), 2), ((3, 1, 1), 6)])
def test_outer_galois_points(pen, count):
    s = scan(*pen)
    P = params(*pen)
    assert len(s.points) == count == s.expected_count
    assert s.holds
    for r in s.points:
        assert r.on_line_at_infinity and r.quad_rational and r.off_singular
        assert r.stabilizer_order == curve(*pen).degree
        assert r.cyclic_order == P.q + 1 and len(r.cyclic_fixed_points) == 2


def test_orbit_labels_consistent_with_scan():
    G = group(2, 1, 1)
    labels = orbit_labels(G)
    pts = plane_points(G.field)
    s = scan(2, 1, 1)
    idx = point_index(G.field, np.array([r.point for r in s.points]))
    # the Galois points form one orbit
    assert len(set(labels[idx].tolist())) == 1
    assert (labels[:len(pts)] <= np.arange(len(pts))).all()


def test_generation_q3():
    s = scan(3, 1, 1)
    assert verify_generation(group(3, 1, 1), s.points)


def test_generation_q2_is_half():
    """At q = 2 the Galois groups only generate an index-2 subgroup: the
    restriction to Z=0 of every deck group lands in the rotation subgroup C3
    of PGL(2, F_2) = S3."""
    s = scan(2, 1, 1)
    gens = {g.entries: g for r in s.points for g in r.stabilizer}
    H = generate_group([gens[k] for k in sorted(gens)])
    assert H.order == 144
    assert not verify_generation(group(2, 1, 1), s.points)


def test_cyclic_part_order():
    s = scan(3, 1, 1)
    g = cyclic_part(s.points[0].stabilizer, 3)
    assert element_order(g) == 4


@pytest.mark.parametrize("p", [2, 3])
def test_projection_substitution(p):
    P = params(p, 1, 1)
    F, q = P.field, P.q
    quad = sorted(P.tower.quad_to_big.image_set())
    good = [b for b in quad if F.add(F.pow(b, q + 1), 1)]
    assert all(verify_projection_substitution(P, b) for b in good)
    base = P.tower.base_to_big.image_set()
    # the literal variant with beta in place of beta^q holds only for beta in GF(q)
    for b in good:
        assert verify_projection_substitution(P, b, literal=True) == (b in base)
    with pytest.raises(ValueError):
        verify_projection_substitution(P, next(b for b in quad if not F.add(F.pow(b, q + 1), 1)))


def test_fiber_transitive_on_galois_lines():
    s = scan(2, 1, 1)
    C = curve(2, 1, 1)
    r = s.points[0]
    R = r.point
    F = C.field
    assert R[2] == 0
    for c in range(F.order):
        line = (R[1], F.neg(R[0]), c)  # through R for every c
        assert F.add(F.mul(line[0], R[0]), F.mul(line[1], R[1])) == 0
        assert fiber_transitive(r.stabilizer, C, R, line)


def test_report_formats():
    s = scan(2, 1, 1)
    assert to_csv(s).splitlines()[0] == "point,stabilizer_order,is_galois"
    assert len(to_csv(s).splitlines()) == 3
    assert to_text(s).startswith("outer Galois points: 2 (expected 2)")


def test_generation_q2_n2_is_half():
    G = group(2, 1, 2)
    s = enumerate_outer_galois(G, curve(2, 1, 2), with_cyclic=False)
    assert len(s.points) == 2 and G.order == 4608
    gens = {g.entries: g for r in s.points for g in r.stabilizer}
    assert generate_group([gens[k] for k in sorted(gens)]).order == 2304
