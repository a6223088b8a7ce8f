from fractions import Fraction
from itertools import combinations, permutations

import pytest

from fanforge.errors import DimensionDeficient, Empty, Unbounded
from fanforge.polyhedra import (
    Fan,
    HPolytope,
    VPolytope,
    fan_eq,
    fan_from_json,
    fan_to_json,
    normal_fan,
    p_h,
    parse_roff,
    strict_feasible,
    vertices,
    write_roff,
)


def pentagon_hpoly():
    # 0 <= x <= 2, 0 <= y <= 2, y - x <= 1
    rows = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)]
    return HPolytope(rows, (2, 2, 1, 0, 0))


def a2_fan():
    rays = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)]
    cones = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    return Fan(2, rays, cones)


def brute_2d_vertices(rows, bounds):
    """Independent oracle: intersect all pairs of boundary lines exactly,
    keep the feasible intersection points."""
    pts = set()
    for (a1, b1), (a2, b2) in combinations(zip(rows, bounds), 2):
        det = a1[0] * a2[1] - a1[1] * a2[0]
        if det == 0:
            continue
        x = Fraction(b1 * a2[1] - b2 * a1[1], det)
        y = Fraction(a1[0] * b2 - a2[0] * b1, det)
        if all(r[0] * x + r[1] * y <= c for r, c in zip(rows, bounds)):
            pts.add((x, y))
    return pts


PENTAGON_VERTICES = {(0, 0), (2, 0), (2, 2), (1, 2), (0, 1)}


def test_oracle_matches_frozen_pentagon():
    rows = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)]
    assert brute_2d_vertices(rows, (2, 2, 1, 0, 0)) == PENTAGON_VERTICES


def test_vertices_unit_square():
    p = HPolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], (1, 1, 1, 1))
    vp = vertices(p)
    assert set(vp.vertices) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert len(vp.vertices) == 4


def test_vertices_pentagon():
    vp = vertices(pentagon_hpoly())
    assert set(vp.vertices) == PENTAGON_VERTICES


def test_vertices_canonical_order_is_lexicographic():
    vp = vertices(pentagon_hpoly())
    assert list(vp.vertices) == sorted(vp.vertices)


def test_vertices_unbounded():
    with pytest.raises(Unbounded):
        vertices(HPolytope([(-1, 0), (0, -1)], (0, 0)))


def test_vertices_empty():
    with pytest.raises(Empty):
        vertices(HPolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], (-1, 0, 1, 1)))


def test_vertices_dimension_deficient():
    p = HPolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], (0, 0, 1, 0))
    with pytest.raises(DimensionDeficient):
        vertices(p)


def test_vertices_each_on_n_inequalities():
    p = pentagon_hpoly()
    vp = vertices(p)
    for v in vp.vertices:
        tight = sum(
            1
            for row, b in zip(p.ineq_matrix, p.bounds)
            if sum(r * x for r, x in zip(row, v)) == b
        )
        assert tight >= 2


def test_normal_fan_unit_square():
    vp = VPolytope([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    fan = normal_fan(vp)
    assert set(fan.rays) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(fan.maximal_cones) == 4
    fan.validate()


def test_normal_fan_pentagon():
    vp = vertices(pentagon_hpoly())
    fan = normal_fan(vp)
    assert set(fan.rays) == {(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)}
    assert len(fan.maximal_cones) == 5
    assert fan_eq(fan, a2_fan())


def test_normal_fan_simplex():
    vp = VPolytope([(0, 0), (1, 0), (0, 1)])
    fan = normal_fan(vp)
    assert fan.n_rays == 3
    assert len(fan.maximal_cones) == 3
    assert set(fan.rays) == {(-1, -1), (1, 0), (0, 1)} or set(fan.rays) == {
        (-1, 0),
        (0, -1),
        (1, 1),
    }
    fan.validate()


def test_p_h_pentagon():
    poly = p_h(a2_fan(), (2, 2, 1, 0, 0))
    assert set(vertices(poly).vertices) == PENTAGON_VERTICES


def test_p_h_zero_height_is_origin():
    poly = p_h(a2_fan(), (0, 0, 0, 0, 0))
    assert poly.contains((0, 0))
    eps = Fraction(1, 100)
    for direction in [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 1), (1, -1), (-1, -1)]:
        assert not poly.contains((eps * direction[0], eps * direction[1]))
    # DimensionDeficient rather than Unbounded: the recession cone is {0}
    with pytest.raises(DimensionDeficient):
        vertices(poly)


def test_p_h_a1_segment():
    fan = Fan(1, [(1,), (-1,)], [(0,), (1,)])
    poly = p_h(fan, (1, 1))
    assert set(vertices(poly).vertices) == {(-1,), (1,)}


def test_normal_fan_segment():
    fan = normal_fan(VPolytope([(0,), (1,)]))
    assert set(fan.rays) == {(1,), (-1,)}
    assert len(fan.maximal_cones) == 2


def test_roff_roundtrip_segment():
    vp = vertices(HPolytope([(1,), (-1,)], (1, 0)))
    from fanforge.polyhedra import roff_normal_fan

    verts, facets = parse_roff(write_roff(vp))
    fan = roff_normal_fan(verts, facets)
    assert fan.n_rays == 2


def test_p_h_length_check():
    with pytest.raises(ValueError):
        p_h(a2_fan(), (1, 1))


def test_fan_eq_reflexive():
    fan = a2_fan()
    assert fan_eq(fan, fan)


def test_fan_eq_realization_roundtrip():
    fan = a2_fan()
    assert fan_eq(fan, normal_fan(vertices(p_h(fan, (2, 2, 1, 0, 0)))))


def test_fan_eq_bad_height_loses_ray():
    fan = a2_fan()
    bad = normal_fan(vertices(p_h(fan, (2, 2, 3, 0, 0))))
    assert bad.n_rays < fan.n_rays
    assert not fan_eq(fan, bad)


def test_fan_eq_invariant_under_relabeling():
    fan = a2_fan()
    for perm in list(permutations(range(5)))[:24]:
        rays = [fan.rays[perm[i]] for i in range(5)]
        inv = {perm[i]: i for i in range(5)}
        cones = [tuple(sorted(inv[j] for j in cone)) for cone in fan.maximal_cones]
        relabeled = Fan(2, rays, cones)
        assert fan_eq(relabeled, fan)
        assert fan_eq(fan, relabeled)  # symmetric


def test_roundtrip_vertices_of_facet_hull():
    vp = vertices(pentagon_hpoly())
    from fanforge.polyhedra import facet_description

    normals, offsets, _ = facet_description(vp)
    again = vertices(HPolytope(normals, offsets))
    assert again.vertices == vp.vertices


def test_facet_normals_subset_of_fan_rays():
    fan = a2_fan()
    for h in [(2, 2, 1, 0, 0), (3, 3, 1, 1, 1), (2, 2, 3, 0, 0)]:
        nf = normal_fan(vertices(p_h(fan, h)))
        assert set(nf.rays) <= set(fan.rays)


def test_fan_rejects_duplicate_rays():
    with pytest.raises(ValueError):
        Fan(2, [(1, 0), (2, 0)], [(0, 1)])


def test_fan_rejects_rank_deficient_cone():
    with pytest.raises(ValueError):
        Fan(2, [(1, 0), (-1, 0), (0, 1)], [(0, 1), (1, 2)])


def test_fan_validate_detects_overlap():
    # two overlapping quadrant-like cones: {e1,e2} and {e1+e2-ish, e1}
    fan = Fan(2, [(1, 0), (0, 1), (1, 1), (0, -1), (-1, 0)], [(0, 1), (0, 2), (2, 3), (3, 4), (1, 4)])
    with pytest.raises(ValueError):
        fan.validate()


def test_fan_validate_detects_hole():
    fan = Fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        fan.validate()


def test_validate_quadrant_fan():
    fan = Fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert fan.validate()


def test_strict_feasible_basic():
    assert strict_feasible([[1, 0], [0, 1]])
    assert not strict_feasible([[1, 0], [-1, 0]])
    assert not strict_feasible([[1, 0], [-1, -1], [0, 1]])
    assert strict_feasible([])


def test_fan_json_roundtrip_deterministic():
    fan = a2_fan()
    text = fan_to_json(fan)
    assert fan_to_json(fan_from_json(text)) == text
    assert text == fan_to_json(a2_fan())


def test_roff_roundtrip():
    vp = vertices(pentagon_hpoly())
    text = write_roff(vp)
    verts, facets = parse_roff(text)
    assert set(verts) == PENTAGON_VERTICES
    assert len(facets) == 5
    assert write_roff(vp) == text
    assert "1/1" in text or "/" in text.splitlines()[2]
