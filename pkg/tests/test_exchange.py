import pytest

from fanforge.clusterfan import (
    Triangulation,
    all_triangulations,
    enumerate_fan,
    initial_seed,
    seed_from_triangulation,
)
from fanforge.exchange import (
    Diagonal,
    all_diagonals,
    relative_ar_meshes,
    verify_mutation_theorem,
)
from fanforge.linalg import primitive
from fanforge.typecone import type_cone


def fan_triangulation(polygon):
    return Triangulation(polygon, [(1, j) for j in range(3, polygon)])


def test_diagonal_validation():
    with pytest.raises(ValueError):
        Diagonal(1, 2, 6)
    with pytest.raises(ValueError):
        Diagonal(1, 6, 6)
    assert Diagonal(4, 1, 6).pair == (1, 4)


def test_diagonal_count():
    for m in (4, 5, 6, 7, 8):
        n = m - 3
        assert len(all_diagonals(m)) == n * (n + 3) // 2


def test_rotation_has_polygon_order():
    for m in (5, 6, 7):
        for d in all_diagonals(m):
            cur = d
            for _ in range(m):
                cur = cur.rotated()
            assert cur == d


def test_middles_never_contain_endpoints():
    for m in (5, 6, 7):
        for d in all_diagonals(m):
            from fanforge.exchange import _corner_cuts

            mids = _corner_cuts(d, m)
            assert 1 <= len(mids) <= 2
            assert d not in mids
            assert d.rotated() not in mids


def test_relative_meshes_a1():
    tri = fan_triangulation(4)
    meshes = relative_ar_meshes(tri)
    assert len(meshes) == 1
    (mesh,) = meshes
    assert mesh.middles == ()
    assert sorted(mesh.normal) == [1, 1]  # h_L + h_{tau L}, no middles


def test_relative_meshes_a2_match_type_cone_facets():
    tri = fan_triangulation(5)
    enum = enumerate_fan(seed_from_triangulation(tri), triangulation=tri)
    meshes = relative_ar_meshes(tri, enum)
    assert len(meshes) == 3
    normals = {primitive(m.normal) for m in meshes}
    facets = set(type_cone(enum.fan).facets)
    assert normals == facets


@pytest.mark.parametrize("polygon", [5, 6, 7])
def test_relative_meshes_match_facets_many_triangulations(polygon):
    for tri in all_triangulations(polygon)[:3]:
        enum = enumerate_fan(seed_from_triangulation(tri), triangulation=tri)
        meshes = relative_ar_meshes(tri, enum)
        n = polygon - 3
        assert len(meshes) == enum.fan.n_rays - n
        normals = {primitive(m.normal) for m in meshes}
        assert normals == set(type_cone(enum.fan).facets)


def test_excluded_meshes_end_at_initial_diagonals():
    tri = fan_triangulation(6)
    enum = enumerate_fan(seed_from_triangulation(tri), triangulation=tri)
    kept = relative_ar_meshes(tri, enum)
    kept_ends = {m.end.pair for m in kept}
    assert kept_ends.isdisjoint(set(tri.diagonals))


def test_verify_mutation_theorem_a2():
    enum = enumerate_fan(initial_seed([[0, 1], [-1, 0]]))
    report = verify_mutation_theorem(enum.fan, enum.graph)
    assert report["holds"]
    assert report["walls_checked"] == 5
    assert report["walls_with_unit_coefficients"] == 5
    assert len(enum.graph.nodes) == 5 and report["regular"] and report["connected"]


def test_verify_mutation_theorem_a3():
    enum = enumerate_fan(initial_seed([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]))
    report = verify_mutation_theorem(enum.fan, enum.graph)
    assert report["holds"]
    assert len(enum.graph.nodes) == 14
    assert report["uerp"]


def test_verify_mutation_theorem_a1():
    enum = enumerate_fan(initial_seed([[0]]))
    report = verify_mutation_theorem(enum.fan, enum.graph)
    assert report["holds"]
    assert report["walls_checked"] == 1
