"""Cluster-category shadow of mutation: relative Auslander-Reiten meshes of
polygon diagonals, and the fan-level assertions of the silting mutation
theorem.

In type A the indecomposables of the cluster category are the diagonals of
the (n+3)-gon and the translation acts by unit rotation. Equipping the
category with the relative structure of an initial triangulation drops
exactly the n almost-split triangles ending at initial diagonals; the
remaining N - n mesh relations must reproduce the type cone facets, which is
the package's independent cross-check of the realization pipeline.
"""

from dataclasses import dataclass

from .clusterfan import enumerate_fan, seed_from_triangulation
from .typecone import unique_exchange_check, wall_dependency, walls


@dataclass(frozen=True)
class Diagonal:
    """Chord of the convex m-gon between non-adjacent boundary vertices."""

    a: int
    b: int
    polygon_size: int

    def __init__(self, a, b, polygon_size):
        a, b = sorted((a, b))
        if not (1 <= a < b <= polygon_size):
            raise ValueError(f"endpoints {(a, b)} out of range")
        dist = min(b - a, polygon_size - (b - a))
        if dist < 2:
            raise ValueError(f"{(a, b)} joins adjacent boundary vertices")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "polygon_size", polygon_size)

    @property
    def pair(self):
        return (self.a, self.b)

    def rotated(self):
        """Unit rotation of both endpoints (the inverse translation)."""
        m = self.polygon_size
        return Diagonal(self.a % m + 1, self.b % m + 1, m)


def all_diagonals(polygon_size):
    return [
        Diagonal(a, b, polygon_size)
        for a in range(1, polygon_size + 1)
        for b in range(a + 2, polygon_size + 1)
        if not (a == 1 and b == polygon_size)
    ]


@dataclass(frozen=True)
class RelativeMesh:
    """Almost-split configuration start -> middles -> end in the cluster
    category, with end the rotation of start. The mesh is excluded exactly
    when it is dropped by the relative structure, i.e. when its end is an
    initial diagonal; the normal is the inequality functional over the fan's
    ray coordinates (None for excluded meshes)."""

    start: Diagonal
    middles: tuple
    end: Diagonal
    excluded: bool
    normal: tuple = None


def _corner_cuts(start, polygon_size):
    """The one or two middle diagonals of the mesh from start to rotated."""
    m = polygon_size
    a, b = start.pair
    cuts = []
    for pair in ((a % m + 1, b), (a, b % m + 1)):
        lo, hi = sorted(pair)
        dist = min(hi - lo, m - (hi - lo))
        if dist >= 2:
            cuts.append(Diagonal(lo, hi, m))
    return tuple(sorted(cuts, key=lambda d: d.pair))


def relative_ar_meshes(tri, enumeration=None):
    """Non-excluded relative AR meshes of the triangulation, with their
    inequality normals over the g-vector fan rays.

    The diagonal -> ray dictionary comes from the tracked fan enumeration
    started at the triangulation's seed; pass the enumeration in when it has
    already been computed.
    """
    if enumeration is None:
        enumeration = enumerate_fan(seed_from_triangulation(tri), triangulation=tri)
    diag_ray = enumeration.diagonal_rays
    fan = enumeration.fan
    ray_index = {ray: i for i, ray in enumerate(fan.rays)}
    m = tri.polygon_size
    n = m - 3
    initial = set(tri.diagonals)
    meshes = []
    excluded_count = 0
    for start in all_diagonals(m):
        end = start.rotated()
        middles = _corner_cuts(start, m)
        excluded = end.pair in initial
        if excluded:
            excluded_count += 1
            meshes.append(RelativeMesh(start, middles, end, True))
            continue
        normal = [0] * fan.n_rays
        normal[ray_index[diag_ray[start.pair]]] += 1
        normal[ray_index[diag_ray[end.pair]]] += 1
        for mid in middles:
            normal[ray_index[diag_ray[mid.pair]]] -= 1
        meshes.append(RelativeMesh(start, middles, end, False, tuple(normal)))
    total = len(meshes)
    assert total == fan.n_rays, "one mesh per diagonal expected"
    assert excluded_count == n, "the relative structure drops exactly n meshes"
    return [mesh for mesh in meshes if not mesh.excluded]


def verify_mutation_theorem(fan, graph):
    """Fan-level report of the silting mutation theorem.

    Checks (i) every wall borders exactly two maximal cones (unique
    complement), (ii) the exchange graph is n-regular and connected, and
    (iii) each wall dependency with alpha = alpha' = 1 is an exact integer
    exchange relation whose middle terms are supported on the shared rays.
    """
    unique_complement = all(
        len(cones) == 2 for cones in fan.wall_subsets().values()
    )
    regular = graph.is_regular(fan.dim)
    connected = graph.is_connected()
    wall_list = walls(fan)
    unit_walls = 0
    integral = True
    for w in wall_list:
        dep = wall_dependency(fan, w)
        if dep.alpha == 1 and dep.alpha_prime == 1:
            unit_walls += 1
            r, r2 = fan.rays[w.exchanged[0]], fan.rays[w.exchanged[1]]
            combo = [
                sum(dep.middle_coeffs[s] * fan.rays[s][i] for s in w.shared)
                for i in range(fan.dim)
            ]
            if [x + y for x, y in zip(r, r2)] != combo:
                integral = False
    report = {
        "unique_complement": unique_complement,
        "regular": regular,
        "connected": connected,
        "exchange_relations_integral": integral,
        "walls_checked": len(wall_list),
        "walls_with_unit_coefficients": unit_walls,
        "uerp": unique_exchange_check(fan, wall_list)["holds"],
    }
    report["holds"] = (
        unique_complement and regular and connected and integral
    )
    return report
