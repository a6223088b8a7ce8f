"""Walls, normalized linear dependencies, and McMullen type cones.

The type cone lives in R^N and has an n-dimensional lineality space (the
span of the ray-matrix columns), so facet extraction works in the quotient:
coordinates are reduced through a basis of the left kernel of G, the extreme
rays of the reduced cone are computed exactly by incremental double
description, and every facet is certified by an explicit point satisfying
all other inequalities strictly and its own with equality.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateWall,
    InconsistentSystem,
    NonPositiveParameter,
    NotSimplicial,
)
from .linalg import dot, kernel_basis, primitive, rank, scale_rows_int, solve, transpose
from .polyhedra import p_h


@dataclass(frozen=True)
class Wall:
    """Adjacent pair of maximal cones sharing n-1 rays."""

    cone_a: int
    cone_b: int
    shared: tuple
    exchanged: tuple  # (ray in cone_a only, ray in cone_b only)


@dataclass(frozen=True)
class LinearDependency:
    """alpha*r + alpha_prime*r' = sum alpha_i s_i with alpha + alpha_prime = 2
    and both positive; middle_coeffs maps shared ray index -> alpha_i."""

    wall: Wall
    alpha: Fraction
    alpha_prime: Fraction
    middle_coeffs: dict


def walls(fan):
    """All walls of the fan in canonical order (by cone index pair)."""
    out = []
    for (a, b) in _adjacent_pairs(fan):
        cone_a, cone_b = fan.maximal_cones[a], fan.maximal_cones[b]
        shared = tuple(sorted(set(cone_a) & set(cone_b)))
        r = next(i for i in cone_a if i not in shared)
        r2 = next(i for i in cone_b if i not in shared)
        out.append(Wall(a, b, shared, (r, r2)))
    return out


def _adjacent_pairs(fan):
    seen = set()
    incidence = fan.wall_subsets()
    for _sub, cones in sorted(incidence.items()):
        for i in range(len(cones)):
            for j in range(i + 1, len(cones)):
                seen.add((cones[i], cones[j]))
    return sorted(seen)


def wall_dependency(fan, wall):
    """The unique linear dependency across a wall, scaled to alpha+alpha'=2."""
    cols = [wall.exchanged[0], wall.exchanged[1], *wall.shared]
    matrix = [[fan.rays[c][i] for c in cols] for i in range(fan.dim)]
    kernel = kernel_basis(matrix)
    if len(kernel) != 1:
        raise DegenerateWall(
            f"wall {wall.exchanged} has kernel dimension {len(kernel)}"
        )
    vec = kernel[0]
    alpha, alpha_prime = vec[0], vec[1]
    if alpha == 0 or alpha_prime == 0 or (alpha > 0) != (alpha_prime > 0):
        raise DegenerateWall(
            f"exchanged rays of wall {wall.exchanged} are not on opposite sides"
        )
    scale = 2 / (alpha + alpha_prime)
    vec = [x * scale for x in vec]
    middles = {s: -vec[2 + i] for i, s in enumerate(wall.shared)}
    return LinearDependency(wall, vec[0], vec[1], middles)


def dependency_vector(fan, dep):
    """Dependency as a functional on all N rays: alpha at r, alpha' at r',
    -alpha_i at the shared rays, zero elsewhere. This is also the raw type
    cone inequality normal of the wall."""
    vec = [Fraction(0)] * fan.n_rays
    vec[dep.wall.exchanged[0]] = Fraction(dep.alpha)
    vec[dep.wall.exchanged[1]] = Fraction(dep.alpha_prime)
    for s, coeff in dep.middle_coeffs.items():
        vec[s] = -Fraction(coeff)
    return tuple(vec)


def unique_exchange_check(fan, wall_list=None, dependencies=None):
    """Group walls by exchanged ray pair and compare the full normalized
    dependency vectors (the strictest reading). The weaker reading, equality
    only on the walls' common supports, is reported alongside whenever the
    two disagree."""
    if wall_list is None:
        wall_list = walls(fan)
    if dependencies is None:
        dependencies = [wall_dependency(fan, w) for w in wall_list]
    groups = {}
    for dep in dependencies:
        key = tuple(sorted(dep.wall.exchanged))
        groups.setdefault(key, []).append(dep)
    violations = []
    weak_disagrees = False
    for key in sorted(groups):
        deps = groups[key]
        vectors = [dependency_vector(fan, d) for d in deps]
        if len(set(vectors)) == 1:
            continue
        weak_ok = True
        for i in range(len(deps)):
            for j in range(i + 1, len(deps)):
                support = set(key)
                support |= set(deps[i].wall.shared) & set(deps[j].wall.shared)
                if any(vectors[i][s] != vectors[j][s] for s in support):
                    weak_ok = False
        if weak_ok:
            weak_disagrees = True
        violations.append(
            {
                "exchanged": key,
                "wall_count": len(deps),
                "distinct_dependencies": len(set(vectors)),
                "walls": [(d.wall.cone_a, d.wall.cone_b) for d in deps],
                "vectors": [[str(x) for x in v] for v in sorted(set(vectors))],
                "weak_reading_agrees": weak_ok,
            }
        )
    return {
        "holds": not violations,
        "violations": violations,
        "weak_vs_strict_disagreement": weak_disagrees,
    }


@dataclass(frozen=True)
class TypeCone:
    """Inequality description of the cone of admissible height vectors.

    The normals are stored closed; the cone itself is open (``open`` flag),
    so membership defaults to strict comparison."""

    n_rays: int
    wall_list: tuple
    raw_inequalities: tuple  # one rational N-vector per wall
    facets: tuple  # primitive integer N-vectors, irredundant, sorted
    k_matrix: tuple  # facets as rows
    facet_certificates: tuple  # reduced-space point certifying each facet
    open: bool = True

    @property
    def n_facets(self):
        return len(self.facets)

    def is_simplicial(self, dim):
        return self.n_facets == self.n_rays - dim

    def contains(self, h, strict=None):
        """Membership of a height vector; strict comparison by default
        because the cone is open."""
        if strict is None:
            strict = self.open
        values = [dot(f, h) for f in self.facets]
        if strict:
            return all(v > 0 for v in values)
        return all(v >= 0 for v in values)

    def to_json(self):
        payload = {
            "N": self.n_rays,
            "walls": [
                {
                    "cones": [w.cone_a, w.cone_b],
                    "shared": list(w.shared),
                    "exchanged": list(w.exchanged),
                }
                for w in self.wall_list
            ],
            "facets": [list(f) for f in self.facets],
            "K": [list(f) for f in self.k_matrix],
        }
        return json.dumps(payload, separators=(",", ":"))


def type_cone(fan, threads=1):
    """Type cone of a complete simplicial fan.

    Raw inequalities come from all wall dependencies; deduplication uses
    primitive normalization with positive scaling only (sign is meaningful);
    irredundancy is certified facet by facet in the quotient by the
    lineality space. Per-wall dependencies are independent, so they may be
    computed in parallel; outputs are canonically ordered either way.
    """
    wall_list = walls(fan)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            deps = list(pool.map(lambda w: wall_dependency(fan, w), wall_list))
    else:
        deps = [wall_dependency(fan, w) for w in wall_list]
    raw = [dependency_vector(fan, d) for d in deps]
    for vec in raw:
        g = fan.ray_matrix()
        if any(sum(vec[i] * g[i][j] for i in range(fan.n_rays)) != 0 for j in range(fan.dim)):
            raise InconsistentSystem("dependency normal does not annihilate the ray matrix")
    dedup = []
    seen = set()
    for vec in raw:
        p = primitive(vec)
        if p not in seen:
            seen.add(p)
            dedup.append(p)
    reducer = _lineality_reducer(fan)
    reduced = [tuple(dot(row, vec) for row in reducer) for vec in dedup]
    d = len(reducer)
    if rank([list(r) for r in reduced]) != d:
        raise InconsistentSystem(
            "wall inequalities do not span the quotient by the lineality space"
        )
    extreme = _extreme_rays_dd(reduced, d)
    facets = []
    certificates = []
    for idx, rvec in enumerate(reduced):
        tight = [z for z in extreme if dot(rvec, z) == 0]
        if rank([list(z) for z in tight]) != d - 1:
            continue
        cert = tuple(sum(z[i] for z in tight) for i in range(d))
        for jdx, other in enumerate(reduced):
            val = dot(other, cert)
            if jdx == idx:
                if val != 0:
                    raise InconsistentSystem("facet certificate fails its own equality")
            elif val <= 0:
                raise InconsistentSystem(
                    "facet certificate not strictly interior to the other inequalities"
                )
        facets.append(dedup[idx])
        certificates.append(cert)
    order = sorted(range(len(facets)), key=lambda i: facets[i])
    facets = tuple(facets[i] for i in order)
    certificates = tuple(certificates[i] for i in order)
    return TypeCone(
        fan.n_rays,
        tuple(wall_list),
        tuple(raw),
        facets,
        facets,
        certificates,
    )


def _lineality_reducer(fan):
    """Integer basis of the left kernel of the ray matrix G, as rows. The
    type cone inequalities live in this (N-n)-dimensional quotient."""
    g = fan.ray_matrix()
    basis = kernel_basis(transpose(g))
    if len(basis) != fan.n_rays - fan.dim:
        raise InconsistentSystem("ray matrix does not have full column rank")
    return scale_rows_int([list(b) for b in basis])


def _extreme_rays_dd(constraints, d):
    """Extreme rays of {z in R^d : constraints . z >= 0} by incremental
    double description. Requires the constraint matrix to have rank d
    (pointed cone); constraints and rays are integer tuples."""
    m = len(constraints)
    init = []
    for i in range(m):
        if rank([list(constraints[j]) for j in init + [i]]) > len(init):
            init.append(i)
        if len(init) == d:
            break
    rest = [i for i in range(m) if i not in init]
    a0 = [list(constraints[i]) for i in init]
    rays = []
    for j in range(d):
        e_j = [Fraction(1 if i == j else 0) for i in range(d)]
        col = solve(a0, e_j)
        ray = primitive(col)
        tight = frozenset(init) - {init[j]}
        rays.append((ray, tight))
    for ci in rest:
        a = constraints[ci]
        plus, zero, minus = [], [], []
        for ray, tight in rays:
            v = dot(a, ray)
            if v > 0:
                plus.append((ray, tight, v))
            elif v == 0:
                zero.append((ray, tight | {ci}))
            else:
                minus.append((ray, tight, v))
        if not minus:
            rays = [(r, t) for r, t, _v in plus] + zero
            continue
        new = []
        current_tights = [t for _r, t in rays]
        for rp, tp, vp in plus:
            for rm, tm, vm in minus:
                common = tp & tm
                adjacent = not any(
                    common <= t for t in current_tights if t not in (tp, tm)
                )
                if not adjacent:
                    continue
                combo = tuple(vp * y - vm * x for x, y in zip(rp, rm))
                new.append((primitive(combo), common | {ci}))
        rays = [(r, t) for r, t, _v in plus] + zero + new
    for ray, _tight in rays:
        if any(dot(c, ray) < 0 for c in constraints):
            raise InconsistentSystem("double description produced an infeasible ray")
    return sorted({r for r, _t in rays})


@dataclass(frozen=True)
class SlackCertificate:
    """Witnesses Q_c = {q : Kq = c, q >= 0} ~ P_h via q = h - Gx: the map
    preserves the K-fibers (KG = 0, Kh = c) and q >= 0 <=> Gx <= h."""

    h: tuple
    c: tuple
    k_matrix: tuple
    ray_matrix: tuple

    def slack(self, x):
        """Nonnegative slack coordinates of a point of P_h."""
        return tuple(
            hi - dot(g_row, x) for hi, g_row in zip(self.h, self.ray_matrix)
        )

    def check(self):
        for k_row in self.k_matrix:
            for j in range(len(self.ray_matrix[0])):
                if sum(k_row[i] * self.ray_matrix[i][j] for i in range(len(k_row))) != 0:
                    raise InconsistentSystem("K G != 0")
        kh = [dot(k_row, self.h) for k_row in self.k_matrix]
        if list(kh) != [Fraction(x) for x in self.c]:
            raise InconsistentSystem("K h != c")
        return True


def qc_polytope(fan, tc, c):
    """Realize the fan as Q_c: solve Kh = c exactly and return P_h together
    with the slack embedding x -> h - Gx."""
    expected = fan.n_rays - fan.dim
    if tc.n_facets != expected:
        raise NotSimplicial(
            f"type cone has {tc.n_facets} facets, expected N - n = {expected}"
        )
    k_rows = [list(f) for f in tc.k_matrix]
    if rank(k_rows) != expected:
        raise InconsistentSystem("facet matrix K is rank deficient")
    c = [Fraction(x) for x in c]
    if len(c) != expected:
        raise ValueError(f"need one parameter per facet ({expected})")
    if any(x <= 0 for x in c):
        raise NonPositiveParameter("all parameters must be strictly positive")
    h = solve(k_rows, c)
    if h is None:
        raise InconsistentSystem("Kh = c is not solvable")
    cert = SlackCertificate(tuple(h), tuple(c), tc.k_matrix, tuple(map(tuple, fan.ray_matrix())))
    cert.check()
    return p_h(fan, h), cert
