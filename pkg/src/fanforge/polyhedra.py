"""Exact polyhedral primitives: fans, H/V-polytopes, normal fans.

Everything is computed over exact rationals; tolerance is identically zero.
Vertex enumeration is a brute-force scan over n-subsets of inequality rows,
which is the right tool at the scale this package targets (N <= ~25 rays,
dimension <= 8).
"""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import DimensionDeficient, Empty, Unbounded
from .linalg import (
    det_int,
    dot,
    kernel_basis,
    primitive,
    rank,
    rref,
    scale_rows_int,
    solve,
    solve_cramer_int,
)


class Fan:
    """Complete simplicial fan: primitive integer rays plus maximal cones
    given as sorted ray-index tuples of size n.

    Construction performs the cheap structural checks (primitive distinct
    rays, simplicial cones). The heavier certificates (wall condition,
    pairwise common-face, probe completeness) live in :meth:`validate`.
    """

    def __init__(self, dim, rays, maximal_cones, labels=None):
        if dim < 1:
            raise ValueError("ambient dimension must be positive")
        self.dim = dim
        norm_rays = []
        for ray in rays:
            if len(ray) != dim:
                raise ValueError("ray length != dim")
            p = primitive(ray)
            if all(x == 0 for x in p):
                raise ValueError("zero ray")
            norm_rays.append(p)
        if len(set(norm_rays)) != len(norm_rays):
            raise ValueError("rays not pairwise distinct after normalization")
        self.rays = tuple(norm_rays)
        cones = sorted({tuple(sorted(c)) for c in maximal_cones})
        for cone in cones:
            if len(cone) != dim:
                raise ValueError("maximal cone must have exactly dim rays")
            if cone[0] < 0 or cone[-1] >= len(self.rays):
                raise ValueError("cone ray index out of range")
            if det_int([list(self.rays[i]) for i in cone]) == 0:
                raise ValueError("maximal cone is not simplicial (rank deficient)")
        self.maximal_cones = tuple(cones)
        if labels is None:
            labels = ["(" + ",".join(str(x) for x in r) + ")" for r in self.rays]
        if len(labels) != len(self.rays):
            raise ValueError("one label per ray required")
        self.labels = tuple(labels)
        # per-cone adjugate data for fast membership tests, built lazily
        self._cone_inverses = None

    @property
    def n_rays(self):
        return len(self.rays)

    def ray_matrix(self):
        """The N x n matrix whose rows are the rays, in fan order."""
        return [list(r) for r in self.rays]

    def __eq__(self, other):
        return (
            isinstance(other, Fan)
            and self.dim == other.dim
            and self.rays == other.rays
            and self.maximal_cones == other.maximal_cones
        )

    def __repr__(self):
        return f"Fan(dim={self.dim}, rays={self.n_rays}, cones={len(self.maximal_cones)})"

    def _cone_data(self):
        if self._cone_inverses is None:
            data = []
            for cone in self.maximal_cones:
                # rays as columns: lambda = adj.x / det solves sum(lambda_i r_i) = x
                m = [[self.rays[i][k] for i in cone] for k in range(self.dim)]
                d = det_int(m)
                adj = _adjugate_int(m)
                if d < 0:
                    d = -d
                    adj = [[-x for x in row] for row in adj]
                data.append((adj, d))
            self._cone_inverses = data
        return self._cone_inverses

    def contains(self, point):
        """True when some maximal cone contains the (rational) point."""
        return self.cone_containing(point) is not None

    def cone_containing(self, point):
        """Index of the first maximal cone containing the point, else None."""
        for idx, (adj, _den) in enumerate(self._cone_data()):
            # coordinates of the point in the cone's ray basis, up to den > 0
            if all(dot(row, point) >= 0 for row in adj):
                return idx
        return None

    def wall_subsets(self):
        """Multiplicity map: (n-1)-subset of ray indices -> incident cones."""
        inc = {}
        for ci, cone in enumerate(self.maximal_cones):
            for sub in combinations(cone, self.dim - 1):
                inc.setdefault(sub, []).append(ci)
        return inc

    def validate(self, pairwise=None, n_random_probes=100, rng_seed=0):
        """Certify the fan invariants.

        Wall condition and probe coverage together serve as the completeness
        proxy; they certify, they do not prove. The pairwise common-face
        check is quadratic in the cone count and cubic-ish per pair, so it
        auto-disables above 40 maximal cones unless forced with
        ``pairwise=True``.
        """
        for sub, incident in self.wall_subsets().items():
            if len(incident) != 2:
                raise ValueError(
                    f"wall condition violated: subset {sub} lies in {len(incident)} cones"
                )
        if pairwise is None:
            pairwise = len(self.maximal_cones) <= 40
        if pairwise:
            for a, b in combinations(range(len(self.maximal_cones)), 2):
                if not self._pair_meets_in_common_face(a, b):
                    raise ValueError(
                        f"cones {a} and {b} do not intersect in a common face"
                    )
        for probe in self._probe_points(n_random_probes, rng_seed):
            if not self.contains(probe):
                raise ValueError(f"probe point {probe} not covered by any cone")
        return True

    def _probe_points(self, n_random, rng_seed):
        probes = [list(r) for r in self.rays]
        for r1, r2 in combinations(self.rays, 2):
            probes.append([a + b for a, b in zip(r1, r2)])
            probes.append([a - b for a, b in zip(r1, r2)])
        rng = random.Random(rng_seed)
        for _ in range(n_random):
            probes.append(
                [Fraction(rng.randint(-97, 97), rng.randint(1, 19)) for _ in range(self.dim)]
            )
        return probes

    def _pair_meets_in_common_face(self, a, b):
        """Exact test that cones a and b intersect exactly in their common
        face, via a functional vanishing on the shared rays and strictly
        separating the rest."""
        cone_a, cone_b = self.maximal_cones[a], self.maximal_cones[b]
        shared = sorted(set(cone_a) & set(cone_b))
        only_a = [self.rays[i] for i in cone_a if i not in shared]
        only_b = [self.rays[i] for i in cone_b if i not in shared]
        # fast path: an exactly-solvable target functional certifies the pair
        eq_rows = [list(self.rays[i]) for i in shared]
        tgt_rows = eq_rows + [list(r) for r in only_a] + [list(r) for r in only_b]
        targets = [Fraction(0)] * len(shared) + [Fraction(-1)] * len(only_a) + [Fraction(1)] * len(only_b)
        if solve(tgt_rows, targets) is not None:
            return True
        # complete path: strict feasibility on the subspace orthogonal to shared
        if shared:
            basis = kernel_basis(eq_rows)
        else:
            basis = [[Fraction(1 if i == j else 0) for j in range(self.dim)] for i in range(self.dim)]
        rows = [[-dot(r, v) for v in basis] for r in only_a]
        rows += [[dot(r, v) for v in basis] for r in only_b]
        return strict_feasible(rows)


def _adjugate_int(m):
    """Adjugate of a square integer matrix (inverse times determinant)."""
    n = len(m)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(m) if k != i]
            adj[j][i] = (-1) ** (i + j) * det_int(minor)
    return adj


def strict_feasible(rows):
    """Exact decision of {u : rows . u > 0 componentwise} != empty set.

    Reduces to the row space so the closed cone {rows . u >= 0} is pointed,
    enumerates its extreme rays by (r-1)-subset scan over signed integer
    minors, and tests the relative interior point given by their sum.
    LP-free and exact.
    """
    if not rows:
        return True
    red, pivots = rref(rows)
    r = len(pivots)
    if r == 0:
        return False
    basis = red[:r]
    reduced = scale_rows_int([[dot(row, bvec) for bvec in basis] for row in rows])
    rays = _pointed_cone_rays(reduced, r)
    if not rays:
        return False
    total = [sum(ray[j] for ray in rays) for j in range(r)]
    return all(dot(row, total) > 0 for row in reduced)


def _pointed_cone_rays(rows, dim):
    """Extreme rays of the pointed cone {u in R^dim : rows . u >= 0};
    rows are integer vectors."""
    if dim == 1:
        rays = []
        if all(row[0] >= 0 for row in rows):
            rays.append((1,))
        if all(row[0] <= 0 for row in rows):
            rays.append((-1,))
        return rays
    found = set()
    for subset in combinations(range(len(rows)), dim - 1):
        z = _int_kernel_vector([rows[i] for i in subset], dim)
        if z is None:
            continue
        z = primitive(z)
        for cand in (z, tuple(-x for x in z)):
            if all(dot(row, cand) >= 0 for row in rows):
                found.add(cand)
    return sorted(found)


@dataclass(frozen=True)
class HPolytope:
    """Rational halfspace intersection {x : A x <= b}; rows of A are outer
    facet normals when the representation is irredundant."""

    ineq_matrix: tuple
    bounds: tuple

    def __init__(self, ineq_matrix, bounds):
        rows = tuple(tuple(Fraction(x) for x in row) for row in ineq_matrix)
        b = tuple(Fraction(x) for x in bounds)
        if len(rows) != len(b):
            raise ValueError("one bound per inequality row required")
        object.__setattr__(self, "ineq_matrix", rows)
        object.__setattr__(self, "bounds", b)

    @property
    def dim(self):
        return len(self.ineq_matrix[0]) if self.ineq_matrix else 0

    def contains(self, point):
        return all(dot(row, point) <= bi for row, bi in zip(self.ineq_matrix, self.bounds))


@dataclass(frozen=True)
class VPolytope:
    """Vertex list in canonical (lexicographic) order.

    Producers guarantee irredundancy; ``normal_fan`` re-checks it. The
    optional H-representation provenance carries the inequality system a
    vertex enumeration started from, which normal-fan extraction then uses
    instead of re-deriving facets from scratch.
    """

    vertices: tuple
    hrep: HPolytope = field(default=None, compare=False)

    def __init__(self, vertices, hrep=None):
        pts = sorted({tuple(Fraction(x) for x in v) for v in vertices})
        if not pts:
            raise ValueError("empty vertex list")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("inconsistent point dimensions")
        object.__setattr__(self, "vertices", tuple(pts))
        object.__setattr__(self, "hrep", hrep)

    @property
    def dim(self):
        return len(self.vertices[0])


def vertices(p):
    """Exact vertex enumeration of a bounded H-polytope.

    Scans all n-subsets of inequality rows with invertible submatrix, keeps
    the feasible intersection points, deduplicates. Boundedness is detected
    first (recession cone {x : Ax <= 0} must be {0}), then emptiness, then
    full-dimensionality; the three failure modes raise distinct errors.
    A recession direction reports Unbounded whether or not the region is
    empty; Empty is certified only for recession-free systems, where every
    nonempty region has a vertex the scan must find.
    """
    a_rows, b = scale_rows_int(p.ineq_matrix, p.bounds)
    n = p.dim
    if n == 0 or not a_rows:
        raise Unbounded("no constraints: feasible set is all of R^n")
    _check_recession_trivial(a_rows, n)
    verts = {}
    for subset in combinations(range(len(a_rows)), n):
        sub = [list(a_rows[i]) for i in subset]
        rhs = [b[i] for i in subset]
        sol = solve_cramer_int(sub, rhs)
        if sol is None:
            continue
        nums, den = sol
        if all(dot(a_rows[i], nums) <= b[i] * den for i in range(len(a_rows))):
            verts[tuple(Fraction(x, den) for x in nums)] = True
    if not verts:
        raise Empty("no feasible point")
    vlist = sorted(verts)
    if _affine_rank(vlist) != n:
        raise DimensionDeficient("polytope has no interior point")
    return VPolytope(vlist, hrep=p)


def _check_recession_trivial(a_rows, n):
    """Raise Unbounded unless {x : Ax <= 0} = {0}. Exact, LP-free: the
    recession cone is pointed iff ker A = 0, and a pointed cone is {0} iff
    the (n-1)-subset scan produces no extreme ray."""
    if rank(a_rows) < n:
        raise Unbounded("constraint matrix is rank deficient")
    if n == 1:
        if all(row[0] <= 0 for row in a_rows) or all(row[0] >= 0 for row in a_rows):
            raise Unbounded("recession direction exists")
        return
    for subset in combinations(range(len(a_rows)), n - 1):
        z = _int_kernel_vector([a_rows[i] for i in subset], n)
        if z is None:
            continue
        if all(dot(row, z) <= 0 for row in a_rows) or all(dot(row, z) >= 0 for row in a_rows):
            raise Unbounded(f"recession direction {z} exists")


def _int_kernel_vector(rows, n):
    """Kernel vector of an (n-1) x n integer matrix via signed maximal
    minors; None when the rank is below n-1."""
    z = []
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in rows]
        z.append(sign * det_int(minor))
        sign = -sign
    if all(x == 0 for x in z):
        return None
    return z


def _affine_rank(points):
    if len(points) <= 1:
        return 0
    p0 = points[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    return rank(diffs)


def facet_description(vp):
    """Outer facet normals of a full-dimensional VPolytope.

    Returns (normals, offsets, contact lists) with primitive integer normals
    in canonical order. Uses the H-rep provenance when available; otherwise
    falls back to the n-subset scan over vertex tuples.
    """
    n = vp.dim
    pts = vp.vertices
    if _affine_rank(pts) != n:
        raise DimensionDeficient("polytope is not full-dimensional")
    facets = {}
    if vp.hrep is not None:
        cand_rows, cand_b = scale_rows_int(vp.hrep.ineq_matrix, vp.hrep.bounds)
        seen = set()
        for row, bi in zip(cand_rows, cand_b):
            key = tuple(row) + (bi,)
            if key in seen:
                continue
            seen.add(key)
            contact = [i for i, v in enumerate(pts) if dot(row, v) == bi]
            if len(contact) >= n and _affine_rank([pts[i] for i in contact]) == n - 1:
                facets[(tuple(row), bi)] = contact
    else:
        for subset in combinations(range(len(pts)), n):
            base = pts[subset[0]]
            diffs = [[x - y for x, y in zip(pts[i], base)] for i in subset[1:]]
            kb = kernel_basis(diffs) if diffs else [[Fraction(1)]]  # n == 1
            if len(kb) != 1:
                continue
            normal = primitive(kb[0])
            offset = dot(normal, base)
            values = [dot(normal, v) for v in pts]
            if all(val <= offset for val in values):
                key_n, key_o = normal, offset
            elif all(val >= offset for val in values):
                key_n = tuple(-x for x in normal)
                key_o = -offset
            else:
                continue
            scaled = primitive(list(key_n) + [key_o])
            key_n, key_o = scaled[:-1], scaled[-1]
            facets[(key_n, key_o)] = [
                i for i, v in enumerate(pts) if dot(key_n, v) == key_o
            ]
    ordered = sorted(facets, key=lambda f: f[0], reverse=True)
    normals = [f[0] for f in ordered]
    offsets = [f[1] for f in ordered]
    contacts = [facets[f] for f in ordered]
    for i, v in enumerate(pts):
        active = [normals[k] for k in range(len(normals)) if i in contacts[k]]
        if rank([list(a) for a in active]) != n:
            raise ValueError(f"point {v} is not a vertex (redundant input point)")
    return normals, offsets, contacts


def normal_fan(vp):
    """Outer normal fan of a full-dimensional VPolytope: rays are the
    primitive facet normals, one maximal cone per vertex."""
    normals, _offsets, contacts = facet_description(vp)
    cones = []
    for i in range(len(vp.vertices)):
        cone = tuple(sorted(k for k in range(len(normals)) if i in contacts[k]))
        cones.append(cone)
    return Fan(vp.dim, normals, cones)


def p_h(fan, h):
    """The polytope {x : Gx <= h} with G the fan's ray matrix in fan order."""
    if len(h) != fan.n_rays:
        raise ValueError(f"height vector must have length {fan.n_rays}")
    return HPolytope(fan.ray_matrix(), h)


def fan_eq(f1, f2):
    """Fan equality up to ray relabeling: primitive ray sets coincide and the
    induced index bijection maps maximal cones onto maximal cones."""
    if f1.dim != f2.dim:
        raise ValueError("fans live in different ambient dimensions")
    if f1.n_rays != f2.n_rays or len(f1.maximal_cones) != len(f2.maximal_cones):
        return False
    index2 = {ray: i for i, ray in enumerate(f2.rays)}
    try:
        relabel = [index2[ray] for ray in f1.rays]
    except KeyError:
        return False
    mapped = sorted(tuple(sorted(relabel[i] for i in cone)) for cone in f1.maximal_cones)
    return tuple(mapped) == f2.maximal_cones


# --- serialization ---------------------------------------------------------


def fan_to_json(fan):
    """Byte-deterministic Fan JSON."""
    payload = {
        "dim": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "cones": [list(c) for c in fan.maximal_cones],
        "labels": list(fan.labels),
    }
    return json.dumps(payload, separators=(",", ":"))


def fan_from_json(text):
    data = json.loads(text)
    return Fan(data["dim"], data["rays"], data["cones"], data.get("labels"))


def _frac_str(x):
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def write_roff(vp):
    """ROFF text: header, `V F` counts, vertex rows as `p/q` rationals,
    then facet lines `k i1 ... ik` with sorted vertex indices."""
    _normals, _offsets, contacts = facet_description(vp)
    facet_lists = sorted(tuple(sorted(c)) for c in contacts)
    lines = ["ROFF", f"{len(vp.vertices)} {len(facet_lists)}"]
    for v in vp.vertices:
        lines.append(" ".join(_frac_str(x) for x in v))
    for fl in facet_lists:
        lines.append(" ".join(str(i) for i in (len(fl),) + fl))
    return "\n".join(lines) + "\n"


def parse_roff(text):
    """Parse ROFF text into (vertex tuples, facet index lists)."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0] != "ROFF":
        raise ValueError("missing ROFF header")
    nv, nf = (int(tok) for tok in lines[1].split())
    if len(lines) != 2 + nv + nf:
        raise ValueError("ROFF line count mismatch")
    verts = []
    for ln in lines[2 : 2 + nv]:
        verts.append(tuple(Fraction(tok) for tok in ln.split()))
    facets = []
    for ln in lines[2 + nv :]:
        toks = [int(tok) for tok in ln.split()]
        if toks[0] != len(toks) - 1:
            raise ValueError("facet count prefix mismatch")
        facets.append(tuple(toks[1:]))
    return verts, facets


def roff_normal_fan(verts, facet_lists):
    """Normal fan reconstructed from ROFF data, recomputing each facet's
    hyperplane from its vertex set. Raises ValueError on any geometric
    inconsistency (non-coplanar facet, wrong orientation, non-simple vertex)."""
    n = len(verts[0])
    normals = []
    for fl in facet_lists:
        pts = [verts[i] for i in fl]
        base = pts[0]
        diffs = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
        kb = kernel_basis(diffs) if diffs else [[Fraction(1)]]  # n == 1
        if len(kb) != 1:
            raise ValueError("facet vertex set does not span a hyperplane")
        normal = primitive(kb[0])
        offset = dot(normal, base)
        if any(dot(normal, p) != offset for p in pts):
            raise ValueError("facet vertices are not coplanar")
        others = [dot(normal, v) for i, v in enumerate(verts) if i not in fl]
        if all(val < offset for val in others):
            pass
        elif all(val > offset for val in others):
            normal = tuple(-x for x in normal)
        else:
            raise ValueError("facet hyperplane does not support the polytope")
        normals.append(normal)
    order = sorted(range(len(normals)), key=lambda k: normals[k], reverse=True)
    ray_list = [normals[k] for k in order]
    if len(set(ray_list)) != len(ray_list):
        raise ValueError("duplicate facet normals")
    pos_of = {old: new for new, old in enumerate(order)}
    cones = []
    for i in range(len(verts)):
        cone = tuple(sorted(pos_of[k] for k, fl in enumerate(facet_lists) if i in fl))
        cones.append(cone)
    return Fan(n, ray_list, cones)
