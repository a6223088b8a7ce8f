"""Seeds, g-vector mutation, fan enumeration, and the polygon oracle.

A seed is an exchange matrix together with the g- and c-matrix companions;
mutation follows the sign-coherent tropical recurrence, so cluster variables
are tracked purely through their integer g-vectors (which separate variables
in finite type). The fan enumerator is a BFS over seeds modulo cluster-set
equality; for type A it can carry polygon triangulations alongside, which
yields the diagonal-to-ray dictionary used by the mesh cross-checks.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceeded
from .linalg import det_int
from .polyhedra import Fan

DEFAULT_BFS_BUDGET = 100_000


def _tuples(m):
    return tuple(tuple(row) for row in m)


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _symmetrizer(b):
    """Positive integer symmetrizer of a skew-symmetrizable matrix, or None."""
    from fractions import Fraction
    from math import gcd

    n = len(b)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if b[i][j] == 0 and b[j][i] == 0:
                    continue
                if (b[i][j] == 0) != (b[j][i] == 0) or b[i][j] * b[j][i] > 0:
                    return None
                if b[i][j] == 0:
                    continue
                req = d[i] * Fraction(abs(b[i][j]), abs(b[j][i]))
                if d[j] is None:
                    d[j] = req
                    stack.append(j)
                elif d[j] != req:
                    return None
    denom = 1
    for x in d:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in d]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


@dataclass(frozen=True)
class Seed:
    """Mutation state: exchange matrix plus g/c companion matrices whose
    columns are the g-vectors and c-vectors of the current cluster."""

    b_matrix: tuple
    g_matrix: tuple
    c_matrix: tuple
    cluster_ids: tuple

    def __post_init__(self):
        n = self.rank
        if _symmetrizer(self.b_matrix) is None:
            raise ValueError("exchange matrix is not skew-symmetrizable")
        if abs(det_int([list(r) for r in self.g_matrix])) != 1:
            raise ValueError("g-matrix is not unimodular")
        for k in range(n):
            col = [self.c_matrix[j][k] for j in range(n)]
            if not (all(x >= 0 for x in col) or all(x <= 0 for x in col)):
                raise ValueError(f"c-vector column {k} is not sign-coherent")
        if len(self.cluster_ids) != n:
            raise ValueError("one cluster id per direction required")

    @property
    def rank(self):
        return len(self.b_matrix)

    def g_column(self, k):
        return tuple(self.g_matrix[i][k] for i in range(self.rank))

    def g_columns(self):
        return tuple(self.g_column(k) for k in range(self.rank))


def initial_seed(b_matrix, cluster_ids=None):
    """Seed with g = c = identity over the given exchange matrix."""
    b = _tuples(b_matrix)
    n = len(b)
    ident = _identity(n)
    if cluster_ids is None:
        cluster_ids = tuple(tuple(ident[i][k] for i in range(n)) for k in range(n))
    return Seed(b, ident, ident, tuple(cluster_ids))


def mutate_seed(seed, k):
    """Mutation in direction k (0-based). Exchange matrix mutates by the
    standard rule; g and c mutate by the sign-coherent tropical recurrence.
    An involution: mutate_seed(mutate_seed(s, k), k) == s up to cluster ids,
    and exactly equal when ids are g-vector keyed."""
    n = seed.rank
    if not 0 <= k < n:
        raise ValueError(f"direction {k} out of range")
    b = [list(r) for r in seed.b_matrix]
    g = [list(r) for r in seed.g_matrix]
    c = [list(r) for r in seed.c_matrix]
    col = [c[j][k] for j in range(n)]
    eps = 1 if any(x > 0 for x in col) else -1

    # g' = g . Jg with Jg[j][k] += max(0, -eps*b[j][k]), Jg[k][k] = -1
    g2 = [row[:] for row in g]
    for i in range(n):
        g2[i][k] = -g[i][k] + sum(
            g[i][j] * max(0, -eps * b[j][k]) for j in range(n) if j != k
        )
    # c' = c . Jc with Jc[k][j] += max(0, eps*b[k][j]), Jc[k][k] = -1
    c2 = [row[:] for row in c]
    for i in range(n):
        c2[i][k] = -c[i][k]
        for j in range(n):
            if j != k:
                c2[i][j] = c[i][j] + c[i][k] * max(0, eps * b[k][j])

    b2 = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                b2[i][j] = -b[i][j]
            else:
                s = (b[i][k] > 0) - (b[i][k] < 0)
                b2[i][j] = b[i][j] + s * max(0, b[i][k] * b[k][j])

    ids = list(seed.cluster_ids)
    ids[k] = tuple(g2[i][k] for i in range(n))
    return Seed(_tuples(b2), _tuples(g2), _tuples(c2), tuple(ids))


@dataclass(frozen=True)
class Triangulation:
    """Triangulation of a convex polygon with vertices 1..polygon_size in
    counterclockwise order; diagonals are sorted endpoint pairs."""

    polygon_size: int
    diagonals: tuple

    def __init__(self, polygon_size, diagonals):
        if polygon_size < 4:
            raise ValueError("polygon must have at least 4 vertices")
        diags = tuple(sorted(tuple(sorted(d)) for d in diagonals))
        for a, b in diags:
            if not (1 <= a < b <= polygon_size):
                raise ValueError(f"diagonal {(a, b)} endpoints out of range")
            if b - a < 2 or (a == 1 and b == polygon_size):
                raise ValueError(f"{(a, b)} joins adjacent boundary vertices")
        if len(set(diags)) != len(diags):
            raise ValueError("repeated diagonal")
        if len(diags) != polygon_size - 3:
            raise ValueError(f"a triangulation needs exactly {polygon_size - 3} diagonals")
        for d1, d2 in combinations(diags, 2):
            if diagonals_cross(d1, d2):
                raise ValueError(f"diagonals {d1} and {d2} cross")
        object.__setattr__(self, "polygon_size", polygon_size)
        object.__setattr__(self, "diagonals", diags)

    def triangles(self):
        """The polygon_size - 2 triangular faces, as sorted vertex triples."""
        edges = set(self.diagonals)
        m = self.polygon_size
        for i in range(1, m):
            edges.add((i, i + 1))
        edges.add((1, m))
        tris = [
            (p, q, r)
            for p, q, r in combinations(range(1, m + 1), 3)
            if (p, q) in edges and (q, r) in edges and (p, r) in edges
        ]
        assert len(tris) == m - 2, "triangulation face count mismatch"
        return tris


def diagonals_cross(d1, d2):
    """Strict interior crossing of two chords of a convex polygon."""
    a, b = d1
    c, d = d2
    if len({a, b, c, d}) < 4:
        return False
    inside_c = a < c < b
    inside_d = a < d < b
    return inside_c != inside_d


def seed_from_triangulation(tri):
    """Seed of a polygon triangulation: the exchange matrix is the signed
    adjacency of diagonals sharing a triangle (arrow = counterclockwise turn
    around the common vertex), g and c start as the identity. Direction k
    corresponds to the k-th diagonal in the triangulation's sorted order."""
    diags = tri.diagonals
    index = {d: i for i, d in enumerate(diags)}
    n = len(diags)
    b = [[0] * n for _ in range(n)]
    for p, q, r in tri.triangles():
        # ccw arrows inside triangle p<q<r: pq -> pr -> qr -> pq
        sides = [(p, q), (p, r), (q, r)]
        for s_from, s_to in ((sides[0], sides[1]), (sides[1], sides[2]), (sides[2], sides[0])):
            if s_from in index and s_to in index:
                b[index[s_from]][index[s_to]] += 1
                b[index[s_to]][index[s_from]] -= 1
    return initial_seed(b)


def flip(tri, diagonal):
    """Replace one diagonal by the other diagonal of its quadrilateral."""
    d = tuple(sorted(diagonal))
    if d not in tri.diagonals:
        raise ValueError(f"{d} is not a diagonal of the triangulation")
    incident = [t for t in tri.triangles() if d[0] in t and d[1] in t]
    assert len(incident) == 2, "diagonal must bound two triangles"
    quad = sorted(set(incident[0]) | set(incident[1]))
    other = tuple(sorted(set(quad) - set(d)))
    new_diags = tuple(other if x == d else x for x in tri.diagonals)
    return Triangulation(tri.polygon_size, new_diags), other


@dataclass(frozen=True)
class ExchangeGraph:
    """Clusters as nodes (ray-index sets, aligned with Fan.maximal_cones)
    and mutations as edges labeled by the exchanged ray pair."""

    nodes: tuple
    edges: tuple

    def degree_sequence(self):
        deg = [0] * len(self.nodes)
        for a, b, _pair in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def is_regular(self, degree):
        return all(d == degree for d in self.degree_sequence())

    def is_connected(self):
        if not self.nodes:
            return True
        adj = {i: [] for i in range(len(self.nodes))}
        for a, b, _pair in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.nodes)

    def to_dot(self, dependency_labels=None):
        """Deterministic DOT text; node labels are sorted ray indices. When
        dependency_labels maps an exchanged ray pair to a string, each edge
        is annotated with its wall dependency."""
        lines = ["graph exchange {"]
        for i, node in enumerate(self.nodes):
            lines.append(f'  {i} [label="{",".join(str(r) for r in node)}"];')
        for a, b, pair in self.edges:
            label = f"{pair[0]}|{pair[1]}"
            if dependency_labels and pair in dependency_labels:
                label += " " + dependency_labels[pair]
            lines.append(f'  {a} -- {b} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FanEnumeration:
    """Everything the BFS discovered: the fan, the exchange graph, and (for
    tracked type-A runs) the triangulation attached to each graph node plus
    the diagonal -> ray dictionary."""

    fan: Fan
    graph: ExchangeGraph
    node_triangulations: tuple
    diagonal_rays: dict


def enumerate_fan(seed, triangulation=None, budget=DEFAULT_BFS_BUDGET, threads=1):
    """BFS over seeds modulo cluster-set equality.

    Returns a FanEnumeration whose fan has all distinct g-vectors as rays
    (lexicographically decreasing, so the initial cluster is the positive
    orthant and its basis vectors come first) and one maximal cone per
    cluster. With a triangulation supplied, flips are tracked alongside
    mutations and every diagonal is matched to its g-vector ray; agreement
    across all clusters containing the diagonal is asserted.
    """
    n = seed.rank
    if triangulation is not None:
        if seed.b_matrix != seed_from_triangulation(triangulation).b_matrix:
            raise ValueError("seed does not match the triangulation (flip tracking would drift)")
    start_key = frozenset(seed.g_columns())
    states = {start_key: (seed, triangulation.diagonals if triangulation else None)}
    order = [start_key]
    edges = set()
    frontier = [start_key]
    poly = triangulation.polygon_size if triangulation else None

    def expand(key):
        s, diags = states[key]
        out = []
        for k in range(n):
            s2 = mutate_seed(s, k)
            if abs(det_int([list(r) for r in s2.g_matrix])) != 1:
                raise AssertionError("g-matrix lost unimodularity")
            diags2 = None
            if diags is not None:
                # flip() also re-validates the flipped triangulation
                _flipped, new_diag = flip(Triangulation(poly, diags), diags[k])
                diags2 = tuple(new_diag if i == k else diags[i] for i in range(n))
            out.append((s.g_column(k), s2, diags2))
        return out

    while frontier:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                expansions = list(pool.map(expand, frontier))
        else:
            expansions = [expand(key) for key in frontier]
        next_frontier = []
        for key, expansion in zip(frontier, expansions):
            for old_ray, s2, diags2 in expansion:
                key2 = frozenset(s2.g_columns())
                if key2 not in states:
                    states[key2] = (s2, diags2)
                    order.append(key2)
                    next_frontier.append(key2)
                    if len(states) > budget:
                        raise BudgetExceeded(f"seed BFS exceeded {budget} nodes")
                new_ray = next(iter(key2 - key))
                edges.add((frozenset((key, key2)), tuple(sorted((old_ray, new_ray)))))
        frontier = next_frontier

    all_rays = sorted({g for key in order for g in key}, reverse=True)
    ray_index = {g: i for i, g in enumerate(all_rays)}
    cone_of = {key: tuple(sorted(ray_index[g] for g in key)) for key in order}
    labels = None
    diagonal_rays = {}
    if triangulation is not None:
        for key in order:
            s, diags = states[key]
            for k in range(n):
                g = s.g_column(k)
                prev = diagonal_rays.setdefault(diags[k], g)
                if prev != g:
                    raise AssertionError(
                        f"diagonal {diags[k]} matched two distinct g-vectors"
                    )
        ray_diag = {ray_index[g]: d for d, g in diagonal_rays.items()}
        labels = [f"{ray_diag[i][0]}-{ray_diag[i][1]}" for i in range(len(all_rays))]

    fan = Fan(n, all_rays, list(cone_of.values()), labels)
    cone_pos = {cone: i for i, cone in enumerate(fan.maximal_cones)}
    node_of_key = {key: cone_pos[cone_of[key]] for key in order}
    graph_edges = set()
    for key_pair, ray_pair in edges:
        k1, k2 = tuple(key_pair)
        a, b = sorted((node_of_key[k1], node_of_key[k2]))
        graph_edges.add((a, b, tuple(sorted(ray_index[g] for g in ray_pair))))
    graph = ExchangeGraph(fan.maximal_cones, tuple(sorted(graph_edges)))
    node_triangulations = ()
    if triangulation is not None:
        by_node = sorted((node_of_key[key], states[key][1]) for key in order)
        node_triangulations = tuple(t for _i, t in by_node)
    return FanEnumeration(fan, graph, node_triangulations, diagonal_rays)


def all_triangulations(polygon_size):
    """Every triangulation of the convex polygon, canonically ordered."""

    def rec(cycle):
        # cycle: tuple of polygon vertex labels in convex position
        if len(cycle) < 3:
            return [frozenset()]
        if len(cycle) == 3:
            return [frozenset()]
        out = []
        a, b = cycle[0], cycle[1]
        for i in range(2, len(cycle)):
            apex = cycle[i]
            left = rec(cycle[1 : i + 1])
            right = rec((cycle[0],) + cycle[i:])
            for dl in left:
                for dr in right:
                    diags = set(dl) | set(dr)
                    for u, v in ((a, apex), (b, apex)):
                        lo, hi = sorted((u, v))
                        if hi - lo >= 2 and not (lo == 1 and hi == polygon_size):
                            diags.add((lo, hi))
                    out.append(frozenset(diags))
        return out

    seen = sorted({tuple(sorted(d)) for d in rec(tuple(range(1, polygon_size + 1)))})
    return [Triangulation(polygon_size, d) for d in seen]


@dataclass(frozen=True)
class FlipGraph:
    nodes: tuple
    edges: tuple


def flip_graph(polygon_size):
    """Graph of all triangulations with diagonal flips as edges."""
    if polygon_size < 4:
        raise ValueError("need a polygon with at least 4 vertices")
    tris = all_triangulations(polygon_size)
    index = {t.diagonals: i for i, t in enumerate(tris)}
    edges = set()
    for i, t in enumerate(tris):
        for d in t.diagonals:
            t2, _new = flip(t, d)
            j = index[t2.diagonals]
            edges.add((min(i, j), max(i, j)))
    return FlipGraph(tuple(tris), tuple(sorted(edges)))


def seed_from_json(text):
    """Accept {"b": [[..]], "labels": [..]} or
    {"triangulation": {"polygon": m, "diagonals": [[a,b],...]}}."""
    data = json.loads(text)
    if "triangulation" in data:
        td = data["triangulation"]
        tri = Triangulation(td["polygon"], [tuple(d) for d in td["diagonals"]])
        return seed_from_triangulation(tri), tri
    if "b" in data:
        labels = data.get("labels")
        ids = tuple(tuple(l) if isinstance(l, list) else l for l in labels) if labels else None
        return initial_seed(data["b"], cluster_ids=ids), None
    raise ValueError("seed JSON needs a 'b' matrix or a 'triangulation'")
