"""Type cones and the space of all polytopal realizations.

Every wall of a simplicial fan carries a unique linear dependency between
the two exchanged rays and the shared ones; a height vector h realizes the
fan exactly when it satisfies the corresponding strict inequalities. The
facets of that cone (N - n of them in the simplicial case) parametrize all
realizations through Q_c = {q : Kq = c, q >= 0}.
"""

from fractions import Fraction

from fanforge import (
    Triangulation,
    enumerate_fan,
    fan_eq,
    normal_fan,
    p_h,
    qc_polytope,
    seed_from_triangulation,
    type_cone,
    vertices,
    wall_dependency,
    walls,
)

tri = Triangulation(6, [(1, 3), (1, 4), (1, 5)])
fan = enumerate_fan(seed_from_triangulation(tri), triangulation=tri).fan
print(f"rank-3 fan: N={fan.n_rays} rays, {len(fan.maximal_cones)} cones")

# Each wall gives a dependency alpha*r + alpha'*r' = sum alpha_i s_i,
# normalized to alpha + alpha' = 2.
ws = walls(fan)
print(f"walls: {len(ws)}")
dep = wall_dependency(fan, ws[0])
print(
    f"first wall: exchanged rays {dep.wall.exchanged},"
    f" alpha={dep.alpha}, alpha'={dep.alpha_prime}, middles={dep.middle_coeffs}"
)

# 21 walls collapse onto 9 distinct inequalities, of which 6 = N - n are
# facets: the type cone of a rank-3 g-vector fan is simplicial.
tc = type_cone(fan)
print(f"raw inequalities: {len(tc.raw_inequalities)}, facets: {tc.n_facets}")
for f in tc.facets:
    print("  facet normal:", f)

# Any positive c gives a realization; the certificate exhibits the affine
# isomorphism with the nonnegative slice Kq = c.
c = [Fraction(j % 3 + 1, 2) for j in range(tc.n_facets)]
poly, cert = qc_polytope(fan, tc, c)
vp = vertices(poly)
print(f"\nQ_c with c={c}: {len(vp.vertices)} vertices")
print("realizes the fan:", fan_eq(normal_fan(vp), fan))

# Step outside the cone through one facet and the realization breaks.
h_bad = list(cert.h)
h_bad[0] -= 10
try:
    broken = normal_fan(vertices(p_h(fan, h_bad)))
    print("after violating a facet, realizes the fan:", fan_eq(broken, fan))
except Exception as exc:
    print("after violating a facet, no realization:", type(exc).__name__)
