"""fanforge: g-vector fans of finite-type cluster algebras, McMullen type
cones, and exact polytopal realizations (mesh-equation and height-vector
routes), all over exact rational arithmetic."""

from .arquiver import (
    ARQuiver,
    AffineFunctional,
    DynkinQuiver,
    MeshRelation,
    abhy_functionals,
    abhy_polytope,
    knit_ar_quiver,
    linear_quiver,
    mesh_equations,
)
from .clusterfan import (
    ExchangeGraph,
    Seed,
    Triangulation,
    all_triangulations,
    enumerate_fan,
    flip,
    flip_graph,
    initial_seed,
    mutate_seed,
    seed_from_json,
    seed_from_triangulation,
)
from .exchange import (
    Diagonal,
    RelativeMesh,
    relative_ar_meshes,
    verify_mutation_theorem,
)
from .polyhedra import (
    Fan,
    HPolytope,
    VPolytope,
    fan_eq,
    fan_from_json,
    fan_to_json,
    normal_fan,
    p_h,
    parse_roff,
    vertices,
    write_roff,
)
from .typecone import (
    LinearDependency,
    TypeCone,
    Wall,
    qc_polytope,
    type_cone,
    unique_exchange_check,
    wall_dependency,
    walls,
)

__version__ = "0.1.0"

__all__ = [
    "ARQuiver",
    "AffineFunctional",
    "Diagonal",
    "DynkinQuiver",
    "ExchangeGraph",
    "Fan",
    "HPolytope",
    "LinearDependency",
    "MeshRelation",
    "RelativeMesh",
    "Seed",
    "Triangulation",
    "TypeCone",
    "VPolytope",
    "Wall",
    "abhy_functionals",
    "abhy_polytope",
    "all_triangulations",
    "enumerate_fan",
    "fan_eq",
    "fan_from_json",
    "fan_to_json",
    "flip",
    "flip_graph",
    "initial_seed",
    "knit_ar_quiver",
    "linear_quiver",
    "mesh_equations",
    "mutate_seed",
    "normal_fan",
    "p_h",
    "parse_roff",
    "qc_polytope",
    "relative_ar_meshes",
    "seed_from_json",
    "seed_from_triangulation",
    "type_cone",
    "unique_exchange_check",
    "verify_mutation_theorem",
    "vertices",
    "wall_dependency",
    "walls",
    "write_roff",
]
