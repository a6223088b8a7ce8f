"""Command-line front end.

Every run is deterministic given its inputs: exit code 0 on success, 1 on
verification failure, 2 on input error (with a single machine-parsable
`fanforge: error: ...` line on stderr).
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import arquiver, clusterfan, exchange, polyhedra, typecone
from .errors import FanforgeError

DEFAULT_BUDGET = clusterfan.DEFAULT_BFS_BUDGET


def _budget_from_env():
    raw = os.environ.get("FANFORGE_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _parse_fraction_list(text):
    return [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]


def _orientation_from_text(text):
    arrows = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if ">" not in tok:
            raise ValueError(f"orientation token {tok!r} must look like '2>1'")
        s, t = tok.split(">")
        arrows.append((int(s), int(t)))
    return tuple(arrows)


def _quiver_from_args(args):
    orientation = _orientation_from_text(args.orientation) if args.orientation else None
    return arquiver.DynkinQuiver(args.type, args.rank, orientation)


def _b_matrix_from_quiver(quiver):
    n = quiver.rank
    b = [[0] * n for _ in range(n)]
    for s, t in quiver.orientation:
        b[t - 1][s - 1] += 1
        b[s - 1][t - 1] -= 1
    return b


def _seed_from_args(args):
    """Seed plus optional tracked triangulation."""
    if getattr(args, "seed", None):
        with open(args.seed, encoding="utf-8") as fh:
            return clusterfan.seed_from_json(fh.read())
    quiver = _quiver_from_args(args)
    return clusterfan.initial_seed(_b_matrix_from_quiver(quiver)), None


def _write_out(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_in(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _add_seed_options(sub):
    sub.add_argument("--type", default="A", choices=["A", "D", "E"])
    sub.add_argument("--rank", type=int, default=2)
    sub.add_argument("--orientation", help="arrows like '2>1,3>2' (default linear)")
    sub.add_argument("--seed", help="seed JSON file ('b' matrix or 'triangulation')")


def cmd_fan(args):
    seed, tri = _seed_from_args(args)
    enum = clusterfan.enumerate_fan(
        seed, triangulation=tri, budget=args.budget, threads=args.threads
    )
    if args.validate:
        enum.fan.validate(rng_seed=args.rng_seed)
    _write_out(polyhedra.fan_to_json(enum.fan), args.output)
    if args.graph_out:
        _write_out(enum.graph.to_dot(), args.graph_out)
    return 0


def cmd_graph(args):
    seed, tri = _seed_from_args(args)
    enum = clusterfan.enumerate_fan(
        seed, triangulation=tri, budget=args.budget, threads=args.threads
    )
    labels = None
    if args.annotate:
        labels = {}
        for w in typecone.walls(enum.fan):
            dep = typecone.wall_dependency(enum.fan, w)
            key = tuple(sorted(w.exchanged))
            mids = "+".join(
                f"{dep.middle_coeffs[s]}*h{s}" for s in w.shared if dep.middle_coeffs[s]
            )
            labels[key] = f"h{key[0]}+h{key[1]}>{mids or '0'}"
    _write_out(enum.graph.to_dot(labels), args.output)
    return 0


def cmd_typecone(args):
    fan = polyhedra.fan_from_json(_read_in(args.fan))
    tc = typecone.type_cone(fan, threads=args.threads)
    expected = fan.n_rays - fan.dim
    if args.report:
        uerp = typecone.unique_exchange_check(fan)
        line = (
            f"facets={tc.n_facets} expected={expected} "
            f"uerp={'true' if uerp['holds'] else 'false'}"
        )
        print(line)
        if args.output:
            _write_out(tc.to_json(), args.output)
        return 0 if tc.n_facets == expected else 1
    _write_out(tc.to_json(), args.output)
    return 0


def _typecone_from_json(text):
    data = json.loads(text)
    facets = tuple(tuple(row) for row in data["facets"])
    return typecone.TypeCone(data["N"], (), (), facets, facets, ())


def cmd_realize(args):
    fan = polyhedra.fan_from_json(_read_in(args.fan))
    if args.h:
        if args.c:
            raise ValueError("give either --c or --h, not both")
        poly = polyhedra.p_h(fan, _parse_fraction_list(args.h))
    else:
        if args.typecone:
            tc = _typecone_from_json(_read_in(args.typecone))
        else:
            tc = typecone.type_cone(fan, threads=args.threads)
        c = (
            _parse_fraction_list(args.c)
            if args.c
            else [Fraction(1)] * (fan.n_rays - fan.dim)
        )
        poly, _cert = typecone.qc_polytope(fan, tc, c)
    vp = polyhedra.vertices(poly)
    _write_out(polyhedra.write_roff(vp), args.output)
    return 0


def cmd_verify(args):
    fan = polyhedra.fan_from_json(_read_in(args.fan))
    verts, facet_lists = polyhedra.parse_roff(_read_in(args.polytope))
    try:
        nf = polyhedra.roff_normal_fan(verts, facet_lists)
    except ValueError as exc:
        print(f"verification failed: {exc}")
        return 1
    if polyhedra.fan_eq(nf, fan):
        print("verified: normal fan of the polytope equals the fan")
        return 0
    print("verification failed: normal fan differs from the fan")
    return 1


def cmd_abhy(args):
    quiver = _quiver_from_args(args)
    ar = arquiver.knit_ar_quiver(quiver, enable_e=args.enable_e)
    c = (
        _parse_fraction_list(args.c)
        if args.c
        else [Fraction(1)] * len(ar.meshes)
    )
    lines = []
    lines.append("# coordinate dictionary (id, slice, tree vertex, label, kind)")
    for row in ar.coordinate_dictionary():
        lines.append("  ".join(str(x) for x in row))
    lines.append("# mesh equations")
    for mesh in sorted(ar.meshes, key=lambda m: ar.vertex_label(m.start)):
        lines.append(_mesh_equation_text(ar, mesh))
    lines.append("# polytope inequalities (one functional >= 0 per vertex)")
    poly = arquiver.abhy_polytope(ar, c)
    for vid in range(len(ar.vertices)):
        row = poly.ineq_matrix[vid]
        bound = poly.bounds[vid]
        lhs = _linear_text(row)
        lines.append(f"{lhs} <= {bound}")
    text = "\n".join(lines)
    _write_out(text, args.output)
    if args.polytope_out:
        vp = polyhedra.vertices(poly)
        _write_out(polyhedra.write_roff(vp), args.polytope_out)
    if args.ar_out:
        _write_out(ar.to_json(), args.ar_out)
    return 0


def _mesh_equation_text(ar, mesh):
    left = f"{ar.vertex_label(mesh.start)} + {ar.vertex_label(mesh.end)}"
    mids = " + ".join(ar.vertex_label(m) for m in mesh.middles)
    right = f"{mids} + {ar.mesh_param_label(mesh)}" if mids else ar.mesh_param_label(mesh)
    return f"{left} = {right}"


def _linear_text(row):
    terms = []
    for i, a in enumerate(row):
        if a == 0:
            continue
        var = f"x{i + 1}"
        if a == 1:
            terms.append(f"+ {var}" if terms else var)
        elif a == -1:
            terms.append(f"- {var}" if terms else f"-{var}")
        else:
            terms.append(f"+ {a} {var}" if a > 0 and terms else f"{a} {var}")
    return " ".join(terms) if terms else "0"


PAPER_A2_EQUATIONS = [
    "q_{1 3} + q_{2 4} = q_{1 4} + c_{2 4}",
    "q_{1 4} + q_{2 5} = q_{2 4} + c_{2 5}",
    "q_{2 4} + q_{3 5} = q_{2 5} + c_{3 5}",
]
PAPER_A2_FUNCTIONALS = [
    "q_{1 3} = c_{2 4} + c_{2 5} - q_{2 5}",
    "q_{1 4} = c_{2 5} + c_{3 5} - q_{3 5}",
    "q_{2 4} = c_{3 5} + q_{2 5} - q_{3 5}",
]
PAPER_A2_INEQUALITIES = {
    ((1, 0), 2),
    ((0, 1), 2),
    ((-1, 1), 1),
    ((-1, 0), 0),
    ((0, -1), 0),
}
PAPER_A2_VERTICES = {(0, 0), (2, 0), (2, 2), (1, 2), (0, 1)}


def _functional_text(ar, funcs, vid):
    f = funcs[vid]
    pos, neg = [], []
    for ci, coeff in enumerate(f.mesh_coeffs):
        if coeff:
            label = ar.mesh_param_label(ar.meshes[ci])
            (pos if coeff > 0 else neg).append((abs(coeff), label))
    for j, coeff in enumerate(f.proj_coeffs):
        if coeff:
            label = ar.vertex_label(ar.projection_vertices[j])
            (pos if coeff > 0 else neg).append((abs(coeff), label))
    parts = []
    for coeff, label in sorted(pos, key=lambda t: t[1]):
        term = label if coeff == 1 else f"{coeff} {label}"
        parts.append(f"+ {term}" if parts else term)
    for coeff, label in sorted(neg, key=lambda t: t[1]):
        term = label if coeff == 1 else f"{coeff} {label}"
        parts.append(f"- {term}")
    return f"{ar.vertex_label(vid)} = " + " ".join(parts)


def _norm_ws(s):
    return " ".join(s.split())


def cmd_paper_a2(args):
    ar = arquiver.knit_ar_quiver(arquiver.linear_quiver(2))
    lines = []
    lines.append("# mesh equations of the A2 window")
    eq_texts = [
        _mesh_equation_text(ar, m)
        for m in sorted(ar.meshes, key=lambda m: ar.vertex_label(m.start))
    ]
    lines.extend(eq_texts)
    funcs = arquiver.abhy_functionals(ar)
    proj = set(ar.projection_vertices)
    lines.append("# eliminated functionals")
    fn_texts = [
        _functional_text(ar, funcs, vid)
        for vid in sorted(
            (v for v in range(len(ar.vertices)) if v not in proj),
            key=ar.vertex_label,
        )
    ]
    lines.extend(fn_texts)
    lines.append("# closed region for c = (1,1,1) with x = q_{2 5}, y = q_{3 5}")
    poly = arquiver.abhy_polytope(ar, (1, 1, 1))
    ineqs = {
        (tuple(int(x) for x in row), int(b))
        for row, b in zip(poly.ineq_matrix, poly.bounds)
    }
    var_names = ("x", "y")
    for row, b in sorted(ineqs, reverse=True):
        lines.append(f"{_named_linear(row, var_names)} <= {b}")
    vp = polyhedra.vertices(poly)
    verts = {tuple(int(x) for x in v) for v in vp.vertices}
    lines.append("# vertices")
    lines.append(" ".join(str(v).replace(" ", "") for v in sorted(verts)))

    failures = []
    for got, want in zip(eq_texts, PAPER_A2_EQUATIONS):
        if _norm_ws(got) != _norm_ws(want):
            failures.append(f"equation mismatch: {got!r} != {want!r}")
    for got, want in zip(fn_texts, PAPER_A2_FUNCTIONALS):
        if _norm_ws(got) != _norm_ws(want):
            failures.append(f"functional mismatch: {got!r} != {want!r}")
    if ineqs != PAPER_A2_INEQUALITIES:
        failures.append(f"inequality mismatch: {sorted(ineqs)}")
    if verts != PAPER_A2_VERTICES:
        failures.append(f"vertex mismatch: {sorted(verts)}")

    text = "\n".join(lines)
    _write_out(text, args.output)
    if failures:
        for f in failures:
            print(f"MISMATCH {f}")
        return 1
    print("OK")
    return 0


def _named_linear(row, names):
    terms = []
    for a, name in zip(row, names):
        if a == 0:
            continue
        if a == 1:
            terms.append(f"+ {name}" if terms else name)
        elif a == -1:
            terms.append(f"- {name}" if terms else f"-{name}")
        else:
            terms.append(f"+ {a} {name}" if a > 0 and terms else f"{a} {name}")
    return " ".join(terms) if terms else "0"


class _SingleLineParser(argparse.ArgumentParser):
    def error(self, message):
        print(f"fanforge: error: {message}", file=sys.stderr)
        sys.exit(2)


def build_parser():
    parser = _SingleLineParser(
        prog="fanforge",
        description="g-vector fans, type cones, and polytopal realizations, exactly",
    )
    parser.add_argument("--rng-seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument("--threads", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fan = sub.add_parser("fan", help="enumerate a g-vector fan from a seed")
    _add_seed_options(p_fan)
    p_fan.add_argument("-o", "--output")
    p_fan.add_argument("--graph-out")
    p_fan.add_argument("--budget", type=int, default=None)
    p_fan.add_argument(
        "--validate",
        action="store_true",
        help="run the completeness certificates (probes use --rng-seed)",
    )
    p_fan.set_defaults(func=cmd_fan)

    p_graph = sub.add_parser("graph", help="export the exchange graph as DOT")
    _add_seed_options(p_graph)
    p_graph.add_argument("-o", "--output")
    p_graph.add_argument("--budget", type=int, default=None)
    p_graph.add_argument("--annotate", action="store_true", help="label walls with dependencies")
    p_graph.set_defaults(func=cmd_graph)

    p_tc = sub.add_parser("typecone", help="type cone of a fan (JSON in, JSON out)")
    p_tc.add_argument("--fan", help="fan JSON file (default stdin)")
    p_tc.add_argument("-o", "--output")
    p_tc.add_argument("--report", action="store_true")
    p_tc.set_defaults(func=cmd_typecone)

    p_re = sub.add_parser("realize", help="realize a fan as the polytope Q_c")
    p_re.add_argument("--fan", help="fan JSON file (default stdin)")
    p_re.add_argument("--typecone", help="type cone JSON (recomputed when absent)")
    p_re.add_argument("--c", help="comma-separated positive rationals, e.g. '1,3/2,1'")
    p_re.add_argument("--h", help="realize P_h directly from a height vector instead")
    p_re.add_argument("-o", "--output")
    p_re.set_defaults(func=cmd_realize)

    p_ve = sub.add_parser("verify", help="check that a ROFF polytope realizes a fan")
    p_ve.add_argument("--fan", required=True)
    p_ve.add_argument("--polytope", required=True)
    p_ve.set_defaults(func=cmd_verify)

    p_ab = sub.add_parser("abhy", help="mesh-equation route: knit, eliminate, realize")
    p_ab.add_argument("--type", default="A", choices=["A", "D", "E"])
    p_ab.add_argument("--rank", type=int, default=2)
    p_ab.add_argument("--orientation")
    p_ab.add_argument("--c", help="comma-separated positive rationals, one per mesh")
    p_ab.add_argument("--enable-e", action="store_true")
    p_ab.add_argument("-o", "--output")
    p_ab.add_argument("--polytope-out")
    p_ab.add_argument("--ar-out", help="write the knitted quiver as JSON")
    p_ab.set_defaults(func=cmd_abhy)

    p_pa = sub.add_parser("paper-a2", help="reproduce the worked rank-2 example")
    p_pa.add_argument("-o", "--output")
    p_pa.set_defaults(func=cmd_paper_a2)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", None) is None and hasattr(args, "budget"):
        args.budget = _budget_from_env()
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except (FanforgeError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"fanforge: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
