"""Command-line front end.

Commands: expand | fpoly | gvector | matchings | snake | mutate | verify.
Surfaces, arcs and seeds are JSON files with documented schemas (below);
output is the canonical polynomial text, or structured JSON with --json.

Exit codes: 0 ok, 1 parse error, 2 validation error, 3 computation error,
4 verification mismatch.

Surface schema::

    {"schema": 1,
     "topology": {"genus": 0, "boundary_components": 1,
                  "punctures": 1, "boundary_marked": 4},
     "arcs": ["1", "2"], "boundary": ["b1"], "punctures": ["P"],
     "triangles": [
       {"sides": ["1", "2", "b1"], "vertices": ["m1", "m2", "P"]},
       {"self_folded": {"loop": "l", "radius": "2", "puncture": "P",
                        "base": "m1", "notched_label": "1"}}]}

Ordinary triangles list their sides counterclockwise; vertices[i] names the
vertex opposite sides[i].  Arc schema::

    {"schema": 1,
     "start": {"triangle": 0, "vertex": "d"},
     "crossings": [{"arc": "d", "to_triangle": 1, "wind": "ccw"}],
     "end": {"triangle": 1, "vertex": "d"},
     "notch_start": false, "notch_end": false, "orientation": "ccw"}

or, for an arc of the triangulation, {"schema": 1, "arc": "2", ...notches}.
A "wind" entry is required exactly on radius crossings.  Seed schema::

    {"schema": 1, "matrix": [[0, 1], [-1, 0]], "names": ["1", "2"]}

where "matrix" is the full extended matrix (2n x n for principal
coefficients) or the top square block, in which case principal coefficient
rows are appended.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .poly import LaurentPoly
from .surface import (
    Crossing,
    CrossingPath,
    Ordinary,
    SelfFolded,
    SurfaceError,
    TaggedArcRef,
    Topology,
    Triangulation,
    signed_adjacency,
    validate_path,
    validate_surface,
)
from .snake import build_snake, dump_snake
from .matchings import (
    enumerate_matchings,
    height_exponents,
    matching_weight,
    minimal_maximal,
    phi_specialize,
)
from .expand import (
    Expansion,
    expand_double_notch,
    expand_notched_loop,
    expand_ordinary,
    expand_single_notch,
    f_polynomial,
    g_vector,
)
from .mutation import principal_seed, run_sequence, tropical_coeffs

__all__ = ["main", "parse_surface", "parse_arc", "ParseError", "ValidationError"]

EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_COMPUTE = 3
EXIT_VERIFY = 4


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    pass


def _require_keys(obj: dict, allowed: set, what: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"{what}: unknown fields {sorted(unknown)}")


def parse_surface(data: bytes) -> Triangulation:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"surface file is not valid JSON: {exc}") from exc
    _require_keys(obj, {"schema", "topology", "arcs", "boundary", "punctures",
                        "triangles"}, "surface")
    if obj.get("schema") != 1:
        raise ParseError("surface: unsupported schema version")
    topo = obj.get("topology", {})
    _require_keys(topo, {"genus", "boundary_components", "punctures",
                         "boundary_marked"}, "topology")
    try:
        topology = Topology(int(topo["genus"]), int(topo["boundary_components"]),
                            int(topo["punctures"]), int(topo["boundary_marked"]))
    except KeyError as exc:
        raise ParseError(f"topology: missing field {exc}") from exc
    arcs = [str(a) for a in obj.get("arcs", [])]
    boundary = [str(a) for a in obj.get("boundary", [])]
    punctures = [str(a) for a in obj.get("punctures", [])]
    known = set(arcs) | set(boundary)
    triangles = []
    for i, t in enumerate(obj.get("triangles", [])):
        if "self_folded" in t:
            _require_keys(t, {"self_folded"}, f"triangle {i}")
            sf = t["self_folded"]
            _require_keys(sf, {"loop", "radius", "puncture", "base",
                               "notched_label"}, f"triangle {i}")
            for key in ("loop", "radius"):
                if sf.get(key) not in known:
                    raise ParseError(
                        f"triangle {i}: unknown label {sf.get(key)!r}")
            triangles.append(SelfFolded(str(sf["loop"]), str(sf["radius"]),
                                        str(sf["puncture"]),
                                        sf.get("base"),
                                        sf.get("notched_label")))
        else:
            _require_keys(t, {"sides", "vertices"}, f"triangle {i}")
            sides = tuple(str(s) for s in t.get("sides", []))
            if len(sides) != 3:
                raise ParseError(f"triangle {i}: needs three sides")
            for s in sides:
                if s not in known:
                    raise ParseError(f"triangle {i}: unknown label {s!r}")
            verts = t.get("vertices")
            triangles.append(Ordinary(sides,
                                      tuple(str(v) for v in verts) if verts else None))
    T = Triangulation(tuple(arcs), tuple(boundary), tuple(punctures),
                      tuple(triangles), topology)
    problems = validate_surface(T)
    if problems:
        raise ValidationError("; ".join(problems))
    return T


def parse_arc(data: bytes, T: Triangulation):
    """Returns (path-or-label, TaggedArcRef, orientation)."""
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"arc file is not valid JSON: {exc}") from exc
    _require_keys(obj, {"schema", "arc", "start", "crossings", "end",
                        "notch_start", "notch_end", "orientation"}, "arc")
    if obj.get("schema") != 1:
        raise ParseError("arc: unsupported schema version")
    notch_start = bool(obj.get("notch_start", False))
    notch_end = bool(obj.get("notch_end", False))
    orientation = obj.get("orientation", "ccw")
    if orientation not in ("ccw", "cw"):
        raise ParseError("arc: orientation must be 'ccw' or 'cw'")
    if "arc" in obj:
        label = str(obj["arc"])
        if label not in T.arcs:
            raise ParseError(f"arc: {label!r} is not an arc of the surface")
        ref = TaggedArcRef(label, notch_start, notch_end)
        return label, ref, orientation
    try:
        start = (int(obj["start"]["triangle"]), str(obj["start"]["vertex"]))
        end = (int(obj["end"]["triangle"]), str(obj["end"]["vertex"]))
    except KeyError as exc:
        raise ParseError(f"arc: missing field {exc}") from exc
    crossings = []
    for i, c in enumerate(obj.get("crossings", [])):
        _require_keys(c, {"arc", "to_triangle", "wind"}, f"crossing {i}")
        if str(c.get("arc")) not in set(T.arcs):
            raise ParseError(f"crossing {i}: unknown arc {c.get('arc')!r}")
        crossings.append(Crossing(str(c["arc"]), int(c["to_triangle"]),
                                  c.get("wind")))
    path = CrossingPath(start, tuple(crossings), end)
    problems = validate_path(T, path)
    if problems:
        raise ValidationError("; ".join(problems))
    for spot, notched, what in ((path.start, notch_start, "start"),
                                (path.end, notch_end, "end")):
        if notched:
            name = T.vertex_name(*spot)
            if name not in T.punctures:
                raise ValidationError(f"notched {what} is not at a puncture")
    ref = TaggedArcRef(path, notch_start, notch_end)
    return path, ref, orientation


def render_surface(T: Triangulation) -> dict:
    """Inverse of parse_surface: a JSON-ready description of the surface."""
    tris = []
    for t in T.triangles:
        if isinstance(t, SelfFolded):
            sf = {"loop": t.loop, "radius": t.radius, "puncture": t.puncture}
            if t.base is not None:
                sf["base"] = t.base
            if t.notched_label is not None:
                sf["notched_label"] = t.notched_label
            tris.append({"self_folded": sf})
        else:
            entry = {"sides": list(t.sides)}
            if t.vertices is not None:
                entry["vertices"] = list(t.vertices)
            tris.append(entry)
    topo = T.topology
    return {
        "schema": 1,
        "topology": {"genus": topo.genus,
                     "boundary_components": topo.boundary_components,
                     "punctures": topo.punctures,
                     "boundary_marked": topo.boundary_marked},
        "arcs": list(T.arcs),
        "boundary": list(T.boundary),
        "punctures": list(T.punctures),
        "triangles": tris,
    }


def parse_seed(data: bytes):
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"seed file is not valid JSON: {exc}") from exc
    _require_keys(obj, {"schema", "matrix", "names"}, "seed")
    if obj.get("schema") != 1:
        raise ParseError("seed: unsupported schema version")
    matrix = obj.get("matrix")
    if not matrix or any(not isinstance(r, list) for r in matrix):
        raise ParseError("seed: matrix must be a list of rows")
    n = len(matrix[0])
    names = [str(x) for x in obj.get("names", [str(i + 1) for i in range(n)])]
    rows = [[int(x) for x in r] for r in matrix]
    if len(rows) == n:
        return principal_seed(rows, names)
    if len(rows) < n:
        raise ParseError("seed: matrix must be n x n or (n+m) x n")
    B = rows[:n]
    for i in range(n):
        for j in range(n):
            if B[i][j] != -B[j][i]:
                raise ValidationError("seed: top block is not skew-symmetric")
    m = len(rows) - n
    frozen = names if m == n else [f"u{i+1}" for i in range(m)]
    from .mutation import geometric_seed
    return geometric_seed(rows, names, frozen)


def _expand_arc(T: Triangulation, arc, ref: TaggedArcRef,
                orientation: str) -> Expansion:
    n = int(ref.notch_start) + int(ref.notch_end)
    if isinstance(arc, CrossingPath) and arc.d > 0 and n > 0:
        pstart = T.vertex_name(*arc.start)
        pend = T.vertex_name(*arc.end)
        if pstart == pend and pstart in T.punctures:
            return expand_notched_loop(T, arc, notches=n, orientation=orientation)
    if n == 0:
        return expand_ordinary(T, arc)
    if n == 1:
        path = arc
        if isinstance(arc, CrossingPath) and ref.notch_start and not ref.notch_end:
            path = arc.reversed()
        return expand_single_notch(T, path)
    return expand_double_notch(T, arc)


def _expansion_json(e: Expansion) -> dict:
    def poly_terms(p: LaurentPoly):
        out = []
        for ev, c in sorted(p.terms()):
            out.append({"coeff": c,
                        "exponents": {v.text(): e for v, e in ev}})
        return out
    return {"poly": poly_terms(e.poly),
            "numerator": poly_terms(e.numerator),
            "crossing": poly_terms(e.cross),
            "matchings": e.matchings_used}


def _load(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _cmd_expand(args) -> int:
    T = parse_surface(_load(args.surface))
    arc, ref, orientation = parse_arc(_load(args.arc), T)
    if args.notch:
        punctures = args.notch.split(",")
        if len(punctures) == 1:
            e = expand_single_notch(T, arc, punctures[0])
        else:
            e = expand_double_notch(T, arc, punctures[0], punctures[1])
    else:
        e = _expand_arc(T, arc, ref, args.orientation or orientation)
    if args.command == "fpoly":
        out = f_polynomial(e)
        print(json.dumps({"fpoly": _expansion_json(e)["poly"]})
              if args.json else out.canonical_text())
    elif args.command == "gvector":
        B = signed_adjacency(T)
        vec = g_vector(e, B, T.tagged_names())
        print(json.dumps(vec) if args.json else " ".join(map(str, vec)))
    else:
        print(json.dumps(_expansion_json(e), sort_keys=True)
              if args.json else e.display())
    return 0


def _cmd_matchings(args) -> int:
    T = parse_surface(_load(args.surface))
    arc, ref, _ = parse_arc(_load(args.arc), T)
    if not isinstance(arc, CrossingPath):
        raise ValidationError("matchings needs a crossing path")
    g = build_snake(T, arc)
    minus, _ = minimal_maximal(g)
    for P in enumerate_matchings(g):
        edges = ",".join(str(e) for e in sorted(P))
        w = matching_weight(g, P, T)
        m = height_exponents(g, P, minus)
        h = " ".join(f"h_{k}^{v}" for k, v in sorted(m.items())) or "1"
        y = phi_specialize(m, T)
        print(f"{edges}\t{w.canonical_text()}\t{h}\t{y.canonical_text()}")
    return 0


def _cmd_snake(args) -> int:
    T = parse_surface(_load(args.surface))
    arc, ref, _ = parse_arc(_load(args.arc), T)
    if not isinstance(arc, CrossingPath):
        raise ValidationError("snake needs a crossing path")
    g = build_snake(T, arc)
    if args.dot:
        print(_dot(g))
    else:
        print(dump_snake(g))
    return 0


def _dot(g) -> str:
    lines = ["graph snake {"]
    for e in g.edges:
        (x1, y1), (x2, y2) = e.segment
        a, b = g.edge_vertices(e)
        lines.append(f'  v{a} -- v{b} [label="{e.label}"];')
    for k, t in enumerate(g.tiles):
        lines.append(f'  // tile {k} diag={t.diagonal} rel={t.rel:+d} '
                     f'pos=({t.pos[0]},{t.pos[1]})')
    lines.append("}")
    return "\n".join(lines)


def _cmd_mutate(args) -> int:
    seed = parse_seed(_load(args.seed))
    ks = [int(x) - 1 for x in args.sequence.split(",")] if args.sequence else []
    out = run_sequence(seed, ks)
    for i, x in enumerate(out.cluster):
        print(f"x{i+1} = {x.canonical_text()}")
    for i, y in enumerate(tropical_coeffs(out)):
        print(f"y{i+1} = {y.canonical_text()}")
    return 0


def _cmd_verify(args) -> int:
    try:
        obj = json.loads(_load(args.bundle))
    except json.JSONDecodeError as exc:
        raise ParseError(f"bundle is not valid JSON: {exc}") from exc
    _require_keys(obj, {"schema", "surface", "cases"}, "bundle")
    T = parse_surface(json.dumps(obj["surface"]).encode())
    B = signed_adjacency(T)
    names = T.tagged_names()
    seed0 = principal_seed(B, names)
    failures = 0
    for i, case in enumerate(obj.get("cases", [])):
        _require_keys(case, {"arc", "sequence", "index", "name"}, f"case {i}")
        arc, ref, orientation = parse_arc(json.dumps(case["arc"]).encode(), T)
        e = _expand_arc(T, arc, ref, orientation)
        seq = [int(k) - 1 for k in case["sequence"]]
        idx = int(case["index"]) - 1
        oracle = run_sequence(seed0, seq).cluster[idx]
        name = case.get("name", f"case {i}")
        if e.poly == oracle:
            print(f"{name}: EQUAL")
        else:
            print(f"{name}: DIFFER")
            failures += 1
    return EXIT_VERIFY if failures else 0


def main(argv: Optional[List[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="surfcluster")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("expand", "fpoly", "gvector"):
        p = sub.add_parser(name)
        p.add_argument("--surface", required=True)
        p.add_argument("--arc", required=True)
        p.add_argument("--notch", default=None,
                       help="puncture (or p,q) to notch at")
        p.add_argument("--orientation", choices=("ccw", "cw"), default=None)
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=_cmd_expand)
    p = sub.add_parser("matchings")
    p.add_argument("--surface", required=True)
    p.add_argument("--arc", required=True)
    p.set_defaults(func=_cmd_matchings)
    p = sub.add_parser("snake")
    p.add_argument("--surface", required=True)
    p.add_argument("--arc", required=True)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_snake)
    p = sub.add_parser("mutate")
    p.add_argument("--seed", required=True)
    p.add_argument("--sequence", default="")
    p.set_defaults(func=_cmd_mutate)
    p = sub.add_parser("verify")
    p.add_argument("--bundle", required=True)
    p.set_defaults(func=_cmd_verify)

    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, SurfaceError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ArithmeticError, ValueError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
