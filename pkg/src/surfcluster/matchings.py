"""Perfect matchings of snake graphs: enumeration, extremal matchings,
heights, weights, and the symmetric/compatible selections for loop graphs.

A matching is a frozenset of edge ids.  Enumeration runs a dynamic program
along the tile order whose state is the coverage of the vertices shared with
later tiles; results are returned sorted by their edge-id tuples so every
run produces the same order.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .poly import LaurentPoly, xvar, yvar
from .snake import LoopGraph, SnakeGraph
from .surface import SurfaceError, Triangulation

__all__ = [
    "Matching",
    "NotAMatching",
    "enumerate_matchings",
    "boundary_matchings",
    "minimal_maximal",
    "height_exponents",
    "phi_specialize",
    "x_of_label",
    "matching_weight",
    "gamma_symmetric_filter",
    "perfect_end_restriction",
    "restriction_subgraph",
    "compatible_pairs",
]

Matching = FrozenSet[int]


class NotAMatching(SurfaceError):
    pass


def _vertex_incidence(g: SnakeGraph) -> Dict[int, List[int]]:
    inc: Dict[int, List[int]] = {v: [] for v in range(g.nvertices)}
    for e in g.edges:
        a, b = g.edge_vertices(e)
        inc[a].append(e.eid)
        inc[b].append(e.eid)
    return inc


def _enumerate(g: SnakeGraph, allowed: Optional[set] = None) -> List[Matching]:
    d = g.d
    # last tile in which each vertex occurs
    v_last: Dict[int, int] = {}
    tile_vs: List[List[int]] = []
    for k in range(d):
        vs = [g.vertex_of[(k, c)] for c in ("SW", "SE", "NE", "NW")]
        tile_vs.append(vs)
        for v in vs:
            v_last[v] = k
    # tile at which each edge is decided: its first tile
    cand: List[List[int]] = [[] for _ in range(d)]
    for e in g.edges:
        if allowed is not None and e.eid not in allowed:
            continue
        cand[min(t for t, _ in e.tiles)].append(e.eid)
    ends = {e.eid: g.edge_vertices(e) for e in g.edges}

    states: Dict[FrozenSet[int], List[Tuple[int, ...]]] = {frozenset(): [()]}
    for k in range(d):
        new_states: Dict[FrozenSet[int], List[Tuple[int, ...]]] = {}
        local = set(tile_vs[k])
        closing = {v for v in local if v_last[v] == k}
        es = sorted(cand[k])
        for cov, partials in states.items():
            for r in range(len(es) + 1):
                for chosen in combinations(es, r):
                    touched: Dict[int, int] = {}
                    ok = True
                    for eid in chosen:
                        for v in ends[eid]:
                            touched[v] = touched.get(v, 0) + 1
                            if touched[v] > 1 or v in cov:
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        continue
                    for v in closing:
                        if v not in cov and touched.get(v, 0) != 1:
                            ok = False
                            break
                    if not ok:
                        continue
                    ncov = {v for v in cov if v_last[v] > k}
                    ncov.update(v for v in touched if v_last[v] > k)
                    key = frozenset(ncov)
                    bucket = new_states.setdefault(key, [])
                    for p in partials:
                        bucket.append(p + chosen)
        states = new_states
    done = states.get(frozenset(), [])
    return sorted(frozenset(p) for p in done)


def enumerate_matchings(g: SnakeGraph) -> List[Matching]:
    """All perfect matchings, ordered by their sorted edge-id tuples."""
    return _enumerate(g)


def boundary_matchings(g: SnakeGraph) -> List[Matching]:
    allowed = {e.eid for e in g.edges if e.boundary}
    return _enumerate(g, allowed)


def minimal_maximal(g: SnakeGraph) -> Tuple[Matching, Matching]:
    """The two boundary-only matchings, (minimal, maximal)."""
    bms = boundary_matchings(g)
    if len(bms) != 2:
        raise NotAMatching(f"expected two boundary matchings, found {len(bms)}")
    avoid = {g.tiles[0].slot_edge[s] for s in g.minus_avoid_slots}
    minus = [m for m in bms if not (m & avoid)]
    if len(minus) != 1:
        raise NotAMatching("the minimal matching is not determined")
    pm = minus[0]
    pp = bms[0] if bms[1] == pm else bms[1]
    return pm, pp


def _check_matching(g: SnakeGraph, P: Matching) -> None:
    seen: Dict[int, int] = {}
    for eid in P:
        for v in g.edge_vertices(g.edges[eid]):
            seen[v] = seen.get(v, 0) + 1
    if len(seen) != g.nvertices or any(c != 1 for c in seen.values()):
        raise NotAMatching("edge set does not cover every vertex exactly once")


def _cycles(g: SnakeGraph, edges: Iterable[int]) -> List[List[int]]:
    inc: Dict[int, List[int]] = {}
    for eid in edges:
        for v in g.edge_vertices(g.edges[eid]):
            inc.setdefault(v, []).append(eid)
    for v, es in inc.items():
        if len(es) != 2:
            raise NotAMatching("symmetric difference is not a union of cycles")
    unused = set(e for es in inc.values() for e in es)
    cycles = []
    while unused:
        start = next(iter(unused))
        cyc = [start]
        unused.discard(start)
        a, b = g.edge_vertices(g.edges[start])
        v = b
        while True:
            nxt = [e for e in inc[v] if e in unused]
            if not nxt:
                break
            e = nxt[0]
            unused.discard(e)
            cyc.append(e)
            va, vb = g.edge_vertices(g.edges[e])
            v = vb if va == v else va
        cycles.append(cyc)
    return cycles


def height_exponents(g: SnakeGraph, P: Matching,
                     minus: Optional[Matching] = None) -> Dict[str, int]:
    """Tiles enclosed by the cycles of P-minus symmetric difference,
    grouped by diagonal label."""
    _check_matching(g, P)
    if minus is None:
        minus, _ = minimal_maximal(g)
    sym = minus ^ P
    m: Dict[str, int] = {}
    for cyc in _cycles(g, sym):
        segs = [g.edges[eid].segment for eid in cyc]
        horiz = [(a, b) for a, b in segs if a[1] == b[1]]
        for k, tile in enumerate(g.tiles):
            cx, cy = tile.pos
            crossings = 0
            for (x1, y1), (x2, y2) in horiz:
                if min(x1, x2) == cx and y1 >= cy + 1:
                    crossings += 1
            if crossings % 2 == 1:
                m[tile.diagonal] = m.get(tile.diagonal, 0) + 1
    return m


def phi_exps(m: Dict[str, int], T: Triangulation) -> Dict:
    """Exponent map of the specialized height monomial: radii become
    y_r / y_notched, loops become y_notched, everything else stays y_arc."""
    exps: Dict = {}

    def bump(name: str, e: int) -> None:
        v = yvar(name)
        ne = exps.get(v, 0) + e
        if ne:
            exps[v] = ne
        else:
            exps.pop(v, None)

    for label, e in m.items():
        if e == 0:
            continue
        sf = T.loop_triangle(label)
        if sf is not None:
            bump(T.notched_twin(sf.radius), e)
            continue
        sf = T.radius_triangle(label)
        if sf is not None:
            bump(label, e)
            bump(T.notched_twin(label), -e)
            continue
        bump(label, e)
    return exps


def phi_specialize(m: Dict[str, int], T: Triangulation) -> LaurentPoly:
    return LaurentPoly.monomial(1, phi_exps(m, T))


def x_exps_of_label(T: Triangulation, label: str) -> Dict:
    """Exponent map of an edge label's weight: boundary segments weigh 1,
    self-folded loops weigh radius times notched twin."""
    if T.is_boundary(label):
        return {}
    sf = T.loop_triangle(label)
    if sf is not None:
        return {xvar(sf.radius): 1, xvar(T.notched_twin(sf.radius)): 1}
    return {xvar(label): 1}


def x_of_label(T: Triangulation, label: str) -> LaurentPoly:
    return LaurentPoly.monomial(1, x_exps_of_label(T, label))


def weight_exps(g: SnakeGraph, edges: Iterable[int], T: Triangulation) -> Dict:
    out: Dict = {}
    for eid in edges:
        for v, e in x_exps_of_label(T, g.edges[eid].label).items():
            out[v] = out.get(v, 0) + e
    return out


def matching_weight(g: SnakeGraph, P: Matching, T: Triangulation) -> LaurentPoly:
    return LaurentPoly.monomial(1, weight_exps(g, P, T))


# ---------------------------------------------------------------------------
# loop graphs: symmetric matchings and compatible pairs

Role = Tuple[int, str, int]


def _role_sets(lg: LoopGraph, P: Matching, which: int) -> Dict[Role, int]:
    roles = lg.end_roles[which]
    return {roles[e]: e for e in P if e in roles}


def _v_roles(lg: LoopGraph) -> set:
    return {(lg.d - 1, "upper", 0), (lg.d - 1, "upper", 1)}


def gamma_symmetric_filter(lg: LoopGraph, matchings: Iterable[Matching]) -> List[Matching]:
    """Matchings whose restrictions to the two trimmed ends agree under the
    structural end isomorphism."""
    vr = _v_roles(lg)
    out = []
    for P in matchings:
        r1 = set(_role_sets(lg, P, 1)) - vr
        r2 = set(_role_sets(lg, P, 2)) - vr
        if r1 == r2:
            out.append(P)
    return out


def _end_vertices(lg: LoopGraph, which: int) -> set:
    g = lg.graph
    rng = range(lg.d) if which == 1 else range(lg.d + lg.e_p, g.d)
    return {g.vertex_of[(t, c)] for t in rng for c in ("SW", "SE", "NE", "NW")}


def perfect_end_restriction(lg: LoopGraph, P: Matching) -> Tuple[int, Dict[Role, int]]:
    """The end on which P restricts to a perfect matching, with the roles of
    the restricted edges.  Raises when neither end works."""
    g = lg.graph
    for which in (1, 2):
        roles = lg.end_roles[which]
        restr = [e for e in P if e in roles]
        cover: Dict[int, int] = {}
        for e in restr:
            for v in g.edge_vertices(g.edges[e]):
                cover[v] = cover.get(v, 0) + 1
        vs = _end_vertices(lg, which)
        if all(cover.get(v, 0) == 1 for v in vs) and \
                all(v in vs for v in cover):
            return which, {roles[e]: e for e in restr}
    raise NotAMatching("matching restricts to a perfect matching on neither end")


def restriction_subgraph(lg: LoopGraph) -> Tuple[SnakeGraph, Dict[int, int]]:
    """The canonical arc snake graph (end 1) plus old-to-new edge id map."""
    return lg.graph.subgraph(0, lg.d)


def restriction_in_subgraph(lg: LoopGraph, rest_roles: Dict[Role, int],
                            sub_map: Dict[int, int]) -> Matching:
    """Express a full-end restriction as a matching of the end-1 subgraph."""
    roles1 = lg.end_roles[1]
    by_role = {r: e for e, r in roles1.items()}
    out = []
    for role in rest_roles:
        e1 = by_role[role]
        out.append(sub_map[e1])
    return frozenset(out)


def compatible_pairs(lp: LoopGraph, lq: LoopGraph,
                     sym_p: Optional[List[Matching]] = None,
                     sym_q: Optional[List[Matching]] = None,
                     ) -> List[Tuple[Matching, Matching]]:
    """Pairs of symmetric matchings whose perfect end restrictions agree.

    lp is the loop graph of the arc oriented toward its first puncture and lq
    the one of the reversed arc, so lq's canonical tile order is flipped
    before comparing.
    """
    if lp.d != lq.d:
        raise SurfaceError("loop graphs come from different arcs")
    d = lp.d
    if sym_p is None:
        sym_p = gamma_symmetric_filter(lp, enumerate_matchings(lp.graph))
    if sym_q is None:
        sym_q = gamma_symmetric_filter(lq, enumerate_matchings(lq.graph))

    def flip(role: Role) -> Role:
        if role[0] == "glue":
            return ("glue", d - 2 - role[1])
        t, tri, r = role
        return (d - 1 - t, "upper" if tri == "lower" else "lower", r)

    def key_p(P):
        _, roles = perfect_end_restriction(lp, P)
        return frozenset(roles)

    def key_q(P):
        _, roles = perfect_end_restriction(lq, P)
        return frozenset(flip(r) for r in roles)

    by_key: Dict[FrozenSet[Role], List[Matching]] = {}
    for Q in sym_q:
        by_key.setdefault(key_q(Q), []).append(Q)
    out = []
    for P in sym_p:
        for Q in by_key.get(key_p(P), []):
            out.append((P, Q))
    return out
