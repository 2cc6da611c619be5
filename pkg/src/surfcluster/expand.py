"""Laurent expansions of cluster variables attached to tagged arcs.

Ordinary arcs sum matching weights times specialized heights over the snake
graph; arcs notched at one puncture sum over symmetric matchings of the loop
graph around that puncture; arcs notched at both ends sum over compatible
pairs of matchings of the two loop graphs.  Initial arcs and arcs of the
triangulation are dispatched to their closed forms automatically.

Expansions keep the numerator and the crossing monomial separate (the
fraction is not reduced); equality testing and the `poly` field use the exact
quotient, which is a Laurent polynomial since the denominator is a monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .poly import LaurentPoly, VarId, xvar, yvar
from .matchings import (
    compatible_pairs,
    enumerate_matchings,
    gamma_symmetric_filter,
    height_exponents,
    minimal_maximal,
    perfect_end_restriction,
    phi_exps,
    phi_specialize,
    restriction_in_subgraph,
    weight_exps,
    x_of_label,
)
from .snake import (
    EndpointNotPuncture,
    LoopGraph,
    NotchedTrianglePresent,
    build_loop_graph,
    build_snake,
)
from .surface import (
    Crossing,
    CrossingPath,
    PathInvalid,
    SelfFolded,
    SurfaceError,
    TaggedArcRef,
    Triangulation,
    arcs_around_puncture,
    corner_walk,
    puncture_corner,
    third_arc,
)

__all__ = [
    "Expansion",
    "ForbiddenSurface",
    "InhomogeneousExpansion",
    "crossing_monomial",
    "expand_ordinary",
    "expand_single_notch",
    "expand_double_notch",
    "expand_notched_loop",
    "z_factor",
    "f_polynomial",
    "g_vector",
    "euler_table",
    "retag_expansion",
]


class ForbiddenSurface(SurfaceError):
    pass


class InhomogeneousExpansion(ArithmeticError):
    pass


@dataclass
class Expansion:
    poly: LaurentPoly                     # exact quotient numerator/cross
    numerator: LaurentPoly
    cross: LaurentPoly                    # a monomial
    arc: TaggedArcRef
    matchings_used: int
    records: Optional[Tuple[LaurentPoly, ...]] = None  # y-monomial per matching

    def __eq__(self, other) -> bool:
        if isinstance(other, Expansion):
            return self.poly == other.poly
        if isinstance(other, LaurentPoly):
            return self.poly == other
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def display(self) -> str:
        """Canonical text with the common monomial factor cancelled."""
        num, den = reduced_fraction(self.numerator, self.cross)
        if den.is_one():
            return num.canonical_text()
        return f"({num.canonical_text()}) / ({den.canonical_text()})"


def reduced_fraction(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """Cancel the largest common monomial factor of a monomial-denominator
    fraction."""
    _, dexp = den.monomial_parts()
    common: Dict[VarId, int] = {}
    vars_all = set(dexp) | {v for ev, _ in num.terms() for v, _ in ev}
    for v in vars_all:
        lo = dexp.get(v, 0)
        for ev, _ in num.terms():
            e = dict(ev).get(v, 0)
            lo = min(lo, e)
        if lo:
            common[v] = lo
    if not common:
        return num, den
    shift = LaurentPoly.monomial(1, {v: -e for v, e in common.items()})
    return num.mul(shift), den.mul(shift)


def _puncture_at(T: Triangulation, spot: Tuple[int, str]) -> Optional[str]:
    name = T.vertex_name(*spot)
    return name if name in T.punctures else None


def _ends_product(T: Triangulation, p: str) -> LaurentPoly:
    out = LaurentPoly.one()
    for arc in arcs_around_puncture(T, p):
        out = out.mul(x_of_label(T, arc))
    return out


def crossing_monomial(T: Triangulation, path: Union[CrossingPath, str],
                      notches: int = 0, p: Optional[str] = None,
                      q: Optional[str] = None) -> LaurentPoly:
    """Product of the crossed-arc weights, extended by the arc ends at each
    notched puncture."""
    out = LaurentPoly.one()
    if isinstance(path, CrossingPath):
        for arc in path.crossed_arcs():
            out = out.mul(x_of_label(T, arc))
        if notches >= 1 and p is None:
            p = _puncture_at(T, path.end)
        if notches == 2 and q is None:
            q = _puncture_at(T, path.start)
    if notches >= 1:
        if p is None:
            raise EndpointNotPuncture("notched end is not at a puncture")
        out = out.mul(_ends_product(T, p))
    if notches == 2:
        if q is None:
            raise EndpointNotPuncture("second notched end is not at a puncture")
        out = out.mul(_ends_product(T, q))
    return out


def _heights_y(T: Triangulation, m: Dict[str, int]) -> LaurentPoly:
    return phi_specialize(m, T)


def _merge(*exp_maps) -> Dict:
    out: Dict = {}
    for exps in exp_maps:
        for v, e in exps.items():
            ne = out.get(v, 0) + e
            if ne:
                out[v] = ne
            else:
                del out[v]
    return out


def _scale(exps: Dict, k: int) -> Dict:
    return {v: k * e for v, e in exps.items()}


def _acc(acc: Dict, exps: Dict, coeff: int = 1) -> None:
    key = tuple(sorted(exps.items()))
    acc[key] = acc.get(key, 0) + coeff


def _acc_poly(acc: Dict) -> LaurentPoly:
    return LaurentPoly({k: c for k, c in acc.items() if c})


def expand_ordinary(T: Triangulation, gamma: Union[CrossingPath, str],
                    mirror: bool = False) -> Expansion:
    """Matching-sum expansion of an ordinary arc (or an arc of the
    triangulation, which is its own variable)."""
    if isinstance(gamma, str):
        x = x_of_label(T, gamma)
        ref = TaggedArcRef(gamma)
        return Expansion(x, x, LaurentPoly.one(), ref, 1, (LaurentPoly.one(),))
    g = build_snake(T, gamma, mirror=mirror)
    minus, _ = minimal_maximal(g)
    acc: Dict = {}
    records = []
    for P in enumerate_matchings(g):
        w = weight_exps(g, P, T)
        y = phi_exps(height_exponents(g, P, minus), T)
        records.append(LaurentPoly.monomial(1, y))
        _acc(acc, _merge(w, y))
    num = _acc_poly(acc)
    cross = crossing_monomial(T, gamma)
    poly = num.div_exact(cross)
    return Expansion(poly, num, cross, TaggedArcRef(gamma), len(records),
                     tuple(records))


def _restriction_data(T: Triangulation, lg: LoopGraph):
    """Cache: end-1 subgraph, its edge map, and its minimal matching."""
    sub, emap = lg.graph.subgraph(0, lg.d)
    sub_minus, _ = minimal_maximal(sub)
    return sub, emap, sub_minus


def _symmetric_term(T: Triangulation, lg: LoopGraph, P, sub, emap, sub_minus,
                    lp_minus):
    """Weight and height exponent maps of one symmetric matching, divided by
    its perfect end restriction; plus the restriction's role key."""
    which, roles = perfect_end_restriction(lg, P)
    w_full = weight_exps(lg.graph, P, T)
    w_restr = weight_exps(lg.graph, roles.values(), T)
    xbar = _merge(w_full, _scale(w_restr, -1))

    m_full = height_exponents(lg.graph, P, lp_minus)
    sub_P = restriction_in_subgraph(lg, roles, emap)
    m_restr = height_exponents(sub, sub_P, sub_minus)
    m = _merge(m_full, _scale(m_restr, -1))
    ybar = phi_exps(m, T)
    return xbar, ybar, frozenset(roles)


def expand_single_notch(T: Triangulation, gamma: Union[CrossingPath, str],
                        p: Optional[str] = None,
                        mirror: bool = False) -> Expansion:
    """Expansion of the arc notched at the puncture its path ends at."""
    if isinstance(gamma, str):
        return _single_notch_initial(T, gamma, p)
    if p is None:
        p = _puncture_at(T, gamma.end)
    if p is None:
        raise EndpointNotPuncture("path does not end at a puncture")
    lg = build_loop_graph(T, gamma, p, mirror=mirror)
    lp_minus, _ = minimal_maximal(lg.graph)
    sub, emap, sub_minus = _restriction_data(T, lg)
    acc: Dict = {}
    records = []
    count = 0
    for P in gamma_symmetric_filter(lg, enumerate_matchings(lg.graph)):
        xbar, ybar, _ = _symmetric_term(T, lg, P, sub, emap, sub_minus, lp_minus)
        records.append(LaurentPoly.monomial(1, ybar))
        _acc(acc, _merge(xbar, ybar))
        count += 1
    num = _acc_poly(acc)
    cross = crossing_monomial(T, gamma, notches=1, p=p)
    ref = TaggedArcRef(gamma, notch_end=True)
    return Expansion(num.div_exact(cross), num, cross, ref, count, tuple(records))


def _single_notch_initial(T: Triangulation, arc: str, p: Optional[str]) -> Expansion:
    """Notched version of an arc of the triangulation: the loop expansion
    divided by the arc's own variable."""
    sf = T.radius_triangle(arc)
    if sf is not None and (p is None or sf.puncture == p):
        # the enclosing loop is already an arc of the triangulation
        twin = LaurentPoly.var(xvar(T.notched_twin(arc)))
        ref = TaggedArcRef(arc, notch_end=True)
        return Expansion(twin, twin, LaurentPoly.one(), ref, 1,
                         (LaurentPoly.one(),))
    if p is None:
        ends = _arc_puncture_ends(T, arc)
        if len(set(ends)) != 1:
            raise EndpointNotPuncture(
                f"cannot infer the notched puncture of {arc!r}")
        p = ends[0]
    lp_path = _loop_path_around(T, p, arc)
    e = expand_ordinary(T, lp_path)
    cross = e.cross.mul(LaurentPoly.var(xvar(arc)))
    ref = TaggedArcRef(arc, notch_end=True)
    return Expansion(e.numerator.div_exact(cross), e.numerator, cross, ref,
                     e.matchings_used, e.records)


def _loop_path_around(T: Triangulation, p: str, arc: str) -> CrossingPath:
    """Crossing path of the loop based at the far end of `arc` that cuts out
    a once-punctured monogon around p (for arcs of the triangulation)."""
    if any(isinstance(t, SelfFolded) and t.puncture == p for t in T.triangles):
        raise NotchedTrianglePresent(
            f"an arc of the triangulation is notched at {p!r}")
    walk = corner_walk(T, puncture_corner(T, p))
    e_p = len(walk)
    pos = [i for i, (_, a) in enumerate(walk) if a == arc]
    if not pos:
        raise EndpointNotPuncture(f"arc {arc!r} has no end at {p!r}")
    i = pos[0]
    seq = [walk[(i + 1 + s) % e_p] for s in range(e_p - 1)]
    if len(seq) < 1:
        raise PathInvalid("loop around the puncture crosses nothing")
    start_tri = seq[0][0][0]
    # start vertex: opposite the first crossed arc in the start triangle
    first_arc = seq[0][1]
    crossings = []
    for s, (corner, a) in enumerate(seq):
        nxt = seq[s + 1][0][0] if s + 1 < len(seq) else walk[i][0][0]
        wind = "ccw" if T.radius_triangle(a) is not None else None
        crossings.append(Crossing(a, nxt, wind))
    end_tri = walk[i][0][0]
    last_arc = seq[-1][1]
    return CrossingPath((start_tri, first_arc), tuple(crossings),
                        (end_tri, last_arc))


def _check_not_two_marked_closed(T: Triangulation) -> None:
    topo = T.topology
    if topo.boundary_components == 0 and \
            topo.punctures + topo.boundary_marked == 2:
        raise ForbiddenSurface(
            "closed surface with exactly two marked points is not supported")


def expand_double_notch(T: Triangulation, gamma: Union[CrossingPath, str],
                        p: Optional[str] = None, q: Optional[str] = None,
                        mirror: bool = False) -> Expansion:
    """Expansion of the arc between punctures p and q notched at both."""
    _check_not_two_marked_closed(T)
    if isinstance(gamma, str):
        return _double_notch_initial(T, gamma, p, q)
    if p is None:
        p = _puncture_at(T, gamma.end)
    if q is None:
        q = _puncture_at(T, gamma.start)
    if p is None or q is None:
        raise EndpointNotPuncture("both endpoints must be punctures")
    if p == q:
        return expand_notched_loop(T, gamma, notches=2, mirror=mirror)
    lp = build_loop_graph(T, gamma, p, mirror=mirror)
    lq = build_loop_graph(T, gamma.reversed(), q, mirror=mirror)
    return _pair_sum(T, gamma, lp, lq, p, q, double_puncture=False)


def _pair_sum(T: Triangulation, gamma: CrossingPath, lp: LoopGraph,
              lq: LoopGraph, p: str, q: str, double_puncture: bool) -> Expansion:
    lp_minus, _ = minimal_maximal(lp.graph)
    lq_minus, _ = minimal_maximal(lq.graph)
    subp, emapp, subp_minus = _restriction_data(T, lp)
    subq, emapq, subq_minus = _restriction_data(T, lq)
    sym_p = gamma_symmetric_filter(lp, enumerate_matchings(lp.graph))
    sym_q = gamma_symmetric_filter(lq, enumerate_matchings(lq.graph))
    pairs = compatible_pairs(lp, lq, sym_p, sym_q)

    terms_p = {P: _symmetric_term(T, lp, P, subp, emapp, subp_minus, lp_minus)
               for P in sym_p}
    # for the q side the restriction divides twice more (cube in total)
    q_cache = {}
    for Q in sym_q:
        w_q = weight_exps(lq.graph, Q, T)
        m_q = height_exponents(lq.graph, Q, lq_minus)
        whichq, rolesq = perfect_end_restriction(lq, Q)
        w_rq = weight_exps(lq.graph, rolesq.values(), T)
        sub_Q = restriction_in_subgraph(lq, rolesq, emapq)
        m_rq = height_exponents(subq, sub_Q, subq_minus)
        xq = _merge(w_q, _scale(w_rq, -2))
        yq = phi_exps(_merge(m_q, _scale(m_rq, -2)), T)
        q_cache[Q] = (xq, yq)
    acc: Dict = {}
    records = []
    for P, Q in pairs:
        xbar_p, ybar_p, roles_p = terms_p[P]
        xq, yq = q_cache[Q]
        yy = _merge(ybar_p, yq)
        records.append(LaurentPoly.monomial(1, yy))
        _acc(acc, _merge(xbar_p, xq, yy))
    num = _acc_poly(acc)
    if double_puncture:
        cross = crossing_monomial(T, gamma, notches=1, p=p)
        cross = cross.mul(_ends_product(T, p))
    else:
        cross = crossing_monomial(T, gamma, notches=2, p=p, q=q)
    ref = TaggedArcRef(gamma, notch_start=True, notch_end=True)
    poly = num.div_exact(cross)
    return Expansion(poly, num, cross, ref, len(pairs), tuple(records))


def _y_ends_product(T: Triangulation, p: str) -> LaurentPoly:
    """Product of y over arc ends at p, with self-folded substitutions."""
    m: Dict[str, int] = {}
    for arc in arcs_around_puncture(T, p):
        m[arc] = m.get(arc, 0) + 1
    return phi_specialize(m, T)


def _double_notch_initial(T: Triangulation, arc: str, p: Optional[str],
                          q: Optional[str]) -> Expansion:
    """Closed form for an arc of the triangulation joining two punctures."""
    if p is None or q is None:
        ends = _arc_puncture_ends(T, arc)
        if len(ends) != 2:
            raise EndpointNotPuncture(
                f"arc {arc!r} does not join two punctures")
        p, q = ends
    xp = expand_single_notch(T, arc, p).poly
    xq = expand_single_notch(T, arc, q).poly
    y_arc = LaurentPoly.var(yvar(T.tagged_name(arc)))
    one = LaurentPoly.one()
    num = xp.mul(xq).mul(y_arc).add(
        one.sub(_y_ends_product(T, p)).mul(one.sub(_y_ends_product(T, q))))
    poly = num.div_exact(LaurentPoly.var(xvar(arc)))
    ref = TaggedArcRef(arc, notch_start=True, notch_end=True)
    return Expansion(poly, poly, LaurentPoly.one(), ref, 0, None)


def _arc_puncture_ends(T: Triangulation, arc: str) -> List[str]:
    out = []
    for pp in T.punctures:
        out.extend(pp for a in arcs_around_puncture(T, pp) if a == arc)
    return out


def expand_notched_loop(T: Triangulation, rho: CrossingPath, notches: int,
                        orientation: str = "ccw",
                        mirror: bool = False) -> Expansion:
    """Notched versions of a loop based at a puncture.

    The singly-notched loop is not a cluster variable; it is the formal
    matching sum over the self-intersecting loop graph obtained by following
    the loop, circling the puncture and doubling back.  The orientation
    selects which of the two such elements is computed ("cw" uses the
    reversed loop); the doubly-notched loop pairs both and is
    orientation-independent.
    """
    if notches not in (1, 2):
        raise ValueError("notches must be 1 or 2")
    p = _puncture_at(T, rho.end)
    p0 = _puncture_at(T, rho.start)
    if p is None or p0 != p:
        raise EndpointNotPuncture("notched loops must begin and end at one puncture")
    oriented = rho if orientation == "ccw" else rho.reversed()
    if notches == 1:
        e = expand_single_notch(T, oriented, p, mirror=mirror)
        return Expansion(e.poly, e.numerator, e.cross,
                         TaggedArcRef(rho, notch_end=True), e.matchings_used,
                         e.records)
    lp = build_loop_graph(T, oriented, p, mirror=mirror)
    lq = build_loop_graph(T, oriented.reversed(), p, mirror=mirror)
    return _pair_sum(T, oriented, lp, lq, p, p, double_puncture=True)


# ---------------------------------------------------------------------------
# z factors, F-polynomials, g-vectors, tables


def z_factor(T: Triangulation, p: str) -> LaurentPoly:
    """The coefficient-free factor relating an arc to its notched version."""
    walk = corner_walk(T, puncture_corner(T, p))
    h = len(walk)
    if h == 1:
        (corner, arc) = walk[0]
        sf = T.radius_triangle(arc)
        if sf is None or sf.puncture != p:
            raise SurfaceError("single incident arc is not a self-folded radius")
        return LaurentPoly.monomial(
            1, {xvar(T.notched_twin(arc)): 1, xvar(arc): -1})
    arcs = [a for _, a in walk]
    corners = [c for c, _ in walk]
    num = LaurentPoly.zero()
    for i in range(h):
        # bracket of (arcs[i], arcs[i+1]): third side of the corner triangle
        corner = corners[(i + 1) % h]
        tri = corner[0]
        bracket = third_arc(T, arcs[i], arcs[(i + 1) % h], tri)
        term = x_of_label(T, bracket)
        for j in range(h):
            if j != i and j != (i + 1) % h:
                term = term.mul(x_of_label(T, arcs[j]))
        num = num.add(term)
    den = LaurentPoly.one()
    for a in arcs:
        den = den.mul(x_of_label(T, a))
    return num.div_exact(den)


def f_polynomial(e: Expansion) -> LaurentPoly:
    """Set every cluster variable to 1."""
    if e.records is not None:
        out = LaurentPoly.zero()
        for y in e.records:
            out = out.add(y)
        return out
    bind = {v: LaurentPoly.one() for v in e.poly.variables() if v.kind == "x"}
    return e.poly.substitute(bind)


def _term_degree(ev, index: Dict[str, int], B: Sequence[Sequence[int]]):
    # deg(x_i) = e_i; deg(y_j) reads off row j of the signed adjacency
    # matrix, which is what makes the hatted coefficients degree zero under
    # the clockwise-pair sign convention used by signed_adjacency.
    n = len(B)
    deg = [0] * n
    for v, exp in ev:
        if v.name not in index:
            raise InhomogeneousExpansion(f"unknown variable {v.text()}")
        i = index[v.name]
        if v.kind == "x":
            deg[i] += exp
        elif v.kind == "y":
            for r in range(n):
                deg[r] += B[i][r] * exp
    return tuple(deg)


def g_vector(e: Expansion, B: Sequence[Sequence[int]],
             arc_names: Sequence[str]) -> List[int]:
    """Common degree vector under deg(x_i)=e_i, deg(y_i)=B e_i."""
    index = {name: i for i, name in enumerate(arc_names)}
    degs = {_term_degree(ev, index, B) for ev, _ in e.poly.terms()}
    if len(degs) != 1:
        raise InhomogeneousExpansion(
            f"expansion has {len(degs)} distinct degrees")
    return list(degs.pop())


def euler_table(e: Expansion, arc_names: Sequence[str]) -> Dict[Tuple[int, ...], int]:
    """Count matchings by the exponent vector of their height monomial."""
    if e.records is None:
        raise ValueError("expansion carries no per-matching records")
    out: Dict[Tuple[int, ...], int] = {}
    for y in e.records:
        _, exps = y.monomial_parts()
        key = tuple(exps.get(yvar(name), 0) for name in arc_names)
        out[key] = out.get(key, 0) + 1
    return out


def retag_expansion(e: Expansion, T: Triangulation,
                    punctures: Sequence[str]) -> Expansion:
    """Swap every variable with its notched twin at the given punctures."""
    mapping: Dict[str, str] = {}
    for p in punctures:
        for arc in set(arcs_around_puncture(T, p)):
            sf = T.radius_triangle(arc)
            if sf is not None and sf.puncture == p:
                continue
            a = T.tagged_name(arc)
            b = _toggle_notch_name(a, p)
            mapping[a], mapping[b] = b, a
        for t in T.triangles:
            if isinstance(t, SelfFolded) and t.puncture == p:
                a, b = t.radius, T.notched_twin(t.radius)
                mapping[a], mapping[b] = b, a

    def rename(poly: LaurentPoly) -> LaurentPoly:
        bind = {}
        for v in poly.variables():
            if v.name in mapping:
                bind[v] = LaurentPoly.var(VarId(v.kind, mapping[v.name]))
        return poly.substitute(bind)

    records = tuple(rename(r) for r in e.records) if e.records else None
    return Expansion(rename(e.poly), rename(e.numerator), rename(e.cross),
                     e.arc, e.matchings_used, records)


def _toggle_notch_name(name: str, p: str) -> str:
    suffix = f"^({p})"
    if name.endswith(suffix):
        return name[: -len(suffix)]
    return name + suffix
