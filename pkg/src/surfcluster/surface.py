"""Combinatorial bordered surfaces with marked points and ideal triangulations.

Arcs, boundary segments and punctures are opaque string labels.  A triangle
is either ordinary, with its three sides listed counterclockwise (the single
global orientation convention), or self-folded (a loop wrapping a radius that
ends at a puncture).  No geometry is stored; an arc not in the triangulation
exists only as a CrossingPath, the sequence of triangles it traverses and
arcs it crosses.

Vertex slots are addressed per triangle: on an ordinary triangle by the label
of the opposite side, on a self-folded triangle by "puncture" or "base".
Ordinary triangles may name their vertices (vertices[i] is opposite sides[i]),
which is how punctures away from self-folded triangles are located; a corner
walk cross-checks the naming and recovers the clockwise order of arc ends
around each puncture.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

__all__ = [
    "Topology",
    "Ordinary",
    "SelfFolded",
    "Triangle",
    "Triangulation",
    "Crossing",
    "CrossingPath",
    "TaggedArcRef",
    "SurfaceError",
    "NotASide",
    "NotAPuncture",
    "PathInvalid",
    "validate_surface",
    "signed_adjacency",
    "extended_principal",
    "validate_path",
    "third_arc",
    "puncture_degree",
    "arcs_around_puncture",
]


class SurfaceError(ValueError):
    pass


class NotASide(SurfaceError):
    pass


class NotAPuncture(SurfaceError):
    pass


class PathInvalid(SurfaceError):
    pass


@dataclass(frozen=True)
class Topology:
    genus: int
    boundary_components: int
    punctures: int
    boundary_marked: int


@dataclass(frozen=True)
class Ordinary:
    sides: Tuple[str, str, str]          # counterclockwise
    vertices: Optional[Tuple[str, str, str]] = None  # vertices[i] opposite sides[i]


@dataclass(frozen=True)
class SelfFolded:
    loop: str
    radius: str
    puncture: str
    base: Optional[str] = None           # name of the basepoint vertex
    notched_label: Optional[str] = None  # tagged name of the notched twin


Triangle = Union[Ordinary, SelfFolded]


@dataclass(frozen=True)
class Triangulation:
    arcs: Tuple[str, ...]
    boundary: Tuple[str, ...]
    punctures: Tuple[str, ...]
    triangles: Tuple[Triangle, ...]
    topology: Topology
    _loops: Dict[str, SelfFolded] = field(init=False, repr=False, compare=False)
    _radii: Dict[str, SelfFolded] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        loops = {t.loop: t for t in self.triangles if isinstance(t, SelfFolded)}
        radii = {t.radius: t for t in self.triangles if isinstance(t, SelfFolded)}
        object.__setattr__(self, "_loops", loops)
        object.__setattr__(self, "_radii", radii)

    # -- label classification ------------------------------------------

    def is_arc(self, label: str) -> bool:
        return label in self.arcs

    def is_boundary(self, label: str) -> bool:
        return label in self.boundary

    def loop_triangle(self, label: str) -> Optional[SelfFolded]:
        """The self-folded triangle whose loop is `label`, if any."""
        return self._loops.get(label)

    def radius_triangle(self, label: str) -> Optional[SelfFolded]:
        return self._radii.get(label)

    def tagged_name(self, label: str) -> str:
        """Tagged-arc name of an ideal arc: loops become the notched twin."""
        sf = self._loops.get(label)
        if sf is not None:
            return sf.notched_label or f"{sf.radius}~{sf.puncture}"
        return label

    def tagged_names(self) -> Tuple[str, ...]:
        return tuple(self.tagged_name(a) for a in self.arcs)

    def notched_twin(self, radius: str) -> str:
        """Tagged name of the notched twin of a self-folded radius."""
        sf = self._radii.get(radius)
        if sf is None:
            raise SurfaceError(f"{radius!r} is not a self-folded radius")
        return sf.notched_label or f"{radius}~{sf.puncture}"

    def triangle_sides(self, idx: int) -> Tuple[str, ...]:
        t = self.triangles[idx]
        if isinstance(t, Ordinary):
            return t.sides
        return (t.loop, t.radius)

    def triangles_with_side(self, label: str) -> List[int]:
        out = []
        for i, t in enumerate(self.triangles):
            if label in self.triangle_sides(i):
                out.append(i)
        return out

    def vertex_name(self, tri: int, slot: str) -> Optional[str]:
        """Resolve a vertex slot to its global name, when known."""
        t = self.triangles[tri]
        if isinstance(t, SelfFolded):
            if slot == "puncture":
                return t.puncture
            if slot == "base":
                return t.base
            raise SurfaceError(f"bad vertex slot {slot!r} for self-folded triangle")
        if slot not in t.sides:
            raise SurfaceError(f"vertex slot {slot!r} is not a side of triangle {tri}")
        if t.vertices is None:
            return None
        return t.vertices[t.sides.index(slot)]


@dataclass(frozen=True)
class Crossing:
    arc: str
    to_triangle: int
    wind: Optional[str] = None   # "ccw" | "cw"; set on radius crossings


@dataclass(frozen=True)
class CrossingPath:
    start: Tuple[int, str]               # (triangle index, vertex slot)
    crossings: Tuple[Crossing, ...]
    end: Tuple[int, str]

    @property
    def d(self) -> int:
        return len(self.crossings)

    def triangle_sequence(self) -> Tuple[int, ...]:
        return (self.start[0],) + tuple(c.to_triangle for c in self.crossings)

    def crossed_arcs(self) -> Tuple[str, ...]:
        return tuple(c.arc for c in self.crossings)

    def reversed(self) -> "CrossingPath":
        tris = self.triangle_sequence()
        out = []
        for j in range(self.d - 1, -1, -1):
            c = self.crossings[j]
            wind = None
            if c.wind is not None:
                wind = "cw" if c.wind == "ccw" else "ccw"
            out.append(Crossing(c.arc, tris[j], wind))
        return CrossingPath(self.end, tuple(out), self.start)


@dataclass(frozen=True)
class TaggedArcRef:
    base: Union[str, CrossingPath]       # arc of T, or an explicit path
    notch_start: bool = False
    notch_end: bool = False


# ---------------------------------------------------------------------------
# validation


def validate_surface(T: Triangulation) -> List[str]:
    """Return all violated invariants; the empty list means the surface is ok."""
    v: List[str] = []
    topo = T.topology
    g, b, p, c = (topo.genus, topo.boundary_components,
                  topo.punctures, topo.boundary_marked)

    labels = list(T.arcs) + list(T.boundary) + list(T.punctures)
    if len(set(labels)) != len(labels):
        v.append("labels are not unique across arcs, boundary and punctures")

    if b == 0 and g == 0 and p <= 3:
        v.append("forbidden surface: sphere with at most three punctures")
    if b == 1 and g == 0 and c == 1 and p <= 1:
        v.append("forbidden surface: monogon with at most one puncture")
    if b == 1 and g == 0 and p == 0 and c in (2, 3):
        v.append("forbidden surface: unpunctured bigon or triangle")
    if b > 0 and c < b:
        v.append("each boundary component needs a marked point")

    n_expect = 6 * g + 3 * b + 3 * p + c - 6
    if len(T.arcs) != n_expect:
        v.append(f"arc count {len(T.arcs)} != 6g+3b+3p+c-6 = {n_expect}")
    t_expect = 4 * g + 2 * b + 2 * p + c - 4
    if len(T.triangles) != t_expect:
        v.append(f"triangle count {len(T.triangles)} != 4g+2b+2p+c-4 = {t_expect}")

    slots: Dict[str, int] = {x: 0 for x in list(T.arcs) + list(T.boundary)}
    for i, t in enumerate(T.triangles):
        if isinstance(t, SelfFolded):
            if t.loop == t.radius:
                v.append(f"triangle {i}: self-folded loop equals radius")
            for lab, what in ((t.loop, "loop"), (t.radius, "radius")):
                if lab not in T.arcs:
                    v.append(f"triangle {i}: self-folded {what} {lab!r} is not an internal arc")
            if t.puncture not in T.punctures:
                v.append(f"triangle {i}: {t.puncture!r} is not a puncture")
            slots[t.loop] = slots.get(t.loop, 0) + 1
            slots[t.radius] = slots.get(t.radius, 0) + 2
        else:
            if len(t.sides) != 3:
                v.append(f"triangle {i}: needs exactly three sides")
                continue
            if len(set(t.sides)) != 3:
                v.append(f"triangle {i}: ordinary triangle with repeated side")
            for s in t.sides:
                if s not in slots:
                    v.append(f"triangle {i}: unknown side label {s!r}")
                else:
                    slots[s] += 1

    for a in T.arcs:
        if slots.get(a, 0) > 2:
            v.append(f"arc {a!r} occurs in more than two triangle slots")
        elif slots.get(a, 0) != 2:
            v.append(f"arc {a!r} occurs in {slots.get(a, 0)} triangle slots, expected 2")
    for s in T.boundary:
        if slots.get(s, 0) != 1:
            v.append(f"boundary segment {s!r} occurs in {slots.get(s, 0)} slots, expected 1")

    if not v:
        v.extend(_check_vertex_names(T))
    return v


def _check_vertex_names(T: Triangulation) -> List[str]:
    """Verify declared vertex names against the corner-orbit structure."""
    out: List[str] = []
    seen_punctures = set()
    for i, t in enumerate(T.triangles):
        if isinstance(t, SelfFolded):
            seen_punctures.add(t.puncture)
            continue
        if t.vertices is None:
            continue
        for k, name in enumerate(t.vertices):
            if name in T.punctures:
                seen_punctures.add(name)
    for p in T.punctures:
        if p not in seen_punctures:
            out.append(f"puncture {p!r} is not located by any triangle vertex")
    # orbit consistency: all corners in one orbit must carry the same name
    try:
        orbits = _corner_orbits(T)
    except SurfaceError as exc:
        return out + [str(exc)]
    for orbit in orbits:
        names = {vertex_of_corner(T, c) for c in orbit}
        names.discard(None)
        if len(names) > 1:
            out.append(f"inconsistent vertex names {sorted(names)} in one corner orbit")
    return out


# ---------------------------------------------------------------------------
# corners
#
# Every triangle is handled through a cyclic (ccw) triple of side slots; a
# self-folded triangle contributes the pseudo-triple (radius, radius, loop),
# which is its boundary walk after cutting along the radius.  Corner k of a
# triple (s0,s1,s2) sits between sides[k] and sides[(k+1)%3]; one clockwise
# step of the walk around that vertex exits through sides[(k+1)%3] and
# resumes at corner m of the triangle holding the other slot of that arc,
# where m is that slot's index.  On an ordinary triangle, corner k is the
# vertex opposite sides[(k+2)%3]; on the pseudo-triple, corner 0 is the
# puncture and corners 1, 2 are the base.


def _pseudo_sides(t: Triangle) -> Tuple[str, ...]:
    if isinstance(t, SelfFolded):
        return (t.radius, t.radius, t.loop)
    return t.sides


def _all_slots(T: Triangulation) -> Dict[str, List[Tuple[int, int]]]:
    """arc label -> list of (triangle, slot) over pseudo-sides."""
    out: Dict[str, List[Tuple[int, int]]] = {}
    for i, t in enumerate(T.triangles):
        for j, s in enumerate(_pseudo_sides(t)):
            out.setdefault(s, []).append((i, j))
    return out


def _cw_next_corner(T: Triangulation, slots, corner):
    """One clockwise step of the corner walk; None when exiting through boundary."""
    tri, k = corner
    sides = _pseudo_sides(T.triangles[tri])
    exit_slot = (k + 1) % 3
    exit_arc = sides[exit_slot]
    if T.is_boundary(exit_arc):
        return None
    others = [s for s in slots.get(exit_arc, []) if s != (tri, exit_slot)]
    if len(others) != 1:
        raise SurfaceError(f"arc {exit_arc!r} does not have exactly two slots")
    ntri, m = others[0]
    return (ntri, m)


def _corner_orbits(T: Triangulation):
    """Vertices of the triangulation as sets of corners."""
    slots = _all_slots(T)
    parent: Dict[Tuple[int, int], Tuple[int, int]] = {}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    corners = [(i, k) for i in range(len(T.triangles)) for k in range(3)]
    for c in corners:
        parent[c] = c
    for c in corners:
        nxt = _cw_next_corner(T, slots, c)
        if nxt is not None:
            ra, rb = find(c), find(nxt)
            if ra != rb:
                parent[ra] = rb
    orbits: Dict[Tuple[int, int], List] = {}
    for c in corners:
        orbits.setdefault(find(c), []).append(c)
    return list(orbits.values())


def vertex_of_corner(T: Triangulation, corner) -> Optional[str]:
    tri, k = corner
    t = T.triangles[tri]
    if isinstance(t, SelfFolded):
        return t.puncture if k == 0 else t.base
    if t.vertices is None:
        return None
    return t.vertices[(k + 2) % 3]


def puncture_corner(T: Triangulation, p: str):
    """Some corner whose vertex is the puncture p."""
    if p not in T.punctures:
        raise NotAPuncture(f"{p!r} is not a puncture")
    for i, t in enumerate(T.triangles):
        if isinstance(t, SelfFolded) and t.puncture == p:
            return (i, 0)
        if isinstance(t, Ordinary) and t.vertices is not None and p in t.vertices:
            k = t.vertices.index(p)          # opposite sides[k]
            return (i, (k + 1) % 3)          # corner between sides[k+1], sides[k+2]
    raise NotAPuncture(f"puncture {p!r} is not located by any triangle vertex")


def corner_walk(T: Triangulation, c0) -> List[Tuple[Tuple[int, int], str]]:
    """Full clockwise walk around an interior vertex from corner c0.

    Returns the cyclic list of (corner, exit arc) steps; raises if the walk
    hits the boundary (the vertex is not interior).
    """
    slots = _all_slots(T)
    out = []
    c = c0
    while True:
        tri, k = c
        sides = _pseudo_sides(T.triangles[tri])
        exit_arc = sides[(k + 1) % 3]
        if T.is_boundary(exit_arc):
            raise SurfaceError("corner walk hit the boundary")
        out.append((c, exit_arc))
        c = _cw_next_corner(T, slots, c)
        if c == c0:
            return out


def arcs_around_puncture(T: Triangulation, p: str) -> List[str]:
    """Arc ends incident to p in clockwise order (loops at p appear twice)."""
    return [arc for _, arc in corner_walk(T, puncture_corner(T, p))]


def puncture_degree(T: Triangulation, p: str) -> int:
    """Number of ideal-arc ends incident to p (a loop at p counts twice)."""
    return len(arcs_around_puncture(T, p))


# ---------------------------------------------------------------------------
# signed adjacency matrix


def third_arc(T: Triangulation, a: str, b: str, tri: int) -> str:
    """Remaining side of an ordinary triangle, or the radius of a self-folded one."""
    t = T.triangles[tri]
    if isinstance(t, SelfFolded):
        if {a, b} - {t.loop, t.radius}:
            raise NotASide(f"{a!r},{b!r} are not sides of self-folded triangle {tri}")
        return t.radius
    sides = list(t.sides)
    for lab in (a, b):
        if lab not in sides:
            raise NotASide(f"{lab!r} is not a side of triangle {tri}")
        sides.remove(lab)
    if len(sides) != 1:
        raise NotASide(f"{a!r},{b!r} do not determine a third side in triangle {tri}")
    return sides[0]


def signed_adjacency(T: Triangulation) -> List[List[int]]:
    """The skew-symmetric exchange matrix of the triangulation.

    Rows/columns follow T.arcs.  Self-folded loops never meet ordinary
    triangles through their radius, so every appearance of a loop also
    credits its radius (the tagged notched twin and the plain radius share
    all adjacencies).
    """
    index = {a: i for i, a in enumerate(T.arcs)}
    n = len(T.arcs)
    B = [[0] * n for _ in range(n)]

    def expand(label: str) -> List[str]:
        sf = T.loop_triangle(label)
        if sf is not None:
            return [label, sf.radius]
        return [label]

    for t in T.triangles:
        if isinstance(t, SelfFolded):
            continue
        s = t.sides
        # clockwise consecutive pairs (u, v): v follows u clockwise
        cw = (s[2], s[1], s[0])
        for a in range(3):
            u, vv = cw[a], cw[(a + 1) % 3]
            for ui in expand(u):
                for vj in expand(vv):
                    if ui in index and vj in index:
                        B[index[ui]][index[vj]] += 1
                        B[index[vj]][index[ui]] -= 1
    return B


def extended_principal(B: Sequence[Sequence[int]]) -> List[List[int]]:
    """Stack B on top of the n-by-n identity."""
    n = len(B)
    out = [list(row) for row in B]
    for i in range(n):
        out.append([1 if j == i else 0 for j in range(n)])
    return out


# ---------------------------------------------------------------------------
# crossing paths


def validate_path(T: Triangulation, path: CrossingPath) -> List[str]:
    """Check local validity of a crossing path; empty list when ok."""
    v: List[str] = []
    tris = path.triangle_sequence()
    ntri = len(T.triangles)
    for idx in tris + (path.end[0],):
        if not (0 <= idx < ntri):
            return [f"triangle index {idx} out of range"]

    # start/end vertex slots must be resolvable
    for (tri, slot), what in ((path.start, "start"), (path.end, "end")):
        try:
            T.vertex_name(tri, slot)
        except SurfaceError as exc:
            v.append(f"{what}: {exc}")

    if path.end[0] != tris[-1]:
        v.append("end triangle differs from the last entered triangle")

    arcs = path.crossed_arcs()
    for j, c in enumerate(path.crossings):
        if T.is_boundary(c.arc):
            v.append(f"crossing {j}: boundary segment {c.arc!r} cannot be crossed")
            continue
        if not T.is_arc(c.arc):
            v.append(f"crossing {j}: unknown arc {c.arc!r}")
            continue
        before, after = tris[j], c.to_triangle
        for tri, what in ((before, "leaves"), (after, "enters")):
            if c.arc not in T.triangle_sides(tri):
                v.append(f"crossing {j}: {c.arc!r} is not a side of triangle {tri} it {what}")
        if j + 1 < len(arcs) and arcs[j] == arcs[j + 1]:
            v.append(f"crossings {j},{j+1}: consecutive crossed arcs must differ")

    # each visited triangle is entered and left through different sides
    for j in range(1, len(path.crossings)):
        tri = path.crossings[j - 1].to_triangle
        if path.crossings[j].to_triangle == tri and not isinstance(
                T.triangles[tri], SelfFolded):
            v.append(f"crossing {j}: re-enters ordinary triangle {tri} immediately")

    v.extend(_check_self_folded_patterns(T, path))
    return v


def _check_self_folded_patterns(T: Triangulation, path: CrossingPath) -> List[str]:
    """Radius crossings must sit inside loop-radius-loop passes; a bare loop
    crossing must continue to (or come from) the enclosed puncture."""
    v: List[str] = []
    arcs = path.crossed_arcs()
    d = len(arcs)
    for j, c in enumerate(path.crossings):
        sf = T.radius_triangle(c.arc)
        if sf is not None:
            prev_ok = j > 0 and arcs[j - 1] == sf.loop
            next_ok = j + 1 < d and arcs[j + 1] == sf.loop
            if not (prev_ok and next_ok):
                v.append(f"crossing {j}: radius {c.arc!r} not flanked by loop crossings")
            if c.wind not in ("ccw", "cw"):
                v.append(f"crossing {j}: radius crossing needs wind 'ccw' or 'cw'")
        sf = T.loop_triangle(c.arc)
        if sf is not None:
            # after crossing the loop inward we must either cross the radius
            # next or terminate at the enclosed puncture (and symmetrically).
            inward_next = j + 1 < d and arcs[j + 1] == sf.radius
            inward_prev = j > 0 and arcs[j - 1] == sf.radius
            if not (inward_next or inward_prev):
                idx = T.triangles.index(sf)
                ends_here = (j == d - 1 and path.end[0] == idx
                             and path.end[1] == "puncture")
                starts_here = (j == 0 and path.start[0] == idx
                               and path.start[1] == "puncture")
                if not (ends_here or starts_here):
                    v.append(
                        f"crossing {j}: loop {c.arc!r} crossed without radius "
                        "or terminal puncture (self-folded pattern)")
    return v
