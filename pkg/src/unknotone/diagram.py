"""Planar knot diagrams as rotation systems, with chessboard colourings,
white graphs, and the local moves used by the decision pipeline.

A diagram is a connected 4-valent plane graph with over/under data.  Each
crossing has four ports numbered 0..3 counterclockwise; a dart is a pair
(crossing id, port).  The arcs of the diagram are an involution on darts.
The under-strand of a crossing occupies the port axis {a, a+2} recorded in
`under_axis`; a strand entering port p leaves through port (p + 2) % 4.

Faces are the orbits of the walk dart -> rotate(partner(dart)); their count
must equal #crossings + 2 (sphere embedding), and they carry a proper
2-colouring.  All operations return new diagrams; instances are immutable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property


Dart = tuple  # (crossing id, port)


class DiagramError(ValueError):
    """Raised for malformed or non-realizable diagram data."""


def _rot(dart: Dart, k: int = 1) -> Dart:
    c, p = dart
    return (c, (p + k) % 4)


class Diagram:
    """Immutable combinatorial knot diagram.

    crossings: dict crossing id -> under_axis in {0, 1}
    adjacency: fixed-point-free involution on darts (the arcs)
    """

    def __init__(self, crossings: dict, adjacency: dict):
        self.crossings = dict(crossings)
        self.adjacency = dict(adjacency)
        self._validate()

    # -- construction and validation -------------------------------------

    def _validate(self) -> None:
        n = len(self.crossings)
        if n == 0:
            if self.adjacency:
                raise DiagramError("empty diagram cannot have arcs")
            return
        darts = {(c, p) for c in self.crossings for p in range(4)}
        if set(self.adjacency) != darts:
            raise DiagramError("adjacency must cover each port exactly once")
        for d, e in self.adjacency.items():
            if e == d:
                raise DiagramError(f"arc from {d} to itself")
            if self.adjacency.get(e) != d:
                raise DiagramError("adjacency is not an involution")
        for c, a in self.crossings.items():
            if a not in (0, 1):
                raise DiagramError(f"under_axis of {c} must be 0 or 1")
        # single knot component: the strand walk must visit every dart axis
        start = next(iter(darts))
        seen = set()
        d = start
        while d not in seen:
            seen.add(d)
            seen.add(_rot(d, 2))
            d = _rot(self.adjacency[d], 2)
        if len(seen) != len(darts):
            raise DiagramError("diagram is a link, not a knot")
        if len(self.faces) != n + 2:
            raise DiagramError(
                f"not a planar sphere diagram: {len(self.faces)} faces, {n} crossings"
            )
        self.colors  # force the proper 2-colouring check

    @property
    def n(self) -> int:
        return len(self.crossings)

    # -- faces and colouring ---------------------------------------------

    @cached_property
    def faces(self) -> tuple:
        """Faces as tuples of darts; the walk moves along the arc of each
        dart and then rotates one port counterclockwise."""
        if not self.crossings:
            return ()
        todo = {(c, p) for c in self.crossings for p in range(4)}
        out = []
        while todo:
            start = min(todo)
            orbit = []
            d = start
            while True:
                orbit.append(d)
                todo.discard(d)
                d = _rot(self.adjacency[d])
                if d == start:
                    break
            out.append(tuple(orbit))
        return tuple(sorted(out))

    @cached_property
    def face_of_dart(self) -> dict:
        out = {}
        for i, orbit in enumerate(self.faces):
            for d in orbit:
                out[d] = i
        return out

    def face_corners(self, face_index: int) -> list:
        """Corners (crossing, q) of a face; corner q spans ports q, q+1."""
        return [_rot(d, -1) for d in self.faces[face_index]]

    @cached_property
    def face_of_corner(self) -> dict:
        out = {}
        for i in range(len(self.faces)):
            for corner in self.face_corners(i):
                out[corner] = i
        return out

    @cached_property
    def colors(self) -> tuple:
        """Proper 2-colouring of faces; the two faces along any arc differ."""
        if not self.crossings:
            return (0, 1)
        color = [None] * len(self.faces)
        color[0] = 0
        stack = [0]
        while stack:
            f = stack.pop()
            for d in self.faces[f]:
                g = self.face_of_dart[self.adjacency[d]]
                if color[g] is None:
                    color[g] = 1 - color[f]
                    stack.append(g)
                elif color[g] == color[f]:
                    raise DiagramError("chessboard colouring failed")
        return tuple(color)

    # -- orientation, signs, alternation ---------------------------------

    @cached_property
    def incoming(self) -> frozenset:
        """Darts through which the (arbitrarily oriented) strand enters its
        crossing.  Each crossing has one incoming port per axis."""
        if not self.crossings:
            return frozenset()
        start = min((c, p) for c in self.crossings for p in range(4))
        inc = set()
        d = start  # d is an outgoing dart
        while True:
            e = self.adjacency[d]
            inc.add(e)
            d = _rot(e, 2)
            if d == start:
                break
        return frozenset(inc)

    def is_over(self, dart: Dart) -> bool:
        """Whether the strand through this port is the over-strand."""
        c, p = dart
        return p % 2 != self.crossings[c]

    def sign(self, c) -> int:
        """Crossing sign, independent of the global orientation choice."""
        a = self.crossings[c]
        under_in = next(p for p in (a, a + 2) if (c, p % 4) in self.incoming) % 4
        over_in = next(p for p in (a + 1, a + 3) if (c, p % 4) in self.incoming) % 4
        return 1 if over_in == (under_in + 3) % 4 else -1

    @cached_property
    def writhe(self) -> int:
        return sum(self.sign(c) for c in self.crossings)

    @cached_property
    def is_alternating(self) -> bool:
        return all(
            self.is_over(d) != self.is_over(e)
            for d, e in self.adjacency.items()
        )

    @cached_property
    def dealternator(self):
        """The unique crossing whose change makes the diagram alternating,
        if the diagram is almost-alternating; else None."""
        if self.is_alternating or self.n < 1:
            return None
        found = None
        for c in self.crossings:
            if self.change_crossing(c).is_alternating:
                if found is not None:
                    return None
                found = c
        return found

    # -- chessboard graphs -----------------------------------------------

    def incidence(self, c, color: int) -> int:
        """The incidence of a crossing relative to a colour class: -1 when
        the corners of that colour sit on the under-strand axis."""
        corner_axis = next(
            q for q in (0, 1) if self.colors[self.face_of_corner[(c, q)]] == color
        )
        return -1 if corner_axis == self.crossings[c] else 1

    def alternating_color(self):
        """The colour class giving incidence -1 at every crossing, if any."""
        for color in (0, 1):
            if all(self.incidence(c, color) == -1 for c in self.crossings):
                return color
        return None

    def white_graph(self, color: int) -> "WhiteGraph":
        """One vertex per face of the chosen colour, one edge per crossing."""
        verts = tuple(i for i, col in enumerate(self.colors) if col == color)
        edges = []
        mu = {}
        for c in sorted(self.crossings):
            q = next(
                q for q in (0, 1)
                if self.colors[self.face_of_corner[(c, q)]] == color
            )
            u = self.face_of_corner[(c, q)]
            v = self.face_of_corner[(c, q + 2)]
            edges.append((c, u, v))
            mu[c] = self.incidence(c, color)
        rotation = {}
        for f in verts:
            rotation[f] = tuple(c for c, _ in self.face_corners(f))
        return WhiteGraph(vertices=verts, edges=tuple(edges), mu=mu,
                          rotation=rotation)

    # -- basic operations -------------------------------------------------

    def change_crossing(self, c) -> "Diagram":
        cr = dict(self.crossings)
        cr[c] = 1 - cr[c]
        return Diagram(cr, self.adjacency)

    def mirror(self) -> "Diagram":
        """Reflect the diagram: reverse all rotations, keep over/under."""
        cr = dict(self.crossings)
        adj = {}
        for (c, p), (c2, p2) in self.adjacency.items():
            adj[(c, (-p) % 4)] = (c2, (-p2) % 4)
        return Diagram(cr, adj)

    def is_reduced(self) -> bool:
        return not self.nugatory_crossings()

    def nugatory_crossings(self) -> list:
        """Crossings with two opposite corners on the same face."""
        out = []
        for c in sorted(self.crossings):
            for q in (0, 1):
                if self.face_of_corner[(c, q)] == self.face_of_corner[(c, q + 2)]:
                    out.append(c)
                    break
        return out

    # -- canonical form and isomorphism ----------------------------------

    @cached_property
    def canonical_key(self) -> tuple:
        """Label-independent key; equal keys mean the diagrams agree up to
        relabeling and the front/back view of the sphere."""
        if not self.crossings:
            return ("unknot",)
        best = None
        for view in (0, 1):
            for c in self.crossings:
                for p in range(4):
                    code = self._encode_from((c, p), view)
                    if best is None or code < best:
                        best = code
        return best

    def _encode_from(self, start: Dart, view: int) -> tuple:
        """Canonical traversal; view 1 is the diagram seen from behind
        (rotations reversed, over and under exchanged)."""

        def adj(d: Dart) -> Dart:
            if view == 0:
                return self.adjacency[d]
            c, p = d
            c2, p2 = self.adjacency[(c, (-p) % 4)]
            return (c2, (-p2) % 4)

        def axis(c) -> int:
            return self.crossings[c] if view == 0 else 1 - self.crossings[c]

        number = {start[0]: 0}
        offset = {start[0]: start[1]}
        order = [start[0]]
        code = []
        i = 0
        while i < len(order):
            c = order[i]
            for k in range(4):
                d = (c, (offset[c] + k) % 4)
                c2, p2 = adj(d)
                if c2 not in number:
                    number[c2] = len(order)
                    offset[c2] = p2
                    order.append(c2)
                code.append((number[c2], (p2 - offset[c2]) % 4))
            code.append(("x", (axis(c) - offset[c]) % 2))
            i += 1
        return tuple(code)

    def is_isomorphic(self, other: "Diagram") -> bool:
        return self.canonical_key == other.canonical_key

    # -- serialization ----------------------------------------------------

    def to_json(self) -> str:
        data = {
            "schema": 1,
            "crossings": {str(c): a for c, a in sorted(self.crossings.items())},
            "adjacency": [
                [[d[0], d[1]], [e[0], e[1]]]
                for d, e in sorted(self.adjacency.items())
                if d < e
            ],
            "coloring": list(self.colors),
            "alternating": self.is_alternating,
        }
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> "Diagram":
        data = json.loads(text)
        crossings = {int(c): a for c, a in data["crossings"].items()}
        adjacency = {}
        for (d, e) in data["adjacency"]:
            d = (d[0], d[1])
            e = (e[0], e[1])
            adjacency[d] = e
            adjacency[e] = d
        return cls(crossings, adjacency)

    def __repr__(self) -> str:
        return f"Diagram(n={self.n}, alternating={self.is_alternating})"


@dataclass(frozen=True)
class WhiteGraph:
    """Chessboard graph: one vertex per same-colour region, one edge per
    crossing, with incidences and the rotation system of the embedding."""

    vertices: tuple
    edges: tuple  # (crossing id, u, v)
    mu: dict
    rotation: dict

    def __post_init__(self) -> None:
        for _, u, v in self.edges:
            if u == v:
                raise DiagramError("white graph has a self-loop (nugatory crossing)")

    def degree(self, v) -> int:
        return sum(1 for _, a, b in self.edges if v in (a, b))

    def multiplicity(self, u, v) -> int:
        return sum(1 for _, a, b in self.edges if {a, b} == {u, v})


# -- smoothing and local moves -------------------------------------------


def _splice(diagram: Diagram, removed: set, pairings: dict) -> Diagram:
    """Remove crossings, rerouting strands through them along `pairings`
    (a map port -> port per removed crossing).  Closed circles created by
    the rewiring are discarded; the result must still be a knot diagram."""
    crossings = {c: a for c, a in diagram.crossings.items() if c not in removed}

    def resolve(d: Dart) -> Dart | None:
        seen = set()
        while d[0] in removed:
            if d in seen:
                return None  # closed circle through removed crossings
            seen.add(d)
            d = diagram.adjacency[(d[0], pairings[d[0]][d[1]])]
        return d

    adjacency = {}
    for d, e in diagram.adjacency.items():
        if d[0] in removed:
            continue
        e2 = resolve(e)
        if e2 is None:
            raise DiagramError("splice disconnected the strand")
        adjacency[d] = e2
    if not crossings:
        return Diagram({}, {})
    return Diagram(crossings, adjacency)


def _straight() -> dict:
    """Port pairing that lets both strands pass straight through."""
    return {0: 2, 2: 0, 1: 3, 3: 1}


def smooth_crossing(diagram: Diagram, c) -> Diagram:
    """Remove one crossing, both strands passing straight through."""
    return _splice(diagram, {c}, {c: _straight()})


def bigon_faces(diagram: Diagram) -> list:
    """Faces with exactly two darts at two distinct crossings where one
    strand is over at both: the sites of Reidemeister II deletions."""
    out = []
    for i, orbit in enumerate(diagram.faces):
        if len(orbit) != 2:
            continue
        (c1, p1), (c2, p2) = orbit
        if c1 == c2:
            continue
        if diagram.is_over((c1, p1)) == diagram.is_over((c2, (p2 - 1) % 4)):
            out.append(i)
    return out


def delete_bigon(diagram: Diagram, face_index: int) -> Diagram:
    """Reidemeister II deletion at a bigon face."""
    orbit = diagram.faces[face_index]
    if len(orbit) != 2:
        raise DiagramError("face is not a bigon")
    (c1, _), (c2, _) = orbit
    if c1 == c2:
        raise DiagramError("bigon at a single crossing is a curl, not an RII site")
    if face_index not in bigon_faces(diagram):
        raise DiagramError("bigon strands do not satisfy the RII pattern")
    return _splice(diagram, {c1, c2}, {c1: _straight(), c2: _straight()})


def triangle_sites(diagram: Diagram) -> list:
    """Reidemeister III sites: (face index, side) pairs for trigon faces
    whose chosen side's strand is over (or under) at both its corners."""
    out = []
    for i, orbit in enumerate(diagram.faces):
        if len(orbit) != 3:
            continue
        if len({d[0] for d in orbit}) != 3:
            continue
        for s in range(3):
            d1 = orbit[s]
            if diagram.is_over(d1) == diagram.is_over(diagram.adjacency[d1]):
                out.append((i, s))
    return out


def triangle_move(diagram: Diagram, face_index: int, side: int) -> Diagram:
    """Slide one side of a trigon face across the opposite crossing
    (Reidemeister III).  The sliding strand must be over at both of its
    corners of the trigon, or under at both."""
    orbit = diagram.faces[face_index]
    if len(orbit) != 3 or len({d[0] for d in orbit}) != 3:
        raise DiagramError("face is not a trigon on three crossings")
    adj = diagram.adjacency
    o1, o2, o3 = (orbit[(side + k) % 3] for k in range(3))
    e1, e2, e3 = adj[o1], adj[o2], adj[o3]
    if diagram.is_over(o1) != diagram.is_over(e1):
        raise DiagramError("sliding strand is not over (or under) both corners")
    c1, c2, c3 = o1[0], o2[0], o3[0]
    # the sliding strand passes c1 (port o1) and c2 (port e1); the slide
    # lifts those two crossings off their strands and re-inserts them on
    # the far side of c3: c1 onto the arc at c3's port opposite o3, c2
    # onto the arc at the port opposite e2
    removed = {c1, c2}

    def resolve(d: Dart) -> Dart:
        seen = set()
        while d[0] in removed:
            if d in seen:
                raise DiagramError("slide would close off a circle")
            seen.add(d)
            d = adj[(d[0], (d[1] + 2) % 4)]
        return d

    adjacency = {}
    for d, e in adj.items():
        if d[0] in removed:
            continue
        adjacency[d] = resolve(e)
    a_side = resolve(adj[_rot(o1, 2)])
    b_side = resolve(adj[_rot(e1, 2)])
    if adjacency.get(a_side) != b_side:
        raise DiagramError("sliding strand did not free into a single arc")

    def connect(a: Dart, b: Dart) -> None:
        adjacency[a] = b
        adjacency[b] = a

    # reroute the slid strand around the far side of c3, meeting the
    # lifted crossings in swapped order: c2 first (from the a side)
    connect(a_side, _rot(e1, 2))
    connect(e1, _rot(o1, 2))
    connect(o1, b_side)

    def insert_on_arc(port: Dart, near: Dart, far: Dart) -> None:
        w = adjacency[port]
        connect(port, near)
        connect(far, w)

    # re-insert c1 and c2 onto the strands just beyond c3; insertion
    # order matters when the two arcs beyond c3 are the same arc
    insert_on_arc(_rot(o3, 2), _rot(e3, 2), e3)
    insert_on_arc(_rot(e2, 2), o2, _rot(o2, 2))
    return Diagram(diagram.crossings, adjacency)


def curl_crossings(diagram: Diagram) -> list:
    """Crossings with an arc joining two of their own adjacent ports."""
    out = []
    for c in sorted(diagram.crossings):
        for p in range(4):
            if diagram.adjacency[(c, p)] == (c, (p + 1) % 4):
                out.append(c)
                break
    return out


def _reflect_subset(diagram: Diagram, subset: set):
    """Reflection data for a tangle: ports reverse, under_axis toggles."""
    def relabel(d: Dart) -> Dart:
        c, p = d
        return (c, (-p) % 4) if c in subset else d

    crossings = {
        c: (1 - a if c in subset else a) for c, a in diagram.crossings.items()
    }
    return relabel, crossings


def reduce_nugatory(diagram: Diagram):
    """Remove nugatory crossings; returns (diagram, move list)."""
    moves = []
    while True:
        nug = diagram.nugatory_crossings()
        if not nug:
            return diagram, moves
        c = nug[0]
        q = next(
            q for q in (0, 1)
            if diagram.face_of_corner[(c, q)] == diagram.face_of_corner[(c, q + 2)]
        )
        moves.append(Move("NugatoryReduction", {"crossing": c, "corner": q}))
        diagram = _remove_nugatory(diagram, c, q)


def _remove_nugatory(diagram: Diagram, c, q: int) -> Diagram:
    """Untwist at a nugatory crossing: straight smoothing plus reflection
    of one of the two pieces hanging off the crossing."""
    # the separating circle passes through corners q and q+2, so the two
    # pieces attach to ports {q+1, q+2} and {q+3, q}
    sideA = _arc_component(diagram, c, {(q + 1) % 4, (q + 2) % 4})
    sideB = _arc_component(diagram, c, {(q + 3) % 4, q % 4})
    if sideA & sideB:
        raise DiagramError("crossing is not nugatory")
    # reflect the side without the smallest crossing id, for determinism
    keep = min(sideA | sideB | {c})
    flip = sideA if keep not in sideA else sideB
    relabel, crossings = _reflect_subset(diagram, flip)
    adjacency = {}
    for d, e in diagram.adjacency.items():
        adjacency[relabel(d)] = relabel(e)
    reflected = Diagram(crossings, adjacency)
    return smooth_crossing(reflected, c)


def _arc_component(diagram: Diagram, c, ports: set) -> set:
    """Crossings reachable from the given ports of c without passing
    through c itself."""
    seen = set()
    stack = [diagram.adjacency[(c, p)][0] for p in ports]
    stack = [x for x in stack if x != c]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        for p in range(4):
            y = diagram.adjacency[(x, p)][0]
            if y != c and y not in seen:
                stack.append(y)
    return seen


# -- Reidemeister II insertion (tongue/twirl direction) -------------------


def insert_band(diagram: Diagram, d1: Dart, d2: Dart, over: bool) -> Diagram:
    """Push the arc of d1 across their common face over (or under) the arc
    of d2, adding two crossings.  d1 and d2 must lie in the same face and
    on distinct arcs."""
    f1 = diagram.face_of_dart[d1]
    if diagram.face_of_dart[d2] != f1:
        raise DiagramError("band insertion needs darts on a common face")
    e1 = diagram.adjacency[d1]
    e2 = diagram.adjacency[d2]
    if {d1, e1} == {d2, e2}:
        raise DiagramError("band insertion needs two distinct arcs")
    u = max(diagram.crossings, default=-1) + 1
    v = u + 1
    # the finger leaves the arc of d1, crosses the arc of d2 at v and u,
    # and returns; the crossed arc is split d2 - v - u - e2 (or, if the
    # face walk runs the other way locally, the mirrored wiring applies)
    axis = 0 if over else 1  # the finger occupies the odd-port axis
    crossings = dict(diagram.crossings)
    crossings[u] = axis
    crossings[v] = axis
    last = None
    for middle_port, e2_port in ((0, 2), (2, 0)):
        adjacency = dict(diagram.adjacency)

        def connect(a: Dart, b: Dart) -> None:
            adjacency[a] = b
            adjacency[b] = a

        connect(d1, (u, 1))
        connect((u, 3), (v, 3))
        connect((v, 1), e1)
        connect(d2, (v, 0))
        connect((v, 2), (u, middle_port))
        connect((u, e2_port), e2)
        try:
            return Diagram(crossings, adjacency)
        except DiagramError as err:
            last = err
    raise last


# -- flypes ---------------------------------------------------------------


def _arc_list(diagram: Diagram) -> list:
    """Arcs as sorted dart pairs."""
    return sorted(
        tuple(sorted((d, e))) for d, e in diagram.adjacency.items() if d < e
    )


def flype_sites(diagram: Diagram) -> list:
    """All (crossing, corner s, cut arc pair) flype sites.  The tangle is
    attached at ports s and s+1 of the crossing and is separated from the
    rest by the two cut arcs."""
    out = []
    for c in sorted(diagram.crossings):
        for s in range(4):
            for cut in _flype_cuts(diagram, c, s):
                out.append((c, s, cut))
    return out


def _flype_cuts(diagram: Diagram, c, s: int) -> list:
    t_side = {diagram.adjacency[(c, (s + k) % 4)][0] for k in (0, 1)}
    o_side = {diagram.adjacency[(c, (s + k) % 4)][0] for k in (2, 3)}
    if c in t_side or c in o_side or t_side & o_side:
        return []
    arcs = [
        a for a in _arc_list(diagram)
        if a[0][0] != c and a[1][0] != c
    ]
    others = [x for x in diagram.crossings if x != c]
    cuts = []
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            removed = {arcs[i], arcs[j]}
            comp = _reach(diagram, next(iter(t_side)), c, removed)
            if c in comp or comp & o_side or not (t_side <= comp):
                continue
            rest = set(others) - comp
            if not rest or not _connected_without(diagram, rest, c, removed):
                continue
            # each cut arc must join the two sides
            if all(
                (a[0][0] in comp) != (a[1][0] in comp) for a in removed
            ):
                cuts.append((arcs[i], arcs[j]))
    return cuts


def _reach(diagram: Diagram, start, banned_crossing, banned_arcs: set) -> set:
    seen = set()
    stack = [start]
    while stack:
        x = stack.pop()
        if x in seen or x == banned_crossing:
            continue
        seen.add(x)
        for p in range(4):
            d = (x, p)
            e = diagram.adjacency[d]
            if tuple(sorted((d, e))) in banned_arcs:
                continue
            if e[0] != banned_crossing:
                stack.append(e[0])
    return seen


def _connected_without(diagram, vertex_set, banned_crossing, banned_arcs) -> bool:
    start = next(iter(vertex_set))
    comp = _reach(diagram, start, banned_crossing, banned_arcs)
    return vertex_set <= comp


def flype(diagram: Diagram, c, s: int, cut) -> Diagram:
    """Flype the tangle at ports s, s+1 of crossing c across the cut arcs.

    The tangle is rotated half a turn: its crossings reflect, the old
    crossing is smoothed away and an equal-sign crossing appears on the
    former cut arcs."""
    arc_a, arc_b = cut
    t_side = _reach(diagram, diagram.adjacency[(c, s)][0], c, {arc_a, arc_b})
    T_a = diagram.adjacency[(c, s)]
    T_b = diagram.adjacency[(c, (s + 1) % 4)]
    O2 = diagram.adjacency[(c, (s + 2) % 4)]
    O1 = diagram.adjacency[(c, (s + 3) % 4)]
    if T_a[0] not in t_side or T_b[0] not in t_side:
        raise DiagramError("invalid flype site")
    sign_c = diagram.sign(c)
    new_id = max(diagram.crossings) + 1

    def side_darts(arc):
        (x, y) = arc
        if (x[0] in t_side) == (y[0] in t_side):
            raise DiagramError("cut arc does not join the two sides")
        return (x, y) if x[0] in t_side else (y, x)

    candidates = []
    for (arcA, arcB) in ((arc_a, arc_b), (arc_b, arc_a)):
        A_R, A_S = side_darts(arcA)
        B_R, B_S = side_darts(arcB)
        relabel, crossings = _reflect_subset(diagram, t_side)
        crossings.pop(c)
        adjacency = {}
        handled = {
            (c, s), (c, (s + 1) % 4), (c, (s + 2) % 4), (c, (s + 3) % 4),
            T_a, T_b, O1, O2, A_R, A_S, B_R, B_S,
        }
        for d, e in diagram.adjacency.items():
            if d in handled or e in handled:
                continue
            adjacency[relabel(d)] = relabel(e)

        def connect(a, b, adjacency=adjacency):
            adjacency[a] = b
            adjacency[b] = a

        connect(relabel(B_R), O1)
        connect(relabel(A_R), O2)
        connect(relabel(T_a), (new_id, 0))
        connect(B_S, (new_id, 1))
        connect(A_S, (new_id, 2))
        connect(relabel(T_b), (new_id, 3))
        for axis in (0, 1):
            crossings2 = dict(crossings)
            crossings2[new_id] = axis
            try:
                result = Diagram(crossings2, dict(adjacency))
            except DiagramError:
                continue
            if result.sign(new_id) == sign_c:
                candidates.append(result)
    if len(candidates) != 1:
        raise DiagramError(
            f"flype wiring did not resolve uniquely ({len(candidates)} candidates)"
        )
    return candidates[0]


# -- moves ----------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    """A replayable local move; `site` holds the data needed to replay."""

    kind: str
    site: dict

    KINDS = (
        "Flype", "CrossingChange", "Untongue", "Untwirl", "Tongue", "Twirl",
        "ReidemeisterII", "ReidemeisterIII", "NugatoryReduction",
    )

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise DiagramError(f"unknown move kind {self.kind}")

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "site": _site_to_json(self.site)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Move":
        return cls(obj["kind"], _site_from_json(obj["site"]))


def _site_to_json(site: dict) -> dict:
    out = {}
    for k, v in site.items():
        if isinstance(v, tuple):
            out[k] = _tuple_to_json(v)
        else:
            out[k] = v
    return out


def _tuple_to_json(v):
    return [_tuple_to_json(x) if isinstance(x, tuple) else x for x in v]


def _site_from_json(site: dict) -> dict:
    out = {}
    for k, v in site.items():
        if isinstance(v, list):
            out[k] = _tuple_from_json(v)
        else:
            out[k] = v
    return out


def _tuple_from_json(v):
    return tuple(_tuple_from_json(x) if isinstance(x, list) else x for x in v)


def apply_move(diagram: Diagram, move: Move) -> Diagram:
    """Replay a move on a diagram."""
    site = move.site
    if move.kind == "CrossingChange":
        return diagram.change_crossing(site["crossing"])
    if move.kind == "Flype":
        return flype(diagram, site["crossing"], site["corner"], site["cut"])
    if move.kind in ("Untongue", "Untwirl", "ReidemeisterII") and "face_dart" in site:
        d = site["face_dart"]
        return delete_bigon(diagram, diagram.face_of_dart[d])
    if move.kind == "ReidemeisterIII":
        return triangle_move(diagram, site["face"], site["side"])
    if move.kind in ("Tongue", "Twirl", "ReidemeisterII") and "dart1" in site:
        return insert_band(diagram, site["dart1"], site["dart2"], site["over"])
    if move.kind == "NugatoryReduction":
        return _remove_nugatory(diagram, site["crossing"], site["corner"])
    raise DiagramError(f"cannot replay move {move}")


def bigon_move(diagram: Diagram, face_index: int) -> Move:
    """A replayable deletion move for a bigon face, labelled by the local
    pattern: deletions touching the dealternating crossing of an
    almost-alternating diagram are untongues or untwirls."""
    orbit = diagram.faces[face_index]
    kind = "ReidemeisterII"
    dealt = diagram.dealternator
    crossings = {d[0] for d in orbit}
    if dealt is not None and dealt in crossings:
        other = next(iter(crossings - {dealt}), None)
        kind = "Untongue"
        if other is not None:
            # a twirl leaves a doubled edge ending in a degree-2 region:
            # the bigon's two arcs and a third face of length two pattern
            if _is_twirl_pattern(diagram, dealt, other):
                kind = "Untwirl"
    return Move(kind, {"face_dart": orbit[0], "crossings": tuple(sorted(crossings))})


def _is_twirl_pattern(diagram: Diagram, c1, c2) -> bool:
    """Both strands of the bigon connect c1 and c2 twice over (a clasp
    returning on itself), the footprint of a twirl."""
    links = sum(
        1 for p in range(4) if diagram.adjacency[(c1, p)][0] == c2
    )
    return links >= 3


# -- medial construction and clasp diagrams -------------------------------


def diagram_from_plane_graph(edges: dict, rotation: dict, under_axis: int) -> Diagram:
    """Alternating-style diagram whose chessboard graph is the given plane
    multigraph: one crossing per edge, arcs following the face corners.

    edges: edge id -> (u, v); rotation: vertex -> cyclic tuple of edge-ends
    (edge id, end) with end 0 at u and end 1 at v.  All crossings receive
    the same under_axis; for a connected plane graph this yields one of the
    two alternating chessboard realizations.
    """
    # crossing ports for edge e directed u -> v, counterclockwise:
    # 0 = v-side next, 1 = v-side prev, 2 = u-side next, 3 = u-side prev
    def port(end_ref, which: str) -> Dart:
        eid, end = end_ref
        if which == "next":
            return (eid, 0 if end == 1 else 2)
        return (eid, 1 if end == 1 else 3)

    adjacency = {}
    for w, ends in rotation.items():
        k = len(ends)
        for j in range(k):
            a = ends[j]
            b = ends[(j + 1) % k]
            d1 = port(a, "next")
            d2 = port(b, "prev")
            adjacency[d1] = d2
            adjacency[d2] = d1
    crossings = {eid: under_axis for eid in edges}
    return Diagram(crossings, adjacency)


def clasp_knot(m: int) -> Diagram:
    """The alternating clasp knot with |m| twist crossings of sign(m) and
    a doubled clasp pair: chessboard graph an (|m|+1)-cycle with one edge
    doubled.  Crossing ids: 0..|m|-1 the cycle edges v_j v_{j+1} (edge 0
    doubled by crossing id |m|+1... edge ids follow construction order)."""
    if m == 0:
        raise DiagramError("clasp parameter must be nonzero")
    k = abs(m) + 1  # cycle length
    edges = {}
    rotation = {w: [] for w in range(k)}
    for j in range(k):
        edges[j] = (j, (j + 1) % k)
        rotation[j].append((j, 0))
        rotation[(j + 1) % k].append((j, 1))
    edges[k] = (0, 1)  # the doubled copy of edge 0
    # insert the doubled copy adjacent to edge 0 at both endpoints so that
    # the parallel pair bounds a bigon
    r0 = rotation[0]
    r0.insert(r0.index((0, 0)) + 1, (k, 0))
    r1 = rotation[1]
    r1.insert(r1.index((0, 1)), (k, 1))
    rotation = {w: tuple(ends) for w, ends in rotation.items()}
    for axis in (0, 1):
        d = diagram_from_plane_graph(edges, rotation, axis)
        if not d.is_alternating:
            continue
        twist = k - 1 if k > 2 else 1  # a twist crossing: any cycle edge != 0
        if d.sign(twist) == (1 if m > 0 else -1):
            return d
    raise DiagramError("clasp construction failed")


def clasp_Cm(m: int) -> Diagram:
    """The almost-alternating unknot diagram with parameter m: the clasp
    knot with one crossing of the doubled pair changed."""
    return clasp_knot(m).change_crossing(abs(m) + 1)


_CLASP_ORBITS: dict = {}


def _clasp_orbit_keys(m: int) -> frozenset:
    """Canonical keys of the flype orbit of the parameter-m diagram."""
    if m not in _CLASP_ORBITS:
        seed = clasp_Cm(m)
        seen = {seed.canonical_key}
        frontier = [seed]
        while frontier:
            d = frontier.pop()
            for (c, s, cut) in flype_sites(d):
                try:
                    d2 = flype(d, c, s, cut)
                except DiagramError:
                    continue
                if d2.canonical_key not in seen:
                    seen.add(d2.canonical_key)
                    frontier.append(d2)
        _CLASP_ORBITS[m] = frozenset(seen)
    return _CLASP_ORBITS[m]


def is_clasp_Cm(diagram: Diagram):
    """The parameter m if the diagram matches the canonical clasp diagram
    up to planar isotopy and flype; None otherwise."""
    n = diagram.n
    if n < 3 or diagram.is_alternating:
        return None
    m_abs = n - 2
    key = diagram.canonical_key
    for m in (m_abs, -m_abs):
        if key in _clasp_orbit_keys(m):
            return m
    return None


# -- parsing --------------------------------------------------------------


def parse_pd(text: str) -> Diagram:
    """Parse a PD code "PD[X(a,b,c,d),...]" with labels 1..2n.

    Ports 0..3 of each crossing take the labels a, b, c, d counterclockwise
    with the under-strand entering at a."""
    body = text.strip()
    m = re.fullmatch(r"PD\[(.*)\]", body, re.DOTALL)
    if not m:
        raise DiagramError("PD code must look like PD[X(a,b,c,d),...]")
    terms = re.findall(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)", m.group(1))
    cleaned = re.sub(r"X\(\s*\d+\s*,\s*\d+\s*,\s*\d+\s*,\s*\d+\s*\)", "", m.group(1))
    if re.search(r"[^\s,]", cleaned):
        raise DiagramError("malformed PD code")
    if not terms:
        raise DiagramError("empty PD code")
    ends = {}
    for cid, labels in enumerate(terms):
        for port, lab in enumerate(labels):
            ends.setdefault(int(lab), []).append((cid, port))
    adjacency = {}
    for lab, darts in ends.items():
        if len(darts) != 2:
            raise DiagramError(f"edge label {lab} used {len(darts)} times")
        adjacency[darts[0]] = darts[1]
        adjacency[darts[1]] = darts[0]
    crossings = {cid: 0 for cid in range(len(terms))}
    return Diagram(crossings, adjacency)


def parse_dt(text: str) -> Diagram:
    """Parse a Dowker-Thistlethwaite code (space separated even integers).

    The knot is traversed at times 1..2n; crossing i carries the odd time
    2i+1 and the even time |entries[i]|.  A positive entry means the even
    passage goes under (the alternating convention); a negative entry means
    it goes over.  The shadow is embedded via a planarity check on a
    quadrilateral gadget per crossing, which forces the two passages to
    interleave; the result is determined up to overall reflection.
    """
    try:
        entries = [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise DiagramError(f"malformed DT code: {text!r}") from exc
    if not entries:
        raise DiagramError("empty DT code")
    n = len(entries)
    if sorted(abs(e) for e in entries) != list(range(2, 2 * n + 1, 2)):
        raise DiagramError("DT code must pair odd labels with even labels 2..2n")
    if any(abs(e) % 2 for e in entries):
        raise DiagramError("DT entries must be even")
    emb = _realize_shadow(n, entries)
    return _assemble_from_gadgets(n, entries, emb)


def _dt_passages(n: int, entries: list) -> dict:
    """time -> (crossing, passage); passage 0 is the odd-time visit."""
    out = {}
    for i, e in enumerate(entries):
        out[2 * i + 1] = (i, 0)
        out[abs(e)] = (i, 1)
    return out


# gadget corners: passage 0 enters corner 0 and exits corner 2,
# passage 1 enters corner 1 and exits corner 3
_ENTRY_CORNER = (0, 1)
_EXIT_CORNER = (2, 3)


def _realize_shadow(n: int, entries: list):
    """Planar embedding of the shadow with a quadrilateral gadget per
    crossing to force the two passages to interleave in rotation."""
    import networkx as nx

    at_time = _dt_passages(n, entries)
    G = nx.Graph()
    for i in range(n):
        for k in range(4):
            G.add_edge(("q", i, k), ("q", i, (k + 1) % 4))
    for t in range(1, 2 * n + 1):
        t2 = t % (2 * n) + 1
        c1, p1 = at_time[t]
        c2, p2 = at_time[t2]
        G.add_edge(("q", c1, _EXIT_CORNER[p1]), ("a", t))
        G.add_edge(("a", t), ("q", c2, _ENTRY_CORNER[p2]))
    ok, emb = nx.check_planarity(G)
    if not ok:
        raise DiagramError("DT code is not realizable as a planar diagram")
    return emb


def _assemble_from_gadgets(n: int, entries: list, emb) -> Diagram:
    at_time = _dt_passages(n, entries)
    # orientation of each gadget: corners in rotational order 0,1,2,3 or
    # 0,3,2,1, read off from the cyclic neighbor order at corner 0
    corner_order = {}
    for i in range(n):
        nbrs = list(emb.neighbors_cw_order(("q", i, 0)))
        arc_pos = next(k for k, v in enumerate(nbrs) if v[0] == "a")
        after_arc = nbrs[(arc_pos + 1) % 3]
        if after_arc == ("q", i, 1):
            corner_order[i] = (0, 1, 2, 3)
        else:
            corner_order[i] = (0, 3, 2, 1)
    port_of_corner = {
        (i, corner): port
        for i in range(n)
        for port, corner in enumerate(corner_order[i])
    }
    adjacency = {}
    for t in range(1, 2 * n + 1):
        t2 = t % (2 * n) + 1
        c1, p1 = at_time[t]
        c2, p2 = at_time[t2]
        d1 = (c1, port_of_corner[(c1, _EXIT_CORNER[p1])])
        d2 = (c2, port_of_corner[(c2, _ENTRY_CORNER[p2])])
        adjacency[d1] = d2
        adjacency[d2] = d1
    # corners 0 and 2 always land on ports 0 and 2, so passage 0 is axis 0
    crossings = {}
    for i, e in enumerate(entries):
        crossings[i] = 1 if e > 0 else 0
    return Diagram(crossings, adjacency)


def parse_diagram(text: str) -> Diagram:
    """Parse either a PD code or a DT code."""
    stripped = text.strip()
    if stripped.startswith("PD["):
        return parse_pd(stripped)
    return parse_dt(stripped)
