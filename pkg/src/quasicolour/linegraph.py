"""Line graphs of periodic graphs, periodic edge colourings and orientations."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .colouring import PeriodicColouring, pipeline
from .errors import ArgumentError, UnsupportedInputError
from .voltage import Dart, PeriodicGraph, build_patch, cover_vertex, estimate_ends, require_valid

# report label for "passed the degree / cut-vertex test"
DEGREE_CUT_ROUTE = "theorem-6.3"


def edge_orbits(pg: PeriodicGraph) -> list:
    """One representative dart per edge orbit (the smaller of a dart and its reverse)."""
    if pg.is_fuchsian:
        raise UnsupportedInputError("line graphs need a free voltage action (euclidean input)", stage="line_graph")
    reps = []
    seen = set()
    for d in pg.darts:
        rev = Dart(d.v, d.u, pg.group.inverse(d.voltage))
        key = min((d.u, d.v, d.voltage), (rev.u, rev.v, rev.voltage))
        if key not in seen:
            seen.add(key)
            reps.append(Dart(*key))
    return reps


def _edge_of(pg, reps_index, d: Dart):
    """Edge orbit of dart ``d`` and the shift placing it relative to ``d``'s tail."""
    key = (d.u, d.v, d.voltage)
    if key in reps_index:
        return reps_index[key], pg.group.identity()
    rev = (d.v, d.u, pg.group.inverse(d.voltage))
    return reps_index[rev], d.voltage


def line_graph(pg: PeriodicGraph) -> PeriodicGraph:
    """Vertices are edge orbits; edges join edges sharing an endpoint.

    Line-graph vertex ``(e, h)`` is the edge ``{(u, h), (v, h g)}`` for the
    representative dart ``(u, v, g)`` of orbit ``e``.
    """
    require_valid(pg)
    reps = edge_orbits(pg)
    index = {(d.u, d.v, d.voltage): i for i, d in enumerate(reps)}
    grp = pg.group
    darts = []
    for e, d in enumerate(reps):
        rev = Dart(d.v, d.u, grp.inverse(d.voltage))
        for other in pg.darts_from(d.u):
            if other == d:
                continue
            f, shift = _edge_of(pg, index, other)
            darts.append(Dart(e, f, shift))
        for other in pg.darts_from(d.v):
            if other == rev:
                continue
            f, shift = _edge_of(pg, index, other)
            darts.append(Dart(e, f, grp.multiply(d.voltage, shift)))
    geometry = None
    if pg.geometry is not None:
        geometry = []
        for d in reps:
            (ax, ay), (bx, by) = pg.geometry[d.u], pg.geometry[d.v]
            gx, gy = grp.displacement(d.voltage)
            geometry.append(((ax + bx + gx) / 2, (ay + by + gy) / 2))
    out = PeriodicGraph(pg.kind, len(reps), tuple(darts), geometry, grp)
    require_valid(out)
    return out


@dataclass
class PlanarityReport:
    route: str  # DEGREE_CUT_ROUTE or "fail"
    radius: int
    max_degree: int
    witnesses: list = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.route != "fail"

    def to_json(self) -> dict:
        return {
            "route": self.route,
            "radius": self.radius,
            "max_degree": self.max_degree,
            "witnesses": self.witnesses,
            "note": self.note,
        }


def _vertex_json(pg, v):
    return [v.orbit, list(v.element)]


def line_planarity_check(pg: PeriodicGraph, r: int = 6) -> PlanarityReport:
    """Decide whether the line graph is planar from degrees and cut vertices.

    Maximum degree at most 4 with every degree-4 vertex a cut vertex passes.
    A degree-5 vertex (a K_{1,5}) or a degree-4 vertex that is not a cut
    vertex of the radius-``r`` patch fails with that vertex as the witness.
    Small forbidden configurations found on the patch are listed as extra
    witnesses.  Acceptance means "no witness within radius r".
    """
    if r < 4:
        raise ArgumentError("line planarity scan needs radius >= 4")
    require_valid(pg)
    degrees = [pg.degree(u) for u in range(pg.orbits)]
    top = max(degrees)
    witnesses = []
    for u, deg in enumerate(degrees):
        if deg > 4:
            root = cover_vertex(pg, u)
            patch = build_patch(pg, root, 1)
            leaves = [_vertex_json(pg, patch.vertices[j]) for j in range(1, 6)]
            witnesses.append({"type": "K1,5", "centre": _vertex_json(pg, root), "leaves": leaves})
    for u, deg in enumerate(degrees):
        if deg == 4:
            patch = build_patch(pg, cover_vertex(pg, u), r)
            if 0 not in set(nx.articulation_points(patch.graph())):
                witnesses.append({"type": "degree-4 non-cut vertex", "vertex": _vertex_json(pg, patch.root), "orbit": u})
    if not witnesses:
        return PlanarityReport(DEGREE_CUT_ROUTE, r, top, [], f"no witness within radius {r}")
    witnesses.extend(forbidden_subgraphs(build_patch(pg, None, r)))
    return PlanarityReport("fail", r, top, witnesses, "line graph is not planar")


def forbidden_subgraphs(patch) -> list:
    """First copy (as a subgraph) of K_{1,5}, K_{3,3}, the 5-vertex fan and K_{1,1,3}."""
    g = patch.graph()
    inner = [i for i, d in enumerate(patch.depth) if d < patch.radius]
    found = {}
    for a in inner:
        nbrs = sorted(g.neighbors(a))
        if "K1,5" not in found and len(nbrs) >= 5:
            found["K1,5"] = [a] + nbrs[:5]
        for b in nbrs:
            if b < a:
                continue
            common = sorted(set(nbrs) & set(g.neighbors(b)))
            if "K2+3K1" not in found and len(common) >= 3:
                found["K2+3K1"] = [a, b] + common[:3]
        if "P4+K1" not in found:
            path = _path4(g.subgraph(nbrs))
            if path:
                found["P4+K1"] = [a] + path
        if "K3,3" not in found:
            two = sorted({c for b in nbrs for c in g.neighbors(b)} - {a})
            for i, b in enumerate(two):
                for c in two[i + 1 :]:
                    common = set(nbrs) & set(g.neighbors(b)) & set(g.neighbors(c))
                    if len(common) >= 3:
                        found["K3,3"] = [a, b, c] + sorted(common)[:3]
                        break
                if "K3,3" in found:
                    break
    out = []
    for kind in ("K1,5", "K3,3", "P4+K1", "K2+3K1"):
        if kind in found:
            out.append({"type": kind, "vertices": [_vertex_json(patch.pg, patch.vertices[i]) for i in found[kind]]})
    return out


def _path4(h):
    for a in sorted(h.nodes):
        for b in sorted(h.neighbors(a)):
            for c in sorted(h.neighbors(b)):
                if c == a:
                    continue
                for d in sorted(h.neighbors(c)):
                    if d not in (a, b):
                        return [a, b, c, d]
    return None


@dataclass
class EdgeColouring:
    """Colouring of the line graph read as a colouring of edges of ``pg``."""

    pg: PeriodicGraph
    line: PeriodicGraph
    reps: list
    colouring: PeriodicColouring

    @property
    def palette(self) -> int:
        return self.colouring.palette

    def colour_of_edge(self, dart: Dart, tail) -> int:
        """Colour of the edge leaving cover vertex ``tail`` along ``dart``."""
        index = {(d.u, d.v, d.voltage): i for i, d in enumerate(self.reps)}
        e, shift = _edge_of(self.pg, index, dart)
        h = self.pg.group.multiply(tail.element, shift)
        return self.colouring.colour_of(cover_vertex(self.line, e, h))


def periodic_edge_colouring(pg: PeriodicGraph, r: int = 6, **kwargs):
    """Colour the edges by colouring the line graph.  Returns ``(EdgeColouring, report)``."""
    require_valid(pg)
    ends = estimate_ends(pg, 2, 6)
    if ends != 1:
        raise UnsupportedInputError(f"end estimate is {ends}; only one-ended graphs are supported", stage="edge_colour")
    check = line_planarity_check(pg, r)
    if not check.ok:
        w = check.witnesses[0]
        raise UnsupportedInputError(
            f"line graph not planar ({w['type']} witness); no periodic edge colouring construction applies",
            stage="line_planarity_check",
        )
    lg = line_graph(pg)
    pc, report = pipeline(lg, **kwargs)
    report = dict(report)
    report["line_graph_orbits"] = lg.orbits
    report["planarity"] = check.to_json()
    return EdgeColouring(pg, lg, edge_orbits(pg), pc), report


def check_edge_colouring(ec: EdgeColouring, r: int = 4) -> list:
    """Vertices of the radius-``r`` patch where two incident edges share a colour."""
    patch = build_patch(ec.pg, None, r)
    bad = []
    for v in patch.vertices:
        cols = [ec.colour_of_edge(d, v) for d in ec.pg.darts_from(v.orbit)]
        if len(set(cols)) != len(cols):
            bad.append({"vertex": _vertex_json(ec.pg, v), "colours": cols})
    return bad


@dataclass
class Orientation:
    """Direction of every dart of every quotient vertex; True means tail to head."""

    colouring: PeriodicColouring
    forward: dict  # (quotient vertex, dart index) -> bool

    def points_forward(self, tail, head) -> bool:
        ct, ch = self.colouring.colour_of(tail), self.colouring.colour_of(head)
        if ct == ch:
            raise ArgumentError("endpoints share a colour")
        return ct < ch

    def to_json(self) -> list:
        return [
            {"vertex": a, "dart": i, "forward": f} for (a, i), f in sorted(self.forward.items())
        ]


def periodic_orientation(pc: PeriodicColouring) -> Orientation:
    """Orient each edge from the lower colour to the higher one."""
    from .voltage import neighbours

    q = pc.quotient
    forward = {}
    for a, rep in enumerate(q.representatives):
        for i, nb in enumerate(neighbours(pc.pg, rep)):
            ca, cb = pc.colour_of(rep), pc.colour_of(nb)
            if ca == cb:
                raise ArgumentError(f"colouring is not proper at quotient vertex {a}", stage="orient")
            forward[(a, i)] = ca < cb
    return Orientation(pc, forward)

