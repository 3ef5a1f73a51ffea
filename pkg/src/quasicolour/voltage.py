"""Voltage graphs: finite descriptions of infinite periodic graphs.

A dart ``(u, v, g)`` says that cover vertex ``(u, h)`` is adjacent to
``(v, h g)``.  Euclidean voltages are integer vectors over a lattice basis;
Fuchsian voltages are words in a presentation, and cover vertices are then
identified by where the element moves the orbit's base point (vertex
stabilisers are allowed there, see ``FuchsianGroup.stabilizers``).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .errors import ArgumentError, ResourceError
from .euclid import EuclideanIsometry, Lattice, frac
from .hyperbolic import FuchsianPresentation, MoebiusMatrix, hyperbolic_distance
from .words import format_word, invert_word, multiply_words, parse_word

EUCLIDEAN = "euclidean-lattice"
FUCHSIAN = "fuchsian"
PATCH_CAP = 200_000
_SNAP = 1e-7  # two disc points closer than this are the same cover vertex


@dataclass(frozen=True)
class EuclideanGroup:
    """Translation lattice Z^rank; ``basis`` gives the vectors in the plane."""

    basis: tuple
    generators: tuple = ()  # optional isometries the lattice came from (metadata)

    def __post_init__(self):
        basis = tuple(tuple(frac(x) for x in v) for v in self.basis)
        if len(basis) not in (1, 2) or any(len(v) != 2 for v in basis):
            raise ArgumentError("euclidean basis needs one or two plane vectors")
        if len(basis) == 2:
            Lattice(basis)  # independence check
        elif basis[0] == (0, 0):
            raise ArgumentError("basis vector must be non-zero")
        object.__setattr__(self, "basis", basis)
        gens = tuple(self.generators)
        if any(not isinstance(g, EuclideanIsometry) for g in gens):
            raise ArgumentError("generators must be EuclideanIsometry values")
        object.__setattr__(self, "generators", gens)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def identity(self) -> tuple:
        return (0,) * self.rank

    def multiply(self, h, g) -> tuple:
        return tuple(a + b for a, b in zip(h, g))

    def inverse(self, g) -> tuple:
        return tuple(-a for a in g)

    def lattice(self) -> Lattice:
        if self.rank != 2:
            raise ArgumentError("a rank-1 voltage group has no plane lattice")
        return Lattice(self.basis)

    def displacement(self, v) -> tuple:
        x = sum((c * b[0] for c, b in zip(v, self.basis)), Fraction(0))
        y = sum((c * b[1] for c, b in zip(v, self.basis)), Fraction(0))
        return (x, y)

    def parse_voltage(self, enc) -> tuple:
        if isinstance(enc, int) and self.rank == 1:
            enc = [enc]
        if not isinstance(enc, (list, tuple)) or len(enc) != self.rank:
            raise ArgumentError(f"euclidean voltage {enc!r} must be a list of {self.rank} integers")
        if any(isinstance(c, bool) or not isinstance(c, int) for c in enc):
            raise ArgumentError(f"euclidean voltage {enc!r} must have integer entries")
        return tuple(enc)

    def format_voltage(self, g) -> list:
        return list(g)


@dataclass(frozen=True)
class FuchsianGroup:
    """A Fuchsian presentation plus the stabiliser words of each orbit's base point."""

    presentation: FuchsianPresentation
    stabilizers: tuple = ()  # per orbit: tuple of words fixing the base point

    def identity(self) -> tuple:
        return ()

    def multiply(self, h, g) -> tuple:
        return multiply_words(h, g)

    def inverse(self, g) -> tuple:
        return invert_word(g)

    def element(self, word) -> MoebiusMatrix:
        return self.presentation.evaluate(word)

    def parse_voltage(self, enc) -> tuple:
        if not isinstance(enc, str):
            raise ArgumentError(f"fuchsian voltage {enc!r} must be a word string")
        try:
            return parse_word(enc, self.presentation.generators)
        except ValueError as exc:
            raise ArgumentError(str(exc)) from None

    def format_voltage(self, g) -> str:
        return format_word(g, self.presentation.generators)

    def stabilizer(self, orbit: int) -> tuple:
        return self.stabilizers[orbit] if orbit < len(self.stabilizers) else ()


@dataclass(frozen=True)
class Dart:
    u: int
    v: int
    voltage: tuple


@dataclass(frozen=True)
class PeriodicGraph:
    kind: str
    orbits: int
    darts: tuple
    geometry: tuple | None
    group: object

    def __post_init__(self):
        if self.kind not in (EUCLIDEAN, FUCHSIAN):
            raise ArgumentError(f"unknown graph kind {self.kind!r}")
        if not isinstance(self.orbits, int) or self.orbits < 1:
            raise ArgumentError("orbit count must be a positive integer")
        expected = EuclideanGroup if self.kind == EUCLIDEAN else FuchsianGroup
        if not isinstance(self.group, expected):
            raise ArgumentError(f"{self.kind} graph needs a {expected.__name__}")
        darts = tuple(d if isinstance(d, Dart) else Dart(*d) for d in self.darts)
        for d in darts:
            if not (0 <= d.u < self.orbits and 0 <= d.v < self.orbits):
                raise ArgumentError(f"dart {d} refers to a missing orbit")
        object.__setattr__(self, "darts", darts)
        if self.geometry is not None:
            geom = tuple(tuple(_coord(c) for c in p) for p in self.geometry)
            if len(geom) != self.orbits or any(len(p) != 2 for p in geom):
                raise ArgumentError("geometry needs one point per orbit")
            if self.kind == FUCHSIAN and any(float(x) ** 2 + float(y) ** 2 >= 1 for x, y in geom):
                raise ArgumentError("fuchsian base points must lie inside the unit disc")
            object.__setattr__(self, "geometry", geom)
        elif self.kind == FUCHSIAN:
            raise ArgumentError("fuchsian graphs need base points (geometry)")
        out = [[] for _ in range(self.orbits)]
        for d in darts:
            out[d.u].append(d)
        object.__setattr__(self, "_out", tuple(tuple(x) for x in out))
        if self.kind == FUCHSIAN:
            mats = {d.voltage: self.group.element(d.voltage) for d in darts}
            object.__setattr__(self, "_mats", mats)

    @property
    def is_fuchsian(self) -> bool:
        return self.kind == FUCHSIAN

    def darts_from(self, u: int) -> tuple:
        return self._out[u]

    def degree(self, u: int) -> int:
        return len(self._out[u])

    def base_point(self, orbit: int) -> complex:
        if self.geometry is None:
            raise ArgumentError("graph has no geometry", stage="geometry")
        x, y = self.geometry[orbit]
        return complex(float(x), float(y))

    def voltage_element(self, voltage):
        if self.is_fuchsian:
            m = self._mats.get(voltage)
            return m if m is not None else self.group.element(voltage)
        return voltage


def _coord(c):
    if isinstance(c, float):
        return c
    return frac(c)


@dataclass(frozen=True)
class CoverVertex:
    """Vertex of the infinite cover.

    ``key`` is the element itself (Euclidean) or the base point image rounded
    to 1e-9 (Fuchsian).  Fuchsian identity is geometric; inside a patch it is
    resolved with a tolerance by :class:`Patch`.
    """

    orbit: int
    key: tuple
    element: object = field(compare=False, repr=False)

    @property
    def word(self) -> tuple:
        e = self.element
        return e.word if isinstance(e, MoebiusMatrix) else e


def cover_vertex(pg: PeriodicGraph, orbit: int, element=None) -> CoverVertex:
    """Cover vertex for ``orbit`` and a group element (vector, word or matrix)."""
    if not 0 <= orbit < pg.orbits:
        raise ArgumentError(f"no orbit {orbit}")
    if not pg.is_fuchsian:
        element = pg.group.identity() if element is None else tuple(element)
        return CoverVertex(orbit, element, element)
    if element is None:
        element = MoebiusMatrix.identity()
    elif not isinstance(element, MoebiusMatrix):
        element = pg.group.element(tuple(element))
    p = element.act_on_disc(pg.base_point(orbit))
    return CoverVertex(orbit, (round(p.real * 1e9), round(p.imag * 1e9)), element)


def position(pg: PeriodicGraph, vertex: CoverVertex) -> tuple:
    """Plane or disc coordinates of a cover vertex as floats."""
    if pg.is_fuchsian:
        p = vertex.element.act_on_disc(pg.base_point(vertex.orbit))
        return (p.real, p.imag)
    if pg.geometry is None:
        raise ArgumentError("graph has no geometry", stage="geometry")
    bx, by = pg.geometry[vertex.orbit]
    dx, dy = pg.group.displacement(vertex.element)
    return (float(bx + dx), float(by + dy))


def neighbours(pg: PeriodicGraph, vertex: CoverVertex) -> list:
    """Neighbours of a cover vertex in dart order."""
    out = []
    for d in pg.darts_from(vertex.orbit):
        if pg.is_fuchsian:
            out.append(cover_vertex(pg, d.v, vertex.element @ pg.voltage_element(d.voltage)))
        else:
            out.append(cover_vertex(pg, d.v, pg.group.multiply(vertex.element, d.voltage)))
    return out


def translate(pg: PeriodicGraph, t, vertex: CoverVertex) -> CoverVertex:
    """Left action ``t . (u, h) = (u, t h)``."""
    if pg.is_fuchsian:
        m = t if isinstance(t, MoebiusMatrix) else pg.group.element(tuple(t))
        return cover_vertex(pg, vertex.orbit, m @ vertex.element)
    return cover_vertex(pg, vertex.orbit, pg.group.multiply(tuple(t), vertex.element))


class _VertexIndex:
    """Maps cover vertices to slots; tolerant lookup for disc points."""

    def __init__(self, pg: PeriodicGraph):
        self.pg = pg
        self.exact = {}
        self.cells = {}

    def _point(self, cv):
        return cv.element.act_on_disc(self.pg.base_point(cv.orbit))

    def find(self, cv):
        if not self.pg.is_fuchsian:
            return self.exact.get(cv)
        p = self._point(cv)
        cx, cy = round(p.real / _SNAP), round(p.imag / _SNAP)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for q, slot in self.cells.get((cv.orbit, cx + dx, cy + dy), ()):
                    if abs(p - q) < _SNAP:
                        return slot
        return None

    def add(self, cv, slot):
        if not self.pg.is_fuchsian:
            self.exact[cv] = slot
            return
        p = self._point(cv)
        cell = (cv.orbit, round(p.real / _SNAP), round(p.imag / _SNAP))
        self.cells.setdefault(cell, []).append((p, slot))


@dataclass
class Patch:
    """Ball of the cover around ``root``; vertices ordered by layer, orbit, key."""

    pg: PeriodicGraph
    vertices: tuple
    edges: tuple
    radius: int
    root: CoverVertex
    depth: tuple
    _index: _VertexIndex = field(repr=False, default=None)

    @property
    def interior_mask(self) -> tuple:
        return tuple(d < self.radius for d in self.depth)

    def index_of(self, vertex: CoverVertex):
        slot = self._index.find(vertex)
        return None if slot is None else slot[0]

    def adjacency(self) -> list:
        adj = [[] for _ in self.vertices]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        g.add_edges_from(self.edges)
        return g

    def positions(self) -> list:
        return [position(self.pg, v) for v in self.vertices]


def build_patch(pg: PeriodicGraph, root: CoverVertex | None = None, radius: int = 1, cap: int = PATCH_CAP) -> Patch:
    """All cover vertices within graph distance ``radius`` of ``root``."""
    if radius < 0:
        raise ArgumentError("radius must be non-negative")
    if root is None:
        root = cover_vertex(pg, 0)
    index = _VertexIndex(pg)
    verts = [root]
    depth = [0]
    index.add(root, [0])
    nbrs = {}
    layer = [0]
    for d in range(1, radius + 1):
        found = []
        for i in layer:
            nbrs[i] = neighbours(pg, verts[i])
            for nb in nbrs[i]:
                if index.find(nb) is None:
                    slot = [None]
                    index.add(nb, slot)
                    found.append((nb, slot))
        found.sort(key=lambda e: (e[0].orbit, e[0].key))
        layer = []
        for nb, slot in found:
            slot[0] = len(verts)
            layer.append(len(verts))
            verts.append(nb)
            depth.append(d)
        if len(verts) > cap:
            raise ResourceError(
                f"patch exceeded {cap} vertices at radius {d}", stage="build_patch", best=d - 1
            )
        if not layer:
            break
    edges = set()
    for i, v in enumerate(verts):
        if i not in nbrs:
            nbrs[i] = neighbours(pg, v)
        for nb in nbrs[i]:
            slot = index.find(nb)
            if slot is not None and slot[0] != i:
                edges.add((min(i, slot[0]), max(i, slot[0])))
    return Patch(pg, tuple(verts), tuple(sorted(edges)), radius, root, tuple(depth), index)


@dataclass
class ValidationReport:
    problems: list = field(default_factory=list)  # (message, dart)

    @property
    def ok(self) -> bool:
        return not self.problems

    def to_json(self, pg: PeriodicGraph) -> dict:
        return {
            "ok": self.ok,
            "problems": [
                {"message": m, "dart": None if d is None else [d.u, d.v, pg.group.format_voltage(d.voltage)]}
                for m, d in self.problems
            ],
        }


def validate_quotient(pg: PeriodicGraph) -> ValidationReport:
    """Check the voltage-graph invariants; returns every violation found."""
    report = ValidationReport()
    if pg.is_fuchsian:
        _validate_fuchsian(pg, report)
    else:
        _validate_euclidean(pg, report)
    return report


def _validate_euclidean(pg, report):
    counts = {}
    for d in pg.darts:
        counts[(d.u, d.v, d.voltage)] = counts.get((d.u, d.v, d.voltage), 0) + 1
    identity = pg.group.identity()
    seen = set()
    for d in pg.darts:
        key = (d.u, d.v, d.voltage)
        if d.u == d.v and d.voltage == identity:
            report.problems.append(("loop in cover", d))
            continue
        if counts[key] > 1:
            if key not in seen:
                report.problems.append(("duplicate dart", d))
            seen.add(key)
            continue
        rev = (d.v, d.u, pg.group.inverse(d.voltage))
        n = counts.get(rev, 0)
        if n == 0:
            report.problems.append(("missing reverse dart", d))
        elif n > 1:
            report.problems.append(("reverse dart present more than once", d))


def _validate_fuchsian(pg, report):
    for u in range(pg.orbits):
        root = cover_vertex(pg, u)
        p0 = pg.base_point(u)
        for w in pg.group.stabilizer(u):
            if abs(pg.group.element(w).act_on_disc(p0) - p0) > _SNAP:
                report.problems.append((f"stabiliser {pg.group.format_voltage(w)} moves base point of orbit {u}", None))
        index = _VertexIndex(pg)
        index.add(root, "root")
        slots = []
        for d, nb in zip(pg.darts_from(u), neighbours(pg, root)):
            if index.find(nb) == "root":
                report.problems.append(("loop in cover", d))
                continue
            hit = None
            for s in slots:
                if s[0].orbit == nb.orbit and _same_point(pg, s[0], nb):
                    hit = s
            if hit is not None:
                report.problems.append(("duplicate dart", d))
                continue
            slots.append((nb, d))
            back = sum(1 for m in neighbours(pg, nb) if index.find(m) == "root")
            if back == 0:
                report.problems.append(("missing reverse dart", d))
            elif back > 1:
                report.problems.append(("reverse dart present more than once", d))
        for w in pg.group.stabilizer(u):
            # the dart fan must be invariant under the stabiliser
            s = pg.group.element(w)
            moved = [translate(pg, s, nb) for nb, _ in slots]
            fan = _VertexIndex(pg)
            for nb, _ in slots:
                fan.add(nb, True)
            if any(fan.find(m) is None for m in moved):
                report.problems.append((f"darts of orbit {u} not invariant under its stabiliser", None))


def _same_point(pg, a, b) -> bool:
    pa = a.element.act_on_disc(pg.base_point(a.orbit))
    pb = b.element.act_on_disc(pg.base_point(b.orbit))
    return abs(pa - pb) < _SNAP


def require_valid(pg: PeriodicGraph) -> None:
    report = validate_quotient(pg)
    if not report.ok:
        msg, d = report.problems[0]
        where = "" if d is None else f" at dart ({d.u}, {d.v}, {pg.group.format_voltage(d.voltage)})"
        raise ArgumentError(f"invalid periodic graph: {msg}{where}", stage="validate")


def dart_length(pg: PeriodicGraph, d: Dart) -> float:
    a = cover_vertex(pg, d.u)
    b = neighbours(pg, a)[pg.darts_from(d.u).index(d)]
    if pg.is_fuchsian:
        return hyperbolic_distance(complex(*position(pg, a)), complex(*position(pg, b)))
    bx, by = pg.geometry[d.v] if pg.geometry is not None else (None, None)
    if bx is None:
        raise ArgumentError("graph has no geometry", stage="max_edge_length")
    ax, ay = pg.geometry[d.u]
    dx, dy = pg.group.displacement(d.voltage)
    return math.hypot(float(bx + dx - ax), float(by + dy - ay))


def max_edge_length(pg: PeriodicGraph) -> float:
    """Longest edge over all darts (Euclidean norm or hyperbolic distance)."""
    if pg.geometry is None:
        raise ArgumentError("graph has no geometry", stage="max_edge_length")
    return max((dart_length(pg, d) for d in pg.darts), default=0.0)


def estimate_ends(pg: PeriodicGraph, r: int, R: int, root: CoverVertex | None = None, cap: int = PATCH_CAP) -> int:
    """Components outside the ball of radius ``r`` that reach the sphere of radius ``R``.

    The ball of radius ``R + 1`` is used so that vertices on the sphere can
    connect through the next layer.
    """
    if r < 1 or R <= r:
        raise ArgumentError("need R > r >= 1", stage="estimate_ends")
    patch = build_patch(pg, root, R + 1, cap)
    g = patch.graph()
    g.remove_nodes_from([i for i, d in enumerate(patch.depth) if d <= r])
    return sum(1 for comp in nx.connected_components(g) if any(patch.depth[i] == R for i in comp))


def enclosed_components(patch: Patch, graph: nx.Graph, cut) -> list:
    """Components of ``graph - cut`` that avoid the patch's outer sphere."""
    h = graph.subgraph([v for v in graph.nodes if v not in cut])
    out = []
    for comp in nx.connected_components(h):
        if all(patch.depth[i] < patch.radius for i in comp):
            out.append(sorted(comp))
    return out


def small_cuts(patch: Patch, size: int):
    """Yield ``(cut, component)`` pairs with ``|cut| == size`` cutting off a finite piece.

    Only interior vertices are used in cuts, and only components whose full
    neighbourhood is the cut are reported.
    """
    from itertools import combinations

    g = patch.graph()
    interior = [i for i, d in enumerate(patch.depth) if d < patch.radius]
    for base in combinations(interior, size - 1):
        h = g.copy()
        h.remove_nodes_from(base)
        arts = sorted(a for a in nx.articulation_points(h) if patch.depth[a] < patch.radius and a > max(base, default=-1))
        for a in arts:
            cut = tuple(base) + (a,)
            for comp in enclosed_components(patch, g, set(cut)):
                boundary = set()
                for i in comp:
                    boundary.update(g.neighbors(i))
                boundary -= set(comp)
                if len(boundary) == size:
                    yield tuple(sorted(cut)), tuple(comp)


def patch_connectivity(patch: Patch, kmax: int = 3) -> int:
    """Smallest cut (< ``kmax``) separating a finite piece; ``kmax`` means none found."""
    if kmax < 1:
        raise ArgumentError("kmax must be positive")
    interior = sum(1 for d in patch.depth if d < patch.radius)
    if interior < kmax + 2:
        raise ArgumentError(
            f"degenerate patch: {interior} interior vertices, need at least {kmax + 2}", stage="patch_connectivity"
        )
    for size in range(1, kmax):
        for _ in small_cuts(patch, size):
            return size
    return kmax


def bfs_distances(pg: PeriodicGraph, source: CoverVertex, stop, cap: int = PATCH_CAP):
    """BFS in the cover until ``stop(vertex)`` holds; returns ``(vertex, distance)``."""
    index = _VertexIndex(pg)
    index.add(source, True)
    queue = deque([(source, 0)])
    seen = 1
    while queue:
        v, d = queue.popleft()
        for nb in neighbours(pg, v):
            if index.find(nb) is not None:
                continue
            if stop(nb):
                return nb, d + 1
            index.add(nb, True)
            queue.append((nb, d + 1))
            seen += 1
            if seen > cap:
                raise ResourceError(f"search exceeded {cap} vertices", stage="bfs", best=d + 1)
    return None, None
