"""Finite quotients of a periodic graph by a finite-index subgroup."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ArgumentError, ResourceError, SubgroupTooSmallError
from .subgroups import CosetSubgroup, LatticeSubgroup
from .voltage import PATCH_CAP, CoverVertex, PeriodicGraph, bfs_distances, cover_vertex


@dataclass
class Quotient:
    """The graph ``Gamma / T``.

    ``classes`` lists ``(orbit, label)`` pairs: the residue vector modulo the
    sublattice (Euclidean) or the smallest coset of a double coset
    (Fuchsian).  ``edges`` holds ``(a, b, multiplicity)`` with ``a < b``.
    """

    pg: PeriodicGraph
    subgroup: object
    classes: list
    edges: list
    _lookup: dict = field(repr=False, default_factory=dict)
    representatives: list = field(repr=False, default_factory=list)

    @property
    def size(self) -> int:
        return len(self.classes)

    @property
    def edge_count(self) -> int:
        """Edges counted with multiplicity."""
        return sum(m for _, _, m in self.edges)

    def adjacency(self) -> list:
        adj = [set() for _ in self.classes]
        for a, b, _ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return [sorted(s) for s in adj]

    def degree(self, a: int) -> int:
        return sum(m for x, y, m in self.edges if a in (x, y))

    def class_key(self, vertex: CoverVertex) -> tuple:
        if isinstance(self.subgroup, LatticeSubgroup):
            return (vertex.orbit, self.subgroup.residue(vertex.element))
        coset = self.subgroup.table.act(0, vertex.word)
        return (vertex.orbit, self._coset_label[(vertex.orbit, coset)])

    def resolve(self, vertex: CoverVertex) -> int:
        """Index of the quotient vertex a cover vertex maps to."""
        return self._lookup[self.class_key(vertex)]

    def representative(self, a: int) -> CoverVertex:
        return self.representatives[a]


def quotient_mod_subgroup(pg: PeriodicGraph, subgroup, allow_loops: bool = False) -> Quotient:
    """Quotient graph; raises SubgroupTooSmallError when an edge closes into a loop."""
    if pg.is_fuchsian:
        if not isinstance(subgroup, CosetSubgroup):
            raise ArgumentError("fuchsian graphs need a coset-table subgroup")
        q = _fuchsian_classes(pg, subgroup)
    else:
        if not isinstance(subgroup, LatticeSubgroup):
            raise ArgumentError("euclidean graphs need a sublattice subgroup")
        if subgroup.rank != pg.group.rank:
            raise ArgumentError("sublattice rank does not match the voltage lattice")
        q = _lattice_classes(pg, subgroup)
    directed = {}
    for a, rep in enumerate(q.representatives):
        for nb in _neighbour_classes(q, rep):
            if nb == a and not allow_loops:
                raise SubgroupTooSmallError(
                    f"subgroup too small: same-orbit adjacency at quotient vertex {q.classes[a]}",
                    stage="quotient",
                )
            directed[(a, nb)] = directed.get((a, nb), 0) + 1
    edges = []
    for (a, b), n in sorted(directed.items()):
        if a < b:
            edges.append((a, b, n))
        elif a == b:
            edges.append((a, a, n // 2))
    q.edges = edges
    return q


def _neighbour_classes(q: Quotient, rep: CoverVertex):
    pg = q.pg
    if pg.is_fuchsian:
        table = q.subgroup.table
        c = table.act(0, rep.word)
        for d in pg.darts_from(rep.orbit):
            yield q._lookup[(d.v, q._coset_label[(d.v, table.act(c, d.voltage))])]
    else:
        for d in pg.darts_from(rep.orbit):
            v = pg.group.multiply(rep.element, d.voltage)
            yield q._lookup[(d.v, q.subgroup.residue(v))]


def _lattice_classes(pg, sub: LatticeSubgroup) -> Quotient:
    classes, reps = [], []
    for orbit in range(pg.orbits):
        for res in sub.residues():
            classes.append((orbit, res))
            reps.append(cover_vertex(pg, orbit, res))
    lookup = {c: i for i, c in enumerate(classes)}
    return Quotient(pg, sub, classes, [], lookup, reps)


def _fuchsian_classes(pg, sub: CosetSubgroup) -> Quotient:
    table = sub.table
    words = table.transversal()
    classes, reps, labels = [], [], {}
    for orbit in range(pg.orbits):
        stab = pg.group.stabilizer(orbit)
        for c in range(table.degree):
            if (orbit, c) in labels:
                continue
            # double coset T h <stab>: orbit of coset c under the stabiliser words
            members = {c}
            todo = [c]
            while todo:
                x = todo.pop()
                for w in stab:
                    for y in (table.act(x, w), table.act(x, tuple(-a for a in reversed(w)))):
                        if y not in members:
                            members.add(y)
                            todo.append(y)
            label = min(members)
            for m in members:
                labels[(orbit, m)] = label
            classes.append((orbit, label))
            reps.append(cover_vertex(pg, orbit, words[label]))
    lookup = {cl: i for i, cl in enumerate(classes)}
    q = Quotient(pg, sub, classes, [], lookup, reps)
    q._coset_label = labels
    return q


def shortest_noncontractible(pg: PeriodicGraph, subgroup, cap: int = PATCH_CAP) -> int:
    """Shortest cover distance between distinct vertices in the same quotient class.

    Equivalently the shortest closed walk in the quotient whose lift does not
    close up.  Breadth-first search from one representative per class stops
    at the first vertex of the same class, so the answer is exact.
    """
    q = quotient_mod_subgroup(pg, subgroup, allow_loops=True)
    best = None
    for a, rep in enumerate(q.representatives):
        try:
            _, d = bfs_distances(pg, rep, lambda v, a=a: q.resolve(v) == a, cap)
        except ResourceError as exc:
            raise ResourceError(
                f"search exhausted before certification; best bound so far {best}",
                stage="shortest_noncontractible",
                best=best,
            ) from exc
        if d is not None and (best is None or d < best):
            best = d
    if best is None:
        raise ArgumentError("subgroup has no non-trivial element acting on the cover", stage="shortest_noncontractible")
    return best
