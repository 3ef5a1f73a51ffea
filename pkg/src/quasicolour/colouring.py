"""Colouring finite quotients and lifting the result to the periodic cover.

Also holds the two end-to-end pipelines (Euclidean and Fuchsian).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import ArgumentError, QuasiColourError, ResourceError, SubgroupTooSmallError, UnsupportedInputError
from .euclid import change_of_basis, reduce_basis, sublattice_for_length
from .quotient import Quotient, quotient_mod_subgroup, shortest_noncontractible
from .subgroups import LatticeSubgroup, subgroup_avoiding_short
from .surfaces import riemann_hurwitz_genus, ringel_youngs, thomassen_threshold
from .voltage import CoverVertex, PeriodicGraph, estimate_ends, max_edge_length, require_valid

STRATEGIES = ("exact-k", "dsatur", "unique")
NODE_BUDGET = 2_000_000


@dataclass
class QuotientColouring:
    colours: list
    strategy: str

    @property
    def palette(self) -> int:
        return max(self.colours, default=-1) + 1


def _adjacency(graph) -> list:
    if isinstance(graph, Quotient):
        return graph.adjacency()
    adj = [sorted(set(n)) for n in graph]
    for a, ns in enumerate(adj):
        if a in ns:
            raise ArgumentError(f"vertex {a} has a loop; no proper colouring exists")
    return adj


def exact_colouring(adj, k: int, node_budget: int = NODE_BUDGET):
    """First k-colouring in lexicographic order, None if none exists.

    Vertices are coloured in index order, lowest colour first.  A vertex never
    takes a colour above one more than the largest used so far, which prunes
    relabelled copies without changing the first solution.
    """
    n = len(adj)
    if k < 1:
        return None if n else []
    colours = [-1] * n
    nodes = 0

    def feasible(v, c):
        return all(colours[w] != c for w in adj[v])

    def search(v, used):
        nonlocal nodes
        if v == n:
            return True
        nodes += 1
        if nodes > node_budget:
            raise ResourceError(
                f"exact-{k}: none found within {node_budget} search nodes (not proven impossible)",
                stage="colour_quotient",
            )
        for c in range(min(k, used + 1)):
            if feasible(v, c):
                colours[v] = c
                if search(v + 1, max(used, c + 1)):
                    return True
                colours[v] = -1
        return False

    return list(colours) if search(0, 0) else None


def dsatur(adj) -> list:
    """DSATUR: most saturated vertex first, ties by degree then index."""
    n = len(adj)
    colours = [-1] * n
    seen = [set() for _ in range(n)]
    for _ in range(n):
        v = max(
            (u for u in range(n) if colours[u] < 0),
            key=lambda u: (len(seen[u]), len(adj[u]), -u),
        )
        c = 0
        while c in seen[v]:
            c += 1
        colours[v] = c
        for w in adj[v]:
            seen[w].add(c)
    return colours


def colour_quotient(graph, strategy: str = "dsatur", k: int | None = None, node_budget: int = NODE_BUDGET):
    """Colour a loop-free finite graph (a Quotient or adjacency lists).

    ``exact-k`` returns None when no k-colouring exists and raises
    ResourceError if the node budget runs out first.
    """
    adj = _adjacency(graph)
    if strategy == "exact-k":
        if k is None:
            raise ArgumentError("exact-k needs k")
        cols = exact_colouring(adj, k, node_budget)
        return None if cols is None else QuotientColouring(cols, f"exact-{k}")
    if strategy == "dsatur":
        return QuotientColouring(dsatur(adj), "dsatur")
    if strategy == "unique":
        return QuotientColouring(list(range(len(adj))), "unique")
    raise ArgumentError(f"unknown strategy {strategy!r}; use one of {', '.join(STRATEGIES)}")


def is_proper(adj, colours) -> bool:
    return all(colours[a] != colours[b] for a, ns in enumerate(adj) for b in ns)


@dataclass
class PeriodicColouring:
    """A colouring of the cover that factors through ``quotient``.

    ``resolver`` maps a cover vertex to a quotient vertex; by default the
    quotient's own resolution, which is constant on subgroup orbits.
    """

    pg: PeriodicGraph
    quotient: Quotient
    colours: list
    strategy: str = ""
    resolver: Callable | None = field(default=None, repr=False)
    notes: dict = field(default_factory=dict)

    @property
    def subgroup(self):
        return self.quotient.subgroup

    @property
    def palette(self) -> int:
        return max(self.colours, default=-1) + 1

    def resolve(self, vertex: CoverVertex) -> int:
        return (self.resolver or self.quotient.resolve)(vertex)

    def colour_of(self, vertex: CoverVertex) -> int:
        return self.colours[self.resolve(vertex)]


def lift_colouring(qc: QuotientColouring, quotient: Quotient) -> PeriodicColouring:
    adj = quotient.adjacency()
    if len(qc.colours) != quotient.size:
        raise ArgumentError("colouring size does not match the quotient")
    if not is_proper(adj, qc.colours):
        raise ArgumentError("quotient colouring is not proper", stage="lift")
    return PeriodicColouring(quotient.pg, quotient, list(qc.colours), qc.strategy)


def _one_ended(pg: PeriodicGraph, stage: str, r: int = 2, R: int = 6):
    ends = estimate_ends(pg, r, R)
    if ends != 1:
        raise UnsupportedInputError(
            f"end estimate at scale ({r},{R}) is {ends}; only one-ended graphs are supported", stage=stage
        )
    return ends


def euclid_pipeline(
    pg: PeriodicGraph,
    max_k: int = 5,
    max_doublings: int = 4,
    node_budget: int = NODE_BUDGET,
    reduce: bool = True,
    palette_mode: str = "reuse",
):
    """Sublattice, quotient, smallest exact colouring up to ``max_k``, lift.

    Returns ``(PeriodicColouring, report)``.  When the graph has a cut of size
    one or two it is reduced first and the removed atoms are reattached at
    the end.
    """
    from .reduction import reattach_atoms, reduce_to_3connected

    if pg.is_fuchsian:
        raise ArgumentError("euclid_pipeline needs a euclidean graph")
    require_valid(pg)
    ends = _one_ended(pg, "euclid_pipeline")
    if pg.group.rank != 2:
        raise UnsupportedInputError("voltage lattice has rank 1; not a wallpaper input", stage="euclid_pipeline")
    trace = None
    work = pg
    if reduce:
        work, trace = reduce_to_3connected(pg)
    length = max_edge_length(work) * (1 + 1e-9)
    lattice = work.group.lattice()
    reduced = reduce_basis(lattice)
    A, B = sublattice_for_length(reduced, length)
    U = change_of_basis(lattice, reduced)
    graphs = [work] + ([s.before for s in trace.steps] if trace else [])
    attempts = []
    for _ in range(max_doublings + 1):
        rows = ((A * U[0][0], A * U[0][1]), (B * U[1][0], B * U[1][1]))
        sub = LatticeSubgroup(rows)
        try:
            quotients = [quotient_mod_subgroup(g, sub) for g in graphs]
        except SubgroupTooSmallError:
            attempts.append({"A": A, "B": B, "index": sub.index, "result": "loop"})
            A, B = 2 * A, 2 * B
            continue
        q = quotients[0]
        adj = q.adjacency()
        for k in range(1, max_k + 1):
            try:
                cols = exact_colouring(adj, k, node_budget)
            except ResourceError:
                cols = None
            if cols is not None:
                qc = QuotientColouring(cols, f"exact-{k}")
                break
        else:
            qc = None
        attempts.append({"A": A, "B": B, "index": sub.index, "result": qc.strategy if qc else f"none<={max_k}"})
        if qc is not None:
            break
        last = (sub, q)
        A, B = 2 * A, 2 * B
    else:
        if not any(a["result"] != "loop" for a in attempts):
            raise SubgroupTooSmallError(
                f"every sublattice up to A={A // 2}, B={B // 2} leaves a loop", stage="euclid_pipeline"
            )
        sub, q = last
        qc = QuotientColouring(dsatur(q.adjacency()), "dsatur")
    pc = lift_colouring(qc, q)
    steps = 0
    if trace is not None and trace.steps:
        steps = len(trace.steps)
        pc = reattach_atoms(pc, trace, palette_mode)
    report = {
        "kind": pg.kind,
        "ends_estimate": ends,
        "reduction_steps": steps,
        "edge_length_bound": length,
        "lattice": _lattice_meta(reduced),
        "sublattice": [list(r) for r in sub.matrix],
        "scale": [A, B],
        "index": sub.index,
        "quotient_vertices": pc.quotient.size,
        "quotient_edges": pc.quotient.edge_count,
        "strategy": pc.strategy,
        "palette": pc.palette,
        "attempts": attempts,
    }
    report.update(_surface_report(pg, sub, 1))
    return pc, report


def _lattice_meta(lattice) -> dict:
    meta = lattice.invariants()
    meta["basis"] = [[str(c) for c in v] for v in lattice.basis]
    return meta


def _surface_report(pg, sub, genus) -> dict:
    threshold = thomassen_threshold(genus)
    try:
        width = shortest_noncontractible(pg, sub)
    except QuasiColourError:
        width = None
    return {
        "genus": genus,
        "ringel_youngs": ringel_youngs(genus),
        "thomassen_threshold": threshold,
        "shortest_noncontractible": width,
        "meets_threshold": width is not None and width >= threshold,
    }


def hyp_pipeline(
    pg: PeriodicGraph,
    max_cosets: int = 2000,
    max_degree: int = 8,
    strategy: str = "dsatur",
):
    """Short-translation-free subgroup, quotient, DSATUR (or unique), lift."""
    if not pg.is_fuchsian:
        raise ArgumentError("hyp_pipeline needs a fuchsian graph")
    require_valid(pg)
    ends = _one_ended(pg, "hyp_pipeline", 1, 3)
    pres = pg.group.presentation
    length = max_edge_length(pg) * (1 + 1e-9)
    sub, cert = subgroup_avoiding_short(pres, length, max_degree=max_degree, max_cosets=max_cosets)
    q = quotient_mod_subgroup(pg, sub)
    if strategy not in ("dsatur", "unique"):
        raise ArgumentError("hyperbolic pipeline strategy must be dsatur or unique")
    qc = colour_quotient(q, strategy)
    pc = lift_colouring(qc, q)
    genus = riemann_hurwitz_genus(pres.signature, sub.index)
    report = {
        "kind": pg.kind,
        "ends_estimate": ends,
        "edge_length_bound": length,
        "signature": [pres.genus, *[m for _, m in pres.periods]],
        "index": sub.index,
        "excluded_short_elements": len(cert.excluded),
        "search_radius": cert.search_radius,
        "quotient_vertices": q.size,
        "quotient_edges": q.edge_count,
        "strategy": pc.strategy,
        "palette": pc.palette,
        "unique_bound": q.size,
    }
    report.update(_surface_report(pg, sub, genus))
    return pc, report


def pipeline(pg: PeriodicGraph, **kwargs):
    return hyp_pipeline(pg, **kwargs) if pg.is_fuchsian else euclid_pipeline(pg, **kwargs)

