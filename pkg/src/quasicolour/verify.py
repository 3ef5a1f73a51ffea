"""Independent checks: properness on patches, periodicity, exact chromatic numbers."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .colouring import PeriodicColouring
from .errors import ArgumentError
from .subgroups import LatticeSubgroup
from .voltage import PeriodicGraph, build_patch, cover_vertex, translate

BRUTE_FORCE_LIMIT = 14


@dataclass
class CheckReport:
    check: str
    ok: bool
    detail: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"check": self.check, "ok": self.ok, **self.detail, "failures": self.failures}


def _describe(pg, v):
    if pg.is_fuchsian:
        return [v.orbit, pg.group.format_voltage(v.word)]
    return [v.orbit, list(v.element)]


def check_proper(pc: PeriodicColouring, pg: PeriodicGraph | None = None, r: int = 1, root=None) -> CheckReport:
    """List every monochromatic edge in the radius-``r`` patch."""
    if r < 1:
        raise ArgumentError("radius must be at least 1")
    pg = pg or pc.pg
    patch = build_patch(pg, root, r)
    colours = [pc.colour_of(v) for v in patch.vertices]
    bad = []
    for i, j in patch.edges:
        if colours[i] == colours[j]:
            bad.append({"edge": [_describe(pg, patch.vertices[i]), _describe(pg, patch.vertices[j])], "colour": colours[i]})
    detail = {"radius": r, "vertices": len(patch.vertices), "edges": len(patch.edges), "palette": len(set(colours))}
    return CheckReport("proper", not bad, detail, bad)


def _random_vertex(pg, rng):
    orbit = rng.randrange(pg.orbits)
    if pg.is_fuchsian:
        n = len(pg.group.presentation.generators)
        word = tuple(rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(0, 10)))
        return cover_vertex(pg, orbit, word)
    return cover_vertex(pg, orbit, tuple(rng.randint(-20, 20) for _ in range(pg.group.rank)))


def check_periodic(pc: PeriodicColouring, sample: int = 100, seed: int = 0) -> CheckReport:
    """colour(t v) == colour(v) for each subgroup generator t on sampled vertices."""
    if sample < 1:
        raise ArgumentError("sample must be at least 1")
    pg = pc.pg
    rng = random.Random(seed)
    gens = pc.subgroup.generators()
    bad = []
    classes = set()
    for t in gens:
        for _ in range(sample):
            v = _random_vertex(pg, rng)
            w = translate(pg, t, v)
            cv, cw = pc.colour_of(v), pc.colour_of(w)
            classes.add((cv, pc.resolve(v)))
            if cv != cw:
                label = list(t) if isinstance(pc.subgroup, LatticeSubgroup) else pg.group.format_voltage(t)
                bad.append({"generator": label, "vertex": _describe(pg, v), "colours": [cv, cw]})
    bounded = len(classes) <= pc.quotient.size
    detail = {
        "generators": len(gens),
        "sample": sample,
        "seed": seed,
        "classes_seen": len(classes),
        "quotient_size": pc.quotient.size,
    }
    if not bounded:
        bad.append({"classes_seen": len(classes), "quotient_size": pc.quotient.size})
    return CheckReport("periodic", not bad, detail, bad)


def brute_force_chromatic(adj) -> int:
    """Chromatic number by exhaustive search over k = 1, 2, ... colours.

    Vertices are assigned in index order and a partial assignment is dropped
    as soon as it has a monochromatic edge; no ordering heuristics.
    """
    n = len(adj)
    if n > BRUTE_FORCE_LIMIT:
        raise ArgumentError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices, got {n}")
    if n == 0:
        return 0
    if any(a in ns for a, ns in enumerate(adj)):
        raise ArgumentError("graph has a loop")
    earlier = [sorted(b for b in set(adj[a]) if b < a) for a in range(n)]

    def feasible(k):
        cols = [0] * n
        stack = [0]  # next colour to try at each depth
        while stack:
            i = len(stack) - 1
            c = stack[-1]
            if c >= k or (i == 0 and c > 0):
                stack.pop()
                if stack:
                    stack[-1] += 1
                continue
            if any(cols[b] == c for b in earlier[i]):
                stack[-1] += 1
                continue
            cols[i] = c
            if i == n - 1:
                return True
            stack.append(0)
        return False

    for k in range(1, n + 1):
        if feasible(k):
            return k
    return n
