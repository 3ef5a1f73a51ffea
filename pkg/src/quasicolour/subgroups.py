"""Finite-index subgroups of the voltage group.

Two descriptor kinds share one small interface (``index``, ``generators``):
integer sublattices for Euclidean voltage lattices and coset tables for
Fuchsian presentations.  The Fuchsian search for a torsion-free subgroup
avoiding short translations also lives here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .cosets import CosetTable, candidate_tables, is_torsion_free
from .errors import ArgumentError, ResourceError
from .euclid import integer_row_hnf
from .hyperbolic import (
    FuchsianPresentation,
    MoebiusMatrix,
    classify_and_length,
    fixed_point_in_disc,
    hyperbolic_distance,
)


@dataclass(frozen=True)
class LatticeSubgroup:
    """Sublattice of Z^rank spanned by the rows of ``matrix``."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.matrix)
        rank = len(rows)
        if rank == 0 or any(len(r) != rank for r in rows):
            raise ArgumentError("sublattice matrix must be square")
        hnf = integer_row_hnf(rows)
        if len(hnf) != rank:
            raise ArgumentError("sublattice matrix is singular (infinite index)")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "_hnf", tuple(hnf))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def index(self) -> int:
        return math.prod(self._hnf[i][i] for i in range(self.rank))

    def residue(self, vector) -> tuple:
        """Canonical representative of ``vector`` modulo the sublattice."""
        v = list(vector)
        for i, row in enumerate(self._hnf):
            q = v[i] // row[i]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def residues(self) -> list:
        return [tuple(r) for r in product(*(range(self._hnf[i][i]) for i in range(self.rank)))]

    def contains(self, vector) -> bool:
        return not any(self.residue(vector))

    def generators(self) -> list:
        return [tuple(r) for r in self.matrix]

    def to_json(self) -> dict:
        return {"lattice": [list(r) for r in self.matrix]}


@dataclass(frozen=True)
class CosetSubgroup:
    """Subgroup of a Fuchsian presentation given by its coset table."""

    table: CosetTable
    generator_names: tuple = field(default=())

    @property
    def index(self) -> int:
        return self.table.degree

    def generators(self) -> list:
        return self.table.schreier_generators()

    def to_json(self) -> dict:
        return {"coset_table": self.table.to_json(self.generator_names)}


@dataclass
class ShortCertificate:
    """What the subgroup search had to exclude, and how far it looked."""

    length_bound: float
    search_radius: float
    excluded: list  # (word, translation length), sorted by length
    degree_searched: int = 0

    def to_json(self, pres: FuchsianPresentation) -> dict:
        return {
            "length_bound": self.length_bound,
            "search_radius": self.search_radius,
            "excluded": [[pres.format(w), round(t, 12)] for w, t in self.excluded],
        }


def covering_radius(pres: FuchsianPresentation, origin: complex = 0j) -> float:
    """Radius such that every point is that close to some orbit point of ``origin``.

    For a triangle group with ``origin`` at a vertex this is exact: the
    farthest vertex of the fundamental triangle.  Without elliptic generators
    the largest generator displacement is used instead.
    """
    dists = []
    for gi, _ in pres.periods:
        fp = fixed_point_in_disc(pres.matrices[gi])
        if fp is not None:
            dists.append(hyperbolic_distance(origin, fp))
    if dists:
        return max(dists)
    return max(hyperbolic_distance(origin, m.act_on_disc(origin)) for m in pres.matrices)


def enumerate_short_elements(
    pres: FuchsianPresentation, length: float, origin: complex = 0j, max_elements: int = 500_000
):
    """Hyperbolic elements with translation length below ``length``.

    Every conjugacy class of such elements has a representative moving
    ``origin`` by at most ``length + 2 * covering_radius``; all elements within
    that displacement are enumerated.  Returns ``(elements, radius)`` with
    elements as ``(word, translation_length)`` sorted by length then word.
    """
    if length <= 0:
        raise ArgumentError("length must be positive")
    radius = length + 2 * covering_radius(pres, origin)
    gens = []
    for i in range(len(pres.generators)):
        g = pres.generator_element(i)
        gens.extend([g, g.inverse()])
    step = max(hyperbolic_distance(origin, g.act_on_disc(origin)) for g in gens)
    explore = radius + 2 * step
    start = MoebiusMatrix.identity()
    seen = {start.canonical(): start}
    frontier = [start]
    found = []
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = h @ g
                key = k.canonical()
                if key in seen:
                    continue
                p = k.act_on_disc(origin)
                if abs(p) >= 1 or hyperbolic_distance(origin, p) > explore:
                    continue
                seen[key] = k
                if len(seen) > max_elements:
                    raise ResourceError(
                        f"short-element enumeration exceeded {max_elements} elements",
                        stage="subgroup_avoiding_short",
                    )
                nxt.append(k)
                if hyperbolic_distance(origin, p) <= radius:
                    kind, t = classify_and_length(k)
                    if kind == "hyperbolic" and t < length:
                        found.append((k.word, t))
        frontier = nxt
    found.sort(key=lambda e: (e[1], len(e[0]), e[0]))
    return found, radius


def _avoids(table: CosetTable, words) -> bool:
    # no conjugate of any listed element may lie in the subgroup
    for w in words:
        for c in range(table.degree):
            if table.act(c, w) == c:
                return False
    return True


def subgroup_avoiding_short(
    pres: FuchsianPresentation,
    length: float,
    max_degree: int = 8,
    max_cosets: int = 2000,
    origin: complex = 0j,
):
    """Torsion-free finite-index subgroup with no element shorter than ``length``.

    Candidates come from the low-index search (degree up to ``max_degree``),
    the kernels of those permutation images, and kernels of pairwise sums,
    each capped at ``max_cosets`` cosets.  A candidate is accepted when every
    period generator acts with cycles of exactly its period and every short
    element acts without fixed points (so no conjugate lies in the subgroup).
    Returns ``(CosetSubgroup, ShortCertificate)``.
    """
    short, radius = enumerate_short_elements(pres, length, origin)
    words = [w for w, _ in short]
    cert = ShortCertificate(length, radius, short)
    degree = min(max_degree, max_cosets)
    for table in candidate_tables(len(pres.generators), pres.relators, degree, max_cosets):
        if table.degree > max_cosets:
            continue
        if not is_torsion_free(pres.periods, table):
            continue
        if not _avoids(table, words):
            continue
        cert.degree_searched = degree
        return CosetSubgroup(table, tuple(pres.generators)), cert
    longest = short[-1][1] if short else 0.0
    raise ResourceError(
        f"no torsion-free subgroup avoiding {len(short)} short elements (largest length "
        f"{longest:.6f}) within low-index degree {degree} and {max_cosets} cosets",
        stage="subgroup_avoiding_short",
        best=longest,
    )
