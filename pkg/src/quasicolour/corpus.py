"""Bundled example graphs, addressable on the command line as ``examples:NAME``."""

from __future__ import annotations

from fractions import Fraction

from .errors import ArgumentError
from .euclid import EuclideanIsometry
from .hyperbolic import triangle_group
from .voltage import EUCLIDEAN, FUCHSIAN, EuclideanGroup, FuchsianGroup, PeriodicGraph

_UNIT = ((1, 0), (0, 1))
_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _unit_group():
    return EuclideanGroup(_UNIT, (EuclideanIsometry.translation_by(1, 0), EuclideanIsometry.translation_by(0, 1)))


def _both(u, v, g):
    return [(u, v, g), (v, u, tuple(-c for c in g))]


def square_lattice() -> PeriodicGraph:
    darts = [(0, 0, s) for s in _STEPS]
    return PeriodicGraph(EUCLIDEAN, 1, darts, ((0, 0),), _unit_group())


def triangular_lattice() -> PeriodicGraph:
    """Square lattice plus one diagonal family (an affine triangular lattice)."""
    darts = [(0, 0, s) for s in _STEPS + ((1, 1), (-1, -1))]
    return PeriodicGraph(EUCLIDEAN, 1, darts, ((0, 0),), _unit_group())


def square_with_diagonals() -> PeriodicGraph:
    darts = [(0, 0, s) for s in _STEPS + ((1, 1), (-1, -1), (1, -1), (-1, 1))]
    return PeriodicGraph(EUCLIDEAN, 1, darts, ((0, 0),), _unit_group())


def hexagonal_lattice() -> PeriodicGraph:
    """Honeycomb drawn affinely: orbit 1 sits at (1/3, 1/3) of the unit cell."""
    darts = []
    for g in ((0, 0), (-1, 0), (0, -1)):
        darts += _both(0, 1, g)
    third = Fraction(1, 3)
    return PeriodicGraph(EUCLIDEAN, 2, darts, ((0, 0), (third, third)), _unit_group())


def leafed_square() -> PeriodicGraph:
    """Square lattice with a pendant leaf at every vertex (contains K_{1,5})."""
    darts = [(0, 0, s) for s in _STEPS] + _both(0, 1, (0, 0))
    q = Fraction(1, 4)
    return PeriodicGraph(EUCLIDEAN, 2, darts, ((0, 0), (q, q)), _unit_group())


def two_leaf_square() -> PeriodicGraph:
    """Square lattice with two pendant leaves per vertex, in two orbits."""
    darts = [(0, 0, s) for s in _STEPS] + _both(0, 1, (0, 0)) + _both(0, 2, (0, 0))
    q = Fraction(1, 4)
    return PeriodicGraph(EUCLIDEAN, 3, darts, ((0, 0), (q, q), (-q, q)), _unit_group())


def _subdivision_darts(first: int):
    h, v = first, first + 1
    return _both(0, h, (0, 0)) + _both(0, h, (-1, 0)) + _both(0, v, (0, 0)) + _both(0, v, (0, -1))


def subdivided_square() -> PeriodicGraph:
    """Square lattice with every edge subdivided once."""
    half = Fraction(1, 2)
    return PeriodicGraph(EUCLIDEAN, 3, _subdivision_darts(1), ((0, 0), (half, 0), (0, half)), _unit_group())


def leafed_subdivided_square() -> PeriodicGraph:
    half, q = Fraction(1, 2), Fraction(1, 4)
    darts = _subdivision_darts(1) + _both(0, 3, (0, 0))
    geometry = ((0, 0), (half, 0), (0, half), (q, q))
    return PeriodicGraph(EUCLIDEAN, 4, darts, geometry, _unit_group())


def bi_infinite_path() -> PeriodicGraph:
    return PeriodicGraph(EUCLIDEAN, 1, [(0, 0, (1,)), (0, 0, (-1,))], ((0, 0),), EuclideanGroup(((1, 0),)))


def tessellation(p: int, q: int) -> PeriodicGraph:
    """Regular tessellation {p, q} (p-gon faces, q at each vertex) over (2, p, q).

    The vertex at the disc origin is fixed by ``z``; its neighbours are
    ``z^j x`` applied to the origin.
    """
    pres = triangle_group(2, p, q)
    darts = [(0, 0, (3,) * j + (1,)) for j in range(q)]
    return PeriodicGraph(FUCHSIAN, 1, darts, ((0.0, 0.0),), FuchsianGroup(pres, (((3,),),)))


EXAMPLES = {
    "square": (square_lattice, "square lattice Z^2"),
    "hexagonal": (hexagonal_lattice, "honeycomb, two vertex orbits"),
    "triangular": (triangular_lattice, "triangular lattice (square plus one diagonal family)"),
    "square-diagonals": (square_with_diagonals, "square lattice with both diagonals (king graph)"),
    "leafed": (leafed_square, "square lattice with a pendant leaf per vertex"),
    "two-leaf": (two_leaf_square, "square lattice with two pendant leaf orbits"),
    "subdivided": (subdivided_square, "square lattice with subdivided edges"),
    "leafed-subdivided": (leafed_subdivided_square, "subdivided square lattice with pendant leaves"),
    "path": (bi_infinite_path, "bi-infinite path (two ends; test fixture)"),
    "heptagonal": (lambda: tessellation(3, 7), "{3,7} tessellation over the (2,3,7) triangle group"),
    "pentagonal": (lambda: tessellation(4, 5), "{4,5} tessellation over the (2,4,5) triangle group"),
}


def example(name: str) -> PeriodicGraph:
    try:
        return EXAMPLES[name][0]()
    except KeyError:
        raise ArgumentError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}") from None
