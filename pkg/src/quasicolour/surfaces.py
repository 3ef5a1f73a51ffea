"""Genus and colour-budget arithmetic for quotient surfaces."""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ArgumentError, InadmissibleIndexError


def riemann_hurwitz_genus(signature, index: int) -> int:
    """Genus of the quotient by a torsion-free subgroup of the given index.

    ``signature`` is ``(g, periods)``.  The value is
    ``index/2 * (2g - 2 + sum(1 - 1/m)) + 1`` evaluated exactly; anything other
    than a non-negative integer means no torsion-free subgroup has this index.
    """
    genus, periods = signature
    if index < 1:
        raise ArgumentError("index must be a positive integer")
    bracket = 2 * genus - 2 + sum((1 - Fraction(1, m) for m in periods), Fraction(0))
    value = Fraction(index, 2) * bracket + 1
    if value.denominator != 1 or value < 0:
        raise InadmissibleIndexError(
            f"index {index} is inadmissible for a torsion-free subgroup: genus would be {value}"
        )
    return int(value)


def ringel_youngs(genus: int) -> int:
    """floor((7 + sqrt(1 + 48 g)) / 2), computed with integer square roots."""
    return (7 + math.isqrt(1 + 48 * genus)) // 2


def thomassen_threshold(genus: int) -> int:
    return 2 ** (14 * genus + 6)


def colour_budget(genus: int):
    """``(ringel_youngs, thomassen_threshold)`` for a surface of positive genus."""
    if genus < 1:
        raise ArgumentError("colour budgets need genus >= 1")
    return ringel_youngs(genus), thomassen_threshold(genus)
