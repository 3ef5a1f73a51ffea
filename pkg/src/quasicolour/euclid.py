"""Exact arithmetic for discrete groups of Euclidean plane isometries.

Isometries are pairs ``(P, t)`` acting by ``x -> P x + t`` with ``P`` an
orthogonal 2x2 matrix; all entries are :class:`fractions.Fraction` so that
equality of group elements is decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import ArgumentError

_IDENTITY = (Fraction(1), Fraction(0), Fraction(0), Fraction(1))


def frac(value) -> Fraction:
    """Build a Fraction from ints, Fractions or strings like ``"3/4"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise ArgumentError(f"refusing inexact float {value!r}; pass a fraction string")
    return Fraction(value)


@dataclass(frozen=True)
class EuclideanIsometry:
    point_part: tuple  # (a, b, c, d) row-major
    translation: tuple  # (p, q)

    def __post_init__(self):
        P = tuple(frac(v) for v in self.point_part)
        t = tuple(frac(v) for v in self.translation)
        if len(P) != 4 or len(t) != 2:
            raise ArgumentError("point part needs 4 entries and translation 2")
        a, b, c, d = P
        if (a * a + b * b, a * c + b * d, c * c + d * d) != (1, 0, 1):
            raise ArgumentError(f"point part {P} is not orthogonal")
        object.__setattr__(self, "point_part", P)
        object.__setattr__(self, "translation", t)

    @classmethod
    def identity(cls) -> "EuclideanIsometry":
        return cls(_IDENTITY, (0, 0))

    @classmethod
    def translation_by(cls, x, y) -> "EuclideanIsometry":
        return cls(_IDENTITY, (x, y))

    @classmethod
    def rotation90(cls, centre=(0, 0)) -> "EuclideanIsometry":
        """Counter-clockwise quarter turn about ``centre``."""
        cx, cy = (frac(v) for v in centre)
        return cls((0, -1, 1, 0), (cx + cy, cy - cx))

    def __matmul__(self, other: "EuclideanIsometry") -> "EuclideanIsometry":
        return self.compose(other)

    def compose(self, other: "EuclideanIsometry") -> "EuclideanIsometry":
        """``self o other``: apply ``other`` first."""
        a, b, c, d = self.point_part
        e, f, g, h = other.point_part
        p, q = other.translation
        P = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        t = (a * p + b * q + self.translation[0], c * p + d * q + self.translation[1])
        return EuclideanIsometry(P, t)

    def inverse(self) -> "EuclideanIsometry":
        a, b, c, d = self.point_part
        # orthogonal, so the inverse is the transpose
        Pi = (a, c, b, d)
        p, q = self.translation
        return EuclideanIsometry(Pi, (-(a * p + c * q), -(b * p + d * q)))

    def apply(self, point):
        a, b, c, d = self.point_part
        x, y = point
        return (a * x + b * y + self.translation[0], c * x + d * y + self.translation[1])

    @property
    def is_translation(self) -> bool:
        return self.point_part == _IDENTITY

    @property
    def determinant(self) -> Fraction:
        a, b, c, d = self.point_part
        return a * d - b * c

    def canonical(self) -> tuple:
        """Reduced-fraction entry list used for hashing and ordering."""
        return tuple((v.numerator, v.denominator) for v in self.point_part + self.translation)

    def point_order(self, limit: int = 12):
        """Order of the point part, or None if it exceeds ``limit``."""
        M = self.point_part
        cur = M
        for k in range(1, limit + 1):
            if cur == _IDENTITY:
                return k
            a, b, c, d = cur
            e, f, g, h = M
            cur = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        return None

    def __repr__(self):
        P = ",".join(str(v) for v in self.point_part)
        t = ",".join(str(v) for v in self.translation)
        return f"EuclideanIsometry(({P}), ({t}))"


@dataclass(frozen=True)
class Lattice:
    """A rank-2 lattice with exact rational basis vectors."""

    basis: tuple

    def __post_init__(self):
        vecs = tuple(tuple(frac(x) for x in v) for v in self.basis)
        if len(vecs) != 2 or any(len(v) != 2 for v in vecs):
            raise ArgumentError("a lattice needs two 2-vectors")
        object.__setattr__(self, "basis", vecs)
        if self.determinant == 0:
            raise ArgumentError("lattice basis vectors are linearly dependent")

    @property
    def determinant(self) -> Fraction:
        (a, b), (c, d) = self.basis
        return a * d - b * c

    def invariants(self) -> dict:
        """Bravais-style metadata: the two lengths and the angle between them."""
        b1, b2 = self.basis
        n1, n2 = math.sqrt(_norm2(b1)), math.sqrt(_norm2(b2))
        cos = float(_dot(b1, b2)) / (n1 * n2)
        return {"length1": n1, "length2": n2, "angle": math.degrees(math.acos(max(-1.0, min(1.0, cos))))}

    def coordinates(self, vector) -> tuple:
        """Exact coordinates of ``vector`` in this basis."""
        (a, b), (c, d) = self.basis
        x, y = (frac(v) for v in vector)
        det = self.determinant
        return ((x * d - y * c) / det, (a * y - b * x) / det)


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _norm2(u):
    return _dot(u, u)


def _round_half_down(x: Fraction) -> int:
    # nearest integer, ties toward -inf, for a deterministic reduction
    return math.ceil(x - Fraction(1, 2))


def reduce_basis(lattice: Lattice) -> Lattice:
    """Lagrange-Gauss reduction: returns ``|b1| <= |b2| <= |b2 +- b1|``."""
    u, v = lattice.basis
    if _norm2(u) > _norm2(v):
        u, v = v, u
    while True:
        m = _round_half_down(_dot(u, v) / _norm2(u))
        v = (v[0] - m * u[0], v[1] - m * u[1])
        if _norm2(v) >= _norm2(u):
            break
        u, v = v, u
    return Lattice((u, v))


def change_of_basis(source: Lattice, target: Lattice) -> tuple:
    """Integer matrix U (rows) with ``target.basis[i] = sum_j U[i][j] source.basis[j]``."""
    rows = []
    for vec in target.basis:
        coords = source.coordinates(vec)
        if any(c.denominator != 1 for c in coords):
            raise ArgumentError("target lattice is not contained in the source lattice")
        rows.append(tuple(int(c) for c in coords))
    return tuple(rows)


def shortest_vector_length(lattice: Lattice) -> float:
    b1, _ = reduce_basis(lattice).basis
    return math.sqrt(_norm2(b1))


def translation_subgroup(generators, word_bound: int = 8) -> Lattice:
    """Lattice of pure translations in the ball of radius ``word_bound``.

    Raises ArgumentError if the group looks non-discrete or if fewer than two
    independent translations turn up within the bound.
    """
    gens = []
    for g in generators:
        gens.extend([g, g.inverse()])
    identity = EuclideanIsometry.identity()
    seen = {identity.canonical(): identity}
    frontier = [identity]
    for _ in range(word_bound):
        nxt = []
        for h in frontier:
            for g in gens:
                k = h.compose(g)
                key = k.canonical()
                if key not in seen:
                    seen[key] = k
                    nxt.append(k)
        frontier = nxt
    elements = list(seen.values())
    _check_discrete(elements)
    translations = [e.translation for e in elements if e.is_translation]
    basis = lattice_basis(translations)
    if basis is None:
        raise ArgumentError(
            f"not a wallpaper group at this bound: fewer than two independent "
            f"translations within word length {word_bound}"
        )
    return reduce_basis(Lattice(basis))


def _check_discrete(elements, probe=(Fraction(1234, 10007), Fraction(5678, 10009))):
    for e in elements:
        # crystallographic restriction: discrete planar groups have point parts of order 1,2,3,4,6
        if e.point_order() not in (1, 2, 3, 4, 6):
            raise ArgumentError(f"non-discrete group: point part of {e!r} has infinite or illegal order")
    cells = {}
    for e in elements:
        x, y = (float(c) for c in e.apply(probe))
        cell = (round(x * 1e8), round(y * 1e8))
        for dx, dy in product((-1, 0, 1), repeat=2):
            for other, (ox, oy) in cells.get((cell[0] + dx, cell[1] + dy), ()):
                if other != e and math.hypot(x - ox, y - oy) < 1e-9:
                    raise ArgumentError("non-discrete group: two distinct elements agree at a probe point")
        cells.setdefault(cell, []).append((e, (x, y)))


def lattice_basis(vectors):
    """Basis of the Z-module spanned by rational 2-vectors, or None if rank < 2."""
    vecs = [tuple(frac(c) for c in v) for v in vectors]
    vecs = [v for v in vecs if v != (0, 0)]
    if not vecs:
        return None
    denom = 1
    for v in vecs:
        for c in v:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    rows = [[int(c * denom) for c in v] for v in vecs]
    hnf = integer_row_hnf(rows)
    if len(hnf) < 2:
        return None
    return tuple(tuple(Fraction(c, denom) for c in r) for r in hnf[:2])


def integer_row_hnf(rows):
    """Row Hermite normal form of an integer matrix; zero rows dropped."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    out = []
    pivot_row = 0
    for col in range(ncols):
        # gcd-eliminate column ``col`` among rows[pivot_row:]
        while True:
            nz = [i for i in range(pivot_row, len(rows)) if rows[i][col] != 0]
            if len(nz) <= 1:
                break
            i_min = min(nz, key=lambda i: abs(rows[i][col]))
            for i in nz:
                if i != i_min:
                    q = rows[i][col] // rows[i_min][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[i_min])]
        nz = [i for i in range(pivot_row, len(rows)) if rows[i][col] != 0]
        if not nz:
            continue
        i = nz[0]
        rows[pivot_row], rows[i] = rows[i], rows[pivot_row]
        if rows[pivot_row][col] < 0:
            rows[pivot_row] = [-a for a in rows[pivot_row]]
        p = rows[pivot_row][col]
        for k in range(pivot_row):
            q = rows[k][col] // p
            rows[k] = [a - q * b for a, b in zip(rows[k], rows[pivot_row])]
        pivot_row += 1
    for r in rows[:pivot_row]:
        out.append(tuple(r))
    return out


def sublattice_for_length(lattice: Lattice, length: float):
    """Smallest ``diag(A, B)`` sublattice whose shortest vector is at least ``length``.

    ``A`` scales the first basis vector of ``lattice`` as given and ``B`` the
    second; the caller reduces the basis first.  Ties: minimal ``A*B``, then
    minimal ``A``.  Returns ``(A, B)``.
    """
    if length <= 0:
        raise ArgumentError("length must be positive")
    b1, b2 = lattice.basis
    product_ = 1
    while True:
        for A in range(1, product_ + 1):
            if product_ % A:
                continue
            B = product_ // A
            sub = Lattice(((A * b1[0], A * b1[1]), (B * b2[0], B * b2[1])))
            if shortest_vector_length(sub) >= length:
                return A, B
        product_ += 1


def fundamental_parallelogram(lattice: Lattice, base=(0, 0)):
    (b1, b2) = lattice.basis
    x, y = (frac(v) for v in base)
    return [
        (x, y),
        (x + b1[0], y + b1[1]),
        (x + b1[0] + b2[0], y + b1[1] + b2[1]),
        (x + b2[0], y + b2[1]),
    ]
