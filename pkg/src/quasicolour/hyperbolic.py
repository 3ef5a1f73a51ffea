"""Fuchsian groups: Moebius arithmetic, translation lengths, triangle groups.

Matrices live in SL(2, R) and act on the upper half-plane; points are stored
in the Poincare disc and moved through the Cayley transform
``w = (z - i) / (z + i)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ArgumentError
from .words import format_word, invert_word, parse_word

EPS_CLASS = 1e-9
EPS_DEDUP = 1e-7


@dataclass(frozen=True)
class MoebiusMatrix:
    a: float
    b: float
    c: float
    d: float
    word: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-9 * max(1.0, abs(self.a * self.d)):
            raise ArgumentError(f"determinant {det} is not 1")
        a, b, c, d = self.a, self.b, self.c, self.d
        for v in (a, b, c, d):
            if abs(v) > EPS_CLASS:
                if v < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        object.__setattr__(self, "a", a + 0.0)
        object.__setattr__(self, "b", b + 0.0)
        object.__setattr__(self, "c", c + 0.0)
        object.__setattr__(self, "d", d + 0.0)

    @classmethod
    def from_array(cls, m, word=None) -> "MoebiusMatrix":
        m = np.asarray(m, dtype=float)
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]), word)

    @classmethod
    def identity(cls) -> "MoebiusMatrix":
        return cls(1.0, 0.0, 0.0, 1.0, ())

    def array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def __matmul__(self, other: "MoebiusMatrix") -> "MoebiusMatrix":
        word = None
        if self.word is not None and other.word is not None:
            from .words import multiply_words

            word = multiply_words(self.word, other.word)
        return MoebiusMatrix.from_array(self.array() @ other.array(), word)

    def inverse(self) -> "MoebiusMatrix":
        word = invert_word(self.word) if self.word is not None else None
        return MoebiusMatrix(self.d, -self.b, -self.c, self.a, word)

    @property
    def trace(self) -> float:
        return self.a + self.d

    def canonical(self, eps: float = EPS_DEDUP) -> tuple:
        return tuple(round(v / eps) for v in (self.a, self.b, self.c, self.d))

    def close_to(self, other: "MoebiusMatrix", eps: float = EPS_DEDUP) -> bool:
        return max(abs(x - y) for x, y in zip(self.entries(), other.entries())) < eps

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def act_on_disc(self, w: complex) -> complex:
        z = disc_to_half_plane(w)
        return half_plane_to_disc((self.a * z + self.b) / (self.c * z + self.d))


def disc_to_half_plane(w: complex) -> complex:
    return 1j * (1 + w) / (1 - w)


def half_plane_to_disc(z: complex) -> complex:
    return (z - 1j) / (z + 1j)


def classify_and_length(m: MoebiusMatrix, eps: float = EPS_CLASS):
    """Return ``(kind, translation_length)`` with kind elliptic/parabolic/hyperbolic.

    The identity reports as elliptic with length 0.
    """
    t = abs(m.trace)
    if t < 2 - eps:
        return "elliptic", 0.0
    if t <= 2 + eps:
        if max(abs(m.b), abs(m.c), abs(m.a - m.d)) <= eps:
            return "elliptic", 0.0
        return "parabolic", 0.0
    return "hyperbolic", 2.0 * math.acosh(t / 2.0)


def translation_length(m: MoebiusMatrix) -> float:
    return classify_and_length(m)[1]


def hyperbolic_distance(p, q) -> float:
    """Poincare-disc distance between two points given as pairs or complex numbers."""
    p, q = _as_complex(p), _as_complex(q)
    if abs(p) >= 1 or abs(q) >= 1:
        raise ArgumentError("points must lie strictly inside the unit disc")
    num = 2 * abs(p - q) ** 2
    den = (1 - abs(p) ** 2) * (1 - abs(q) ** 2)
    return math.acosh(1 + num / den)


def _as_complex(p) -> complex:
    if isinstance(p, complex):
        return p
    if isinstance(p, (int, float)):
        return complex(p, 0.0)
    x, y = p
    return complex(x, y)


def fixed_point_in_disc(m: MoebiusMatrix):
    """Fixed point of an elliptic element inside the disc (None otherwise)."""
    a, b, c, d = m.entries()
    if abs(c) < 1e-14:
        return None
    disc = (d - a) ** 2 + 4 * b * c
    root = cmath.sqrt(disc)
    for z in ((a - d + root) / (2 * c), (a - d - root) / (2 * c)):
        if z.imag > 1e-12:
            return half_plane_to_disc(z)
    return None


def _disc_rotation(centre: complex, angle: float) -> np.ndarray:
    """SU(1,1) matrix of the rotation by ``angle`` about ``centre`` in the disc."""
    r = np.array([[cmath.exp(0.5j * angle), 0], [0, cmath.exp(-0.5j * angle)]])
    s = 1.0 / math.sqrt(1 - abs(centre) ** 2)
    t = s * np.array([[1, centre], [np.conj(centre), 1]])
    ti = s * np.array([[1, -centre], [-np.conj(centre), 1]])
    return t @ r @ ti


_CAYLEY = np.array([[1, -1j], [1, 1j]])
_CAYLEY_INV = np.linalg.inv(_CAYLEY)


def disc_matrix_to_sl2r(m: np.ndarray) -> np.ndarray:
    h = _CAYLEY_INV @ m @ _CAYLEY
    # h is a complex multiple of a real matrix; strip the phase
    k = np.argmax(np.abs(h))
    phase = h.flat[k] / abs(h.flat[k])
    h = (h / phase).real
    det = h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
    return h / math.sqrt(det)


@dataclass(frozen=True)
class FuchsianPresentation:
    """Finite presentation with a matrix realisation.

    ``periods`` maps each elliptic generator to its order.  ``genus`` and the
    period list form the signature used by the Riemann-Hurwitz formula.
    """

    generators: tuple
    relators: tuple  # words
    genus: int
    periods: tuple  # (generator index, order) pairs
    matrices: tuple  # MoebiusMatrix per generator

    def __post_init__(self):
        if len(self.matrices) != len(self.generators):
            raise ArgumentError("one matrix per generator is required")
        for gi, m in self.periods:
            if m < 2:
                raise ArgumentError("periods must be at least 2")
            power = self.evaluate(((gi + 1),) * m)
            if not _near_identity(power, 1e-6):
                raise ArgumentError(f"generator {self.generators[gi]} does not have order {m}")
            if classify_and_length(self.matrices[gi])[0] != "elliptic":
                raise ArgumentError(f"period generator {self.generators[gi]} is not elliptic")
        for i, m in enumerate(self.matrices):
            if classify_and_length(m)[0] == "parabolic":
                raise ArgumentError(f"generator {self.generators[i]} is parabolic; cocompact input required")
        for rel in self.relators:
            if not _near_identity(self.evaluate(rel), 1e-6):
                raise ArgumentError(f"relator {self.format(rel)} does not evaluate to +-I")

    @property
    def signature(self) -> tuple:
        return (self.genus, tuple(m for _, m in self.periods))

    def parse(self, text: str) -> tuple:
        return parse_word(text, self.generators)

    def format(self, word) -> str:
        return format_word(word, self.generators)

    def evaluate(self, word) -> MoebiusMatrix:
        m = np.eye(2)
        for letter in word:
            g = self.matrices[abs(letter) - 1]
            m = m @ (g.array() if letter > 0 else g.inverse().array())
        return MoebiusMatrix.from_array(m, tuple(word))

    def generator_element(self, i: int) -> MoebiusMatrix:
        return MoebiusMatrix(*self.matrices[i].entries(), word=(i + 1,))


def _near_identity(m: MoebiusMatrix, tol: float) -> bool:
    return max(abs(m.a - 1), abs(m.b), abs(m.c), abs(m.d - 1)) < tol


def triangle_side_lengths(p: int, q: int, r: int):
    """Distances from the order-r vertex to the order-p and order-q vertices."""
    al, be, ga = math.pi / p, math.pi / q, math.pi / r
    to_p = math.acosh((math.cos(be) + math.cos(al) * math.cos(ga)) / (math.sin(al) * math.sin(ga)))
    to_q = math.acosh((math.cos(al) + math.cos(be) * math.cos(ga)) / (math.sin(be) * math.sin(ga)))
    return to_p, to_q


def triangle_group(p: int, q: int, r: int) -> FuchsianPresentation:
    """Von Dyck group <x, y, z | x^p, y^q, z^r, xyz> realised in SL(2, R).

    The order-r vertex (fixed point of ``z``) sits at the disc origin and the
    order-p vertex on the positive real axis.
    """
    if min(p, q, r) < 2:
        raise ArgumentError("triangle group periods must be at least 2")
    if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) >= 1:
        raise ArgumentError(f"({p},{q},{r}) is not hyperbolic: 1/p + 1/q + 1/r >= 1")
    to_p, to_q = triangle_side_lengths(p, q, r)
    vp = complex(math.tanh(to_p / 2), 0.0)
    best = None
    for side in (1, -1):
        vq = math.tanh(to_q / 2) * cmath.exp(side * 1j * math.pi / r)
        for sign in (1, -1):
            x = _disc_rotation(vp, sign * 2 * math.pi / p)
            y = _disc_rotation(vq, sign * 2 * math.pi / q)
            z = _disc_rotation(0j, sign * 2 * math.pi / r)
            prod = x @ y @ z
            err = min(np.abs(prod - np.eye(2)).max(), np.abs(prod + np.eye(2)).max())
            if best is None or err < best[0]:
                best = (err, x, y, z)
    err, x, y, z = best
    if err > 1e-9:
        raise ArgumentError(f"could not realise triangle group ({p},{q},{r})")
    mats = tuple(MoebiusMatrix.from_array(disc_matrix_to_sl2r(m)) for m in (x, y, z))
    return FuchsianPresentation(
        generators=("x", "y", "z"),
        relators=((1,) * p, (2,) * q, (3,) * r, (1, 2, 3)),
        genus=0,
        periods=((0, p), (1, q), (2, r)),
        matrices=mats,
    )
