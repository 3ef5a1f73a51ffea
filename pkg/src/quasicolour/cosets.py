"""Coset tables: Todd-Coxeter enumeration and low-index subgroup search.

Cosets are numbered from 0; coset 0 is the subgroup itself.  Generators act
on the right, so ``coset . (uv) = (coset . u) . v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import ArgumentError, ResourceError
from .words import letter_column


@dataclass(frozen=True)
class CosetTable:
    perms: tuple  # one permutation (tuple of images) per generator

    def __post_init__(self):
        perms = tuple(tuple(p) for p in self.perms)
        n = len(perms[0]) if perms else 1
        for p in perms:
            if len(p) != n or sorted(p) != list(range(n)):
                raise ArgumentError("coset table rows must be permutations of one degree")
        object.__setattr__(self, "perms", perms)
        object.__setattr__(self, "_inverse", tuple(_invert(p) for p in perms))

    @property
    def degree(self) -> int:
        return len(self.perms[0]) if self.perms else 1

    @property
    def index(self) -> int:
        return self.degree

    def act(self, coset: int, word) -> int:
        for letter in word:
            g = abs(letter) - 1
            coset = self.perms[g][coset] if letter > 0 else self._inverse[g][coset]
        return coset

    def word_permutation(self, word) -> tuple:
        return tuple(self.act(c, word) for c in range(self.degree))

    def contains(self, word) -> bool:
        return self.act(0, word) == 0

    def cycle_lengths(self, word) -> list:
        perm = self.word_permutation(word)
        seen = [False] * len(perm)
        out = []
        for start in range(len(perm)):
            if seen[start]:
                continue
            n, c = 0, start
            while not seen[c]:
                seen[c] = True
                c = perm[c]
                n += 1
            out.append(n)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def orbit(self, start: int) -> list:
        seen = {start}
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for p, q in zip(self.perms, self._inverse):
                for d in (p[c], q[c]):
                    if d not in seen:
                        seen.add(d)
                        queue.append(d)
        return sorted(seen)

    def transversal(self) -> list:
        """Shortest representative word for each coset (BFS, generator order)."""
        reps = [None] * self.degree
        reps[0] = ()
        queue = deque([0])
        r = len(self.perms)
        while queue:
            c = queue.popleft()
            for g in range(r):
                for letter, table in ((g + 1, self.perms[g]), (-(g + 1), self._inverse[g])):
                    d = table[c]
                    if reps[d] is None:
                        reps[d] = reps[c] + (letter,)
                        queue.append(d)
        return reps

    def schreier_generators(self) -> list:
        """Words generating the subgroup (Schreier generators), deduplicated."""
        reps = self.transversal()
        out = []
        seen = set()
        for c in range(self.degree):
            for g in range(len(self.perms)):
                d = self.perms[g][c]
                w = _free_reduce(reps[c] + (g + 1,) + tuple(-a for a in reversed(reps[d])))
                if w and w not in seen:
                    seen.add(w)
                    out.append(w)
        return out

    def satisfies(self, relators) -> bool:
        return all(all(self.act(c, rel) == c for c in range(self.degree)) for rel in relators)

    def standardized(self) -> "CosetTable":
        """Renumber cosets in first-appearance order (rows then generator columns)."""
        order = [0]
        pos = {0: 0}
        i = 0
        while i < len(order):
            c = order[i]
            for g in range(len(self.perms)):
                for d in (self.perms[g][c], self._inverse[g][c]):
                    if d not in pos:
                        pos[d] = len(order)
                        order.append(d)
            i += 1
        perms = []
        for p in self.perms:
            new = [0] * len(order)
            for c in order:
                new[pos[c]] = pos[p[c]]
            perms.append(tuple(new))
        return CosetTable(tuple(perms))

    def to_json(self, names) -> dict:
        return {"degree": self.degree, "generators": list(names), "permutations": [list(p) for p in self.perms]}


def _invert(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _free_reduce(word):
    out = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _columns(word):
    return [letter_column(a) for a in word]


class _Enumerator:
    """HLT coset enumeration with coincidence processing."""

    def __init__(self, ngens, max_cosets):
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.table = [[-1] * self.ncols]
        self.parent = [0]
        self.defined = 1

    def rep(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def live(self, c):
        return self.parent[c] == c

    def define(self, c, x):
        if self.defined >= self.max_cosets:
            raise ResourceError(
                f"coset budget of {self.max_cosets} exhausted (subgroup may have infinite index)",
                stage="todd_coxeter",
            )
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.defined += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def scan_and_fill(self, c, word):
        t = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] != -1:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][word[j] ^ 1] != -1:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def _merge(self, a, b, queue):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        queue.append(hi)

    def coincidence(self, a, b):
        t = self.table
        queue = []
        self._merge(a, b, queue)
        k = 0
        while k < len(queue):
            e = queue[k]
            k += 1
            for x in range(self.ncols):
                f = t[e][x]
                if f == -1:
                    continue
                if t[f][x ^ 1] == e:
                    t[f][x ^ 1] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if t[e1][x] != -1:
                    self._merge(f1, t[e1][x], queue)
                elif t[f1][x ^ 1] != -1:
                    self._merge(e1, t[f1][x ^ 1], queue)
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1

    def run(self, relators, subgroup):
        for w in subgroup:
            if w:
                self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            if self.live(c):
                for rel in relators:
                    self.scan_and_fill(c, rel)
                    if not self.live(c):
                        break
                if self.live(c):
                    for x in range(self.ncols):
                        if self.table[c][x] == -1:
                            self.define(c, x)
            c += 1

    def result(self, ngens):
        live = [c for c in range(len(self.table)) if self.live(c)]
        pos = {c: i for i, c in enumerate(live)}
        perms = []
        for g in range(ngens):
            perms.append(tuple(pos[self.rep(self.table[c][2 * g])] for c in live))
        return CosetTable(tuple(perms)).standardized()


def todd_coxeter(ngens: int, relators, subgroup_generators=(), max_cosets: int = 200_000) -> CosetTable:
    """Enumerate the cosets of ``<subgroup_generators>`` in ``<gens | relators>``.

    Words use the signed-letter encoding of :mod:`quasicolour.words`.  Raises
    ResourceError when more than ``max_cosets`` cosets get defined.
    """
    if max_cosets < 1:
        raise ArgumentError("max_cosets must be at least 1")
    rels = [_columns(r) for r in relators if r]
    subs = [_columns(w) for w in subgroup_generators]
    en = _Enumerator(ngens, max_cosets)
    en.run(rels, subs)
    table = en.result(ngens)
    if not table.satisfies(relators) or not all(table.contains(w) for w in subgroup_generators):
        raise RuntimeError("coset enumeration produced an inconsistent table")
    return table


# -- low-index search ---------------------------------------------------------


def low_index_tables(ngens: int, relators, max_degree: int, min_degree: int = 1):
    """Yield every transitive coset table of degree in ``[min_degree, max_degree]``.

    Tables come out by increasing degree and, within one degree, in
    lexicographic order of the choices made while filling the table, so the
    sequence is deterministic.
    """
    rels = [_columns(r) for r in relators if r]
    ncols = 2 * ngens
    for degree in range(max(1, min_degree), max_degree + 1):
        table = [[-1] * ncols for _ in range(degree)]
        yield from _low_index(table, 1, degree, rels, ncols, ngens)


def _low_index(table, n, degree, rels, ncols, ngens):
    spot = None
    for c in range(n):
        for x in range(ncols):
            if table[c][x] == -1:
                spot = (c, x)
                break
        if spot:
            break
    if spot is None:
        if n == degree:
            yield CosetTable(tuple(tuple(table[c][2 * g] for c in range(n)) for g in range(ngens)))
        return
    c, x = spot
    choices = [d for d in range(n) if table[d][x ^ 1] == -1]
    if n < degree:
        choices.append(n)
    for d in choices:
        trial = [row[:] for row in table]
        trial[c][x] = d
        if trial[d][x ^ 1] != -1 and trial[d][x ^ 1] != c:
            continue
        trial[d][x ^ 1] = c
        m = max(n, d + 1)
        if _deduce(trial, m, rels):
            yield from _low_index(trial, m, degree, rels, ncols, ngens)


def _deduce(t, n, rels):
    """Propagate relator consequences; False on contradiction."""
    changed = True
    while changed:
        changed = False
        for c in range(n):
            for w in rels:
                f, i = c, 0
                L = len(w)
                while i < L and t[f][w[i]] != -1:
                    f = t[f][w[i]]
                    i += 1
                if i == L:
                    if f != c:
                        return False
                    continue
                b, j = c, L - 1
                while j > i and t[b][w[j] ^ 1] != -1:
                    b = t[b][w[j] ^ 1]
                    j -= 1
                if j == i:
                    x = w[i]
                    if t[b][x ^ 1] != -1:
                        if t[b][x ^ 1] != f:
                            return False
                        t[f][x] = b
                    else:
                        t[f][x] = b
                        t[b][x ^ 1] = f
                    changed = True
    return True


# -- permutation images -------------------------------------------------------


def regular_table(perms, max_order: int):
    """Coset table of the kernel of the permutation representation ``perms``.

    The image group acts on itself by right multiplication; its elements are
    numbered by BFS from the identity.  Returns None if the image has more than
    ``max_order`` elements.
    """
    n = len(perms[0])
    identity = tuple(range(n))
    index = {identity: 0}
    elements = [identity]
    i = 0
    while i < len(elements):
        e = elements[i]
        for p in perms:
            f = tuple(p[k] for k in e)
            if f not in index:
                if len(elements) >= max_order:
                    return None
                index[f] = len(elements)
                elements.append(f)
        i += 1
    out = []
    for p in perms:
        out.append(tuple(index[tuple(p[k] for k in e)] for e in elements))
    return CosetTable(tuple(out)).standardized()


def direct_sum(a: CosetTable, b: CosetTable) -> tuple:
    """Permutations of the disjoint-union action of two tables."""
    shift = a.degree
    return tuple(pa + tuple(shift + v for v in pb) for pa, pb in zip(a.perms, b.perms))


def is_torsion_free(periods, table: CosetTable) -> bool:
    """Every cycle of each period generator has length exactly its period.

    ``periods`` is a sequence of ``(generator index, order)`` pairs.
    """
    for g, m in periods:
        if any(n != m for n in table.cycle_lengths((g + 1,))):
            return False
    return True


def candidate_tables(ngens, relators, max_degree, max_order):
    """Low-index tables, each followed by its regular closure and pairwise sums.

    Deterministic order; duplicates (same standardized table) are skipped.
    """
    seen = set()
    found = []

    def fresh(t):
        if t is None or t.perms in seen:
            return False
        seen.add(t.perms)
        return True

    for t in low_index_tables(ngens, relators, max_degree):
        if fresh(t):
            yield t
        reg = regular_table(t.perms, max_order)
        if fresh(reg):
            yield reg
        for prev in found:
            combo = regular_table(direct_sum(prev, t), max_order)
            if fresh(combo):
                yield combo
        found.append(t)

