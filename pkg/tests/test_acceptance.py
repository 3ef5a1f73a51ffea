"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with its timing.  Run the file
directly (``python3 tests/test_acceptance.py``) to get just those lines.
"""

import io
import json
import random
import sys
import time
from contextlib import redirect_stdout
from fractions import Fraction

from quasicolour.cli import main
from quasicolour.colouring import euclid_pipeline, exact_colouring, hyp_pipeline, is_proper
from quasicolour.corpus import example
from quasicolour.cosets import is_torsion_free, low_index_tables, todd_coxeter
from quasicolour.errors import InadmissibleIndexError, SubgroupTooSmallError
from quasicolour.euclid import EuclideanIsometry, Lattice, reduce_basis
from quasicolour.hyperbolic import classify_and_length, triangle_group
from quasicolour.io import parse_colouring
from quasicolour.linegraph import DEGREE_CUT_ROUTE, check_edge_colouring, line_planarity_check, periodic_edge_colouring, periodic_orientation
from quasicolour.reduction import reduce_to_3connected
from quasicolour.quotient import quotient_mod_subgroup, shortest_noncontractible
from quasicolour.subgroups import LatticeSubgroup
from quasicolour.surfaces import colour_budget, riemann_hurwitz_genus
from quasicolour.verify import brute_force_chromatic, check_periodic, check_proper
from quasicolour.voltage import build_patch, neighbours, translate
from quasicolour.words import invert_word, multiply_words, reduce_word


def report(number, title, ok, elapsed, limit=None, detail=""):
    timed = elapsed < limit if limit is not None else True
    status = "PASS" if ok and timed else "FAIL"
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    line = f"{status} criterion {number:2d}: {title}: {elapsed:.4f} s{budget}"
    if detail:
        line += f"; {detail}"
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()
    return ok and timed


# 1 ------------------------------------------------------------------------------


def criterion_1():
    t0 = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["colour", "examples:square"])
    data = json.loads(buf.getvalue())
    pg = example("square")
    pc = parse_colouring(json.dumps(data["colouring"]), pg)
    proper = check_proper(pc, pg, 16)
    periodic = check_periodic(pc, 100, seed=0)
    gens = sorted(tuple(g) for g in pc.subgroup.generators())
    # the colouring is invariant under (2,0) and (0,2) on the whole radius-16 patch
    invariant = all(
        pc.colour_of(translate(pg, t, v)) == pc.colour_of(v)
        for v in build_patch(pg, None, 16).vertices
        for t in ((2, 0), (0, 2))
    )
    elapsed = time.perf_counter() - t0
    ok = (
        code == 0
        and data["report"]["palette"] == 2
        and data["report"]["index"] == 4
        and proper.ok
        and periodic.ok
        and gens == [(0, 2), (2, 0)]
        and invariant
    )
    detail = f"palette {data['report']['palette']}, index {data['report']['index']}, generators {gens}"
    return ok, elapsed, detail


def test_criterion_1_square_checkerboard():
    ok, elapsed, detail = criterion_1()
    assert report(1, "square lattice 2-colouring, index 4", ok, elapsed, 1.0, detail)


# 2 ------------------------------------------------------------------------------


def criterion_2():
    t0 = time.perf_counter()
    got = colour_budget(1)
    elapsed = time.perf_counter() - t0
    return got == (7, 1048576), elapsed, f"colour_budget(1) = {got}"


def test_criterion_2_threshold_arithmetic():
    ok, elapsed, detail = criterion_2()
    assert report(2, "genus-1 colour budget", ok, elapsed, None, detail)


# 3 ------------------------------------------------------------------------------


def criterion_3():
    t0 = time.perf_counter()
    g168 = riemann_hurwitz_genus((0, (2, 3, 7)), 168)
    g84 = riemann_hurwitz_genus((0, (2, 3, 7)), 84)
    try:
        riemann_hurwitz_genus((0, (2, 3, 7)), 100)
        rejected = False
    except InadmissibleIndexError:
        rejected = True
    elapsed = time.perf_counter() - t0
    ok = g168 == 3 and g84 == 2 and rejected and isinstance(g168, int)
    return ok, elapsed, f"168 -> {g168}, 84 -> {g84}, 100 rejected: {rejected}"


def test_criterion_3_riemann_hurwitz():
    ok, elapsed, detail = criterion_3()
    assert report(3, "genus from signature (0;2,3,7)", ok, elapsed, 1e-3, detail)


# 4 ------------------------------------------------------------------------------


def criterion_4():
    t0 = time.perf_counter()
    pg = example("heptagonal")
    pc, rep = hyp_pipeline(pg, max_cosets=2000)
    q = pc.quotient
    table = pc.subgroup.table
    torsion_free = is_torsion_free(pg.group.presentation.periods, table)
    n = rep["index"]
    expected_vertices = 24 * n // 168
    degrees = {q.degree(a) for a in range(q.size)}
    proper = check_proper(pc, pg, 3)
    elapsed = time.perf_counter() - t0
    ok = (
        n <= 2000
        and torsion_free
        and q.size == expected_vertices
        and (n != 168 or (q.size == 24 and q.edge_count == 84 and degrees == {7}))
        and pc.palette <= 9
        and proper.ok
    )
    detail = f"index {n}, {q.size} vertices of degree {sorted(degrees)}, {q.edge_count} edges, palette {pc.palette}"
    return ok, elapsed, detail


def test_criterion_4_heptagonal_end_to_end():
    ok, elapsed, detail = criterion_4()
    assert report(4, "{3,7} over (2,3,7)", ok, elapsed, 60.0, detail)


# 5 ------------------------------------------------------------------------------


def criterion_5():
    t0 = time.perf_counter()
    pg = example("leafed-subdivided")
    final, trace = reduce_to_3connected(pg)
    square = example("square")
    is_square = final.orbits == 1 and sorted(d.voltage for d in final.darts) == sorted(d.voltage for d in square.darts)
    pc, rep = euclid_pipeline(pg)
    proper = check_proper(pc, pg, 10)
    elapsed = time.perf_counter() - t0
    ok = len(trace.steps) == rep["reduction_steps"] == 2 and is_square and pc.palette <= 3 and proper.ok and pc.pg is pg
    return ok, elapsed, f"{rep['reduction_steps']} steps, palette {pc.palette}"


def test_criterion_5_reduction_round_trip():
    ok, elapsed, detail = criterion_5()
    assert report(5, "leafed subdivided square reduction", ok, elapsed, 5.0, detail)


# 6 ------------------------------------------------------------------------------


def closed_walk_search(pg, sub, limit):
    """Brute force: every walk of length <= limit from each class representative."""
    q = quotient_mod_subgroup(pg, sub, allow_loops=True)
    best = None
    for a, rep in enumerate(q.representatives):
        stack = [(rep, 0)]
        while stack:
            v, n = stack.pop()
            if n and v != rep and q.resolve(v) == a:
                best = n if best is None else min(best, n)
                continue
            if n < limit:
                stack.extend((w, n + 1) for w in neighbours(pg, v))
    return best


def criterion_6():
    t0 = time.perf_counter()
    pg = example("square")
    results = {}
    for n in (3, 4, 6):
        sub = LatticeSubgroup(((n, 0), (0, n)))
        results[n] = (shortest_noncontractible(pg, sub), closed_walk_search(pg, sub, n))
    elapsed = time.perf_counter() - t0
    ok = all(a == b == n for n, (a, b) in results.items())
    return ok, elapsed, ", ".join(f"n={n}: {a} (brute force {b})" for n, (a, b) in results.items())


def test_criterion_6_shortest_noncontractible():
    ok, elapsed, detail = criterion_6()
    assert report(6, "shortest non-contractible cycle on diag(n,n)", ok, elapsed, None, detail)


# 7 ------------------------------------------------------------------------------

BUNDLED_EUCLIDEAN = (
    "square", "hexagonal", "triangular", "square-diagonals", "leafed",
    "two-leaf", "subdivided", "leafed-subdivided",
)


def bundled_quotients(limit=14):
    """Every loop-free quotient of a bundled example by an HNF sublattice, up to ``limit`` vertices."""
    for name in BUNDLED_EUCLIDEAN:
        pg = example(name)
        for a in range(1, limit + 1):
            for b in range(1, limit + 1):
                if pg.orbits * a * b > limit:
                    continue
                for c in range(b):
                    sub = LatticeSubgroup(((a, c), (0, b)))
                    try:
                        yield quotient_mod_subgroup(pg, sub)
                    except SubgroupTooSmallError:
                        continue


def criterion_7():
    t0 = time.perf_counter()
    checked = 0
    disagreements = []
    for q in bundled_quotients():
        adj = q.adjacency()
        chi = brute_force_chromatic(adj)
        for k in range(2, 7):
            cols = exact_colouring(adj, k)
            if (cols is not None) != (chi <= k) or (cols is not None and not is_proper(adj, cols)):
                disagreements.append((q.subgroup.matrix, k))
            checked += 1
    elapsed = time.perf_counter() - t0
    ok = checked > 0 and not disagreements
    return ok, elapsed, f"{checked} (quotient, k) pairs, {len(disagreements)} disagreements"


def test_criterion_7_exact_colouring_oracle():
    ok, elapsed, detail = criterion_7()
    assert report(7, "exact-k against brute force", ok, elapsed, 30.0, detail)


# 8 ------------------------------------------------------------------------------


def criterion_8():
    t0 = time.perf_counter()
    hexagonal = example("hexagonal")
    hex_report = line_planarity_check(hexagonal)
    ec, _ = periodic_edge_colouring(hexagonal)
    conflicts = check_edge_colouring(ec, 6)
    line_proper = check_proper(ec.colouring, ec.line, 6)
    square_report = line_planarity_check(example("square"))
    elapsed = time.perf_counter() - t0
    ok = (
        hex_report.route == DEGREE_CUT_ROUTE
        and ec.palette >= 3
        and not conflicts
        and line_proper.ok
        and square_report.route == "fail"
        and square_report.witnesses[0]["type"] == "degree-4 non-cut vertex"
    )
    detail = f"hexagonal route {hex_report.route}, edge palette {ec.palette}; square: {square_report.witnesses[0]['type']}"
    return ok, elapsed, detail


def test_criterion_8_edge_colouring():
    ok, elapsed, detail = criterion_8()
    assert report(8, "edge colouring via line graphs", ok, elapsed, 10.0, detail)


# 9 ------------------------------------------------------------------------------


def criterion_9():
    t0 = time.perf_counter()
    pg = example("square")
    pc, _ = euclid_pipeline(pg)
    orient = periodic_orientation(pc)
    patch = build_patch(pg, None, 8)
    antisymmetric = all(
        orient.points_forward(patch.vertices[i], patch.vertices[j])
        != orient.points_forward(patch.vertices[j], patch.vertices[i])
        for i, j in patch.edges
    )
    invariant = True
    for i, j in patch.edges:
        u, v = patch.vertices[i], patch.vertices[j]
        for t in pc.subgroup.generators():
            if orient.points_forward(translate(pg, t, u), translate(pg, t, v)) != orient.points_forward(u, v):
                invariant = False
    # the stored quotient directions agree with the cover
    stored = all(
        orient.points_forward(pc.quotient.representative(a), neighbours(pg, pc.quotient.representative(a))[k]) == f
        for (a, k), f in orient.forward.items()
    )
    elapsed = time.perf_counter() - t0
    ok = antisymmetric and invariant and stored
    return ok, elapsed, f"{len(patch.edges)} edges checked"


def test_criterion_9_orientation():
    ok, elapsed, detail = criterion_9()
    assert report(9, "checkerboard orientation", ok, elapsed, 1.0, detail)


# 10 -----------------------------------------------------------------------------


def _euclid_axioms(rng):
    gens = (
        EuclideanIsometry.rotation90(),
        EuclideanIsometry.translation_by(1, 0),
        EuclideanIsometry.translation_by(0, 1),
        EuclideanIsometry((Fraction(-1), Fraction(0), Fraction(0), Fraction(1)), (Fraction(1, 2), Fraction(0))),
    )

    def word():
        g = EuclideanIsometry.identity()
        for _ in range(rng.randint(0, 10)):
            h = rng.choice(gens)
            g = g.compose(h if rng.random() < 0.5 else h.inverse())
        return g

    e = EuclideanIsometry.identity()
    for _ in range(200):
        a, b, c = word(), word(), word()
        if a.compose(b).compose(c) != a.compose(b.compose(c)):
            return False
        if a.compose(e) != a or e.compose(a) != a or a.compose(a.inverse()) != e:
            return False
    return True


def _moebius(rng):
    pres = triangle_group(2, 3, 7)
    checked = 0
    while checked < 100:
        w = reduce_word(tuple(rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.randint(2, 10))))
        kind, length = classify_and_length(pres.evaluate(w))
        if kind != "hyperbolic":
            continue
        if abs(classify_and_length(pres.evaluate(w * 2))[1] - 2 * length) > 1e-6:
            return False
        h = reduce_word(tuple(rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.randint(1, 6))))
        conj = multiply_words(multiply_words(h, w), invert_word(h))
        if abs(classify_and_length(pres.evaluate(conj))[1] - length) > 1e-6:
            return False
        checked += 1
    return True


def _lagrange_gauss(rng):
    n2 = lambda u: u[0] * u[0] + u[1] * u[1]
    for _ in range(200):
        while True:
            v = [rng.randint(-50, 50) for _ in range(4)]
            if v[0] * v[3] != v[1] * v[2]:
                break
        lat = Lattice(((v[0], v[1]), (v[2], v[3])))
        b1, b2 = reduce_basis(lat).basis
        plus = (b1[0] + b2[0], b1[1] + b2[1])
        minus = (b2[0] - b1[0], b2[1] - b1[1])
        if not n2(b1) <= n2(b2) <= min(n2(plus), n2(minus)):
            return False
        if abs(reduce_basis(lat).determinant) != abs(lat.determinant):
            return False
    return True


def _coset_soundness():
    pres = triangle_group(2, 3, 7)
    rels = tuple(pres.relators)
    tables = list(low_index_tables(3, rels, 8))
    psl = todd_coxeter(3, rels + ((-1, -2, 1, 2) * 4,))
    return (
        all(t.satisfies(rels) and t.is_transitive() for t in tables)
        and psl.index == 168
        and psl.satisfies(rels)
    )


def criterion_10():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    parts = {
        "euclidean axioms": _euclid_axioms(rng),
        "moebius lengths": _moebius(rng),
        "lagrange-gauss": _lagrange_gauss(rng),
        "coset tables": _coset_soundness(),
    }
    elapsed = time.perf_counter() - t0
    return all(parts.values()), elapsed, ", ".join(f"{k} {'ok' if v else 'FAILED'}" for k, v in parts.items())


def test_criterion_10_group_suites():
    ok, elapsed, detail = criterion_10()
    assert report(10, "group arithmetic suites", ok, elapsed, 10.0, detail)


CRITERIA = (
    (1, "square lattice 2-colouring, index 4", criterion_1, 1.0),
    (2, "genus-1 colour budget", criterion_2, None),
    (3, "genus from signature (0;2,3,7)", criterion_3, 1e-3),
    (4, "{3,7} over (2,3,7)", criterion_4, 60.0),
    (5, "leafed subdivided square reduction", criterion_5, 5.0),
    (6, "shortest non-contractible cycle on diag(n,n)", criterion_6, None),
    (7, "exact-k against brute force", criterion_7, 30.0),
    (8, "edge colouring via line graphs", criterion_8, 10.0),
    (9, "checkerboard orientation", criterion_9, 1.0),
    (10, "group arithmetic suites", criterion_10, 10.0),
)


if __name__ == "__main__":
    passed = 0
    for number, title, func, limit in CRITERIA:
        ok, elapsed, detail = func()
        passed += report(number, title, ok, elapsed, limit, detail)
    print(f"{passed}/{len(CRITERIA)} criteria passed")
    sys.exit(0 if passed == len(CRITERIA) else 1)
