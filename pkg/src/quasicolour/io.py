"""JSON formats for periodic graphs, subgroups and colourings."""

from __future__ import annotations

import json
from fractions import Fraction

from .colouring import PeriodicColouring
from .cosets import CosetTable
from .errors import ArgumentError, SchemaError
from .euclid import EuclideanIsometry, translation_subgroup
from .hyperbolic import FuchsianPresentation, MoebiusMatrix
from .quotient import quotient_mod_subgroup
from .subgroups import CosetSubgroup, LatticeSubgroup
from .voltage import EUCLIDEAN, FUCHSIAN, EuclideanGroup, FuchsianGroup, PeriodicGraph, require_valid


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", stage="parse") from None


def _need(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {where}.{key}", stage="parse")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"field {where}.{key} has the wrong type", stage="parse")
    return value


def _exact(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(f"{where} must be an integer or a fraction string", stage="parse")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{where}: cannot read {value!r} as a fraction", stage="parse") from None


def _fmt_exact(x):
    if isinstance(x, float):
        return x
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_isometry(obj, where):
    m = _need(obj, "matrix", list, where)
    v = _need(obj, "vector", list, where)
    if len(m) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in m) or len(v) != 2:
        raise SchemaError(f"{where}: matrix must be 2x2 and vector length 2", stage="parse")
    entries = [_exact(c, f"{where}.matrix") for r in m for c in r]
    try:
        return EuclideanIsometry(tuple(entries), tuple(_exact(c, f"{where}.vector") for c in v))
    except ArgumentError as exc:
        raise SchemaError(f"{where}: {exc.message}", stage="parse") from None


def _parse_euclidean_group(obj) -> EuclideanGroup:
    where = "group.euclidean"
    gens = tuple(_parse_isometry(g, f"{where}.generators[{i}]") for i, g in enumerate(obj.get("generators", [])))
    if "basis" in obj:
        basis = obj["basis"]
        if not isinstance(basis, list):
            raise SchemaError(f"{where}.basis must be a list", stage="parse")
        basis = tuple(tuple(_exact(c, f"{where}.basis") for c in v) for v in basis)
    elif gens:
        bound = obj.get("word_bound", 8)
        basis = translation_subgroup(gens, bound).basis
    else:
        raise SchemaError(f"{where} needs a basis or generators", stage="parse")
    try:
        return EuclideanGroup(basis, gens)
    except ArgumentError as exc:
        raise SchemaError(f"{where}: {exc.message}", stage="parse") from None


def _parse_fuchsian_group(obj, orbits) -> FuchsianGroup:
    where = "group.fuchsian"
    names = _need(obj, "generators", list, where)
    if any(not isinstance(n, str) or len(n) != 1 for n in names):
        raise SchemaError(f"{where}.generators must be single letters", stage="parse")
    from .words import parse_word

    def word(text, field_name):
        try:
            return parse_word(text, names)
        except (ValueError, TypeError) as exc:
            raise SchemaError(f"{where}.{field_name}: {exc}", stage="parse") from None

    relators = tuple(word(r, "relators") for r in _need(obj, "relators", list, where))
    sig = _need(obj, "signature", dict, where)
    genus = _need(sig, "genus", int, f"{where}.signature")
    periods = _need(sig, "periods", list, f"{where}.signature")
    pgens = obj.get("period_generators", names[: len(periods)])
    if len(pgens) != len(periods) or any(p not in names for p in pgens):
        raise SchemaError(f"{where}.period_generators must name one generator per period", stage="parse")
    mats = _need(obj, "matrices", dict, where)
    matrices = []
    for n in names:
        m = _need(mats, n, list, f"{where}.matrices")
        try:
            matrices.append(MoebiusMatrix(float(m[0][0]), float(m[0][1]), float(m[1][0]), float(m[1][1])))
        except (TypeError, IndexError, ValueError) as exc:
            raise SchemaError(f"{where}.matrices.{n}: {exc}", stage="parse") from None
    try:
        pres = FuchsianPresentation(
            tuple(names),
            relators,
            genus,
            tuple((names.index(g), int(p)) for g, p in zip(pgens, periods)),
            tuple(matrices),
        )
    except ArgumentError as exc:
        raise SchemaError(f"{where}: {exc.message}", stage="parse") from None
    stabs = obj.get("stabilizers", [[] for _ in range(orbits)])
    if not isinstance(stabs, list) or len(stabs) != orbits:
        raise SchemaError(f"{where}.stabilizers needs one list per orbit", stage="parse")
    stabilizers = tuple(tuple(word(w, "stabilizers") for w in s) for s in stabs)
    return FuchsianGroup(pres, stabilizers)


def graph_from_json(data, validate: bool = True) -> PeriodicGraph:
    kind = _need(data, "kind", str, "graph")
    orbits = _need(data, "orbits", int, "graph")
    darts_in = _need(data, "darts", list, "graph")
    group = _need(data, "group", dict, "graph")
    if kind == EUCLIDEAN:
        grp = _parse_euclidean_group(_need(group, "euclidean", dict, "group"))
    elif kind == FUCHSIAN:
        grp = _parse_fuchsian_group(_need(group, "fuchsian", dict, "group"), orbits)
    else:
        raise SchemaError(f"graph.kind must be {EUCLIDEAN!r} or {FUCHSIAN!r}", stage="parse")
    darts = []
    for i, d in enumerate(darts_in):
        if not isinstance(d, list) or len(d) != 3 or not all(isinstance(x, int) for x in d[:2]):
            raise SchemaError(f"graph.darts[{i}] must be [u, v, voltage]", stage="parse")
        try:
            darts.append((d[0], d[1], grp.parse_voltage(d[2])))
        except ArgumentError as exc:
            raise SchemaError(f"graph.darts[{i}]: {exc.message}", stage="parse") from None
    geometry = data.get("geometry")
    if geometry is not None:
        if not isinstance(geometry, list):
            raise SchemaError("graph.geometry must be a list of points", stage="parse")
        if kind == FUCHSIAN:
            geometry = [[float(c) for c in p] for p in geometry]
        else:
            geometry = [[_exact(c, f"graph.geometry[{i}]") for c in p] for i, p in enumerate(geometry)]
    try:
        pg = PeriodicGraph(kind, orbits, tuple(darts), geometry, grp)
    except ArgumentError as exc:
        raise SchemaError(f"graph: {exc.message}", stage="parse") from None
    if validate:
        require_valid(pg)
    return pg


def parse_periodic_graph(text: str) -> PeriodicGraph:
    """Parse and validate a periodic graph document."""
    return graph_from_json(_load(text))


def graph_to_json(pg: PeriodicGraph) -> dict:
    grp = pg.group
    out = {
        "kind": pg.kind,
        "orbits": pg.orbits,
        "darts": [[d.u, d.v, grp.format_voltage(d.voltage)] for d in pg.darts],
    }
    if pg.geometry is not None:
        out["geometry"] = [[_fmt_exact(c) for c in p] for p in pg.geometry]
    if pg.is_fuchsian:
        pres = grp.presentation
        out["group"] = {
            "fuchsian": {
                "generators": list(pres.generators),
                "relators": [pres.format(r) for r in pres.relators],
                "signature": {"genus": pres.genus, "periods": [m for _, m in pres.periods]},
                "period_generators": [pres.generators[i] for i, _ in pres.periods],
                "matrices": {n: [[m.a, m.b], [m.c, m.d]] for n, m in zip(pres.generators, pres.matrices)},
                "stabilizers": [[pres.format(w) for w in grp.stabilizer(o)] for o in range(pg.orbits)],
            }
        }
    else:
        euc = {"basis": [[_fmt_exact(c) for c in v] for v in grp.basis]}
        if grp.generators:
            euc["generators"] = [
                {
                    "matrix": [[_fmt_exact(c) for c in g.point_part[:2]], [_fmt_exact(c) for c in g.point_part[2:]]],
                    "vector": [_fmt_exact(c) for c in g.translation],
                }
                for g in grp.generators
            ]
        out["group"] = {"euclidean": euc}
    return out


def serialize(pg: PeriodicGraph) -> str:
    return canonical_json(graph_to_json(pg))


def subgroup_from_json(data, pg: PeriodicGraph):
    if "lattice" in data:
        try:
            return LatticeSubgroup(tuple(tuple(r) for r in data["lattice"]))
        except (ArgumentError, TypeError) as exc:
            raise SchemaError(f"subgroup.lattice: {exc}", stage="parse") from None
    if "coset_table" in data:
        t = data["coset_table"]
        perms = _need(t, "permutations", list, "subgroup.coset_table")
        try:
            table = CosetTable(tuple(tuple(p) for p in perms))
        except (ArgumentError, TypeError) as exc:
            raise SchemaError(f"subgroup.coset_table: {exc}", stage="parse") from None
        pres = pg.group.presentation
        if len(table.perms) != len(pres.generators) or not table.satisfies(pres.relators) or not table.is_transitive():
            raise SchemaError("subgroup.coset_table is not a transitive table for this presentation", stage="parse")
        return CosetSubgroup(table, tuple(pres.generators))
    raise SchemaError("subgroup needs 'lattice' or 'coset_table'", stage="parse")


def colouring_to_json(pc: PeriodicColouring) -> dict:
    q = pc.quotient
    classes = []
    for orbit, label in q.classes:
        classes.append([orbit, list(label) if isinstance(label, tuple) else label])
    return {
        "subgroup": q.subgroup.to_json(),
        "classes": classes,
        "colours": list(pc.colours),
        "palette": pc.palette,
        "strategy": pc.strategy,
    }


def colouring_from_json(data, pg: PeriodicGraph) -> PeriodicColouring:
    """Rebuild a colouring; colours are matched to quotient classes by label."""
    sub = subgroup_from_json(_need(data, "subgroup", dict, "colouring"), pg)
    q = quotient_mod_subgroup(pg, sub, allow_loops=True)
    classes = _need(data, "classes", list, "colouring")
    colours = _need(data, "colours", list, "colouring")
    if len(classes) != len(colours) or len(classes) != q.size:
        raise SchemaError(f"colouring has {len(colours)} colours for a quotient of size {q.size}", stage="parse")
    out = [None] * q.size
    for (orbit, label), c in zip(classes, colours):
        key = (orbit, tuple(label) if isinstance(label, list) else label)
        if key not in q._lookup or not isinstance(c, int):
            raise SchemaError(f"colouring class {[orbit, label]} does not belong to this quotient", stage="parse")
        out[q._lookup[key]] = c
    return PeriodicColouring(pg, q, out, data.get("strategy", ""))


def parse_colouring(text: str, pg: PeriodicGraph) -> PeriodicColouring:
    return colouring_from_json(_load(text), pg)
