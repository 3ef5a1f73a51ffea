"""Reduction to a 3-connected graph by removing atom orbits, and the way back.

A fragment is a finite connected piece cut off by a minimum cut; an atom is
an inclusion-minimal fragment.  Atoms with a one-vertex boundary are deleted;
atoms with a two-vertex boundary are replaced by an edge between the two
boundary vertices.  Every step is recorded so a colouring of the reduced
graph can be extended back.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colouring import PeriodicColouring
from .errors import ArgumentError, QuasiColourError, ResourceError, UnsupportedInputError
from .quotient import quotient_mod_subgroup
from .voltage import Dart, PeriodicGraph, build_patch, cover_vertex, patch_connectivity, require_valid, small_cuts

PALETTE_MODES = ("reuse", "fresh")


@dataclass(frozen=True)
class AtomOrbit:
    """One atom, translated so that its first vertex sits at the identity."""

    vertices: tuple  # CoverVertex
    boundary: tuple  # CoverVertex, one or two
    case: int

    @property
    def orbits(self) -> tuple:
        return tuple(sorted({v.orbit for v in self.vertices}))

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "vertices": [[v.orbit, list(v.element)] for v in self.vertices],
            "boundary": [[v.orbit, list(v.element)] for v in self.boundary],
        }


@dataclass
class ReductionStep:
    case: int
    atoms: list
    added: list  # darts inserted for case 2
    merged: list  # case-2 darts that already existed
    before: PeriodicGraph
    orbit_map: tuple  # new orbit index -> orbit index in ``before``

    def to_json(self) -> dict:
        fmt = self.before.group.format_voltage
        return {
            "case": self.case,
            "orbits_before": self.before.orbits,
            "orbits_after": len(self.orbit_map),
            "atoms": [a.to_json() for a in self.atoms],
            "added": [[d.u, d.v, fmt(d.voltage)] for d in self.added],
            "merged": [[d.u, d.v, fmt(d.voltage)] for d in self.merged],
            "orbit_map": list(self.orbit_map),
        }


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps]}


def _normalise(vertices, boundary):
    anchor = min(vertices, key=lambda v: (v.orbit, v.element)).element

    def shift(v):
        e = tuple(a - b for a, b in zip(v.element, anchor))
        return (v.orbit, e)

    verts = tuple(sorted(shift(v) for v in vertices))
    bnd = tuple(sorted(shift(v) for v in boundary))
    return verts, bnd


def _atoms_at(pg: PeriodicGraph, radius: int, kappa: int) -> dict:
    patch = build_patch(pg, radius=radius)
    g = patch.graph()
    frags = {}
    for cut, comp in small_cuts(patch, kappa):
        frags.setdefault(comp, cut)
    sets = {c: set(c) for c in frags}
    minimal = [c for c in frags if not any(sets[o] < sets[c] for o in frags)]
    out = {}
    for comp in minimal:
        boundary = set()
        for i in comp:
            boundary.update(g.neighbors(i))
        boundary -= set(comp)
        verts = [patch.vertices[i] for i in comp]
        bnd = [patch.vertices[i] for i in boundary]
        key = _normalise(verts, bnd)
        out.setdefault(key, None)
    return out


def find_atom_orbits(pg: PeriodicGraph, r0: int = 4, kappa: int | None = None) -> list:
    """Atom orbits visible in the ball of radius ``r0``, checked again at ``2 r0``."""
    if pg.is_fuchsian:
        raise UnsupportedInputError("atom detection is implemented for euclidean graphs only", stage="find_atom_orbits")
    if kappa is None:
        kappa = patch_connectivity(build_patch(pg, radius=r0), 3)
    if kappa not in (1, 2):
        raise ArgumentError(f"atoms need connectivity 1 or 2, found {kappa}", stage="find_atom_orbits")
    small = _atoms_at(pg, r0, kappa)
    large = _atoms_at(pg, 2 * r0, kappa)
    if set(small) != set(large):
        raise ResourceError(
            f"atom orbits did not stabilise between radius {r0} and {2 * r0}; try a larger radius",
            stage="find_atom_orbits",
        )
    atoms = []
    for verts, bnd in sorted(small):
        atoms.append(
            AtomOrbit(
                tuple(cover_vertex(pg, o, e) for o, e in verts),
                tuple(cover_vertex(pg, o, e) for o, e in bnd),
                kappa,
            )
        )
    return atoms


def reduce_once(pg: PeriodicGraph, atoms: list):
    """Delete the atom orbits (and for case 2 join their boundaries)."""
    if not atoms:
        raise ArgumentError("no atoms to remove", stage="reduce_once")
    case = atoms[0].case
    removed = sorted({o for a in atoms for o in a.orbits})
    keep = tuple(o for o in range(pg.orbits) if o not in removed)
    if not keep:
        raise QuasiColourError("reduction would remove every orbit", stage="reduce_once")
    new = {o: i for i, o in enumerate(keep)}
    darts = [Dart(new[d.u], new[d.v], d.voltage) for d in pg.darts if d.u in new and d.v in new]
    existing = set(darts)
    added, merged = [], []
    if case == 2:
        for atom in atoms:
            a, b = atom.boundary
            if a.orbit not in new or b.orbit not in new:
                raise QuasiColourError("atom boundary lies in a removed orbit", stage="reduce_once")
            g = tuple(y - x for x, y in zip(a.element, b.element))
            pair = (Dart(new[a.orbit], new[b.orbit], g), Dart(new[b.orbit], new[a.orbit], tuple(-c for c in g)))
            for d in pair:
                if d in existing:
                    merged.append(d)
                else:
                    existing.add(d)
                    darts.append(d)
                    added.append(d)
    geometry = None if pg.geometry is None else tuple(pg.geometry[o] for o in keep)
    out = PeriodicGraph(pg.kind, len(keep), tuple(darts), geometry, pg.group)
    require_valid(out)
    step = ReductionStep(case, list(atoms), added, merged, pg, keep)
    return out, step


def reduce_to_3connected(pg: PeriodicGraph, r0: int = 4):
    """Repeat atom removal until no cut of size one or two is visible."""
    require_valid(pg)
    trace = ReductionTrace()
    cur = pg
    for _ in range(pg.orbits + 1):
        kappa = patch_connectivity(build_patch(cur, radius=r0), 3)
        if kappa >= 3:
            return cur, trace
        if cur.is_fuchsian:
            raise UnsupportedInputError(
                "fuchsian graph with a small cut; reduction is euclidean only", stage="reduce_to_3connected"
            )
        atoms = find_atom_orbits(cur, r0, kappa)
        if not atoms:
            raise ResourceError(f"connectivity {kappa} but no atom orbit found", stage="reduce_to_3connected")
        nxt, step = reduce_once(cur, atoms)
        if nxt.orbits >= cur.orbits:
            raise QuasiColourError("reduction step did not remove an orbit", stage="reduce_to_3connected")
        trace.steps.append(step)
        cur = nxt
    raise QuasiColourError("reduction exceeded its iteration cap", stage="reduce_to_3connected")


def reattach_atoms(pc: PeriodicColouring, trace: ReductionTrace, palette_mode: str = "reuse") -> PeriodicColouring:
    """Extend a colouring of the reduced graph back through ``trace``.

    Removed vertex classes are coloured greedily in class order.  "reuse"
    starts from colour 0; "fresh" only uses colours above the incoming
    palette.  The palette grows when needed and each growth is noted.
    """
    if palette_mode not in PALETTE_MODES:
        raise ArgumentError(f"palette mode must be one of {', '.join(PALETTE_MODES)}")
    cur = pc
    widened = list(pc.notes.get("palette_widened", []))
    for n, step in reversed(list(enumerate(trace.steps))):
        q = quotient_mod_subgroup(step.before, cur.subgroup)
        back = {old: new for new, old in enumerate(step.orbit_map)}
        colours = [-1] * q.size
        for i, (orbit, label) in enumerate(q.classes):
            if orbit in back:
                colours[i] = cur.colours[cur.quotient.resolve(cover_vertex(cur.pg, back[orbit], label))]
        adj = q.adjacency()
        before = cur.palette
        start = before if palette_mode == "fresh" else 0
        for i in range(q.size):
            if colours[i] >= 0:
                continue
            c = start
            taken = {colours[w] for w in adj[i]}
            while c in taken:
                c += 1
            colours[i] = c
        after = max(colours) + 1
        if after > before:
            widened.append({"step": n, "from": before, "to": after})
        notes = dict(cur.notes)
        notes["palette_widened"] = widened
        cur = PeriodicColouring(step.before, q, colours, cur.strategy, None, notes)
    return cur
