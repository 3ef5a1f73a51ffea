"""Periodic colourings of quasi-transitive planar graphs.

Infinite graphs are described by voltage graphs over a lattice or a Fuchsian
group; the pipelines pick a finite-index subgroup, colour the finite
quotient and lift the colouring back to a periodic one.
"""

__version__ = "0.1.0"

from .colouring import (
    PeriodicColouring,
    QuotientColouring,
    colour_quotient,
    euclid_pipeline,
    hyp_pipeline,
    lift_colouring,
    pipeline,
)
from .corpus import EXAMPLES, example
from .cosets import CosetTable, is_torsion_free, low_index_tables, todd_coxeter
from .errors import (
    ArgumentError,
    InadmissibleIndexError,
    QuasiColourError,
    ResourceError,
    SchemaError,
    SubgroupTooSmallError,
    UnsupportedInputError,
)
from .euclid import EuclideanIsometry, Lattice, reduce_basis, sublattice_for_length, translation_subgroup
from .hyperbolic import FuchsianPresentation, MoebiusMatrix, classify_and_length, hyperbolic_distance, triangle_group
from .io import parse_colouring, parse_periodic_graph, serialize
from .linegraph import line_graph, line_planarity_check, periodic_edge_colouring, periodic_orientation
from .quotient import Quotient, quotient_mod_subgroup, shortest_noncontractible
from .reduction import find_atom_orbits, reattach_atoms, reduce_once, reduce_to_3connected
from .subgroups import CosetSubgroup, LatticeSubgroup, subgroup_avoiding_short
from .surfaces import colour_budget, riemann_hurwitz_genus, ringel_youngs, thomassen_threshold
from .verify import brute_force_chromatic, check_periodic, check_proper
from .voltage import (
    CoverVertex,
    Patch,
    PeriodicGraph,
    build_patch,
    estimate_ends,
    max_edge_length,
    patch_connectivity,
    validate_quotient,
)
