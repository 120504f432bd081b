"""Minimally ramified Q8 and D4 subgroups of the Nottingham group N(F4).

The package constructs the five towers (two quaternion, three dihedral) as
exact truncated series over GF(4), computes their ramification data, recovers
annihilating polynomials for every Galois element, synthesizes the
corresponding finite automata with output, and checks everything against the
packaged reference tables.
"""

from .gf2m import GF2, GF4, FieldCtx, FieldElem
from .series import (
    DEFAULT_PRECISION,
    ContractionError,
    LaurentSeries,
    NottinghamElem,
    PrecisionError,
    compose,
    compose_inverse,
    solve_contractive,
)
from .minpoly import (
    BivarPoly,
    GuessError,
    frobenius_poly,
    guess_annihilator,
    is_nonsingular,
    root_series,
    verify_annihilator,
)
from .towers import Tower, TowerSpec, build_tower, central_series, galois_product
from .ramification import (
    GroupClosure,
    IsoType,
    RamificationProfile,
    close_group,
    iso_type,
    lower_breaks,
    lower_to_upper,
)
from .dfao import Dfao, emit_dot, parse_json, parse_tsv
from .christol import (
    CertificationError,
    DiagonalRep,
    SynthesisReport,
    brute_diagonal,
    cartier,
    diagonal_automaton,
    furstenberg,
    oracle_kernel_automaton,
    poly_to_automaton,
)

__version__ = "0.1.0"
