"""Symmetric SLOCC classification and witnesses for multiqubit states.

States are numpy vectors of n+1 coefficients in the unnormalized Dicke
basis; operators are 2x2 complex arrays.
"""

from ._core import (
    SymsloccError,
    Tolerances,
    apply_general,
    apply_symmetric,
    basis_state_full,
    binom,
    check_equivalence,
    classify,
    det,
    from_full,
    fuzz_theorem,
    generate_nonsymmetric_connector,
    ghz3_symmetric_tuple,
    inverse,
    jordan_reduce,
    majorana_spectrum,
    make_dicke,
    make_ghz,
    make_sep,
    make_w,
    multiplicity_pattern,
    proportionality,
    reduce_to_canonical,
    symmetric_witness,
    to_full,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
