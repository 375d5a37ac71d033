"""
gentle-phi: the AG-invariant of gentle algebras

Builds validated gentle presentations, computes phi_A by the thread
matching algorithm, recomputes it independently from the repetitive
algebra, and classifies algebras with at most one cycle up to derived
equivalence.
"""

__version__ = "0.1.0"

from .ag_invariant import AlgorithmTrace, PhiInvariant, check_sums, compute_phi, phi_canonical_text, parse_phi_text
from .classification import An, ATilde, BeyondOneCycle, Lambda, build_family, classify, derived_equivalent
from .errors import GentleError, InvalidPresentation
from .quiver_core import GentlePresentation, RawQuiver, build_presentation, cycle_number, validate_gentle
from .repetitive_oracle import compute_N, tau_check
from .threads import assign_signs, forbidden_threads, permitted_threads

__all__ = [
    "__version__",
    "AlgorithmTrace",
    "An",
    "ATilde",
    "BeyondOneCycle",
    "GentleError",
    "GentlePresentation",
    "InvalidPresentation",
    "Lambda",
    "PhiInvariant",
    "RawQuiver",
    "assign_signs",
    "build_family",
    "build_presentation",
    "check_sums",
    "classify",
    "compute_N",
    "compute_phi",
    "cycle_number",
    "derived_equivalent",
    "forbidden_threads",
    "parse_phi_text",
    "permitted_threads",
    "phi_canonical_text",
    "tau_check",
    "validate_gentle",
]
