"""lctlab: exact asymptotic singularity invariants of monomial ideal data.

The package computes log canonical thresholds, multiplier ideals, jumping
numbers and the valuations attaining them for graded sequences of monomial
ideals, entirely in rational arithmetic, and provides a two-dimensional
engine for quasi-monomial valuations built from point-blowup chains and
Puiseux-type branch truncations.
"""

from .newton import (
    MonomialIdeal,
    MonomialValuation,
    OracleRegion,
    PolyhedralRegion,
    PowerSequence,
    RegionSequence,
    TableSequence,
    ValuationIdealSequence,
    minimal_generators,
    newton_polyhedron,
    val_on_sequence,
)
from .multiplier import (
    arn_ideal,
    arn_monomial,
    asymptotic_system,
    computing_valuations,
    jumping_numbers,
    lct_ideal,
    lct_monomial,
    multiplier_ideal,
)
from .asymptotics import (
    enlarge,
    enlarge_q,
    fekete_limit,
    self_compute_check,
    superadditive_scaled_limit,
    valuation_ideal_sequence,
)
from .valspace2d import (
    Polynomial2,
    PuiseuxData,
    SkpChain,
    build_chain,
    chi_trace,
    eval_monomial,
    eval_puiseux,
    fan_refine,
)

__version__ = "0.1.0"
