"""Weighted monogamy and polygamy relations for multiqubit entanglement.

The package evaluates concurrence, negativity, CREN and entanglement of
formation on pure and mixed qubit states, and checks weighted beta-power
monogamy relations through residuals ``lhs - rhs``.
"""

__version__ = "0.1.0"

from .linalg import (
    DensityMatrix,
    DomainError,
    PureState,
    haar_random_pure,
    hermitian_eigh,
    partial_trace,
    partial_transpose,
    reduced_density,
)
from .measures import (
    Bipartition,
    Measure,
    concurrence_pure,
    concurrence_two_qubit,
    convex_roof_upper_bound,
    cren_two_qubit,
    eof_pure,
    eof_two_qubit,
    f_of,
    negativity,
    pure_measure,
)
from .monogamy import (
    ExponentPair,
    MonogamyReport,
    OrderingCertificate,
    certify_ordering,
    chain_residual,
    lemma1_gap,
    lemma2_gap,
    polygamy_residual,
    pure_profile,
    state_profile,
    tripartite_residual,
)
from .schmidt3 import (
    SchmidtParams,
    ThetaParams,
    build_state,
    closed_form_concurrences,
    residual_u,
)
from .campaign import run_campaign
from .statefile import load_state, save_state

__all__ = [
    "__version__",
    "DensityMatrix",
    "DomainError",
    "PureState",
    "haar_random_pure",
    "hermitian_eigh",
    "partial_trace",
    "partial_transpose",
    "reduced_density",
    "Bipartition",
    "Measure",
    "concurrence_pure",
    "concurrence_two_qubit",
    "convex_roof_upper_bound",
    "cren_two_qubit",
    "eof_pure",
    "eof_two_qubit",
    "f_of",
    "negativity",
    "pure_measure",
    "ExponentPair",
    "MonogamyReport",
    "OrderingCertificate",
    "certify_ordering",
    "chain_residual",
    "lemma1_gap",
    "lemma2_gap",
    "polygamy_residual",
    "pure_profile",
    "state_profile",
    "tripartite_residual",
    "SchmidtParams",
    "ThetaParams",
    "build_state",
    "closed_form_concurrences",
    "residual_u",
    "run_campaign",
    "load_state",
    "save_state",
]
