"""phasekit: phase diagram of a cavity-coupled Ising chain.

Solvers: two-sublattice mean field, photon-eliminated effective chain
(free-fermion and exact-diagonalization backends), and full chain-cavity
exact diagonalization in a truncated Fock space.  See the ``phasekit`` CLI
for scans, boundary traces and the multicritical search.
"""

__version__ = "0.1.0"

from .model import (
    AFM_N,
    AFM_S,
    PHASE_LABELS,
    PM_N,
    PM_S,
    ClassicalGround,
    ModelParams,
    OrderParams,
    ToleranceSet,
    TransitionPoint,
    classical_ground,
    classify_orders,
    validate_params,
)

__all__ = [
    "__version__",
    "ModelParams",
    "OrderParams",
    "ToleranceSet",
    "ClassicalGround",
    "TransitionPoint",
    "classical_ground",
    "classify_orders",
    "validate_params",
    "PHASE_LABELS",
    "PM_N",
    "PM_S",
    "AFM_N",
    "AFM_S",
]
