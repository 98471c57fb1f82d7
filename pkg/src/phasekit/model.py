"""Couplings, order parameters, phase labels and the g=0 classical limit.

The system is a periodic spin-1/2 chain coupled to a single bosonic mode,

    H = omega a^dag a + eps sum_i s_i^z + (2g/sqrt(N)) sum_i s_i^x (a + a^dag)
        - 4 J sum_<ij> s_i^z s_j^z

with spin operators s = sigma/2.

Sign conventions (fixed throughout the package):

* ``j > 0`` is ferromagnetic: the ``-4J s^z s^z`` bond term rewards aligned
  neighbours.  The antiferromagnetic regime therefore lives at ``j < 0``,
  and the classical (g=0) boundary between the polarized and Neel ground
  states sits at ``j = -eps/4``.
* ``eps >= 0`` favours spin-down (``m_z = -1/2``).
* Default energy units fix ``omega = eps = 1``.

Phase labels combine a magnetic tag (PM vs AFM, from the staggered
magnetization) with a photonic tag (N normal vs S superradiant, from the
coherent photon displacement / uniform transverse magnetization).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

PM_N = "PM-N"
PM_S = "PM-S"
AFM_N = "AFM-N"
AFM_S = "AFM-S"
PHASE_LABELS = (PM_N, PM_S, AFM_N, AFM_S)


class InvalidParamsError(ValueError):
    """A model parameter violates its invariant."""


class InconsistentOrdersError(RuntimeError):
    """Superradiance indicators disagree by a wide margin (solver glitch)."""


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the chain-cavity Hamiltonian.

    omega : photon frequency (> 0)
    eps   : longitudinal field (>= 0)
    g     : light-matter coupling (>= 0)
    j     : Ising coupling (any sign; j > 0 ferromagnetic)
    """

    omega: float = 1.0
    eps: float = 1.0
    g: float = 0.0
    j: float = 0.0

    def with_(self, **kw) -> "ModelParams":
        return replace(self, **kw)


def validate_params(p: ModelParams) -> ModelParams:
    """Return ``p`` unchanged if all invariants hold, else raise.

    The error message names the violated invariant.
    """
    if not (p.omega > 0.0) or not math.isfinite(p.omega):
        raise InvalidParamsError("omega must be positive")
    if p.eps < 0.0 or not math.isfinite(p.eps):
        raise InvalidParamsError("eps must be nonnegative")
    if p.g < 0.0 or not math.isfinite(p.g):
        raise InvalidParamsError("g must be nonnegative")
    if not math.isfinite(p.j):
        raise InvalidParamsError("j must be finite")
    return p


@dataclass(frozen=True)
class OrderParams:
    """Order parameters of a (mean-field or effective) solution.

    photon_displacement : coherent amplitude alpha per sqrt(N)
    mx, mz              : uniform <s^x>, <s^z> per site
    m_stag              : staggered <s^z> per site, (A - B)/2 halved
    """

    photon_displacement: float
    mx: float
    mz: float
    m_stag: float

    def __post_init__(self):
        for name in ("mx", "mz", "m_stag"):
            v = getattr(self, name)
            if abs(v) > 0.5 + 1e-9:
                raise InvalidParamsError(f"|{name}| must not exceed 1/2 (got {v})")


@dataclass(frozen=True)
class ToleranceSet:
    """Numerical thresholds shared by the solvers.

    tol_order_param : threshold for declaring an order parameter nonzero
    tol_energy      : minimizer convergence tolerance (gradient norm / energy)
    tol_jump        : minimum order-parameter discontinuity for "first order"
    """

    tol_order_param: float = 1e-3
    tol_energy: float = 1e-10
    tol_jump: float = 1e-2

    def __post_init__(self):
        if self.tol_order_param <= 0 or self.tol_energy <= 0 or self.tol_jump <= 0:
            raise InvalidParamsError("all tolerances must be strictly positive")
        if not self.tol_jump > self.tol_order_param:
            raise InvalidParamsError("tol_jump must exceed tol_order_param")


@dataclass(frozen=True)
class ClassicalGround:
    """g=0 ground state: energy per site, label, and a degeneracy flag."""

    energy: float
    label: str
    degenerate: bool = False


def classical_ground(p: ModelParams, tie_tol: float = 1e-12) -> ClassicalGround:
    """Exact ground state of the decoupled (g=0) chain.

    The Hamiltonian is diagonal in the s^z product basis; on an even periodic
    chain the competition is between the fully polarized-down state
    (``e = -eps/2 - j`` per site) and the Neel state (``e = j`` per site).
    Ties within ``tie_tol`` are reported as degenerate and break toward PM-N.
    """
    validate_params(p)
    if p.g != 0.0:
        raise InvalidParamsError("classical_ground requires g = 0")
    e_pol = -0.5 * p.eps - p.j
    e_neel = p.j
    if abs(e_pol - e_neel) <= tie_tol * max(1.0, abs(e_pol), abs(e_neel)):
        return ClassicalGround(energy=e_pol, label=PM_N, degenerate=True)
    if e_pol < e_neel:
        return ClassicalGround(energy=e_pol, label=PM_N)
    return ClassicalGround(energy=e_neel, label=AFM_N)


def classify_orders(o: OrderParams, t: ToleranceSet) -> str:
    """Map order parameters to one of the four phase labels.

    Superradiant iff |alpha| exceeds ``tol_order_param`` (the uniform
    transverse magnetization must agree: alpha and mx are proportional for
    any self-consistent solution, so a wide-margin disagreement signals a
    broken solver rather than physics and raises).
    AFM iff |m_stag| exceeds ``tol_order_param``.
    """
    tol = t.tol_order_param
    s_alpha = abs(o.photon_displacement) > tol
    s_mx = abs(o.mx) > tol
    if s_alpha != s_mx:
        wide = (
            max(abs(o.photon_displacement), abs(o.mx)) > 10.0 * tol
            and min(abs(o.photon_displacement), abs(o.mx)) < 0.1 * tol
        )
        if wide:
            raise InconsistentOrdersError(
                "superradiance indicators disagree: "
                f"|alpha|={abs(o.photon_displacement):.3e}, |mx|={abs(o.mx):.3e}, tol={tol:.1e}"
            )
    superradiant = s_alpha
    afm = abs(o.m_stag) > tol
    if afm:
        return AFM_S if superradiant else AFM_N
    return PM_S if superradiant else PM_N


@dataclass(frozen=True)
class TransitionPoint:
    """A located phase-boundary point at fixed j.

    order is "first" iff the order-parameter jump across the boundary
    exceeds the tol_jump used to locate it.
    """

    j: float
    g_c: float
    order: str
    jump: float
    backend: str
    bracket: tuple[float, float] = (float("nan"), float("nan"))
    branch: str = ""
    coexistent: bool = False
    jump_trend: tuple[tuple[int, float], ...] | None = None

    def to_dict(self) -> dict:
        d = {
            "j": self.j,
            "g_c": self.g_c,
            "order": self.order,
            "jump": self.jump,
            "backend": self.backend,
            "bracket": list(self.bracket),
            "branch": self.branch,
            "coexistent": self.coexistent,
            "deviates": False,
        }
        if self.jump_trend is not None:
            d["jump_trend"] = {str(n): v for n, v in self.jump_trend}
        return d
