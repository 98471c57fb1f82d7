"""Two-sublattice variational product-state solver.

The trial state is a real coherent photon state (amplitude ``alpha`` per
sqrt(N)) times a product of Bloch vectors lying in the x-z plane, one polar
angle per sublattice.  The energy per site is

    e = omega alpha^2 + g alpha (sin ta + sin tb)
        + (eps/4) (cos ta + cos tb) - j cos ta cos tb

(verified against a brute-force chain-cavity expectation value, see
``phasekit.oracles``).  Minimizing over alpha is a closed form,
``alpha* = -g (sin ta + sin tb) / (2 omega)``; the remaining two-angle
landscape is minimized by a deterministic multi-start Newton descent.

Symmetries: parity ``(alpha, ta, tb) -> (-alpha, -ta, -tb)`` and sublattice
exchange ``ta <-> tb``.  Solutions are reported in the canonical gauge
``alpha <= 0``, ``ta >= tb``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import (
    AFM_N,
    ModelParams,
    OrderParams,
    ToleranceSet,
    TransitionPoint,
    classical_ground,
    classify_orders,
    validate_params,
)

_TWO_PI = 2.0 * math.pi


class BracketError(ValueError):
    """Both bracket endpoints carry the same phase label."""


class PhaseSequenceError(RuntimeError):
    """A coupling scan produced a non-monotone phase-label sequence."""


class MinimizeError(RuntimeError):
    """No multi-start run converged."""


@dataclass(frozen=True)
class MeanFieldAnsatz:
    alpha: float
    theta_a: float
    theta_b: float


@dataclass(frozen=True)
class MeanFieldSolution:
    ansatz: MeanFieldAnsatz
    energy: float
    orders: OrderParams
    label: str
    n_starts_agreeing: int
    coexistent: bool
    minima: tuple[tuple[MeanFieldAnsatz, float], ...]


def mf_energy(p: ModelParams, a: MeanFieldAnsatz) -> float:
    """Variational energy per site of the coherent x product ansatz."""
    sa, ca = math.sin(a.theta_a), math.cos(a.theta_a)
    sb, cb = math.sin(a.theta_b), math.cos(a.theta_b)
    # pair products grouped so the sublattice-exchange symmetry is bitwise
    return (
        p.omega * a.alpha * a.alpha
        + p.g * a.alpha * (sa + sb)
        + 0.25 * p.eps * (ca + cb)
        - p.j * (ca * cb)
    )


def mf_alpha_opt(p: ModelParams, theta_a: float, theta_b: float) -> float:
    """Photon amplitude that makes the energy stationary at fixed angles."""
    return -p.g * (math.sin(theta_a) + math.sin(theta_b)) / (2.0 * p.omega)


def _wrap(theta: float) -> float:
    t = math.remainder(theta, _TWO_PI)
    if t <= -math.pi:
        t += _TWO_PI
    return t


def _circ_dist(t1: float, t2: float) -> float:
    return abs(_wrap(t1 - t2))


def _canonical(p: ModelParams, ta: float, tb: float) -> tuple[float, float]:
    ta, tb = _wrap(ta), _wrap(tb)
    s = math.sin(ta) + math.sin(tb)
    alpha = -p.g * s / (2.0 * p.omega)
    # parity gauge: alpha <= 0; at alpha ~ 0 parity acts freely on the
    # angles, so fall back to a deterministic angle-sum rule
    if alpha > 1e-9 or (abs(alpha) <= 1e-9 and ta + tb < 0.0):
        ta, tb = _wrap(-ta), _wrap(-tb)
    if ta < tb:
        ta, tb = tb, ta
    return ta, tb


def _image_dist(ta1: float, tb1: float, ta2: float, tb2: float) -> float:
    """Angle distance modulo the parity and sublattice-exchange symmetries."""
    return min(
        _circ_dist(ta1, ta2) + _circ_dist(tb1, tb2),
        _circ_dist(ta1, tb2) + _circ_dist(tb1, ta2),
        _circ_dist(ta1, -ta2) + _circ_dist(tb1, -tb2),
        _circ_dist(ta1, -tb2) + _circ_dist(tb1, -ta2),
    )


def _hessian_min_eig(p: ModelParams, ta: float, tb: float) -> float:
    cg = p.g * p.g / (4.0 * p.omega)
    sa, ca = math.sin(ta), math.cos(ta)
    sb, cb = math.sin(tb), math.cos(tb)
    s = sa + sb
    haa = -2.0 * cg * (ca * ca - sa * s) - 0.25 * p.eps * ca + p.j * ca * cb
    hbb = -2.0 * cg * (cb * cb - sb * s) - 0.25 * p.eps * cb + p.j * cb * ca
    hab = -2.0 * cg * ca * cb - p.j * sa * sb
    mean = 0.5 * (haa + hbb)
    rad = math.hypot(0.5 * (haa - hbb), hab)
    return mean - rad


def _start_grid(n_starts: int) -> tuple[np.ndarray, np.ndarray]:
    grid = -math.pi + _TWO_PI * (np.arange(n_starts) + 0.5) / n_starts
    ta, tb = np.meshgrid(grid, grid, indexing="ij")
    ta = np.concatenate([ta.ravel(), [math.pi, 0.0, math.pi / 2.0]])
    tb = np.concatenate([tb.ravel(), [math.pi, math.pi, math.pi / 2.0]])
    return ta, tb


def _solution_from_angles(p: ModelParams, t: ToleranceSet, ta: float, tb: float) -> tuple[MeanFieldAnsatz, float]:
    alpha = mf_alpha_opt(p, ta, tb)
    ans = MeanFieldAnsatz(alpha=alpha, theta_a=ta, theta_b=tb)
    return ans, mf_energy(p, ans)


def mf_minimize(p: ModelParams, t: ToleranceSet | None = None, n_starts: int = 8) -> MeanFieldSolution:
    """Global minimum of the variational energy by deterministic multi-start.

    ``n_starts`` is the per-axis resolution of the uniform start grid
    (so ``n_starts**2 + 3`` descents including the polarized, Neel and
    x-polarized canonical starts); at least 8 is required.  Distinct local
    minima nearly degenerate with the global one set the ``coexistent``
    flag and are all returned in ``minima``.
    """
    validate_params(p)
    if t is None:
        t = ToleranceSet()
    if n_starts < 8:
        raise ValueError("n_starts must be at least 8")

    ta0, tb0 = _start_grid(n_starts)
    ta, tb, _, status = _kernels.mf_relax_batch(
        p.omega, p.eps, p.g, p.j, ta0, tb0, gtol=t.tol_energy, max_iter=400
    )
    ok = status > 0
    if not ok.any():
        raise MinimizeError("no multi-start descent converged")

    # canonicalize, keep only stationary points that are not saddles
    points: list[tuple[float, float, float]] = []
    for i in np.flatnonzero(ok):
        ca, cb = _canonical(p, float(ta[i]), float(tb[i]))
        if _hessian_min_eig(p, ca, cb) < -1e-8:
            continue
        e = float(_kernels.mf_reduced_energy(p.omega, p.eps, p.g, p.j, ca, cb))
        points.append((ca, cb, e))
    if not points:
        raise MinimizeError("all converged starts were saddle points")

    points.sort(key=lambda x: x[2])
    # degenerate ties (flat manifolds, classical crossings) break toward the
    # normal label: pick the smallest |sin ta + sin tb| within the tie band
    e_min = points[0][2]
    band = [pt for pt in points if pt[2] - e_min <= 4e-12 * max(1.0, abs(e_min))]
    def _tie_key(x):
        kx = abs(math.sin(x[0]) + math.sin(x[1]))
        ks = abs(math.cos(x[0]) - math.cos(x[1]))
        return (kx if kx > 1e-8 else 0.0, ks if ks > 1e-8 else 0.0)

    best = min(band, key=_tie_key)
    points.remove(best)
    points.insert(0, best)

    distinct: list[tuple[float, float, float]] = []
    agree = 0
    for ca, cb, e in points:
        if e - best[2] < 1e-9 and _image_dist(ca, cb, best[0], best[1]) < 1e-3:
            agree += 1
        if all(_image_dist(ca, cb, da, db) > 1e-4 for da, db, de in distinct):
            distinct.append((ca, cb, e))

    minima = tuple(
        (_solution_from_angles(p, t, ca, cb)[0], e) for ca, cb, e in distinct
    )
    best_ans, best_e = _solution_from_angles(p, t, distinct[0][0], distinct[0][1])

    coexist_tol = max(100.0 * t.tol_energy, 1e-8)
    coexistent = False
    for ca, cb, e in distinct[1:]:
        if e - distinct[0][2] < coexist_tol:
            coexistent = True
            break

    sa, ca_ = math.sin(best_ans.theta_a), math.cos(best_ans.theta_a)
    sb, cb_ = math.sin(best_ans.theta_b), math.cos(best_ans.theta_b)
    orders = OrderParams(
        photon_displacement=best_ans.alpha,
        mx=0.25 * (sa + sb),
        mz=0.25 * (ca_ + cb_),
        m_stag=0.25 * (ca_ - cb_),
    )
    label = classify_orders(orders, t)
    return MeanFieldSolution(
        ansatz=best_ans,
        energy=best_e,
        orders=orders,
        label=label,
        n_starts_agreeing=agree,
        coexistent=coexistent,
        minima=minima,
    )


def _track_minimum(p: ModelParams, ta: float, tb: float, gtol: float) -> tuple[float, float, float]:
    """Relax a single start; returns (theta_a, theta_b, energy)."""
    taa, tbb, e, status = _kernels.mf_relax_batch(
        p.omega, p.eps, p.g, p.j, np.array([ta]), np.array([tb]), gtol=gtol, max_iter=400
    )
    return float(taa[0]), float(tbb[0]), float(e[0])


def _abs_alpha_at(p: ModelParams, t: ToleranceSet, g: float, n_starts: int) -> float:
    return abs(mf_minimize(p.with_(g=g), t, n_starts).ansatz.alpha)


def mf_boundary_bisect(
    p_template: ModelParams,
    g_lo: float,
    g_hi: float,
    t: ToleranceSet | None = None,
    n_starts: int = 8,
    bisect_tol: float = 1e-6,
) -> TransitionPoint:
    """Locate the phase boundary in g at fixed j by bisection on the label.

    The boundary order is classified from the photon-displacement jump:
    a coexisting competing minimum at the boundary marks a first-order
    point (refined by bisecting the energy difference of the two tracked
    branches), otherwise the jump is measured by square-root-aware
    extrapolation of |alpha| toward the boundary from both sides.
    """
    if t is None:
        t = ToleranceSet()
    p_lo, p_hi = p_template.with_(g=g_lo), p_template.with_(g=g_hi)
    lab_lo = mf_minimize(p_lo, t, n_starts).label
    lab_hi = mf_minimize(p_hi, t, n_starts).label
    if lab_lo == lab_hi:
        raise BracketError(f"same label {lab_lo!r} at both bracket ends g={g_lo}, g={g_hi}")
    lo, hi = g_lo, g_hi
    while hi - lo > bisect_tol:
        mid = 0.5 * (lo + hi)
        lab = mf_minimize(p_template.with_(g=mid), t, n_starts).label
        if lab == lab_lo:
            lo = mid
        else:
            hi = mid
            lab_hi = lab
    g_c = 0.5 * (lo + hi)
    branch = f"{lab_lo}->{lab_hi}"

    sol_c = mf_minimize(p_template.with_(g=g_c), t, n_starts)
    first_order_pair = None
    if sol_c.coexistent:
        (a1, e1) = sol_c.minima[0]
        for a2, e2 in sol_c.minima[1:]:
            if abs(abs(a2.alpha) - abs(a1.alpha)) > t.tol_jump and e2 - e1 < 1e-4:
                first_order_pair = (a1, a2)
                break

    if first_order_pair is not None:
        a1, a2 = first_order_pair

        def energy_gap(g: float) -> float:
            # sentinel when a tracked basin has vanished and the descent
            # slid into the competing one
            pg = p_template.with_(g=g)
            ta1, tb1, eb1 = _track_minimum(pg, a1.theta_a, a1.theta_b, t.tol_energy)
            ta2, tb2, eb2 = _track_minimum(pg, a2.theta_a, a2.theta_b, t.tol_energy)
            c1 = _canonical(pg, ta1, tb1)
            c2 = _canonical(pg, ta2, tb2)
            s1 = _canonical(pg, a1.theta_a, a1.theta_b)
            s2 = _canonical(pg, a2.theta_a, a2.theta_b)
            if _image_dist(c1[0], c1[1], s2[0], s2[1]) < _image_dist(c1[0], c1[1], s1[0], s1[1]):
                return 1.0  # basin 1 vanished: branch 2 side
            if _image_dist(c2[0], c2[1], s1[0], s1[1]) < _image_dist(c2[0], c2[1], s2[0], s2[1]):
                return -1.0  # basin 2 vanished: branch 1 side
            return eb1 - eb2

        span = 50.0 * bisect_tol
        glo, ghi = g_c - span, g_c + span
        flo, fhi = energy_gap(glo), energy_gap(ghi)
        while flo * fhi > 0 and ghi - glo < 0.1:
            glo, ghi = glo - span, ghi + span
            flo, fhi = energy_gap(glo), energy_gap(ghi)
        if flo * fhi <= 0:
            from scipy.optimize import brentq

            g_c = float(brentq(energy_gap, glo, ghi, xtol=1e-12))
        pg = p_template.with_(g=g_c)
        ta1, tb1, _ = _track_minimum(pg, a1.theta_a, a1.theta_b, t.tol_energy)
        ta2, tb2, _ = _track_minimum(pg, a2.theta_a, a2.theta_b, t.tol_energy)
        jump = abs(abs(mf_alpha_opt(pg, ta1, tb1)) - abs(mf_alpha_opt(pg, ta2, tb2)))
        order = "first" if jump > t.tol_jump else "second"
        return TransitionPoint(
            j=p_template.j, g_c=g_c, order=order, jump=jump, backend="mean-field",
            bracket=(lo, hi), branch=branch, coexistent=True,
        )

    d = max(bisect_tol, 1e-6)
    x_p1 = _abs_alpha_at(p_template, t, g_c + d, n_starts)
    x_p4 = _abs_alpha_at(p_template, t, g_c + 4 * d, n_starts)
    x_m1 = _abs_alpha_at(p_template, t, max(g_c - d, 0.0), n_starts)
    x_m4 = _abs_alpha_at(p_template, t, max(g_c - 4 * d, 0.0), n_starts)
    a_plus = max(0.0, 2.0 * x_p1 - x_p4)
    a_minus = max(0.0, 2.0 * x_m1 - x_m4)
    jump = abs(a_plus - a_minus)
    order = "first" if jump > t.tol_jump else "second"
    return TransitionPoint(
        j=p_template.j, g_c=g_c, order=order, jump=jump, backend="mean-field",
        bracket=(lo, hi), branch=branch,
    )


def mf_boundary_bisect_j(
    p_template: ModelParams,
    j_lo: float,
    j_hi: float,
    t: ToleranceSet | None = None,
    n_starts: int = 8,
    bisect_tol: float = 1e-10,
) -> TransitionPoint:
    """Bisection variant along the j axis at fixed g (e.g. the g=0 classical
    PM-N/AFM-N crossing at j = -eps/4)."""
    if t is None:
        t = ToleranceSet()

    def label_at(j: float) -> str:
        return mf_minimize(p_template.with_(j=j), t, n_starts).label

    lab_lo, lab_hi = label_at(j_lo), label_at(j_hi)
    if lab_lo == lab_hi:
        raise BracketError(f"same label {lab_lo!r} at both bracket ends j={j_lo}, j={j_hi}")
    lo, hi = j_lo, j_hi
    while hi - lo > bisect_tol:
        mid = 0.5 * (lo + hi)
        if label_at(mid) == lab_lo:
            lo = mid
        else:
            hi = mid
    j_c = 0.5 * (lo + hi)
    sol_lo = mf_minimize(p_template.with_(j=lo), t, n_starts)
    sol_hi = mf_minimize(p_template.with_(j=hi), t, n_starts)
    jump = abs(abs(sol_hi.orders.m_stag) - abs(sol_lo.orders.m_stag))
    order = "first" if jump > t.tol_jump else "second"
    return TransitionPoint(
        j=j_c, g_c=p_template.g, order=order, jump=jump, backend="mean-field",
        bracket=(lo, hi), branch=f"{lab_lo}->{lab_hi} (j-axis)",
    )


def mf_intermediate_window(
    p_template: ModelParams,
    t: ToleranceSet | None = None,
    g_max: float = 2.0,
    dg: float = 2e-3,
    n_starts: int = 8,
) -> tuple[TransitionPoint, TransitionPoint] | None:
    """Find the coupling window with simultaneous AFM order and superradiance.

    Scans g upward from 0, expects the label sequence
    AFM-N -> AFM-S -> PM-S and returns the two bisected boundary points, or
    None when no AFM-S segment exists (including the non-AFM regime at g=0).
    A direct AFM-N -> PM-S switch is re-scanned 50x finer before concluding
    that the window is absent.  Any other label sequence raises
    PhaseSequenceError.
    """
    if t is None:
        t = ToleranceSet()
    validate_params(p_template)
    if classical_ground(p_template.with_(g=0.0)).label != AFM_N:
        return None

    def labels_on(grid: np.ndarray) -> list[str]:
        return [mf_minimize(p_template.with_(g=float(g)), t, n_starts).label for g in grid]

    grid = np.arange(0.0, g_max + dg, dg)
    labs = labels_on(grid)
    while labs[-1] != "PM-S" and grid[-1] < 8.0:
        extra = np.arange(grid[-1] + dg, 2.0 * grid[-1], dg)
        grid = np.concatenate([grid, extra])
        labs += labels_on(extra)

    runs: list[str] = []
    for lab in labs:
        if not runs or runs[-1] != lab:
            runs.append(lab)

    if runs == [AFM_N, "PM-S"]:
        # zoom around the single switch before giving up on the window
        i = labs.index("PM-S")
        fine = np.arange(grid[i - 1], grid[i] + dg / 50.0, dg / 50.0)
        flabs = labels_on(fine)
        if "AFM-S" in flabs:
            i1, i2 = flabs.index("AFM-S"), len(flabs) - 1 - flabs[::-1].index("AFM-S")
            tp1 = mf_boundary_bisect(p_template, float(fine[i1 - 1]), float(fine[i1]), t, n_starts)
            tp2 = mf_boundary_bisect(p_template, float(fine[i2]), float(fine[i2 + 1]), t, n_starts)
            return tp1, tp2
        return None
    if runs != [AFM_N, "AFM-S", "PM-S"]:
        raise PhaseSequenceError(f"unexpected label sequence along the g-scan: {runs}")

    i1 = labs.index("AFM-S")
    i2 = len(labs) - 1 - labs[::-1].index("AFM-S")
    tp1 = mf_boundary_bisect(p_template, float(grid[i1 - 1]), float(grid[i1]), t, n_starts)
    tp2 = mf_boundary_bisect(p_template, float(grid[i2]), float(grid[i2 + 1]), t, n_starts)
    return tp1, tp2
