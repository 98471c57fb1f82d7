"""Photon elimination: minimize e_eff(h) = e_chain(h) + omega h^2 / (16 g^2).

Integrating out the cavity replaces it by a self-consistent transverse field
h acting on the chain, with the quadratic photon cost above; the mean-field
photon variable maps as ``h = -4 g alpha``.  The global minimizer h* obeys
the stationarity (Hellmann-Feynman) identity ``h* = (8 g^2 / omega) m_x(h*)``
and is nonzero exactly in the superradiant phase.

Backends supplying e_chain(h):

* ``free-fermion`` -- exact thermodynamic-limit solution, eps = 0 only;
* ``chain-ed`` -- finite periodic chain of ``n_sites`` spins, any eps.

Both are wrapped with per-h caching and (for ED) eigenvector warm starts, so
coupling scans and bisections at fixed (eps, j) reuse the chain solves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .chain_ed import ChainSolver
from .freefermion import ff_ground_energy, ff_mx, ff_susceptibility_h0
from .meanfield import BracketError
from .model import ModelParams, OrderParams, ToleranceSet, TransitionPoint, classify_orders, validate_params

_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


class BackendError(ValueError):
    """Backend inapplicable to the requested parameters."""


class LandscapeEdgeError(RuntimeError):
    """e_eff still decreasing at the edge of the h grid."""


class CurvatureError(RuntimeError):
    """Non-positive curvature estimate at h = 0 (quadrature noise)."""


# ---------------------------------------------------------------------------
# backends
# ---------------------------------------------------------------------------


class FreeFermionBackend:
    """eps = 0 chain in the thermodynamic limit."""

    tag = "free-fermion"

    def __init__(self, eps: float, j: float):
        if eps != 0.0:
            raise BackendError("free-fermion backend requires eps = 0 exactly")
        self.eps = 0.0
        self.j = j
        self._cache: dict[float, float] = {}

    def energy(self, h: float) -> float:
        e = self._cache.get(h)
        if e is None:
            e = ff_ground_energy(self.j, h)
            self._cache[h] = e
        return e

    def mx(self, h: float) -> float:
        return ff_mx(self.j, h)

    def observables(self, h: float) -> tuple[float, float, float]:
        """(m_x, m_z, s_pi); the symmetric eps=0 state has m_z = 0."""
        return self.mx(h), 0.0, 0.0


class ChainEDBackend:
    """Finite periodic chain, exact diagonalization, warm-started in h."""

    def __init__(self, eps: float, j: float, n_sites: int = 16):
        self.eps = eps
        self.j = j
        self.n_sites = n_sites
        self.tag = f"chain-ed({n_sites})"
        self._solver = ChainSolver(eps, j, n_sites)
        self._cache: dict[float, tuple[float, float, float, float]] = {}
        self._last_vec: np.ndarray | None = None

    def _entry(self, h: float) -> tuple[float, float, float, float]:
        entry = self._cache.get(h)
        if entry is None:
            e_tot, vec = self._solver.fast_ground(h, v0=self._last_vec)
            self._last_vec = vec
            m_x, m_z, s_pi = self._solver.observables(vec)
            entry = (e_tot / self.n_sites, m_x, m_z, s_pi)
            self._cache[h] = entry
        return entry

    def energy(self, h: float) -> float:
        return self._entry(h)[0]

    def mx(self, h: float) -> float:
        return self._entry(h)[1]

    def observables(self, h: float) -> tuple[float, float, float]:
        e, m_x, m_z, s_pi = self._entry(h)
        return m_x, m_z, s_pi


def make_backend(p: ModelParams, backend: str, n_sites: int = 16):
    if backend == "free-fermion":
        return FreeFermionBackend(p.eps, p.j)
    if backend == "chain-ed":
        return ChainEDBackend(p.eps, p.j, n_sites)
    raise BackendError(f"unknown backend {backend!r}")


def _check_backend(p: ModelParams, backend) -> None:
    if backend.eps != p.eps or backend.j != p.j:
        raise BackendError(
            f"backend built for (eps={backend.eps}, j={backend.j}) "
            f"does not match params (eps={p.eps}, j={p.j})"
        )


def effective_energy(p: ModelParams, h: float, backend) -> float:
    """e_chain(h) plus the photon cost omega h^2/(16 g^2); requires g > 0."""
    validate_params(p)
    _check_backend(p, backend)
    if p.g <= 0.0:
        raise BackendError("effective_energy requires g > 0 for the photon cost term")
    return backend.energy(h) + p.omega * h * h / (16.0 * p.g * p.g)


# ---------------------------------------------------------------------------
# landscape minimization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SelfConsistentSolution:
    h_star: float
    energy: float
    residual: float
    orders: OrderParams
    s_pi: float
    superradiant: bool
    coexistent: bool
    minima: tuple[tuple[float, float], ...]
    backend: str


def _golden_min(f, a: float, b: float, c: float, xtol: float) -> tuple[float, float]:
    """Golden-section search on a bracketing triple a < b < c."""
    fb = f(b)
    while c - a > xtol:
        if c - b > b - a:
            x = b + (1.0 - _GOLD) * (c - b)
            fx = f(x)
            if fx < fb:
                a, b, fb = b, x, fx
            else:
                c = x
        else:
            x = b - (1.0 - _GOLD) * (b - a)
            fx = f(x)
            if fx < fb:
                c, b, fb = b, x, fx
            else:
                a = x
    return b, fb


def _default_h_max(p: ModelParams) -> float:
    # every stationary point obeys h = (8 g^2/omega) m_x <= 4 g^2/omega,
    # so a 25% margin above that bound always sees a rising edge; keep the
    # generous field-scale cap as an upper limit
    cap = 4.0 * max(p.eps, 4.0 * abs(p.j), 2.0 * p.g * p.g / p.omega)
    return min(cap, 5.0 * p.g * p.g / p.omega)


def _walk_grid(backend, c_ph: float, hm: float, coarse_dh: float):
    """Evaluate e_eff on the coarse grid, stopping once nothing lower can lie
    beyond.

    Since |de_chain/dh| <= 1/2 (m_x is bounded by 1/2), for any h' > h_k
    ``e_eff(h') >= e_chain(h_k) - (h'-h_k)/2 + c_ph h'^2``; once the minimum
    of that bound exceeds the running grid minimum by a safe margin (2e-4,
    generous versus the coexistence-candidate window) the walk stops on a
    rising edge.  Grid points are exact multiples of ``coarse_dh`` so the
    backend cache is shared across couplings.
    """
    n_pts = int(math.ceil(hm / coarse_dh)) + 1
    grid = []
    vals = []
    e_run = math.inf
    h_turn = 1.0 / (4.0 * c_ph)
    for k in range(n_pts):
        h = coarse_dh * k
        e_ch = backend.energy(float(h))
        e = e_ch + c_ph * h * h
        grid.append(h)
        vals.append(e)
        e_run = min(e_run, e)
        if k >= 2 and vals[-1] > vals[-2]:
            if h_turn <= h:
                bound = e
            else:
                bound = e_ch - (h_turn - h) / 2.0 + c_ph * h_turn * h_turn
            if bound > e_run + 2e-4:
                return np.array(grid), np.array(vals), True
    return np.array(grid), np.array(vals), False


def minimize_h(
    p: ModelParams,
    backend,
    t: ToleranceSet | None = None,
    h_max: float | None = None,
    coarse_dh: float = 1e-2,
    xtol: float = 1e-8,
) -> SelfConsistentSolution:
    """Coarse h-grid plus golden-section refinement of every local minimum.

    The grid lives on fixed multiples of ``coarse_dh`` so repeated calls at
    different g reuse the backend's chain solves, and the walk stops early
    once a rigorous slope bound excludes any further competitive minimum
    (see ``_walk_grid``).  Two refined minima within
    ``max(100 tol_energy, 1e-8)`` of each other set the ``coexistent`` flag.
    """
    validate_params(p)
    if t is None:
        t = ToleranceSet()
    if p.g == 0.0:
        m_x, m_z, s_pi = backend.observables(0.0)
        orders = _effective_orders(p, backend, 0.0, m_x, m_z, s_pi)
        return SelfConsistentSolution(
            h_star=0.0, energy=backend.energy(0.0), residual=0.0, orders=orders,
            s_pi=s_pi, superradiant=False, coexistent=False,
            minima=((0.0, backend.energy(0.0)),), backend=backend.tag,
        )
    _check_backend(p, backend)
    c_ph = p.omega / (16.0 * p.g * p.g)

    def e_eff(h: float) -> float:
        return backend.energy(h) + c_ph * h * h

    hm = _default_h_max(p) if h_max is None else h_max
    hm = max(hm, 10.0 * coarse_dh)
    for _attempt in range(5):
        grid, vals, early = _walk_grid(backend, c_ph, hm, coarse_dh)
        n_pts = len(grid)
        i_min = int(np.argmin(vals))
        if early or (i_min < n_pts - 2 and vals[-1] > vals[-2]):
            break
        hm *= 2.0
    else:
        raise LandscapeEdgeError(
            f"e_eff still decreasing at h_max={hm:.3g}; supply a larger h_max"
        )

    local: list[int] = [0] if vals[0] <= vals[1] else []
    for i in range(1, n_pts - 1):
        if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]:
            local.append(i)

    minima: list[tuple[float, float]] = []
    for i in local:
        if i == 0:
            minima.append((0.0, float(vals[0])))
            continue
        h_ref, e_ref = _golden_min(
            e_eff, float(grid[i - 1]), float(grid[i]), float(grid[i + 1]), xtol
        )
        if h_ref < 2.0 * xtol:
            h_ref, e_ref = 0.0, float(vals[0])
        minima.append((float(h_ref), float(e_ref)))

    dedup: list[tuple[float, float]] = []
    for h_ref, e_ref in sorted(minima, key=lambda x: x[0]):
        if not dedup or h_ref - dedup[-1][0] > 4.0 * max(xtol, 1e-12):
            dedup.append((h_ref, e_ref))
        elif e_ref < dedup[-1][1]:
            dedup[-1] = (h_ref, e_ref)
    dedup.sort(key=lambda x: (x[1], x[0]))

    h_star, e_star = dedup[0]
    coexist_tol = max(100.0 * t.tol_energy, 1e-8)
    coexistent = len(dedup) > 1 and dedup[1][1] - e_star < coexist_tol

    m_x, m_z, s_pi = backend.observables(h_star)
    residual = abs(h_star - (8.0 * p.g * p.g / p.omega) * m_x)
    orders = _effective_orders(p, backend, h_star, m_x, m_z, s_pi)
    superradiant = abs(orders.photon_displacement) > t.tol_order_param
    return SelfConsistentSolution(
        h_star=h_star, energy=e_star, residual=residual, orders=orders, s_pi=s_pi,
        superradiant=superradiant, coexistent=coexistent, minima=tuple(dedup),
        backend=backend.tag,
    )


def _effective_orders(p, backend, h, m_x, m_z, s_pi) -> OrderParams:
    """OrderParams for an effective solution.

    ``m_stag`` is the background-subtracted rms staggered magnetization
    sqrt(max(s_pi - 1.25/n, 0)): a finite paramagnetic chain has
    s_pi <= (1/4 - m_z^2)/n from on-site fluctuations alone, so five times
    that ceiling separates genuine Neel order from the finite-size floor.
    """
    alpha = 0.0 if p.g == 0.0 else -h / (4.0 * p.g)
    if isinstance(backend, ChainEDBackend):
        m_stag = math.sqrt(max(s_pi - 1.25 / backend.n_sites, 0.0))
    else:
        m_stag = 0.0
    return OrderParams(photon_displacement=alpha, mx=m_x, mz=m_z, m_stag=m_stag)


# ---------------------------------------------------------------------------
# spinodal and transition location
# ---------------------------------------------------------------------------


def spinodal_g(j: float, omega: float = 1.0, step: float = 1e-4) -> float:
    """Coupling where the normal (h=0) solution loses local stability (eps=0).

    g_sp = sqrt(omega / (8 chi)) with chi = -d^2 e_chain/dh^2 at h = 0 from
    Richardson-extrapolated finite differences of the free-fermion energy.
    """
    if j <= 0.0:
        raise BackendError("spinodal_g requires j > 0 (ferromagnetic, eps = 0)")
    chi = ff_susceptibility_h0(j, step)
    if chi <= 0.0:
        raise CurvatureError(f"curvature estimate chi={chi:.3e} is not positive")
    return math.sqrt(omega / (8.0 * chi))


def _local_min_near(backend, c_ph: float, h_guess: float, xtol: float, dh: float = 5e-3):
    """Refine a local minimum of e_eff near h_guess; returns (h, e).

    Stationarity means 2 c_ph h = m_x(h) (Hellmann-Feynman), and m_x comes
    free with each chain solve, so the minimum is found as a derivative root
    rather than by section search.  The window walks toward the well if
    needed; sliding into h = 0 signals that the well has vanished.
    """

    def e_eff(h: float) -> float:
        return backend.energy(h) + c_ph * h * h

    def deriv(h: float) -> float:
        return 2.0 * c_ph * h - backend.mx(h)

    if h_guess <= 2.0 * xtol:
        return 0.0, e_eff(0.0)
    a, b = max(h_guess - dh, 0.0), h_guess + dh
    fa, fb = deriv(a), deriv(b)
    for _ in range(60):
        if fa < 0.0 <= fb:
            h_star = float(brentq(deriv, a, b, xtol=xtol))
            return h_star, e_eff(h_star)
        if fa >= 0.0:  # well is further down
            if a <= 0.0:
                return 0.0, e_eff(0.0)
            a, b, fb = max(a - 2.0 * dh, 0.0), a, fa
            fa = deriv(a)
        else:  # fb < 0: well is further up
            a, b, fa = b, b + 2.0 * dh, fb
            fb = deriv(b)
    return 0.0, e_eff(0.0)


def _refine_energy_crossing(p_template: ModelParams, be, g_c0: float, pair, g_tol: float):
    """Move g to the exact energy crossing of two coexisting wells.

    Newton steps with the envelope derivative: both well positions are
    stationary, so d(gap)/dg reduces to the explicit photon-cost term
    -omega (h_high^2 - h_low^2)/(8 g^3).  Falls back to sentinel bisection
    when a well vanishes at an iterate (stepped outside the coexistence
    window).  Returns (g_c, jump).
    """
    h_lo_guess, h_hi_guess = pair
    h_mid = 0.5 * (h_lo_guess + h_hi_guess)
    tight = g_tol <= 1e-5
    h_xtol = 1e-9 if tight else 1e-7
    g_xtol = 1e-13 if tight else 1e-10
    omega = p_template.omega

    g_n, h_low, h_high = g_c0, h_lo_guess, h_hi_guess
    for _ in range(40):
        c_ph = omega / (16.0 * g_n * g_n)
        h_low, e_low = _local_min_near(be, c_ph, h_low if h_low > 0 else h_lo_guess, h_xtol, dh=2e-3)
        h_high_new, e_high = _local_min_near(be, c_ph, h_high, h_xtol, dh=2e-3)
        if h_high_new < h_mid or h_low > h_mid:
            break  # stepped outside the coexistence window
        h_high = h_high_new
        gap = e_high - e_low
        dgap = -omega * (h_high * h_high - h_low * h_low) / (8.0 * g_n ** 3)
        step = -gap / dgap
        step = max(min(step, 0.05), -0.05)
        g_n += step
        if abs(step) < g_xtol:
            return g_n, abs(h_high - h_low)

    # fallback: bisection on the gap sign with vanished-well sentinels
    def branch_gap(g: float) -> float:
        c_ph = omega / (16.0 * g * g)
        h_l, e_l = _local_min_near(be, c_ph, h_lo_guess, h_xtol)
        h_h, e_h = _local_min_near(be, c_ph, h_hi_guess, h_xtol)
        if h_h < h_mid:
            return 1.0
        if h_l > h_mid:
            return -1.0
        return e_h - e_l

    span = max(50.0 * g_tol, 2e-3)
    glo, ghi = g_c0 - span, g_c0 + span
    flo, fhi = branch_gap(glo), branch_gap(ghi)
    while flo * fhi > 0 and ghi - glo < 0.2:
        glo, ghi = glo - span, ghi + span
        flo, fhi = branch_gap(glo), branch_gap(ghi)
    g_c = float(brentq(branch_gap, glo, ghi, xtol=g_xtol)) if flo * fhi <= 0 else g_c0
    c_ph = omega / (16.0 * g_c * g_c)
    h_l, _ = _local_min_near(be, c_ph, h_lo_guess, h_xtol)
    h_h, _ = _local_min_near(be, c_ph, h_hi_guess, h_xtol)
    return g_c, abs(h_h - h_l)


def _auto_bracket(p_template: ModelParams, backend, t: ToleranceSet, label_fn, g_lo: float, g_hi: float, dg: float, g_start: float | None = None):
    """Coarse g-scan until the label switches.

    With ``g_start`` the scan walks away from the start in the direction
    where the switch must lie (up while normal, down while superradiant).
    """
    if g_start is not None:
        g = min(max(g_start, g_lo), g_hi)
        up = not label_fn(g)
        step = dg if up else -dg
        g_prev = g
        g += step
        while g_lo - 1e-12 <= g <= g_hi + 1e-12:
            if label_fn(g) != (not up):
                return (g_prev, g) if up else (g, g_prev)
            g_prev, g = g, g + step
        raise BracketError(
            f"no label switch found walking {'up' if up else 'down'} from g={g_start}"
        )
    g_prev = g_lo
    prev = label_fn(g_lo)
    g = g_lo + dg
    while g <= g_hi + 1e-12:
        cur = label_fn(g)
        if cur != prev:
            return g_prev, g
        g_prev, g = g, g + dg
    raise BracketError(f"no label switch found while scanning g in [{g_lo}, {g_hi}]")


def locate_transition_g(
    p_template: ModelParams,
    j: float,
    backend: str | object = "chain-ed",
    t: ToleranceSet | None = None,
    g_bracket: tuple[float, float] | None = None,
    n_sites: int = 16,
    g_tol: float = 1e-6,
    n_trend: tuple[int, ...] | None = None,
    g_hint: float | None = None,
) -> TransitionPoint:
    """Locate the normal/superradiant boundary in g at fixed j.

    Bisection on the label of ``minimize_h``; if the boundary point carries
    two coexisting, barrier-separated minima further apart than ``tol_jump``
    the point is first order and g_c is re-refined to the energy crossing of
    the two tracked wells (so the minima are degenerate at the returned g_c
    to the root-finder tolerance).  For chain-ED backends, pass ``n_trend``
    to record the jump against chain length.
    """
    if t is None:
        t = ToleranceSet()
    p_template = p_template.with_(j=j)
    be = make_backend(p_template, backend, n_sites) if isinstance(backend, str) else backend

    # bisection label: a cut well below any first-order jump and well above
    # the refinement width, so the located g_c tracks the onset itself.
    # Decided from the (cached) coarse grid alone whenever unambiguous: an
    # interior grid minimum two or more cells out is superradiant, a rising
    # first cell is normal; only the sub-cell region needs refinement.
    def label(g: float, xtol: float = 1e-6) -> bool:
        p_g = p_template.with_(g=g)
        c_ph = p_g.omega / (16.0 * g * g)
        hm = max(_default_h_max(p_g), 10.0 * 1e-2)
        grid, vals, early = _walk_grid(be, c_ph, hm, 1e-2)
        n_pts = len(grid)
        i_min = int(np.argmin(vals))
        if not early and i_min >= n_pts - 2:
            return minimize_h(p_g, be, t, xtol=xtol).h_star > 1e-4
        if i_min >= 2:
            return True
        if i_min == 0 and vals[1] - vals[0] > 1e-11 * max(1.0, abs(vals[0])):
            return False
        hi_edge = float(grid[min(i_min + 1, n_pts - 1)])
        h_ref, _ = _golden_min(
            lambda h: be.energy(h) + c_ph * h * h, 0.0, float(grid[max(i_min, 1)]), hi_edge, xtol
        )
        return h_ref > 1e-4

    if g_bracket is None:
        g_bracket = _auto_bracket(p_template, be, t, label, 0.05, 3.0, 0.05, g_start=g_hint)
    g_lo, g_hi = g_bracket

    lab_lo, lab_hi = label(g_lo), label(g_hi)
    if lab_lo == lab_hi:
        state = "superradiant" if lab_lo else "normal"
        raise BracketError(f"both bracket ends are {state} at j={j}")
    lo, hi = g_lo, g_hi
    while hi - lo > g_tol:
        mid = 0.5 * (lo + hi)
        if label(mid) == lab_lo:
            lo = mid
        else:
            hi = mid
    g_c = 0.5 * (lo + hi)

    sol_c = minimize_h(p_template.with_(g=g_c), be, t)
    pair = None
    if len(sol_c.minima) > 1:
        c_ph_c = p_template.omega / (16.0 * g_c * g_c)
        h0, e0 = sol_c.minima[0]
        for h1, e1 in sol_c.minima[1:]:
            if abs(h1 - h0) > t.tol_jump and e1 - e0 < 1e-4:
                # a genuine coexisting pair is separated by a real barrier;
                # near-multicritical flat landscapes produce noise "minima"
                # with no barrier and must classify as continuous
                samples = np.linspace(min(h0, h1), max(h0, h1), 7)[1:-1]
                ridge = max(be.energy(float(h)) + c_ph_c * h * h for h in samples)
                if ridge - max(e0, e1) > 1e-8:
                    pair = (min(h0, h1), max(h0, h1))
                    break

    coexistent = False
    if pair is not None:
        g_c, jump = _refine_energy_crossing(p_template, be, g_c, pair, g_tol)
        coexistent = True
    else:
        # discontinuity estimate from both sides of the boundary: a genuine
        # jump plateaus (h* barely grows from delta to 4 delta), while any
        # continuous power-law onset grows by >= 4^(1/4); only plateaus
        # contribute, via Richardson extrapolation toward the boundary
        d = max(hi - g_c, g_tol)

        def h_at(g: float) -> float:
            return minimize_h(p_template.with_(g=max(g, 1e-6)), be, t).h_star

        def side_jump(sign: float) -> float:
            h1 = h_at(g_c + sign * d)
            h4 = h_at(g_c + sign * 4.0 * d)
            if h4 > 1.15 * h1:
                return 0.0
            return max(0.0, 2.0 * h1 - h4)

        jump = abs(side_jump(+1.0) - side_jump(-1.0))

    order = "first" if jump > t.tol_jump else "second"

    trend = None
    if n_trend is not None and isinstance(be, ChainEDBackend):
        entries = []
        for n in n_trend:
            if n == be.n_sites:
                entries.append((n, jump))
                continue
            tp_n = locate_transition_g(
                p_template, j, "chain-ed", t,
                g_bracket=(max(g_c - 0.1, 1e-3), g_c + 0.1),
                n_sites=n, g_tol=g_tol,
            )
            entries.append((n, tp_n.jump))
        trend = tuple(entries)

    return TransitionPoint(
        j=j, g_c=g_c, order=order, jump=jump, backend=be.tag,
        bracket=(lo, hi), branch="normal->superradiant",
        coexistent=coexistent, jump_trend=trend,
    )


@dataclass(frozen=True)
class MulticriticalResult:
    j_mc: float
    j_bracket: tuple[float, float]
    backend: str
    probes: tuple[TransitionPoint, ...]


def locate_multicritical(
    p_template: ModelParams,
    j_bracket: tuple[float, float],
    backend: str = "chain-ed",
    t: ToleranceSet | None = None,
    n_sites: int = 16,
    j_tol: float = 0.02,
    g_tol: float = 1e-4,
) -> MulticriticalResult:
    """Bisect the Ising coupling on the transition order (first vs second).

    Requires differing orders at the two j-bracket ends; each probe locates
    the g-transition at that j with a fresh backend (the previous probe's
    g_c seeds the g-bracket).  Probes use a coarser ``g_tol`` than the
    standalone locator: the order classification is insensitive to it and
    the probe brackets are recorded on the returned points.
    """
    if t is None:
        t = ToleranceSet()
    j_lo, j_hi = j_bracket
    probes: list[TransitionPoint] = []

    def probe(j: float, g_hint: float | None) -> TransitionPoint:
        tp = locate_transition_g(
            p_template, j, backend, t, None, n_sites, g_tol=g_tol, g_hint=g_hint
        )
        probes.append(tp)
        return tp

    tp_lo = probe(j_lo, None)
    tp_hi = probe(j_hi, tp_lo.g_c)
    if tp_lo.order == tp_hi.order:
        raise BracketError(
            f"transition order is {tp_lo.order!r} at both j-bracket ends {j_bracket}"
        )
    lo, hi = j_lo, j_hi
    g_hint = 0.5 * (tp_lo.g_c + tp_hi.g_c)
    while hi - lo > j_tol:
        mid = 0.5 * (lo + hi)
        tp_mid = probe(mid, g_hint)
        g_hint = tp_mid.g_c
        if tp_mid.order == tp_lo.order:
            lo = mid
        else:
            hi = mid
    return MulticriticalResult(
        j_mc=0.5 * (lo + hi), j_bracket=(lo, hi),
        backend=probes[0].backend, probes=tuple(probes),
    )
