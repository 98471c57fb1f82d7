"""Acceptance suite: one test per criterion, each printing a PASS line with
its runtime (run with ``pytest tests/test_acceptance.py -v -s``)."""

import math
import time

import numpy as np
import pytest

from phasekit import effective as eff
from phasekit import freefermion as ff
from phasekit import meanfield as mf
from phasekit.chain_ed import ChainSolver
from phasekit.edfull import EDConfig, build_hamiltonian, ed_full_ground
from phasekit.model import ModelParams, ToleranceSet
from phasekit.oracles import coherent_product_energy
from phasekit.scan import ScanSpec, run_scan, record_to_csv_line

TOL = ToleranceSet()


def _report(num, detail, t0, budget_s):
    elapsed = time.time() - t0
    print(f"\n[criterion {num}] PASS ({elapsed:.1f}s / budget {budget_s}s): {detail}")
    assert elapsed < budget_s, f"criterion {num} exceeded its runtime budget"


def test_criterion_1_j0_threshold():
    t0 = time.time()
    tp_mf = mf.mf_boundary_bisect(ModelParams(j=0.0), 0.3, 0.7, TOL)
    assert tp_mf.g_c == pytest.approx(0.5, abs=1e-4)
    # effective route: at j -> 0 the chain reduces to independent spins and
    # the functional reproduces the single-spin threshold; chain-ED at N=12
    tp_ed = eff.locate_transition_g(ModelParams(eps=1.0), 0.0, "chain-ed", TOL,
                                    g_bracket=(0.3, 0.7), n_sites=12)
    assert tp_ed.g_c == pytest.approx(0.5, abs=0.02)
    _report(1, f"mean-field g_c={tp_mf.g_c:.6f}, chain-ED(12) g_c={tp_ed.g_c:.6f}", t0, 60)


def test_criterion_2_classical_boundary():
    t0 = time.time()
    tp = mf.mf_boundary_bisect_j(ModelParams(g=0.0), -0.5, 0.0, TOL, bisect_tol=1e-10)
    assert tp.j == pytest.approx(-0.25, abs=1e-9)
    assert tp.bracket[1] - tp.bracket[0] <= 1e-10 * 1.01
    _report(2, f"g=0 label switch at j={tp.j:.12f}", t0, 60)


def test_criterion_3_intermediate_afm_s_phase():
    t0 = time.time()
    # mean-field windows at j = -0.3 and -0.5 with continuous onset
    for j in (-0.3, -0.5):
        w = mf.mf_intermediate_window(ModelParams(j=j), TOL)
        assert w is not None, f"no mean-field AFM-S window at j={j}"
        tp1, tp2 = w
        assert tp1.g_c < tp2.g_c
        assert tp1.jump < 1e-3  # second-order onset of superradiance
    # effective chain-ED backend at N=16: a g-window with h* > 1e-2 and
    # staggered structure factor at least 5x its deep-PM background
    p0 = ModelParams(eps=1.0, j=-0.3)
    be = eff.make_backend(p0, "chain-ed", 16)
    bg = eff.minimize_h(p0.with_(g=0.45), be, TOL).s_pi
    window_hits = []
    for g in np.arange(0.300, 0.3401, 0.005):
        sol = eff.minimize_h(p0.with_(g=float(g)), be, TOL)
        if sol.h_star > 1e-2 and sol.s_pi >= 5.0 * bg:
            window_hits.append((float(g), sol.h_star, sol.s_pi))
    assert window_hits, "no g with simultaneous h* > 1e-2 and 5x s_pi enhancement"
    g_hit, h_hit, spi_hit = window_hits[0]
    _report(3, f"mean-field windows found; chain-ED(16) window point g={g_hit:.3f} "
               f"h*={h_hit:.3f} s_pi={spi_hit:.3f} (background {bg:.4f})", t0, 600)


def test_criterion_4_first_order_line_eps0():
    t0 = time.time()
    details = []
    for j in (0.5, 0.75, 1.0):
        p0 = ModelParams(eps=0.0, j=j)
        g_sp = eff.spinodal_g(j)
        tp = eff.locate_transition_g(p0, j, "free-fermion", TOL,
                                     g_bracket=(0.5 * g_sp, 1.05 * g_sp))
        assert tp.order == "first" and tp.jump > 1e-2
        assert g_sp - tp.g_c > 1e-3, f"transition not strictly below spinodal at j={j}"
        be = eff.make_backend(p0.with_(g=tp.g_c), "free-fermion")
        sol = eff.minimize_h(p0.with_(g=tp.g_c), be, TOL)
        assert len(sol.minima) >= 2
        assert abs(sol.minima[0][1] - sol.minima[1][1]) < 1e-8  # degenerate wells
        details.append(f"j={j}: g_c={tp.g_c:.6f} jump={tp.jump:.3f} margin={g_sp - tp.g_c:.4f}")
    _report(4, "; ".join(details), t0, 120)


def test_criterion_5_multicritical_point():
    t0 = time.time()
    res = eff.locate_multicritical(ModelParams(eps=1.0), (0.25, 1.0), "chain-ed", TOL, n_sites=16)
    assert 0.4 <= res.j_mc <= 0.6, f"j_mc={res.j_mc} outside [0.4, 0.6]"
    by_j = {round(p.j, 6): p for p in res.probes}
    assert by_j[0.25].order == "second"
    tp75 = eff.locate_transition_g(ModelParams(eps=1.0), 0.75, "chain-ed", TOL,
                                   n_sites=16, g_tol=1e-4, g_hint=1.0,
                                   n_trend=(8, 12, 16))
    assert tp75.order == "first"
    tp25 = by_j[0.25]
    assert tp25.jump < TOL.tol_jump
    trend = dict(tp75.jump_trend)
    assert all(v > TOL.tol_jump for v in trend.values())
    _report(5, f"j_mc={res.j_mc:.3f} in [{res.j_bracket[0]:.3f}, {res.j_bracket[1]:.3f}]; "
               f"j=0.25 second, j=0.75 first (jump trend {trend})", t0, 900)


def test_criterion_6_numerical_hygiene(rng):
    t0 = time.time()
    # Hellmann-Feynman, free fermion: analytic vs finite differences
    d = 1e-5
    for _ in range(20):
        j, h = rng.uniform(0.1, 1.0), rng.uniform(0.05, 2.0)
        fd = -(ff.ff_ground_energy(j, h + d) - ff.ff_ground_energy(j, h - d)) / (2 * d)
        assert abs(ff.ff_mx(j, h) - fd) < 1e-6
    # Hellmann-Feynman, chain ED: expectation value vs finite differences
    solver = ChainSolver(1.0, 0.4, 8)
    for _ in range(20):
        h = float(rng.uniform(0.05, 1.5))
        _, vec = solver.fast_ground(h)
        m_x, _, _ = solver.observables(vec)
        fd = -(solver.fast_ground(h + d)[0] - solver.fast_ground(h - d)[0]) / (2 * d * 8)
        assert abs(m_x - fd) < 1e-5
    # evenness of the chain energy in h
    for _ in range(5):
        j, h = rng.uniform(0.1, 1.0), rng.uniform(0.1, 2.0)
        assert abs(ff.ff_ground_energy(j, h) - ff.ff_ground_energy(j, -h)) < 1e-10
        ep = solver.fast_ground(h)[0]
        em = solver.fast_ground(-h)[0]
        assert abs(ep - em) < 1e-8  # eigensolver tolerance
    # ED truncation monotonicity
    p = ModelParams(g=0.7, j=0.0)
    es = [ed_full_ground(p, EDConfig(n_spins=8, n_max=nm)).energy_per_site
          for nm in (8, 16, 32)]
    assert es[0] >= es[1] >= es[2]
    # dense-oracle equivalence at dimensions 1600 and 4096
    for n_spins, n_max, g in ((6, 24, 0.3), (4, 255, 0.7)):
        pc = ModelParams(g=g, j=0.1)
        cfg = EDConfig(n_spins=n_spins, n_max=n_max)
        r = ed_full_ground(pc, cfg)
        w = np.linalg.eigvalsh(build_hamiltonian(pc, cfg).toarray())
        assert abs(r.energy_per_site - w[0] / n_spins) < 1e-8
    # mean-field energy vs the N=4 expectation-value oracle on 100 tuples
    worst = 0.0
    for _ in range(100):
        pm = ModelParams(omega=rng.uniform(0.5, 2), eps=rng.uniform(0, 2),
                         g=rng.uniform(0, 1), j=rng.uniform(-1, 1))
        a = mf.MeanFieldAnsatz(rng.uniform(-1, 1), rng.uniform(-math.pi, math.pi),
                               rng.uniform(-math.pi, math.pi))
        worst = max(worst, abs(mf.mf_energy(pm, a) - coherent_product_energy(
            pm, a.alpha, a.theta_a, a.theta_b)))
    assert worst < 1e-8
    _report(6, f"HF, evenness, truncation monotonicity, dense oracle, "
               f"mean-field oracle (worst {worst:.2e})", t0, 300)


def test_criterion_7_scan_determinism():
    t0 = time.time()
    spec = ScanSpec(j_min=-0.6, j_max=0.6, j_steps=21, g_min=0.0, g_max=1.0, g_steps=21)
    first = "\n".join(record_to_csv_line(r) for r in run_scan(spec))
    second = "\n".join(record_to_csv_line(r) for r in run_scan(spec))
    assert first == second
    spec_eff = ScanSpec(j_min=0.0, j_max=0.3, j_steps=2, g_min=0.2, g_max=0.8, g_steps=4,
                        method="effective", backend="chain-ed", n_sites=8)
    a = "\n".join(record_to_csv_line(r) for r in run_scan(spec_eff))
    b = "\n".join(record_to_csv_line(r) for r in run_scan(spec_eff))
    assert a == b
    _report(7, f"byte-identical CSV bodies ({len(first)} and {len(a)} chars)", t0, 60)
