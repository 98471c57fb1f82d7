"""Quick invariant suite behind ``phasekit selfcheck``.

Each check returns (name, ok, detail); the CLI prints one line per check
and exits nonzero on any failure.  Kept to well under a minute.
"""

from __future__ import annotations

import math

import numpy as np

from . import effective as eff
from . import freefermion as ff
from . import meanfield as mf
from .chain_ed import ChainParams, ed_chain_ground
from .edfull import EDConfig, ed_full_ground
from .model import ModelParams, ToleranceSet, classical_ground
from .oracles import coherent_product_energy
from .scan import ScanSpec, run_scan, record_to_csv_line


def _check_classical_boundary():
    t = ToleranceSet()
    tp = mf.mf_boundary_bisect_j(ModelParams(g=0.0), -0.5, 0.0, t)
    ok = abs(tp.j + 0.25) < 1e-9
    return ok, f"g=0 label switch at j={tp.j:.12f} (expect -0.25)"

def _check_mf_oracle():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(10):
        p = ModelParams(omega=rng.uniform(0.5, 2), eps=rng.uniform(0, 2),
                        g=rng.uniform(0, 1), j=rng.uniform(-1, 1))
        a = mf.MeanFieldAnsatz(rng.uniform(-1, 1), rng.uniform(-math.pi, math.pi),
                               rng.uniform(-math.pi, math.pi))
        worst = max(worst, abs(mf.mf_energy(p, a) - coherent_product_energy(
            p, a.alpha, a.theta_a, a.theta_b)))
    return worst < 1e-8, f"max |closed form - Fock oracle| = {worst:.2e}"

def _check_mf_threshold():
    tp = mf.mf_boundary_bisect(ModelParams(j=0.0), 0.3, 0.7, ToleranceSet())
    return abs(tp.g_c - 0.5) < 1e-4, f"mean-field g_c(j=0) = {tp.g_c:.6f}"

def _check_ff_anchors():
    e = ff.ff_ground_energy(0.25, 0.5)
    ok1 = abs(e + 1.0 / math.pi) < 1e-10
    d = 1e-5
    fd = -(ff.ff_ground_energy(0.25, 0.3 + d) - ff.ff_ground_energy(0.25, 0.3 - d)) / (2 * d)
    ok2 = abs(ff.ff_mx(0.25, 0.3) - fd) < 1e-6
    ok3 = abs(ff.ff_ground_energy(0.4, 0.3) - ff.ff_ground_energy(-0.4, 0.3)) < 1e-10
    return ok1 and ok2 and ok3, f"e_crit+1/pi={e + 1/math.pi:.1e}, HF fd diff={abs(ff.ff_mx(0.25,0.3)-fd):.1e}"

def _check_chain_anchors():
    r = ed_chain_ground(ChainParams(eps=1.0, j=-0.5, h=0.0, n_sites=8))
    ok1 = abs(r.energy + 0.5) < 1e-10 and r.s_pi > 0.24
    r2 = ed_chain_ground(ChainParams(eps=0.0, j=0.25, h=0.5, n_sites=12))
    ok2 = abs(r2.energy - ff.ff_ground_energy(0.25, 0.5)) < 2e-2
    return ok1 and ok2, f"Neel e={r.energy:.6f}, N=12 vs free-fermion diff={abs(r2.energy - ff.ff_ground_energy(0.25, 0.5)):.1e}"

def _check_effective_evenness():
    be = eff.make_backend(ModelParams(eps=0.0, j=0.3), "free-fermion")
    worst = max(abs(be.energy(h) - be.energy(-h)) for h in (0.2, 0.7, 1.3))
    return worst < 1e-10, f"max |e(h)-e(-h)| = {worst:.1e}"

def _check_effective_hf():
    p = ModelParams(eps=0.0, j=0.5, g=0.8)
    be = eff.make_backend(p, "free-fermion")
    sol = eff.minimize_h(p, be, ToleranceSet())
    return sol.residual < 1e-6, f"h*={sol.h_star:.4f}, stationarity residual={sol.residual:.1e}"

def _check_edfull_decoupled():
    p = ModelParams(g=0.0, j=-0.5)
    r = ed_full_ground(p, EDConfig(n_spins=4, n_max=8))
    cg = classical_ground(p)
    ok = abs(r.energy_per_site - cg.energy) < 1e-10 and abs(r.photon_density) < 1e-12
    ok = ok and abs(abs(r.parity) - 1.0) < 1e-8 and abs(r.photon_coherence) < 1e-8
    return ok, f"e={r.energy_per_site:.9f} (classical {cg.energy}), |parity|={abs(r.parity):.6f}"

def _check_scan_determinism():
    spec = ScanSpec(j_min=-0.4, j_max=0.2, j_steps=3, g_min=0.0, g_max=0.8, g_steps=3)
    a = "\n".join(record_to_csv_line(r) for r in run_scan(spec))
    b = "\n".join(record_to_csv_line(r) for r in run_scan(spec))
    return a == b, f"{len(a)} bytes, identical={a == b}"


CHECKS = [
    ("classical-boundary", _check_classical_boundary),
    ("meanfield-oracle", _check_mf_oracle),
    ("meanfield-threshold", _check_mf_threshold),
    ("freefermion-anchors", _check_ff_anchors),
    ("chain-ed-anchors", _check_chain_anchors),
    ("effective-evenness", _check_effective_evenness),
    ("effective-stationarity", _check_effective_hf),
    ("edfull-decoupled", _check_edfull_decoupled),
    ("scan-determinism", _check_scan_determinism),
]


def run_selfcheck(print_fn=print) -> bool:
    all_ok = True
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # noqa: BLE001
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        print_fn(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok
