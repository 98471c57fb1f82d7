"""Brute-force expectation-value oracles.

Independent of the closed-form mean-field energy: the coherent x Bloch
product state is built explicitly and contracted with the sparse
chain-cavity Hamiltonian on a small periodic chain with a generous Fock
truncation.  Used by the test suite and ``phasekit selfcheck``.
"""

from __future__ import annotations

import math

import numpy as np

from .edfull import EDConfig, build_hamiltonian
from .model import ModelParams


def coherent_vector(z: float, n_max: int) -> np.ndarray:
    """Truncated coherent state |z> (real z), renormalized."""
    n = np.arange(n_max + 1)
    log_amp = -0.5 * z * z + n * math.log(abs(z)) - 0.5 * _lgamma_arr(n + 1) if z != 0.0 else None
    if z == 0.0:
        vec = np.zeros(n_max + 1)
        vec[0] = 1.0
        return vec
    vec = np.exp(log_amp) * np.sign(z) ** n
    return vec / np.linalg.norm(vec)


def _lgamma_arr(x):
    return np.array([math.lgamma(float(v)) for v in x])


def bloch_product_vector(thetas: list[float]) -> np.ndarray:
    """Product of in-plane Bloch spins; bit i set = spin i up."""
    n = len(thetas)
    vec = np.zeros(1 << n)
    for s in range(1 << n):
        amp = 1.0
        for i, th in enumerate(thetas):
            amp *= math.cos(0.5 * th) if (s >> i) & 1 else math.sin(0.5 * th)
        vec[s] = amp
    return vec


def coherent_product_energy(
    p: ModelParams,
    alpha: float,
    theta_a: float,
    theta_b: float,
    n_spins: int = 4,
    n_max: int = 60,
) -> float:
    """<psi|H|psi>/N for coherent(sqrt(N) alpha) x two-sublattice product."""
    cfg = EDConfig(n_spins=n_spins, n_max=n_max)
    h = build_hamiltonian(p, cfg)
    thetas = [theta_a if i % 2 == 0 else theta_b for i in range(n_spins)]
    spin = bloch_product_vector(thetas)
    photon = coherent_vector(math.sqrt(n_spins) * alpha, n_max)
    psi = np.kron(spin, photon)
    return float(psi @ (h @ psi)) / n_spins
