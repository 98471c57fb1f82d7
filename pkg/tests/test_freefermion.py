import math

import numpy as np
import pytest

from phasekit.freefermion import ff_dispersion, ff_ground_energy, ff_mx, ff_susceptibility_h0


def test_dispersion_anchors():
    assert ff_dispersion(0.25, 0.0, 1.234) == pytest.approx(0.5, abs=1e-14)
    assert ff_dispersion(0.0, 1.0, -0.7) == pytest.approx(1.0, abs=1e-14)
    # critical point Gamma = j: eps_k = 4 j sin(k/2)
    assert ff_dispersion(0.25, 0.5, math.pi) == pytest.approx(1.0, abs=1e-14)


def test_ground_energy_anchors():
    assert ff_ground_energy(0.25, 0.0) == pytest.approx(-0.25, abs=1e-12)
    assert ff_ground_energy(0.0, 1.0) == pytest.approx(-0.5, abs=1e-12)
    # closed-form integral at the critical coupling
    assert ff_ground_energy(0.25, 0.5) == pytest.approx(-1.0 / math.pi, abs=1e-10)


def test_ground_energy_sublattice_identity(rng):
    # j < 0 maps onto j > 0 (staggered rotation); the dispersion integral
    # inherits the identity exactly
    for _ in range(10):
        j = rng.uniform(0.05, 1.0)
        h = rng.uniform(0.0, 2.0)
        assert ff_ground_energy(-j, h) == pytest.approx(ff_ground_energy(j, h), abs=1e-10)


def test_ground_energy_even_in_h(rng):
    for _ in range(10):
        j = rng.uniform(-1.0, 1.0)
        h = rng.uniform(0.0, 2.0)
        assert ff_ground_energy(j, -h) == pytest.approx(ff_ground_energy(j, h), abs=1e-10)


def test_mx_anchors():
    assert ff_mx(0.25, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert ff_mx(0.0, 1.0) == pytest.approx(0.5, abs=1e-12)


def test_mx_hellmann_feynman():
    d = 1e-5
    for j, h in [(0.25, 0.5), (0.5, 0.3), (0.4, 1.1)]:
        fd = -(ff_ground_energy(j, h + d) - ff_ground_energy(j, h - d)) / (2 * d)
        assert ff_mx(j, h) == pytest.approx(fd, abs=1e-6)


def test_mx_bounds(rng):
    for _ in range(20):
        m = ff_mx(rng.uniform(0.05, 1.0), rng.uniform(0.0, 3.0))
        assert -1e-12 <= m <= 0.5 + 1e-12


def test_susceptibility_matches_perturbation_theory():
    # exact small-field expansion of the chain energy gives chi = 1/(8 j)
    for j in (0.25, 0.5, 1.0):
        assert ff_susceptibility_h0(j) == pytest.approx(1.0 / (8.0 * j), rel=1e-5)
