import numpy as np
import pytest

from phasekit.chain_ed import ChainParams, ed_chain_ground
from phasekit.edfull import (
    ConfigMismatchError,
    EDConfig,
    EDError,
    build_hamiltonian,
    converge_nmax,
    ed_full_ground,
    ed_superradiance_indicator,
)
from phasekit.meanfield import mf_minimize
from phasekit.model import ModelParams, classical_ground


def test_decoupled_product_state():
    r = ed_full_ground(ModelParams(g=0.0, j=0.0), EDConfig(n_spins=8, n_max=8))
    assert r.energy_per_site == pytest.approx(-0.5, abs=1e-10)
    assert r.photon_density == pytest.approx(0.0, abs=1e-12)
    assert abs(r.parity) == pytest.approx(1.0, abs=1e-8)


def test_decoupled_neel_state():
    r = ed_full_ground(ModelParams(g=0.0, j=-0.5), EDConfig(n_spins=8, n_max=8))
    assert r.energy_per_site == pytest.approx(-0.5, abs=1e-10)
    assert r.s_pi == pytest.approx(0.25, abs=1e-8)
    assert r.degenerate


def test_decoupled_limits_match_classical_and_chain(rng):
    for j in (-0.6, -0.1, 0.4):
        p = ModelParams(g=0.0, j=j)
        r = ed_full_ground(p, EDConfig(n_spins=6, n_max=8))
        assert r.energy_per_site == pytest.approx(classical_ground(p).energy, abs=1e-10)
        rc = ed_chain_ground(ChainParams(eps=1.0, j=j, h=0.0, n_sites=6))
        assert r.energy_per_site == pytest.approx(rc.energy, abs=1e-10)


def test_dense_oracle_equivalence():
    # same truncated Hamiltonian, dense eigensolver, all observables
    p = ModelParams(g=0.3, j=0.0)
    c = EDConfig(n_spins=6, n_max=24)
    r = ed_full_ground(p, c)
    h = build_hamiltonian(p, c).toarray()
    w, v = np.linalg.eigh(h)
    assert r.energy_per_site == pytest.approx(w[0] / 6, abs=1e-8)
    vec = v[:, 0]
    d_ph = c.n_max + 1
    psi = vec.reshape(1 << 6, d_ph)
    rho = psi.T @ psi
    n_dense = float(np.sum(np.arange(d_ph) * np.diag(rho))) / 6
    assert r.photon_density == pytest.approx(n_dense, abs=1e-8)
    root = np.sqrt(np.arange(1, d_ph))
    x = np.diag(root, 1) + np.diag(root, -1)
    x2 = x @ x + np.diag(np.concatenate([np.zeros(d_ph - 1), [d_ph]]))  # exact top element
    quad_dense = float(np.trace(x2 @ rho)) / 6
    assert r.quad_fluct == pytest.approx(quad_dense, abs=1e-8)


def test_parity_and_coherence_vanish(rng):
    for g in (0.2, 0.5):
        r = ed_full_ground(ModelParams(g=g, j=0.2), EDConfig(n_spins=6, n_max=16))
        assert abs(r.parity) == pytest.approx(1.0, abs=1e-8)
        assert r.photon_coherence == pytest.approx(0.0, abs=1e-8)


def test_truncation_monotonicity():
    p = ModelParams(g=0.7, j=0.0)
    es = [ed_full_ground(p, EDConfig(n_spins=6, n_max=nm)).energy_per_site
          for nm in (8, 16, 32)]
    assert es[0] >= es[1] >= es[2]


def test_converge_nmax_decoupled_immediate():
    r = converge_nmax(ModelParams(g=0.0, j=0.3), EDConfig(n_spins=6, n_max=8), energy_tol=1e-10)
    assert r.nmax_converged
    assert r.n_max == 16  # first doubling already agrees: photon vacuum exact
    assert r.photon_density == pytest.approx(0.0, abs=1e-12)


def test_converge_nmax_superradiant_needs_more():
    p_weak = ModelParams(g=0.3, j=0.0)
    p_strong = ModelParams(g=0.7, j=0.0)
    r_weak = converge_nmax(p_weak, EDConfig(n_spins=8, n_max=8), energy_tol=1e-8)
    r_strong = converge_nmax(p_strong, EDConfig(n_spins=8, n_max=8), energy_tol=1e-8)
    assert r_weak.nmax_converged and r_strong.nmax_converged
    assert r_strong.n_max > r_weak.n_max


def test_displaced_frame_converges_no_later_deep_in_sr():
    # deep superradiant regime: parity splitting far below the tolerance, so
    # the displaced frame settles on the broken branch at small n_max
    p = ModelParams(g=0.9, j=0.0)
    alpha = mf_minimize(p).ansatz.alpha
    plain = converge_nmax(p, EDConfig(n_spins=8, n_max=8), energy_tol=1e-8)
    disp = converge_nmax(p, EDConfig(n_spins=8, n_max=8, displaced_frame=alpha), energy_tol=1e-8)
    assert disp.nmax_converged
    assert disp.n_max <= plain.n_max
    assert disp.energy_per_site == pytest.approx(plain.energy_per_site, abs=1e-5)


def test_displaced_frame_energy_agrees_with_plain():
    p = ModelParams(g=0.7, j=0.0)
    alpha = mf_minimize(p).ansatz.alpha
    plain = ed_full_ground(p, EDConfig(n_spins=6, n_max=64))
    disp = ed_full_ground(p, EDConfig(n_spins=6, n_max=64, displaced_frame=alpha))
    assert disp.energy_per_site == pytest.approx(plain.energy_per_site, abs=1e-9)


def test_superradiance_indicator():
    cfg = EDConfig(n_spins=6, n_max=24)
    base = ed_full_ground(ModelParams(g=1e-9, j=0.0), cfg)
    r3 = ed_full_ground(ModelParams(g=0.3, j=0.0), cfg)
    r7 = ed_full_ground(ModelParams(g=0.7, j=0.0), cfg)
    i3 = ed_superradiance_indicator(r3, base)
    i7 = ed_superradiance_indicator(r7, base)
    assert i7 > i3 > 0.0
    assert ed_superradiance_indicator(base, base) == 0.0


def test_indicator_even_in_g():
    # g -> -g is the photon-parity rotation a -> -a: conjugating H(g) by
    # (-1)^n flips the sign of the coupling term only, so the spectrum and
    # the quadrature fluctuation are even in g
    import scipy.sparse as sp

    cfg = EDConfig(n_spins=4, n_max=16)
    p = ModelParams(g=0.4, j=0.1)
    h_plus = build_hamiltonian(p, cfg)
    pipar = sp.kron(sp.identity(1 << 4), sp.diags((-1.0) ** np.arange(cfg.n_max + 1)), format="csr")
    h_minus = (pipar @ h_plus @ pipar).tocsr()
    w_plus = np.sort(np.linalg.eigvalsh(h_plus.toarray()))[:3]
    w_minus = np.sort(np.linalg.eigvalsh(h_minus.toarray()))[:3]
    np.testing.assert_allclose(w_plus, w_minus, atol=1e-10)


def test_config_mismatch_raises():
    base = ed_full_ground(ModelParams(g=0.0, j=0.0), EDConfig(n_spins=4, n_max=8))
    other = ed_full_ground(ModelParams(g=0.2, j=0.0), EDConfig(n_spins=4, n_max=16))
    with pytest.raises(ConfigMismatchError):
        ed_superradiance_indicator(other, base)


def test_dimension_cap():
    with pytest.raises(EDError):
        build_hamiltonian(ModelParams(), EDConfig(n_spins=12, n_max=8, dim_cap=1000))


def test_config_validation():
    with pytest.raises(EDError):
        EDConfig(n_spins=5, n_max=8)
    with pytest.raises(EDError):
        EDConfig(n_spins=8, n_max=4)
