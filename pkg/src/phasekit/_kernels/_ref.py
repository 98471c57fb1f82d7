"""NumPy reference implementation of the hot kernels.

Mirrors ``_fast.pyx`` operation for operation; the relaxation steps all
starts in lockstep so the arithmetic per start is identical to the compiled
per-start loop.
"""

import math

import numpy as np
import scipy.integrate
import scipy.sparse

_PI = math.pi

# ---------------------------------------------------------------------------
# two-sublattice mean-field relaxation (photon amplitude eliminated)
# ---------------------------------------------------------------------------


def mf_reduced_energy(omega, eps, g, j, ta, tb):
    """Variational energy per site at the stationary photon amplitude."""
    sa, ca = np.sin(ta), np.cos(ta)
    sb, cb = np.sin(tb), np.cos(tb)
    s = sa + sb
    return -(g * g / (4.0 * omega)) * (s * s) + 0.25 * eps * (ca + cb) - j * (ca * cb)


def mf_relax_batch(omega, eps, g, j, theta_a, theta_b, gtol=1e-10, max_iter=200):
    """Relax every start to a stationary point of the reduced energy.

    Newton steps where the Hessian is positive definite, otherwise gradient
    steps; both are safeguarded by Armijo backtracking.  Returns
    ``(theta_a, theta_b, energy, status)`` with status 1 = gradient norm
    below ``gtol``, 2 = stalled at numerical precision, 0 = iteration cap.
    """
    ta = np.array(theta_a, dtype=np.float64, copy=True)
    tb = np.array(theta_b, dtype=np.float64, copy=True)
    n = ta.size
    status = np.zeros(n, dtype=np.int32)
    cg = g * g / (4.0 * omega)
    active = np.ones(n, dtype=bool)

    for _ in range(max_iter):
        sa, ca = np.sin(ta), np.cos(ta)
        sb, cb = np.sin(tb), np.cos(tb)
        s = sa + sb
        ga = -2.0 * cg * s * ca - 0.25 * eps * sa + j * sa * cb
        gb = -2.0 * cg * s * cb - 0.25 * eps * sb + j * sb * ca
        done = active & (ga * ga + gb * gb < gtol * gtol)
        status[done] = 1
        active &= ~done
        if not active.any():
            break

        haa = -2.0 * cg * (ca * ca - sa * s) - 0.25 * eps * ca + j * ca * cb
        hbb = -2.0 * cg * (cb * cb - sb * s) - 0.25 * eps * cb + j * cb * ca
        hab = -2.0 * cg * ca * cb - j * sa * sb
        det = haa * hbb - hab * hab
        newton = (det > 0.0) & (haa + hbb > 0.0)
        safe_det = np.where(det != 0.0, det, 1.0)
        da = np.where(newton, (hbb * ga - hab * gb) / safe_det, ga)
        db = np.where(newton, (haa * gb - hab * ga) / safe_det, gb)
        slope = ga * da + gb * db

        f0 = mf_reduced_energy(omega, eps, g, j, ta, tb)
        step = np.where(active, 1.0, 0.0)
        accepted = ~active
        for _bt in range(40):
            na = ta - step * da
            nb = tb - step * db
            f1 = mf_reduced_energy(omega, eps, g, j, na, nb)
            ok = active & ~accepted & (f1 <= f0 - 1e-4 * step * slope)
            ta = np.where(ok, na, ta)
            tb = np.where(ok, nb, tb)
            accepted |= ok
            if accepted.all():
                break
            step = np.where(accepted, step, step * 0.5)
        stalled = active & ~accepted
        status[stalled] = 2
        active &= ~stalled
        if not active.any():
            break

    e = mf_reduced_energy(omega, eps, g, j, ta, tb)
    return ta, tb, e, status


# ---------------------------------------------------------------------------
# chain transverse-term application: out[s] = (1/2) sum_i v[s xor 2^i]
# ---------------------------------------------------------------------------


def make_chain_xapply(n_sites):
    dim = 1 << n_sites
    cols = (np.arange(dim, dtype=np.int64)[:, None] ^ (1 << np.arange(n_sites, dtype=np.int64))[None, :]).ravel()
    indptr = np.arange(dim + 1, dtype=np.int64) * n_sites
    data = np.full(dim * n_sites, 0.5)
    xmat = scipy.sparse.csr_matrix((data, cols, indptr), shape=(dim, dim))

    def xapply(v):
        return xmat @ v

    return xapply


# ---------------------------------------------------------------------------
# free-fermion chain integrals on [0, pi]
# ---------------------------------------------------------------------------


def _energy_integrand(k, j, gam):
    return 2.0 * math.sqrt(j * j + gam * gam - 2.0 * j * gam * math.cos(k))


def _mx_integrand(k, j, gam):
    ck = math.cos(k)
    e = math.sqrt(j * j + gam * gam - 2.0 * j * gam * ck)
    if e == 0.0:
        return 0.0
    return (gam - j * ck) / e


def ff_energy_quad(j, gam, epsabs=1e-12, epsrel=1e-12, limit=200):
    return scipy.integrate.quad(
        _energy_integrand, 0.0, _PI, args=(j, gam), epsabs=epsabs, epsrel=epsrel, limit=limit
    )


def ff_mx_quad(j, gam, epsabs=1e-12, epsrel=1e-12, limit=200):
    return scipy.integrate.quad(
        _mx_integrand, 0.0, _PI, args=(j, gam), epsabs=epsabs, epsrel=epsrel, limit=limit
    )
