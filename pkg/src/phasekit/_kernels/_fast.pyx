# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: mean-field relaxation, chain transverse matvec,
free-fermion chain integrands (scipy LowLevelCallable)."""

from libc.math cimport cos, sin, sqrt

import numpy as np
import scipy.integrate

_PI = np.pi


def mf_reduced_energy(omega, eps, g, j, ta, tb):
    """Variational energy per site at the stationary photon amplitude."""
    sa, ca = np.sin(ta), np.cos(ta)
    sb, cb = np.sin(tb), np.cos(tb)
    s = sa + sb
    return -(g * g / (4.0 * omega)) * (s * s) + 0.25 * eps * (ca + cb) - j * (ca * cb)


cdef inline double _fval(double cg, double eps, double j, double ta, double tb) noexcept nogil:
    cdef double sa = sin(ta)
    cdef double ca = cos(ta)
    cdef double sb = sin(tb)
    cdef double cb = cos(tb)
    cdef double s = sa + sb
    return -cg * (s * s) + 0.25 * eps * (ca + cb) - j * (ca * cb)


cdef int _relax_one(double cg, double eps, double j, double gtol, int max_iter,
                    double* pta, double* ptb) noexcept nogil:
    cdef double ta = pta[0]
    cdef double tb = ptb[0]
    cdef double sa, ca, sb, cb, s, ga, gb, haa, hbb, hab, det
    cdef double da, db, slope, f0, f1, step, na, nb
    cdef int it, bt, accepted
    for it in range(max_iter):
        sa = sin(ta); ca = cos(ta); sb = sin(tb); cb = cos(tb)
        s = sa + sb
        ga = -2.0 * cg * s * ca - 0.25 * eps * sa + j * sa * cb
        gb = -2.0 * cg * s * cb - 0.25 * eps * sb + j * sb * ca
        if ga * ga + gb * gb < gtol * gtol:
            pta[0] = ta; ptb[0] = tb
            return 1
        haa = -2.0 * cg * (ca * ca - sa * s) - 0.25 * eps * ca + j * ca * cb
        hbb = -2.0 * cg * (cb * cb - sb * s) - 0.25 * eps * cb + j * cb * ca
        hab = -2.0 * cg * ca * cb - j * sa * sb
        det = haa * hbb - hab * hab
        if det > 0.0 and haa + hbb > 0.0:
            da = (hbb * ga - hab * gb) / det
            db = (haa * gb - hab * ga) / det
        else:
            da = ga; db = gb
        slope = ga * da + gb * db
        f0 = _fval(cg, eps, j, ta, tb)
        step = 1.0
        accepted = 0
        for bt in range(40):
            na = ta - step * da
            nb = tb - step * db
            f1 = _fval(cg, eps, j, na, nb)
            if f1 <= f0 - 1e-4 * step * slope:
                ta = na; tb = nb
                accepted = 1
                break
            step *= 0.5
        if not accepted:
            pta[0] = ta; ptb[0] = tb
            return 2
    pta[0] = ta; ptb[0] = tb
    return 0


def mf_relax_batch(double omega, double eps, double g, double j,
                   theta_a, theta_b, double gtol=1e-10, int max_iter=200):
    """Relax every start to a stationary point of the reduced energy.

    Same update rule as the NumPy reference; returns
    ``(theta_a, theta_b, energy, status)``.
    """
    cdef double[::1] ta = np.array(theta_a, dtype=np.float64, copy=True).ravel()
    cdef double[::1] tb = np.array(theta_b, dtype=np.float64, copy=True).ravel()
    cdef int n = ta.shape[0]
    status_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] status = status_arr
    cdef double cg = g * g / (4.0 * omega)
    cdef int i
    with nogil:
        for i in range(n):
            status[i] = _relax_one(cg, eps, j, gtol, max_iter, &ta[i], &tb[i])
    ta_arr = np.asarray(ta)
    tb_arr = np.asarray(tb)
    e = mf_reduced_energy(omega, eps, g, j, ta_arr, tb_arr)
    return ta_arr, tb_arr, e, status_arr


# ---------------------------------------------------------------------------
# chain transverse-term application: out[s] = (1/2) sum_i v[s xor 2^i]
# ---------------------------------------------------------------------------


cdef void _xapply_impl(double[::1] v, double[::1] out, int n_sites) noexcept nogil:
    cdef long dim = (<long>1) << n_sites
    cdef long s
    cdef int i
    cdef double acc
    for s in range(dim):
        acc = 0.0
        for i in range(n_sites):
            acc += v[s ^ ((<long>1) << i)]
        out[s] = 0.5 * acc


def make_chain_xapply(int n_sites):
    cdef long dim = (<long>1) << n_sites

    def xapply(v):
        v = np.ascontiguousarray(v, dtype=np.float64).ravel()
        out = np.empty(dim, dtype=np.float64)
        _xapply_impl(v, out, n_sites)
        return out

    return xapply


# ---------------------------------------------------------------------------
# free-fermion chain integrals on [0, pi]
# ---------------------------------------------------------------------------


cdef api double _ff_energy_integrand(int n, double* xx) noexcept nogil:
    cdef double k = xx[0]
    cdef double j = xx[1]
    cdef double gam = xx[2]
    return 2.0 * sqrt(j * j + gam * gam - 2.0 * j * gam * cos(k))


cdef api double _ff_mx_integrand(int n, double* xx) noexcept nogil:
    cdef double k = xx[0]
    cdef double j = xx[1]
    cdef double gam = xx[2]
    cdef double ck = cos(k)
    cdef double e = sqrt(j * j + gam * gam - 2.0 * j * gam * ck)
    if e == 0.0:
        return 0.0
    return (gam - j * ck) / e


_cb_energy = None
_cb_mx = None


def _get_callable(name):
    import phasekit._kernels._fast as _self
    from scipy import LowLevelCallable

    return LowLevelCallable.from_cython(_self, name)


def ff_energy_quad(double j, double gam, double epsabs=1e-12, double epsrel=1e-12, int limit=200):
    global _cb_energy
    if _cb_energy is None:
        _cb_energy = _get_callable("_ff_energy_integrand")
    return scipy.integrate.quad(
        _cb_energy, 0.0, _PI, args=(j, gam), epsabs=epsabs, epsrel=epsrel, limit=limit
    )


def ff_mx_quad(double j, double gam, double epsabs=1e-12, double epsrel=1e-12, int limit=200):
    global _cb_mx
    if _cb_mx is None:
        _cb_mx = _get_callable("_ff_mx_integrand")
    return scipy.integrate.quad(
        _cb_mx, 0.0, _PI, args=(j, gam), epsabs=epsabs, epsrel=epsrel, limit=limit
    )
