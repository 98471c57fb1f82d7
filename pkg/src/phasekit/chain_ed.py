"""Finite-chain exact diagonalization of eps sum s^z - 4j sum s^z s^z - h sum s^x.

Periodic even chains, spin-z product basis (bit i of the basis index is spin
i, bit set = up).  The longitudinal and Ising terms are diagonal; the
transverse term is applied matrix-free through the kernel layer, and the
ground state comes from ARPACK with a fixed starting vector.

Exactly degenerate ground spaces (classical points) are resolved into the
symmetric sector: spin-flip at eps = 0, translation otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as spla

from . import _kernels

_DEGEN_TOL = 1e-12


class ChainEDError(RuntimeError):
    pass


@dataclass(frozen=True)
class ChainParams:
    eps: float
    j: float
    h: float
    n_sites: int
    boundary: str = "periodic"


@dataclass(frozen=True)
class ChainGroundResult:
    energy: float  # per site
    m_x: float
    m_z: float
    s_pi: float
    gap: float
    degenerate: bool


def _validate_sites(n_sites: int) -> None:
    if n_sites % 2 != 0 or not 4 <= n_sites <= 20:
        raise ChainEDError(f"n_sites must be even and within [4, 20], got {n_sites}")


class ChainSolver:
    """Reusable diagonal data + transverse matvec for one (eps, j, n_sites)."""

    def __init__(self, eps: float, j: float, n_sites: int, boundary: str = "periodic"):
        _validate_sites(n_sites)
        if boundary != "periodic":
            raise ChainEDError("only periodic chains are supported")
        self.eps = eps
        self.j = j
        self.n = n_sites
        self.dim = 1 << n_sites
        states = np.arange(self.dim, dtype=np.int64)
        bits = (states[:, None] >> np.arange(n_sites)) & 1
        sz = bits - 0.5
        self.sz_sum = sz.sum(axis=1)
        self.stag = (sz * ((-1) ** np.arange(n_sites))[None, :]).sum(axis=1)
        zz = (sz * np.roll(sz, -1, axis=1)).sum(axis=1)
        self.diag = eps * self.sz_sum - 4.0 * j * zz
        self._xapply = _kernels.make_chain_xapply(n_sites)

    # -- ground state ------------------------------------------------------

    def ground(self, h: float, v0: np.ndarray | None = None, tol: float = 1e-10):
        """Lowest eigenpair; returns (energy_total, vector, gap, degenerate)."""
        if h == 0.0:
            return self._ground_diagonal()
        diag = self.diag

        def matvec(v):
            return diag * v - h * self._xapply(v)

        op = spla.LinearOperator((self.dim, self.dim), matvec=matvec, dtype=np.float64)
        if v0 is None:
            v0 = np.full(self.dim, 1.0 / np.sqrt(self.dim))
        ncv = min(self.dim, 40)
        try:
            vals, vecs = spla.eigsh(op, k=2, which="SA", v0=v0, tol=tol, ncv=ncv)
        except spla.ArpackNoConvergence as exc:
            raise ChainEDError(f"eigensolver did not converge: {exc}") from exc
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
        gap = float(vals[1] - vals[0])
        if gap < _DEGEN_TOL * max(1.0, abs(vals[0])):
            vec = self._symmetrize(vecs[:, :2])
            return float(vals[0]), vec, gap, True
        return float(vals[0]), np.ascontiguousarray(vecs[:, 0]), gap, False

    def fast_ground(self, h: float, v0: np.ndarray | None = None, tol: float = 1e-10):
        """k=1 solve for landscape scans; returns (energy_total, vector).

        Warm-start with the previous eigenvector via ``v0``.  Degenerate
        classical points only occur at h = 0, which takes the exact
        diagonal path.
        """
        if h == 0.0:
            e, vec, _, _ = self._ground_diagonal()
            return e, vec
        diag = self.diag

        def matvec(v):
            return diag * v - h * self._xapply(v)

        op = spla.LinearOperator((self.dim, self.dim), matvec=matvec, dtype=np.float64)
        if v0 is None:
            v0 = np.full(self.dim, 1.0 / np.sqrt(self.dim))
        try:
            vals, vecs = spla.eigsh(op, k=1, which="SA", v0=v0, tol=tol, ncv=min(self.dim, 12))
        except spla.ArpackNoConvergence as exc:
            raise ChainEDError(f"eigensolver did not converge: {exc}") from exc
        return float(vals[0]), np.ascontiguousarray(vecs[:, 0])

    def _ground_diagonal(self):
        order = np.argsort(self.diag, kind="stable")
        e0 = self.diag[order[0]]
        degen = np.flatnonzero(self.diag - e0 <= _DEGEN_TOL * max(1.0, abs(e0)))
        vec = np.zeros(self.dim)
        vec[degen] = 1.0 / np.sqrt(degen.size)
        gap = float(np.partition(self.diag, degen.size)[degen.size] - e0) if degen.size < self.dim else 0.0
        return float(e0), vec, gap, degen.size > 1

    def _symmetrize(self, pair: np.ndarray) -> np.ndarray:
        """Project a 2-fold degenerate ground space onto the symmetric sector."""
        if self.eps == 0.0:
            perm = np.arange(self.dim) ^ (self.dim - 1)  # global spin flip
        else:
            states = np.arange(self.dim, dtype=np.int64)
            perm = ((states >> 1) | ((states & 1) << (self.n - 1))).astype(np.int64)
        s_pair = pair[perm, :]
        m = pair.T @ s_pair
        m = 0.5 * (m + m.T)
        w, u = np.linalg.eigh(m)
        vec = pair @ u[:, np.argmax(w)]
        return vec / np.linalg.norm(vec)

    # -- observables -------------------------------------------------------

    def observables(self, vec: np.ndarray) -> tuple[float, float, float]:
        """(m_x, m_z, s_pi) per the staggered structure factor convention."""
        prob = vec * vec
        m_x = float(vec @ self._xapply(vec)) / self.n
        m_z = float(prob @ self.sz_sum) / self.n
        s_pi = float(prob @ (self.stag * self.stag)) / (self.n * self.n)
        return m_x, m_z, s_pi


def ed_chain_ground(c: ChainParams, tol: float = 1e-10) -> ChainGroundResult:
    """Ground-state energy per site and observables of the finite chain."""
    solver = ChainSolver(c.eps, c.j, c.n_sites, c.boundary)
    e_tot, vec, gap, degenerate = solver.ground(c.h, tol=tol)
    m_x, m_z, s_pi = solver.observables(vec)
    return ChainGroundResult(
        energy=e_tot / c.n_sites, m_x=m_x, m_z=m_z, s_pi=s_pi, gap=gap, degenerate=degenerate
    )
