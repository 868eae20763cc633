"""Cyclic Jacobi eigenvalues for complex Hermitian matrices.

Each rotation first applies a phase to index q so the complex (p, q) entry
becomes real, then annihilates it with a real Givens rotation. The sweep
loop is compiled with numba.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .errors import ConvergenceError, NotHermitianError

HERMITIAN_TOL = 1e-8
OFFDIAG_TOL = 1e-12


def check_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    dev = np.abs(m - m.conj().T)
    if dev.size and dev.max() > tol:
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        raise NotHermitianError(int(i), int(j), float(dev[i, j]))


@njit(cache=True)
def _max_offdiag(a):
    n = a.shape[0]
    off = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            v = abs(a[i, j])
            if v > off:
                off = v
    return off


@njit(cache=True)
def _jacobi_sweeps(a, target, max_sweeps):
    """Cyclic-by-row sweeps on ``a`` in place; returns sweeps used, or -1."""
    n = a.shape[0]
    # entries this small cannot block convergence; rotating them is wasted work
    skip = 1e-3 * target
    for sweep in range(max_sweeps):
        if _max_offdiag(a) < target:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                b = abs(apq)
                if b < skip:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * b)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ph = apq.conjugate() / b
                # rows p, q of G^H A G off the 2x2 block; columns mirror them
                g10c = -s * ph.conjugate()
                g11c = c * ph.conjugate()
                for k in range(n):
                    if k == p or k == q:
                        continue
                    apk = a[p, k]
                    aqk = a[q, k]
                    rp = c * apk + g10c * aqk
                    rq = s * apk + g11c * aqk
                    a[p, k] = rp
                    a[q, k] = rq
                    a[k, p] = rp.conjugate()
                    a[k, q] = rq.conjugate()
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * b
                a[q, q] = aqq + t * b
    if _max_offdiag(a) < target:
        return max_sweeps
    return -1


def hermitian_eigenvalues(m, tol: float = OFFDIAG_TOL, max_sweeps: int = 100) -> np.ndarray:
    """Sorted eigenvalues of a complex Hermitian matrix by cyclic Jacobi.

    Converged when the largest off-diagonal magnitude drops below
    ``tol * max(1, ||m||_F)``.

    Raises
    ------
    NotHermitianError
        If some ``|m[i, j] - conj(m[j, i])|`` exceeds 1e-8.
    ConvergenceError
        If ``max_sweeps`` sweeps do not reach the tolerance.
    """
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    check_hermitian(a)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0)
    a = np.ascontiguousarray(0.5 * (a + a.conj().T))
    target = tol * max(1.0, float(np.linalg.norm(a)))
    if _jacobi_sweeps(a, target, max_sweeps) < 0:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps "
            f"(off-diagonal {_max_offdiag(a):.3e})"
        )
    return np.sort(np.diagonal(a).real)
