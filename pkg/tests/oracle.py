"""Independent reference implementations used only by the tests.

Nothing here imports the sparse simulator or the Jacobi solver: the walk
is a dense matrix-vector product on a truncated lattice, negativity uses
numpy's LAPACK eigensolver on uncompacted matrices, and eigenvalues of
small matrices come from bisection on an inertia count.
"""
import numpy as np

H, V = 0, 1


class DenseWalk:
    """Walk on positions [-T-1, T+1] and frequencies [0, T+1], ordered pol (x) pos (x) freq."""

    def __init__(self, T):
        self.T = T
        self.xs = np.arange(-T - 1, T + 2)
        self.nx = len(self.xs)
        self.nf = T + 2
        self.dim = 2 * self.nx * self.nf
        up = np.eye(self.nx, k=-1)  # |x+1><x|
        down = np.eye(self.nx, k=1)  # |x-1><x|
        raise_f = np.eye(self.nf, k=-1)  # |f+1><f|
        ih, iv = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
        ix, i_f = np.eye(self.nx), np.eye(self.nf)
        self.pbs = np.kron(ih, np.kron(up, i_f)) + np.kron(iv, np.kron(down, i_f))
        self.eom = np.kron(ih, np.kron(ix, raise_f)) + np.kron(iv, np.kron(ix, i_f))
        self.baseline = np.kron(ih, np.kron(down, i_f)) + np.kron(iv, np.kron(up, i_f))

    def index(self, pol, x, f):
        return (pol * self.nx + (x + self.T + 1)) * self.nf + f

    def coin(self, theta_of_x):
        blocks = np.zeros((self.dim, self.dim))
        for ix, x in enumerate(self.xs):
            th = theta_of_x(int(x))
            c, s = np.cos(th), np.sin(th)
            mat = np.array([[c, -s], [s, c]])
            proj = np.zeros((self.nx, self.nx))
            proj[ix, ix] = 1.0
            blocks += np.kron(mat, np.kron(proj, np.eye(self.nf)))
        return blocks

    def photon_state(self, delta):
        psi = np.zeros(self.dim, dtype=complex)
        psi[self.index(H, 0, 0)] = np.cos(delta)
        psi[self.index(V, 0, 0)] = -np.sin(delta)
        return psi

    def coin_state(self, delta, eta):
        psi = np.zeros(self.dim, dtype=complex)
        psi[self.index(H, 0, 0)] = np.cos(delta)
        psi[self.index(V, 0, 0)] = np.exp(-1j * eta) * np.sin(delta)
        return psi

    def run(self, steps, delta, theta1, theta2=None, variant="single_coin", eta=0.0):
        """theta1/theta2: callables (step_index, x) -> angle. Returns list of vectors."""
        assert steps <= self.T
        psi = self.coin_state(delta, eta) if variant == "baseline" else self.photon_state(delta)
        out = [psi]
        for k in range(steps):
            psi = self.coin(lambda x: theta1(k, x)) @ psi
            if variant == "baseline":
                psi = self.baseline @ psi
            else:
                psi = self.pbs @ psi
                if variant == "two_coin":
                    t2 = theta2 or theta1
                    psi = self.coin(lambda x: t2(k, x)) @ psi
                psi = self.eom @ psi
            out.append(psi)
        return out

    def to_dict(self, psi, eps=0.0):
        out = {}
        for pol in (H, V):
            for x in self.xs:
                for f in range(self.nf):
                    a = psi[self.index(pol, int(x), f)]
                    if abs(a) > eps:
                        out[(pol, int(x), f)] = complex(a)
        return out

    def tensor(self, psi):
        return psi.reshape(2, self.nx, self.nf)


def dense_reduced(tensor, keep):
    """Reduced density matrix over axes ``keep`` (ordered), tracing the others."""
    axes = list(range(tensor.ndim))
    rest = [a for a in axes if a not in keep]
    t = np.transpose(tensor, list(keep) + rest)
    dk = int(np.prod([tensor.shape[a] for a in keep]))
    m = t.reshape(dk, -1)
    return m @ m.conj().T, [tensor.shape[a] for a in keep]


def dense_negativity(rho, da, db):
    r = rho.reshape(da, db, da, db).transpose(2, 1, 0, 3).reshape(da * db, da * db)
    ev = np.linalg.eigvalsh(r)
    return float(-ev[ev < 0].sum()), ev


def negative_pivots(a, lam):
    """Number of eigenvalues of Hermitian ``a`` below ``lam`` (Sylvester inertia)."""
    m = np.array(a, dtype=complex) - lam * np.eye(len(a))
    n = len(m)
    count = 0
    for k in range(n):
        piv = m[k, k].real
        if piv == 0.0:
            piv = 1e-300
        if piv < 0:
            count += 1
        if k + 1 < n:
            col = m[k + 1:, k] / piv
            m[k + 1:, k + 1:] -= np.outer(col, m[k, k + 1:])
    return count


def bisection_eigenvalues(a, tol=1e-13):
    """Eigenvalues of a small Hermitian matrix by bisecting the characteristic
    polynomial's root count (inertia of A - lambda I) inside the Gershgorin bound."""
    a = np.asarray(a, dtype=complex)
    n = len(a)
    radius = max(abs(a[i, i]) + sum(abs(a[i, j]) for j in range(n) if j != i) for i in range(n))
    vals = []
    for k in range(n):
        lo, hi = -radius - 1.0, radius + 1.0
        # smallest lambda with more than k eigenvalues below it
        while hi - lo > tol * max(1.0, abs(lo) + abs(hi)):
            mid = 0.5 * (lo + hi)
            if negative_pivots(a, mid) > k:
                hi = mid
            else:
                lo = mid
        vals.append(0.5 * (lo + hi))
    return np.array(vals)


def charpoly_value(a, lam):
    """det(A - lam I) by Gaussian elimination with partial pivoting."""
    m = np.array(a, dtype=complex) - lam * np.eye(len(a))
    n = len(m)
    det = 1.0 + 0j
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if m[p, k] == 0:
            return 0.0
        if p != k:
            m[[k, p]] = m[[p, k]]
            det = -det
        det *= m[k, k]
        m[k + 1:, k:] -= np.outer(m[k + 1:, k] / m[k, k], m[k, k:])
    return det.real
