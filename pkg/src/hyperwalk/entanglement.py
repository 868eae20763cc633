"""Reduced density matrices, partial transpose, negativity and Schmidt ranks.

Density matrices are built only over labels present in the state's support
(compacted), so a 20-step Freq-Pos matrix has at most 21 * 21 rows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from .eigen import check_hermitian, hermitian_eigenvalues
from .errors import InvariantViolation, StateError
from .qstate import SparseState


class Subsystem(Enum):
    Pol = 0
    Pos = 1
    Freq = 2


Part = Union[Subsystem, Sequence[Subsystem]]

RANK_TOL = 1e-10
FORMULA_AGREEMENT = 1e-9


def _as_part(part: Part) -> tuple[Subsystem, ...]:
    if isinstance(part, Subsystem):
        return (part,)
    out = tuple(Subsystem(p) if not isinstance(p, Subsystem) else p for p in part)
    if not out:
        raise ValueError("empty subsystem part")
    return out


def _key(lbl, part: tuple[Subsystem, ...]):
    if len(part) == 1:
        return lbl[part[0].value]
    return tuple(lbl[s.value] for s in part)


@dataclass(frozen=True)
class DensityMatrix:
    """Dense bipartite density matrix with rows ordered (a, b), b fastest."""

    dim_a: int
    dim_b: int
    data: np.ndarray
    labels_a: tuple
    labels_b: tuple
    parts: tuple[tuple[Subsystem, ...], ...] = ()

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def hermiticity_error(self) -> float:
        return float(np.abs(self.data - self.data.conj().T).max(initial=0.0))


def reduced_density_matrix(state: SparseState, keep: Sequence[Part]) -> DensityMatrix:
    """Trace out every subsystem not named in ``keep``.

    ``keep`` holds one or two parts; each part is a subsystem or a tuple of
    subsystems. With one part the result has ``dim_b == 1``.
    """
    if len(state) == 0:
        raise StateError("cannot build a density matrix from an empty state")
    if isinstance(keep, Subsystem):
        keep = [keep]
    parts = [_as_part(p) for p in keep]
    if not 1 <= len(parts) <= 2:
        raise ValueError("keep must name one or two parts")
    named = [s for part in parts for s in part]
    if len(set(named)) != len(named):
        raise ValueError("a subsystem appears in more than one part")
    rest = tuple(s for s in Subsystem if s not in named)
    part_a = parts[0]
    part_b = parts[1] if len(parts) == 2 else ()

    labels_a = tuple(sorted({_key(k, part_a) for k in state}))
    labels_b = tuple(sorted({_key(k, part_b) for k in state})) if part_b else ((),)
    labels_r = tuple(sorted({_key(k, rest) for k in state})) if rest else ((),)
    ia = {v: i for i, v in enumerate(labels_a)}
    ib = {v: i for i, v in enumerate(labels_b)}
    ir = {v: i for i, v in enumerate(labels_r)}
    da, db = len(labels_a), len(labels_b)

    psi = np.zeros((da * db, len(labels_r)), dtype=np.complex128)
    for k, amp in state.items():
        row = ia[_key(k, part_a)] * db + (ib[_key(k, part_b)] if part_b else 0)
        col = ir[_key(k, rest)] if rest else 0
        psi[row, col] = amp
    rho = psi @ psi.conj().T
    return DensityMatrix(da, db, rho, labels_a, labels_b, tuple(p for p in (part_a, part_b) if p))


def partial_transpose(rho: DensityMatrix) -> DensityMatrix:
    """Transpose the A indices: ((a, b), (a', b')) -> ((a', b), (a, b'))."""
    da, db = rho.dim_a, rho.dim_b
    t = rho.data.reshape(da, db, da, db).transpose(2, 1, 0, 3).reshape(da * db, da * db)
    return DensityMatrix(da, db, np.ascontiguousarray(t), rho.labels_a, rho.labels_b, rho.parts)


def trace_norm(m: np.ndarray) -> float:
    """Sum of |eigenvalues| of a Hermitian matrix."""
    return math.fsum(np.abs(hermitian_eigenvalues(m)))


@dataclass(frozen=True)
class NegativityReport:
    raw: float
    normalized: float
    negative_eigenvalues: tuple[float, ...]
    dims: tuple[int, int]
    trace_norm: float

    @property
    def bound(self) -> float:
        return (min(self.dims) - 1) / 2


def negativity_of(rho: DensityMatrix) -> NegativityReport:
    """Negativity of a bipartite density matrix, transposing subsystem A.

    Computes both ``(||rho^T_A||_1 - 1) / 2`` and the summed magnitude of
    the negative eigenvalues; they must agree to 1e-9.
    """
    check_hermitian(rho.data)
    evals = hermitian_eigenvalues(partial_transpose(rho).data)
    tn = math.fsum(np.abs(evals))
    trace = math.fsum(evals)
    negatives = tuple(float(v) for v in evals if v < 0.0)
    raw = math.fsum(-v for v in negatives)
    from_norm = (tn - trace) / 2
    if abs(from_norm - raw) > FORMULA_AGREEMENT or abs((tn - 1) / 2 - raw) > FORMULA_AGREEMENT:
        raise InvariantViolation(
            f"negativity formulas disagree: trace-norm form {(tn - 1) / 2:.3e}, "
            f"eigenvalue form {raw:.3e}"
        )
    d_min = min(rho.dim_a, rho.dim_b)
    normalized = 0.0 if d_min == 1 else raw / ((d_min - 1) / 2)
    return NegativityReport(raw, normalized, negatives, (rho.dim_a, rho.dim_b), tn)


def negativity(state: SparseState, part_a: Part, part_b: Part) -> NegativityReport:
    """Negativity between ``part_a`` and ``part_b`` after tracing out the rest."""
    return negativity_of(reduced_density_matrix(state, [part_a, part_b]))


def negativity_curve(run: Sequence[SparseState], part_a: Part, part_b: Part) -> list[NegativityReport]:
    return [negativity(state, part_a, part_b) for state in run]


def schmidt_rank_vector(state: SparseState, tol: float = RANK_TOL) -> tuple[int, int, int]:
    """Numerical rank of each single-subsystem reduced state (Pol, Pos, Freq)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    ranks = []
    for sub in Subsystem:
        rho = reduced_density_matrix(state, [sub])
        ranks.append(int(np.count_nonzero(hermitian_eigenvalues(rho.data) > tol)))
    return tuple(ranks)
