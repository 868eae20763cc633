"""Sparse pure states on the polarization x position x frequency space.

A ket is labelled by ``(pol, x, f)``: polarization H/V, a signed position
index and a non-negative frequency index counted in EOM shift quanta above
the carrier. States are immutable; every operator returns a new state.
"""
from __future__ import annotations

import cmath
import math
from enum import IntEnum
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import StateError

DEFAULT_PRUNE_EPS = 1e-14


class Polarization(IntEnum):
    H = 0
    V = 1


class BasisLabel(NamedTuple):
    pol: Polarization
    x: int
    f: int

    def __repr__(self) -> str:
        return f"({self.pol.name},{self.x},{self.f})"


def label(pol, x: int, f: int) -> BasisLabel:
    """Build a validated label; ``pol`` may be a Polarization, 0/1 or 'H'/'V'."""
    if isinstance(pol, str):
        pol = Polarization[pol.upper()]
    else:
        pol = Polarization(pol)
    x, f = int(x), int(f)
    if f < 0:
        raise StateError(f"negative frequency index {f} in label ({pol.name},{x},{f})")
    return BasisLabel(pol, x, f)


class SparseState:
    """Map from :class:`BasisLabel` to complex amplitude.

    Entries with ``abs(amplitude) < prune_eps`` are dropped on construction.
    Non-finite amplitudes and negative frequency indices are rejected.
    """

    __slots__ = ("_entries", "prune_eps")

    def __init__(self, entries: Mapping | Iterable = (), prune_eps: float = DEFAULT_PRUNE_EPS):
        if prune_eps < 0:
            raise StateError("prune_eps must be non-negative")
        items = entries.items() if isinstance(entries, Mapping) else entries
        kept: dict[BasisLabel, complex] = {}
        for key, amp in items:
            if not (isinstance(key, BasisLabel) and isinstance(key.pol, Polarization)):
                key = label(*key)
            if key.f < 0:
                raise StateError(f"negative frequency index in {key!r}")
            amp = complex(amp)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise StateError(f"non-finite amplitude {amp} at {key!r}")
            if abs(amp) < prune_eps or amp == 0:
                continue
            kept[key] = amp
        self._entries = MappingProxyType(kept)
        self.prune_eps = float(prune_eps)

    @property
    def entries(self) -> Mapping[BasisLabel, complex]:
        return self._entries

    def __getitem__(self, key) -> complex:
        key = key if isinstance(key, BasisLabel) else label(*key)
        return self._entries.get(key, 0j)

    def __contains__(self, key) -> bool:
        key = key if isinstance(key, BasisLabel) else label(*key)
        return key in self._entries

    def __iter__(self) -> Iterator[BasisLabel]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def items(self):
        return self._entries.items()

    def labels(self) -> list[BasisLabel]:
        return sorted(self._entries)

    def scaled(self, factor: complex) -> "SparseState":
        return SparseState({k: v * factor for k, v in self.items()}, self.prune_eps)

    def pruned(self, eps: float) -> "SparseState":
        return SparseState(self._entries, eps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseState):
            return NotImplemented
        return dict(self._entries) == dict(other._entries)

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v:.6g}" for k, v in sorted(self.items()))
        return f"SparseState({{{body}}})"


def basis_state(lbl, prune_eps: float = DEFAULT_PRUNE_EPS) -> SparseState:
    """Single ket with amplitude 1."""
    lbl = lbl if isinstance(lbl, BasisLabel) else label(*lbl)
    if lbl.f < 0:
        raise StateError(f"negative frequency index in {lbl!r}")
    return SparseState({lbl: 1.0 + 0j}, prune_eps)


def initial_coin_state(delta: float, eta: float = 0.0, x0: int = 0,
                       prune_eps: float = DEFAULT_PRUNE_EPS) -> SparseState:
    """``cos(delta)|H> + exp(-i eta) sin(delta)|V>`` at position ``x0``, f = 0."""
    return SparseState(
        {
            BasisLabel(Polarization.H, x0, 0): math.cos(delta),
            BasisLabel(Polarization.V, x0, 0): cmath.exp(-1j * eta) * math.sin(delta),
        },
        prune_eps,
    )


def initial_photon_state(delta: float, prune_eps: float = DEFAULT_PRUNE_EPS) -> SparseState:
    """``cos(delta)|H> - sin(delta)|V>`` at x = 0, f = 0."""
    return SparseState(
        {
            BasisLabel(Polarization.H, 0, 0): math.cos(delta),
            BasisLabel(Polarization.V, 0, 0): -math.sin(delta),
        },
        prune_eps,
    )


def norm(state: SparseState) -> float:
    return math.sqrt(math.fsum(abs(a) ** 2 for a in state.entries.values()))


def inner_product(a: SparseState, b: SparseState) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if len(a) > len(b):
        return inner_product(b, a).conjugate()
    re = []
    im = []
    for key, amp in a.items():
        other = b.entries.get(key)
        if other is not None:
            z = amp.conjugate() * other
            re.append(z.real)
            im.append(z.imag)
    return complex(math.fsum(re), math.fsum(im))
