"""Coin, shift and step operators of the polarization-controlled walk.

Two shift conventions live side by side and are never unified:

* :func:`apply_position_shift` (PBS): H moves to x+1, V moves to x-1.
* :func:`apply_baseline_shift` (textbook 1D walk, coin 0 <-> H): H moves to
  x-1, V moves to x+1.

The frequency shift raises f by one quantum on the H arm only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

from .errors import ConfigurationError, StateError
from .qstate import (
    DEFAULT_PRUNE_EPS,
    BasisLabel,
    Polarization,
    SparseState,
    initial_coin_state,
    initial_photon_state,
)

H, V = Polarization.H, Polarization.V

SINGLE_COIN = "single_coin"
TWO_COIN = "two_coin"
BASELINE = "baseline"
VARIANTS = (SINGLE_COIN, TWO_COIN, BASELINE)


@dataclass(frozen=True)
class CoinSchedule:
    """Which coin angle applies at a given step and position.

    Use the constructors :meth:`uniform`, :meth:`per_step` and
    :meth:`per_position` rather than the raw fields.
    """

    mode: str = "uniform"
    theta: float = 0.0
    per_step_thetas: tuple[float, ...] = ()
    per_position_thetas: Mapping[int, float] = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        if self.mode not in ("uniform", "per_step", "per_position"):
            raise ConfigurationError(f"unknown coin schedule mode {self.mode!r}")
        angles = [self.theta, *self.per_step_thetas, *self.per_position_thetas.values()]
        if not all(math.isfinite(a) for a in angles):
            raise ConfigurationError("coin angles must be finite")

    @classmethod
    def uniform(cls, theta: float) -> "CoinSchedule":
        return cls("uniform", float(theta))

    @classmethod
    def per_step(cls, thetas) -> "CoinSchedule":
        thetas = tuple(float(t) for t in thetas)
        return cls("per_step", thetas[0] if thetas else 0.0, thetas)

    @classmethod
    def per_position(cls, thetas: Mapping[int, float], default: float) -> "CoinSchedule":
        table = MappingProxyType({int(k): float(v) for k, v in thetas.items()})
        return cls("per_position", float(default), (), table)

    def check(self, steps: int) -> None:
        if self.mode == "per_step" and len(self.per_step_thetas) < steps:
            raise ConfigurationError(
                f"coin schedule has {len(self.per_step_thetas)} angles but {steps} steps were requested"
            )

    def angle_at(self, step_index: int) -> Callable[[int], float]:
        """Return ``x -> theta`` for the step taking state ``step_index`` to ``step_index + 1``."""
        if self.mode == "uniform":
            theta = self.theta
            return lambda x: theta
        if self.mode == "per_step":
            if not 0 <= step_index < len(self.per_step_thetas):
                raise ConfigurationError(
                    f"coin schedule exhausted at step {step_index} "
                    f"(length {len(self.per_step_thetas)})"
                )
            theta = self.per_step_thetas[step_index]
            return lambda x: theta
        table, default = self.per_position_thetas, self.theta
        return lambda x: table.get(x, default)


@dataclass(frozen=True)
class StepVariant:
    """``single_coin``: coin, PBS shift, EOM shift.

    ``two_coin``: coin, PBS shift, second coin, EOM shift. The second coin
    copies the first schedule unless ``second_coin`` is given.

    ``baseline``: coin followed by the textbook conditional shift; frequency
    is untouched and the walk starts from :func:`initial_coin_state`.
    """

    kind: str = SINGLE_COIN
    second_coin: CoinSchedule | None = None

    def __post_init__(self):
        if self.kind not in VARIANTS:
            raise ConfigurationError(f"unknown step variant {self.kind!r}")
        if self.second_coin is not None and self.kind != TWO_COIN:
            raise ConfigurationError("a second coin only applies to the two_coin variant")

    @classmethod
    def single_coin(cls) -> "StepVariant":
        return cls(SINGLE_COIN)

    @classmethod
    def two_coin(cls, second_coin: CoinSchedule | None = None) -> "StepVariant":
        return cls(TWO_COIN, second_coin)

    @classmethod
    def baseline(cls) -> "StepVariant":
        return cls(BASELINE)


@dataclass(frozen=True)
class WalkConfig:
    steps: int
    delta: float = 0.0
    eta: float = 0.0
    coin: CoinSchedule = field(default_factory=lambda: CoinSchedule.uniform(math.pi / 4))
    variant: StepVariant = field(default_factory=StepVariant.single_coin)
    prune_eps: float = DEFAULT_PRUNE_EPS

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 0:
            raise ConfigurationError(f"steps must be a non-negative integer, got {self.steps!r}")
        if not (math.isfinite(self.delta) and math.isfinite(self.eta)):
            raise ConfigurationError("delta and eta must be finite")
        if self.prune_eps < 0:
            raise ConfigurationError("prune_eps must be non-negative")

    @property
    def second_coin(self) -> CoinSchedule:
        return self.variant.second_coin or self.coin

    def initial_state(self) -> SparseState:
        if self.variant.kind == BASELINE:
            return initial_coin_state(self.delta, self.eta, 0, self.prune_eps)
        return initial_photon_state(self.delta, self.prune_eps)


def _accumulate(pairs, prune_eps: float) -> SparseState:
    out: dict[BasisLabel, complex] = {}
    for key, amp in pairs:
        out[key] = out.get(key, 0j) + amp
    return SparseState(out, prune_eps)


def apply_coin(state: SparseState, theta_at: Callable[[int], float] | float) -> SparseState:
    """Rotate polarization by ``[[cos, -sin], [sin, cos]]`` at each position.

    ``theta_at`` is either a constant angle or a function of the position.
    """
    if not callable(theta_at):
        const = float(theta_at)
        theta_at = lambda x: const  # noqa: E731
    cache: dict[int, tuple[float, float]] = {}
    pairs = []
    for (pol, x, f), amp in state.items():
        if x not in cache:
            th = theta_at(x)
            cache[x] = (math.cos(th), math.sin(th))
        c, s = cache[x]
        if pol is H:
            pairs.append((BasisLabel(H, x, f), c * amp))
            pairs.append((BasisLabel(V, x, f), s * amp))
        else:
            pairs.append((BasisLabel(H, x, f), -s * amp))
            pairs.append((BasisLabel(V, x, f), c * amp))
    return _accumulate(pairs, state.prune_eps)


def apply_position_shift(state: SparseState) -> SparseState:
    return SparseState(
        {BasisLabel(p, x + 1 if p is H else x - 1, f): a for (p, x, f), a in state.items()},
        state.prune_eps,
    )


def apply_frequency_shift(state: SparseState) -> SparseState:
    """Raise f by one on H components; V passes the EOM-free arm unchanged."""
    out = {}
    for (p, x, f), a in state.items():
        if f < 0:
            raise StateError(f"negative frequency index at ({p.name},{x},{f})")
        out[BasisLabel(p, x, f + 1 if p is H else f)] = a
    return SparseState(out, state.prune_eps)


def apply_baseline_shift(state: SparseState) -> SparseState:
    return SparseState(
        {BasisLabel(p, x - 1 if p is H else x + 1, f): a for (p, x, f), a in state.items()},
        state.prune_eps,
    )


def apply_baseline_shift_inverse(state: SparseState) -> SparseState:
    return SparseState(
        {BasisLabel(p, x + 1 if p is H else x - 1, f): a for (p, x, f), a in state.items()},
        state.prune_eps,
    )


def step(state: SparseState, step_index: int, config: WalkConfig) -> SparseState:
    """Apply one walk step; ``step_index`` counts from 0."""
    kind = config.variant.kind
    psi = apply_coin(state, config.coin.angle_at(step_index))
    if kind == BASELINE:
        psi = apply_baseline_shift(psi)
    else:
        psi = apply_position_shift(psi)
        if kind == TWO_COIN:
            psi = apply_coin(psi, config.second_coin.angle_at(step_index))
        psi = apply_frequency_shift(psi)
    return psi.pruned(config.prune_eps)


def evolve(config: WalkConfig) -> list[SparseState]:
    """States after 0, 1, ..., ``config.steps`` steps."""
    config.coin.check(config.steps)
    if config.variant.kind == TWO_COIN:
        config.second_coin.check(config.steps)
    states = [config.initial_state()]
    for k in range(config.steps):
        states.append(step(states[-1], k, config))
    return states
