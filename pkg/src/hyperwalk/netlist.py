"""Optical netlist for the walk: wave plates, beam splitters, EOMs, detectors.

Each step is one unit cell of bulk optics spanning every beam of that
temporal layer:

* two-coin layout: HWP -> PBS (position split) -> HWP -> PBS -> EOM on the H arm
* single-coin layout: HWP -> PBS (position split) -> PBS -> EOM on the H arm

The second PBS of a step separates H so that only H light crosses the EOM;
its V output bypasses the EOM. After the last step, the EOM and the V
bypass feed one detector per reachable position.

Per-element ``path`` is the lattice coordinate of the beam the element sits
on: 0 for layer-wide optics, 1 for the displaced H arm carrying the EOM and
the position x for detectors.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field

from .errors import ConfigurationError
from .walk import TWO_COIN, WalkConfig

HWP, PBS, EOM, DETECTOR = "hwp", "pbs", "eom", "detector"
H_ARM_PATH = 1


@dataclass(frozen=True)
class Element:
    id: int
    kind: str
    step: int
    path: int
    theta_rad: float | None = None
    shift_quanta: int | None = None
    position: int | None = None
    frequency: int | None = None

    def as_json(self) -> dict:
        out = {"id": self.id, "kind": self.kind}
        if self.theta_rad is not None:
            out["theta_rad"] = self.theta_rad
        if self.shift_quanta is not None:
            out["shift_quanta"] = self.shift_quanta
        if self.position is not None:
            out["position"] = self.position
        if self.frequency is not None:
            out["frequency"] = self.frequency
        out["step"] = self.step
        out["path"] = self.path
        return out


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    pol: str | None = None  # "H"/"V" on PBS outputs


@dataclass
class Netlist:
    steps: int
    layout: str
    elements: list[Element] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)

    def counts(self, step: int | None = None) -> Counter:
        return Counter(e.kind for e in self.elements if step is None or e.step == step)

    def detectors(self) -> list[Element]:
        return [e for e in self.elements if e.kind == DETECTOR]

    def reachable(self, source: int = 0) -> set[int]:
        adj: dict[int, list[int]] = {}
        for e in self.edges:
            adj.setdefault(e.src, []).append(e.dst)
        seen, todo = {source}, deque([source])
        while todo:
            for nxt in adj.get(todo.popleft(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen


def detector_frequency_table(t: int) -> dict[int, int]:
    """Detector position x -> frequency index (x + t) / 2."""
    if t < 1:
        raise ConfigurationError("detector table needs at least one step")
    return {x: (x + t) // 2 for x in range(-t, t + 1, 2)}


def build_netlist(t: int, config: WalkConfig | None = None) -> Netlist:
    """Lay out ``t`` unit cells and the detector row.

    HWP angles come from the config's coin schedules; position-dependent
    schedules contribute their default angle, since each HWP spans all beams.
    """
    if t < 1:
        raise ConfigurationError("a netlist needs t >= 1 steps")
    config = config or WalkConfig(steps=t)
    two_coin = config.variant.kind == TWO_COIN
    if config.variant.kind not in (TWO_COIN, "single_coin"):
        raise ConfigurationError(f"no optical layout for variant {config.variant.kind!r}")
    config.coin.check(t)

    net = Netlist(t, TWO_COIN if two_coin else "single_coin")

    def add(kind, step, path, **kw) -> int:
        el = Element(len(net.elements), kind, step, path, **kw)
        net.elements.append(el)
        return el.id

    def coin_angle(schedule, k):
        return float(schedule.angle_at(k)(0)) if schedule.mode != "per_position" else schedule.theta

    outputs: list[Edge] = []  # dangling edges of the previous layer (dst = -1)
    for k in range(t):
        s = k + 1
        hwp1 = add(HWP, s, 0, theta_rad=coin_angle(config.coin, k))
        net.edges.extend(Edge(e.src, hwp1, e.pol) for e in outputs)
        pbs1 = add(PBS, s, 0)
        net.edges.append(Edge(hwp1, pbs1))
        if two_coin:
            hwp2 = add(HWP, s, 0, theta_rad=coin_angle(config.second_coin, k))
            net.edges += [Edge(pbs1, hwp2, "H"), Edge(pbs1, hwp2, "V")]
            pbs2 = add(PBS, s, 0)
            net.edges.append(Edge(hwp2, pbs2))
        else:
            pbs2 = add(PBS, s, 0)
            net.edges += [Edge(pbs1, pbs2, "H"), Edge(pbs1, pbs2, "V")]
        eom = add(EOM, s, H_ARM_PATH, shift_quanta=1)
        net.edges.append(Edge(pbs2, eom, "H"))
        outputs = [Edge(eom, -1), Edge(pbs2, -1, "V")]

    table = detector_frequency_table(t)
    for x, f in table.items():
        det = add(DETECTOR, t, x, position=x, frequency=f)
        net.edges.extend(Edge(e.src, det, e.pol) for e in outputs)
    return net


def to_json(net: Netlist) -> str:
    doc = {
        "steps": net.steps,
        "layout": net.layout,
        "elements": [e.as_json() for e in net.elements],
        "edges": [[e.src, e.dst] for e in net.edges],
    }
    return json.dumps(doc, indent=2) + "\n"


def to_dot(net: Netlist) -> str:
    lines = [f"digraph netlist_{net.layout}_t{net.steps} {{", "  rankdir=LR;"]
    for e in net.elements:
        lines.append(f'  n{e.id} [label="{e.kind}@s{e.step}p{e.path}"];')
    for e in net.edges:
        attr = f' [label="{e.pol}"]' if e.pol else ""
        lines.append(f"  n{e.src} -> n{e.dst}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit(net: Netlist, fmt: str = "json") -> str:
    fmt = fmt.lower()
    if fmt == "json":
        return to_json(net)
    if fmt == "dot":
        return to_dot(net)
    raise ValueError(f"unknown netlist format {fmt!r}")
