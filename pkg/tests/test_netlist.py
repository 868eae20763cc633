import json
import math
import re

import pytest

from hyperwalk import (
    CoinSchedule,
    ConfigurationError,
    StepVariant,
    WalkConfig,
    build_netlist,
    detector_frequency_table,
    emit,
    evolve,
    position_distribution,
)
from hyperwalk.netlist import EOM, PBS

TWO = WalkConfig(1, variant=StepVariant.two_coin())
SINGLE = WalkConfig(1)


def counts(net):
    c = net.counts()
    return c["hwp"], c["pbs"], c["eom"], c["detector"]


def test_four_step_two_coin_counts():
    assert counts(build_netlist(4, TWO)) == (8, 8, 4, 5)


def test_one_step_two_coin():
    net = build_netlist(1, TWO)
    assert counts(net) == (2, 2, 1, 2)
    assert sorted(d.position for d in net.detectors()) == [-1, 1]


def test_odd_steps_odd_detectors():
    assert sorted(d.position for d in build_netlist(3, TWO).detectors()) == [-3, -1, 1, 3]


@pytest.mark.parametrize("t", range(1, 51))
@pytest.mark.parametrize("cfg, per_step", [(TWO, (2, 2, 1)), (SINGLE, (1, 2, 1))])
def test_count_law(t, cfg, per_step):
    net = build_netlist(t, cfg)
    for s in range(1, t + 1):
        c = net.counts(s)
        assert (c["hwp"], c["pbs"], c["eom"]) == per_step
    assert len(net.detectors()) == t + 1
    assert sorted(d.position for d in net.detectors()) == list(range(-t, t + 1, 2))


@pytest.mark.parametrize("cfg", [TWO, SINGLE])
def test_eoms_only_on_h_arms(cfg):
    net = build_netlist(6, cfg)
    kinds = {e.id: e.kind for e in net.elements}
    eoms = {e.id for e in net.elements if e.kind == EOM}
    incoming = [e for e in net.edges if e.dst in eoms]
    assert len(incoming) == len(eoms)
    assert all(e.pol == "H" and kinds[e.src] == PBS for e in incoming)
    # no EOM sits on a V-labelled edge, in either direction
    assert not any(e.pol == "V" and (e.src in eoms or e.dst in eoms) for e in net.edges)


def test_connected_from_source():
    net = build_netlist(5, TWO)
    reach = net.reachable(0)
    assert {d.id for d in net.detectors()} <= reach
    assert reach == {e.id for e in net.elements}


def test_zero_steps_rejected():
    with pytest.raises(ConfigurationError):
        build_netlist(0, TWO)


def test_detector_frequency_table():
    assert detector_frequency_table(4) == {-4: 0, -2: 1, 0: 2, 2: 3, 4: 4}
    assert detector_frequency_table(1) == {-1: 0, 1: 1}
    for t in range(1, 12):
        vals = list(detector_frequency_table(t).values())
        assert all(b - a == 1 for a, b in zip(vals, vals[1:]))


def test_detectors_carry_their_frequency():
    net = build_netlist(4, TWO)
    assert {d.position: d.frequency for d in net.detectors()} == detector_frequency_table(4)


@pytest.mark.parametrize("t", [1, 4, 9])
def test_detectors_cover_simulated_support(t):
    cfg = WalkConfig(t, coin=CoinSchedule.uniform(math.pi / 4), variant=StepVariant.two_coin())
    support = set(position_distribution(evolve(cfg)[-1]).support)
    assert {d.position for d in build_netlist(t, cfg).detectors()} == support


def _check_schema(doc):
    assert set(doc) == {"steps", "layout", "elements", "edges"}
    assert isinstance(doc["steps"], int) and doc["layout"] in ("single_coin", "two_coin")
    optional = {"theta_rad": float, "shift_quanta": int, "position": int, "frequency": int}
    for el in doc["elements"]:
        assert {"id", "kind", "step", "path"} <= set(el)
        assert el["kind"] in ("hwp", "pbs", "eom", "detector")
        for key in set(el) - {"id", "kind", "step", "path"}:
            assert isinstance(el[key], optional[key])
        for key in ("id", "step", "path"):
            assert isinstance(el[key], int)
    ids = {el["id"] for el in doc["elements"]}
    for edge in doc["edges"]:
        assert len(edge) == 2 and set(edge) <= ids


def test_json_schema_and_determinism():
    net = build_netlist(1, TWO)
    text = emit(net, "json")
    _check_schema(json.loads(text))
    assert emit(build_netlist(1, TWO), "json").encode() == text.encode()
    assert json.loads(text)["elements"][0]["theta_rad"] == pytest.approx(math.pi / 4)


def test_dot_output():
    net = build_netlist(3, SINGLE)
    dot = emit(net, "dot")
    assert dot == emit(build_netlist(3, SINGLE), "dot")
    assert dot.startswith("digraph ") and dot.rstrip().endswith("}")
    nodes = re.findall(r'^\s+n(\d+) \[label="(\w+)@s(\d+)p(-?\d+)"\];$', dot, re.M)
    edges = re.findall(r"^\s+n(\d+) -> n(\d+)", dot, re.M)
    assert len(nodes) == len(net.elements)
    assert len(edges) == len(net.edges)
    node_ids = {n[0] for n in nodes}
    assert all(a in node_ids and b in node_ids for a, b in edges)


def test_unknown_format():
    with pytest.raises(ValueError):
        emit(build_netlist(1, TWO), "svg")
