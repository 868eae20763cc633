"""Experiment runner: walk sweeps written out as CSV files plus a manifest.

Usage::

    python -m hyperwalk run --config sweep.yaml [--out DIR] [--jobs N]
    python -m hyperwalk netlist --steps 4 --layout two_coin --format dot

Exit codes: 0 success, 2 bad configuration, 3 I/O failure, 4 a numerical
invariant (norm drift, negativity bound) was violated.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

import yaml

from . import __version__
from .entanglement import Subsystem, negativity, schmidt_rank_vector
from .errors import ConfigurationError, HyperwalkError, InvariantViolation
from .netlist import build_netlist, emit
from .observables import frequency_distribution, joint_distribution, position_distribution
from .qstate import DEFAULT_PRUNE_EPS, SparseState, norm
from .walk import BASELINE, SINGLE_COIN, TWO_COIN, VARIANTS, CoinSchedule, StepVariant, WalkConfig, evolve

log = logging.getLogger("hyperwalk")

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_INVARIANT = 0, 2, 3, 4

NORM_DRIFT_TOL = 1e-9
NEGATIVITY_SLACK = 1e-9

PARTITIONS = {
    "negativity_pf": (Subsystem.Pol, Subsystem.Freq),
    "negativity_fpos": (Subsystem.Freq, Subsystem.Pos),
    "negativity_ppos": (Subsystem.Pol, Subsystem.Pos),
}
OUTPUTS = ("positions", "frequencies", "joint", *PARTITIONS, "schmidt", "netlist")
DEFAULT_THETAS = (15.0, 30.0, 45.0, 60.0, 75.0)

StateHook = Callable[[int, SparseState], SparseState]


@dataclass(frozen=True)
class RunSpec:
    steps: int
    delta_deg: float = 0.0
    eta_deg: float = 0.0
    # each entry is one job: a number (uniform coin) or a per-step list
    theta_deg: tuple = DEFAULT_THETAS
    theta2_deg: float | tuple | None = None
    variant: str = SINGLE_COIN
    outputs: tuple[str, ...] = OUTPUTS
    out_dir: str | None = None
    prune_eps: float = DEFAULT_PRUNE_EPS

    def digest(self) -> str:
        doc = asdict(self)
        doc.pop("out_dir")
        text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


# ---------------------------------------------------------------- parsing

_KEYS = {f for f in RunSpec.__dataclass_fields__}


def _number(key, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError(f"{key}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigurationError(f"{key}: expected a finite number, got {value!r}")
    return float(value)


def _angle_or_schedule(key, value):
    if isinstance(value, (list, tuple)):
        if not value:
            raise ConfigurationError(f"{key}: per-step schedule must not be empty")
        return tuple(_number(key, v) for v in value)
    return _number(key, value)


def parse_config(text: str) -> RunSpec:
    """Parse a YAML (or JSON) run document into a :class:`RunSpec`.

    Unknown keys are rejected. Angles are in degrees.
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"config is not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigurationError("config must be a key-value mapping")
    for key in doc:
        if key not in _KEYS:
            raise ConfigurationError(f"unknown key: {key}")
    if "steps" not in doc:
        raise ConfigurationError("steps: required key missing")

    steps = doc["steps"]
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 0:
        raise ConfigurationError(f"steps: expected a non-negative integer, got {steps!r}")
    kw: dict = {"steps": steps}
    for key in ("delta_deg", "eta_deg"):
        if key in doc:
            kw[key] = _number(key, doc[key])
    if "theta_deg" in doc:
        thetas = doc["theta_deg"]
        if not isinstance(thetas, list):
            thetas = [thetas]
        if not thetas:
            raise ConfigurationError("theta_deg: expected at least one angle")
        kw["theta_deg"] = tuple(_angle_or_schedule("theta_deg", t) for t in thetas)
    if doc.get("theta2_deg") is not None:
        kw["theta2_deg"] = _angle_or_schedule("theta2_deg", doc["theta2_deg"])
    if "variant" in doc:
        if doc["variant"] not in VARIANTS:
            raise ConfigurationError(f"variant: expected one of {', '.join(VARIANTS)}, got {doc['variant']!r}")
        kw["variant"] = doc["variant"]
    if "outputs" in doc:
        outs = doc["outputs"]
        if not isinstance(outs, list) or not all(isinstance(o, str) for o in outs):
            raise ConfigurationError("outputs: expected a list of output names")
        bad = [o for o in outs if o not in OUTPUTS]
        if bad:
            raise ConfigurationError(f"outputs: unknown output {bad[0]!r}; choose from {', '.join(OUTPUTS)}")
        kw["outputs"] = tuple(o for o in OUTPUTS if o in outs)
    if "out_dir" in doc:
        if not isinstance(doc["out_dir"], str):
            raise ConfigurationError("out_dir: expected a path string")
        kw["out_dir"] = doc["out_dir"]
    if "prune_eps" in doc:
        eps = _number("prune_eps", doc["prune_eps"])
        if eps < 0:
            raise ConfigurationError("prune_eps: expected a non-negative number")
        kw["prune_eps"] = eps
    if kw.get("theta2_deg") is not None and kw.get("variant", SINGLE_COIN) != TWO_COIN:
        raise ConfigurationError("theta2_deg: only valid with variant two_coin")

    spec = RunSpec(**kw)
    for entry in (*spec.theta_deg, spec.theta2_deg):
        if isinstance(entry, tuple) and len(entry) < spec.steps:
            raise ConfigurationError(
                f"theta_deg: per-step schedule has {len(entry)} angles for {spec.steps} steps"
            )
    return spec


# ---------------------------------------------------------------- jobs

def _schedule(entry) -> CoinSchedule:
    if isinstance(entry, tuple):
        return CoinSchedule.per_step([math.radians(v) for v in entry])
    return CoinSchedule.uniform(math.radians(entry))


def walk_config(spec: RunSpec, theta_entry) -> WalkConfig:
    if spec.variant == TWO_COIN:
        second = _schedule(spec.theta2_deg) if spec.theta2_deg is not None else None
        variant = StepVariant.two_coin(second)
    else:
        variant = StepVariant(spec.variant)
    return WalkConfig(
        steps=spec.steps,
        delta=math.radians(spec.delta_deg),
        eta=math.radians(spec.eta_deg),
        coin=_schedule(theta_entry),
        variant=variant,
        prune_eps=spec.prune_eps,
    )


def job_name(index: int, entry) -> str:
    if isinstance(entry, tuple):
        return f"schedule_{index:02d}"
    return f"theta_{entry:g}"


def _fmt(v) -> str:
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    return format(float(v), ".17g")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def check_state(k: int, state: SparseState) -> None:
    drift = abs(norm(state) - 1.0)
    if drift > NORM_DRIFT_TOL:
        raise InvariantViolation(f"norm drift {drift:.3e} at step {k}")


def run_job(spec: RunSpec, index: int, entry, state_hook: StateHook | None = None) -> dict[str, str]:
    """Simulate one sweep entry; returns relative file name -> file text."""
    name = job_name(index, entry)
    cfg = walk_config(spec, entry)
    states = evolve(cfg)
    if state_hook is not None:
        states = [state_hook(k, s) for k, s in enumerate(states)]
    for k, s in enumerate(states):
        check_state(k, s)

    def theta_at(k):
        if isinstance(entry, tuple):
            return entry[max(k - 1, 0)] if entry else 0.0
        return entry

    files: dict[str, str] = {}
    outs = set(spec.outputs)
    if "positions" in outs:
        rows = []
        for k, s in enumerate(states):
            for x, p in position_distribution(s, (-k, k)).rows():
                rows.append((theta_at(k), k, x, p))
        files[f"{name}/positions.csv"] = _csv(["theta_deg", "step", "x", "probability"], rows)
    if "frequencies" in outs:
        rows = []
        for k, s in enumerate(states):
            for f, p in frequency_distribution(s, (0, k)).rows():
                rows.append((theta_at(k), k, f, p))
        files[f"{name}/frequencies.csv"] = _csv(["theta_deg", "step", "f", "probability"], rows)
    if "joint" in outs:
        rows = [
            (theta_at(k), k, x, f, p)
            for k, s in enumerate(states)
            for (x, f), p in joint_distribution(s).items()
        ]
        files[f"{name}/joint.csv"] = _csv(["theta_deg", "step", "x", "f", "probability"], rows)
    for out, (part_a, part_b) in PARTITIONS.items():
        if out not in outs:
            continue
        rows = []
        for k, s in enumerate(states):
            rep = negativity(s, part_a, part_b)
            if not (0.0 <= rep.raw <= rep.bound + NEGATIVITY_SLACK):
                raise InvariantViolation(
                    f"{out}: negativity {rep.raw:.6g} outside [0, {rep.bound}] at step {k}"
                )
            rows.append((theta_at(k), k, rep.raw, rep.normalized, rep.dims[0], rep.dims[1]))
        files[f"{name}/{out}.csv"] = _csv(
            ["theta_deg", "step", "raw", "normalized", "dim_a", "dim_b"], rows
        )
    if "schmidt" in outs:
        rows = [(theta_at(k), k, *schmidt_rank_vector(s)) for k, s in enumerate(states)]
        files[f"{name}/schmidt.csv"] = _csv(["theta_deg", "step", "r_pol", "r_pos", "r_freq"], rows)
    if "netlist" in outs:
        if spec.steps >= 1 and spec.variant != BASELINE:
            net = build_netlist(spec.steps, cfg)
            files[f"{name}/netlist.json"] = emit(net, "json")
            files[f"{name}/netlist.dot"] = emit(net, "dot")
        else:
            log.warning("%s: no netlist for steps=%d variant=%s", name, spec.steps, spec.variant)
    return files


def _job_entry(args):
    spec, index, entry = args
    return run_job(spec, index, entry)


def run(spec: RunSpec, out_dir: str | Path | None = None, jobs: int = 1,
        state_hook: StateHook | None = None) -> int:
    """Run every sweep entry, write the CSVs and ``manifest.json``; return an exit code."""
    target = Path(out_dir or spec.out_dir or "hyperwalk_out")
    try:
        tasks = [(spec, i, entry) for i, entry in enumerate(spec.theta_deg)]
        if jobs > 1 and state_hook is None and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_job_entry, tasks))
        else:
            results = [run_job(s, i, e, state_hook) for s, i, e in tasks]
    except InvariantViolation as exc:
        log.error("invariant violated: %s", exc)
        return EXIT_INVARIANT
    except ConfigurationError as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG

    files = {}
    for res in results:
        files.update(res)
    try:
        manifest = []
        for rel in sorted(files):
            path = target / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            data = files[rel].encode()
            path.write_bytes(data)
            manifest.append({"name": rel, "sha256": hashlib.sha256(data).hexdigest()})
        doc = {"spec_hash": spec.digest(), "files": manifest}
        (target / "manifest.json").write_text(json.dumps(doc, indent=2) + "\n")
    except OSError as exc:
        log.error("I/O failure: %s", exc)
        return EXIT_IO
    log.info("wrote %d files to %s", len(files), target)
    return EXIT_OK


# ---------------------------------------------------------------- entry point

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperwalk", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a configured sweep and write CSV outputs")
    r.add_argument("--config", required=True, help="YAML/JSON run document")
    r.add_argument("--out", help="output directory (overrides out_dir in the config)")
    r.add_argument("--jobs", type=int, default=1, help="parallel sweep jobs")

    n = sub.add_parser("netlist", help="print the optical netlist for t steps")
    n.add_argument("--steps", type=int, required=True)
    n.add_argument("--layout", choices=[SINGLE_COIN, TWO_COIN], default=TWO_COIN)
    n.add_argument("--format", choices=["json", "dot"], default="json")
    n.add_argument("--theta-deg", type=float, default=45.0)
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "netlist":
        try:
            variant = StepVariant.two_coin() if args.layout == TWO_COIN else StepVariant.single_coin()
            cfg = WalkConfig(args.steps, coin=CoinSchedule.uniform(math.radians(args.theta_deg)),
                             variant=variant)
            sys.stdout.write(emit(build_netlist(args.steps, cfg), args.format))
        except HyperwalkError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        return EXIT_OK

    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        spec = parse_config(text)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    return run(spec, args.out, args.jobs)


if __name__ == "__main__":
    sys.exit(main())
