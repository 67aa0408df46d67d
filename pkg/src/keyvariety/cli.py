"""Command-line driver: construct varieties, run verification suites, print
the Hilbert series.

Exit status is 0 when everything checks out, 1 when a verification fails and
2 for usage, configuration or parameter errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .algebra import as_gaussian
from .errors import ContractViolation
from .series import generator_relation_reading, hilbert_summary
from .suites import SUITES, Settings, run_suites
from .tower import (BranchData, ProjectionParams, construct_curve, construct_E, construct_K3,
                    node_count, project_T)

SCHEMA = 1
OBJECTS = ("curve", "E", "K3", "Tprime", "Wprime")
CONFIG_KEYS = {
    "object", "branch", "alpha", "beta", "l", "m", "prefer_first", "suites", "overrides",
    "degree_bound", "truncation", "seed", "format", "out", "timings",
}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    values: dict = field(default_factory=dict)
    seed: int = 0
    fmt: str = "text"
    out: str | None = None
    timings: bool = False
    note: str | None = None  # first failing check, for stderr

    def get(self, key, default=None):
        return self.values.get(key, default)


def load_config(subcommand, path, args) -> RunConfig:
    values = {}
    if path:
        try:
            with open(path) as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        if not isinstance(values, dict):
            raise ConfigError("config must be a JSON object")
    unknown = sorted(set(values) - CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    cfg = RunConfig(subcommand, values)
    cfg.seed = args.seed if args.seed is not None else values.get("seed", 0)
    if not isinstance(cfg.seed, int) or cfg.seed < 0:
        raise ConfigError("seed must be a non-negative integer")
    cfg.fmt = args.format or values.get("format", "text")
    if cfg.fmt not in ("text", "json"):
        raise ConfigError("format must be text or json")
    cfg.out = args.out or values.get("out")
    cfg.timings = bool(args.timings or values.get("timings", False))
    for key in ("alpha", "beta"):
        if key in values:
            _scalar(values[key], key)
    for key in ("l", "m"):
        if key in values:
            v = values[key]
            if not isinstance(v, list) or len(v) != 4:
                raise ConfigError(f"{key} must be a list of 4 scalars")
            for x in v:
                _scalar(x, key)
    return cfg


def _scalar(x, key):
    try:
        return as_gaussian(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{key}: cannot parse {x!r} as a Gaussian rational ({exc})") from None


# ---------------------------------------------------------------------------


def _branch(cfg: RunConfig, kind: str) -> BranchData:
    spec = cfg.get("branch")
    if spec is None:
        return BranchData.random_curve(cfg.seed) if kind == "curve" else BranchData.random_k3(cfg.seed)
    if not isinstance(spec, dict) or set(spec) != {"f", "g"}:
        raise ConfigError('branch must be {"f": ..., "g": ...}')
    return BranchData.curve(spec["f"], spec["g"]) if kind == "curve" else BranchData.k3(spec["f"], spec["g"])


def _projection(cfg: RunConfig) -> ProjectionParams:
    return ProjectionParams.make(cfg.get("alpha", 0), cfg.get("beta", 0),
                                 cfg.get("l", [0, 0, 0, 0]), cfg.get("m", [0, 0, 0, 0]))


def build_object(cfg: RunConfig):
    name = cfg.get("object")
    if name not in OBJECTS:
        raise ConfigError(f"object must be one of {', '.join(OBJECTS)}")
    if name == "curve":
        return construct_curve(_branch(cfg, "curve"))
    if name == "E":
        return construct_E(_branch(cfg, "curve"))
    if name == "K3":
        return construct_K3(_branch(cfg, "k3"), cfg.get("prefer_first", True))
    if name == "Tprime":
        return project_T(_projection(cfg))
    from .extension import build_Wprime
    return build_Wprime(_projection(cfg))


def _presentation_text(P) -> str:
    lines = [f"# {P.name} in {', '.join(f'{n}:{w}' for n, w in zip(P.ambient.names, P.ambient.weights))}"]
    for c in P.verify():
        status = "ok" if c.ok else "FAILED"
        lines.append(f"[{c.index}] degree {c.degree} {status}: {P.equations[c.index].to_text()} = 0")
    for k, v in sorted(P.metadata.items()):
        lines.append(f"# {k}: {v}")
    return "\n".join(lines)


def cmd_construct(cfg: RunConfig):
    P = build_object(cfg)
    ok = P.verified()
    if cfg.fmt == "json":
        doc = {"schema": SCHEMA, "object": cfg.get("object"), "verified": ok, **P.to_json()}
        return json.dumps(doc, indent=2, sort_keys=True, default=str), 0 if ok else 1
    return _presentation_text(P), 0 if ok else 1


def _settings(cfg: RunConfig) -> Settings:
    overrides = cfg.get("overrides", {})
    if not isinstance(overrides, dict):
        raise ConfigError("overrides must map correction names to forms")
    bound = cfg.get("degree_bound")
    if bound is not None and (not isinstance(bound, int) or bound < 0):
        raise ConfigError("degree_bound must be a non-negative integer")
    return Settings(cfg.seed, overrides, bound, cfg.get("truncation", 12))


def _suites(cfg: RunConfig):
    names = cfg.get("suites", ["all"])
    if isinstance(names, str):
        names = [names]
    bad = [n for n in names if n != "all" and n not in SUITES]
    if bad:
        raise ConfigError(f"unknown suites {bad}; choose from {', '.join(SUITES)} or all")
    return names


def _check_lines(report):
    out = []
    for c in report.checks:
        verdict = "PASS" if c.passed else "FAIL"
        line = f"{verdict} {c.suite}/{c.id} [{c.anchor}]"
        if c.detail:
            line += f" {c.detail}"
        out.append(line)
    return out


def _failure_note(report):
    c = report.first_failure()
    return None if c is None else f"{c.suite}/{c.id}: {c.detail or 'failed'}"


def cmd_verify(cfg: RunConfig):
    report = run_suites(_suites(cfg), _settings(cfg))
    code = 0 if report.ok else 1
    cfg.note = _failure_note(report)
    if cfg.fmt == "json":
        doc = {"schema": SCHEMA, "ok": report.ok,
               "checks": [c.to_json(cfg.timings) for c in report.checks]}
        return json.dumps(doc, indent=2, sort_keys=True), code
    lines = _check_lines(report)
    passed = sum(c.passed for c in report.checks)
    lines.append(f"{passed}/{len(report.checks)} checks passed")
    return "\n".join(lines), code


def _hilbert_doc(truncation):
    s = hilbert_summary(truncation)
    return {
        "series": s["series"].to_text(),
        "numerator": s["numerator"].to_text(),
        "numerator_with_degree4_generator": s["numerator_with_degree4_generator"].to_text(),
        "series_coefficients": s["series"].to_json(),
        "reading": generator_relation_reading(truncation),
    }


def cmd_hilbert(cfg: RunConfig):
    truncation = cfg.get("truncation", 12)
    if not isinstance(truncation, int) or truncation < 4:
        raise ConfigError("truncation must be an integer >= 4")
    doc = _hilbert_doc(truncation)
    if cfg.fmt == "json":
        return json.dumps({"schema": SCHEMA, **doc}, indent=2, sort_keys=True), 0
    lines = [f"P_Y(t,e) = {doc['series']}",
             f"numerator = {doc['numerator']}",
             f"numerator with degree-4 generator = {doc['numerator_with_degree4_generator']}"]
    lines += [f"- {x}" for x in doc["reading"]]
    return "\n".join(lines), 0


def cmd_report(cfg: RunConfig):
    settings = _settings(cfg)
    report = run_suites(_suites(cfg), settings)
    cfg.note = _failure_note(report)
    nodes = [node_count(BranchData.random_k3(cfg.seed + k)).to_json() for k in range(5)]
    objects = {}
    for name in OBJECTS:
        sub = RunConfig("construct", {**cfg.values, "object": name}, cfg.seed)
        if name in ("Tprime", "Wprime") and "alpha" not in cfg.values:
            sub.values.update({"alpha": 2, "beta": 3, "l": [1, 2, 3, 4], "m": [5, 6, 7, 8]})
        P = build_object(sub)
        objects[name] = {"equations": len(P.equations), "verified": P.verified()}
    code = 0 if report.ok and all(o["verified"] for o in objects.values()) else 1
    doc = {"schema": SCHEMA, "ok": code == 0, "objects": objects, "nodes": nodes,
           "hilbert": _hilbert_doc(settings.truncation),
           "checks": [c.to_json(cfg.timings) for c in report.checks]}
    if cfg.fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, default=str), code
    lines = ["objects:"]
    lines += [f"  {k}: {v['equations']} equations, verified={v['verified']}" for k, v in objects.items()]
    lines.append("node counts: " + ", ".join(str(n["count"]) for n in nodes))
    lines.append(f"P_Y(t,e) = {doc['hilbert']['series']}")
    lines.append("checks:")
    lines += ["  " + x for x in _check_lines(report)]
    lines.append(f"overall: {'pass' if code == 0 else 'fail'}")
    return "\n".join(lines), code


COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "hilbert": cmd_hilbert,
            "report": cmd_report}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="keyvariety", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON parameter file")
        p.add_argument("--format", choices=("text", "json"))
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--timings", action="store_true", help="include per-check timings")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = load_config(args.command, args.config, args)
        text, code = COMMANDS[args.command](cfg)
    except (ConfigError, ContractViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if code == 1 and cfg.note:
        print(f"first failure: {cfg.note}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
