"""Experiment harness CLI.

Configs are flat key = value text with section headers:

    # comment
    [run]
    experiment = larmor     # one of the registered experiment names
    seed = 42               # optional, default 3
    out = results/larmor    # optional, default results/<experiment>

    [params]
    omega0 = 1.5            # numeric overrides of the experiment defaults

Unknown sections or keys are rejected with the offending name.  `run`
executes the named experiment, writes its CSV traces plus a manifest.json
(config echo, artifact hashes, wall time, per-assertion pass/fail), and
exits 0 only if every assertion passed.  `list` prints the experiment
table, optionally filtered by a substring.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .errors import ConfigError, ExperimentFailed, QmlabError
from .experiments import EXPERIMENTS


def parse_config(path) -> dict:
    """Parse the flat key=value grammar; reject unknown sections and keys."""
    section = None
    run: dict = {}
    params: dict = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in ("run", "params"):
                raise ConfigError(f"unknown section [{section}] (line {lineno})")
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value on line {lineno}: {raw!r}")
        if section is None:
            raise ConfigError(f"key outside a section on line {lineno}: {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if section == "run":
            if key not in ("experiment", "seed", "out"):
                raise ConfigError(f"unknown key '{key}' in [run]")
            run[key] = value
        else:
            params[key] = value
    if "experiment" not in run:
        raise ConfigError("missing key 'experiment' in [run]")
    name = run["experiment"]
    if name not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment '{name}'")
    exp = EXPERIMENTS[name]
    parsed_params = dict(exp.defaults)
    for key, value in params.items():
        if key not in exp.defaults:
            raise ConfigError(f"unknown key '{key}' in [params] for {name}")
        try:
            parsed_params[key] = type(exp.defaults[key])(float(value))
        except ValueError as exc:
            raise ConfigError(f"key '{key}' has non-numeric value {value!r}") from exc
        if key in exp.positive_keys and parsed_params[key] <= 0:
            raise ConfigError(f"key '{key}' must be positive")
    seed = 3
    if "seed" in run:
        try:
            seed = int(run["seed"])
        except ValueError as exc:
            raise ConfigError(f"seed must be an integer, got {run['seed']!r}") from exc
    return {
        "experiment": name,
        "seed": seed,
        "out": run.get("out"),
        "params": parsed_params,
    }


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    digest.update(path.read_bytes())
    return digest.hexdigest()


def run(config_path, seed=None, out=None, strict=False) -> dict:
    """Execute one experiment; returns (and writes) the run manifest."""
    cfg = parse_config(config_path)
    if seed is not None:
        cfg["seed"] = int(seed)
    outdir = Path(out if out is not None else cfg["out"] or f"results/{cfg['experiment']}")
    outdir.mkdir(parents=True, exist_ok=True)
    exp = EXPERIMENTS[cfg["experiment"]]
    start = time.perf_counter()
    assertions = exp.runner(cfg["params"], cfg["seed"], outdir)
    wall = time.perf_counter() - start
    artifacts = {p.name: _sha256(p) for p in sorted(outdir.glob("*.csv"))}
    manifest = {
        "experiment": cfg["experiment"],
        "seed": cfg["seed"],
        "params": cfg["params"],
        "artifacts": artifacts,
        "wall_time_s": wall,
        "assertions": assertions,
        "passed": all(a["passed"] for a in assertions),
    }
    with open(outdir / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if strict and not manifest["passed"]:
        first = next(a["name"] for a in assertions if not a["passed"])
        raise ExperimentFailed(f"assertion '{first}' failed")
    return manifest


def list_experiments(filter_text: str = "") -> list[tuple[str, str]]:
    """(name, validated statement) rows, filtered case-insensitively."""
    needle = filter_text.lower()
    rows = []
    for name, exp in EXPERIMENTS.items():
        if needle in name.lower() or needle in exp.description.lower():
            rows.append((name, exp.description))
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qmlab", description="Run reproducible quantum-mechanics experiments."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run an experiment from a config file")
    runp.add_argument("config", help="path to the config file")
    runp.add_argument("--seed", type=int, default=None, help="override [run] seed")
    runp.add_argument("--out", default=None, help="override output directory")
    listp = sub.add_parser("list", help="list experiments and what each validates")
    listp.add_argument("filter", nargs="?", default="", help="substring filter")
    args = parser.parse_args(argv)

    if args.command == "list":
        rows = list_experiments(args.filter)
        width = max((len(name) for name, _ in rows), default=10)
        for name, desc in rows:
            print(f"{name:<{width}}  {desc}")
        return 0

    try:
        manifest = run(args.config, seed=args.seed, out=args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except QmlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for a in manifest["assertions"]:
        status = "pass" if a["passed"] else "FAIL"
        print(f"[{status}] {a['name']}: value={a['value']:.6g} ({a['threshold']})")
    if not manifest["passed"]:
        first = next(a["name"] for a in manifest["assertions"] if not a["passed"])
        print(f"experiment failed: assertion '{first}'", file=sys.stderr)
        return 1
    print(f"all assertions passed ({manifest['wall_time_s']:.2f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
