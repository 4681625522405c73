"""``projsymp`` command line: run verification suites and write JSON reports.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad configuration,
3 the truncation level did not stabilize (the suggested level is printed).
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
from datetime import datetime, timezone

from . import __version__
from .errors import ConfigError, UnstableTruncation
from .suites import SUITES, ScenarioConfig, run_suites

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_UNSTABLE = 0, 1, 2, 3

COMMANDS = {name: (name,) for name in SUITES}
COMMANDS["all"] = None  # the suites selected in the config


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="projsymp", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=list(COMMANDS), help="suite to run")
    p.add_argument("--config", metavar="PATH", help="scenario JSON (curve, truncation, seeds, ...)")
    p.add_argument("--out", metavar="PATH", help="write the JSON report here")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--truncation", type=int, help="override the truncation level N")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json",
                     help="print the JSON report to stdout")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text",
                     help="print a one-line-per-check summary (default)")
    p.set_defaults(fmt="text")
    return p


def load_config(args) -> ScenarioConfig:
    data = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if args.seed is not None:
        data = dict(data, seed=args.seed)
    if args.truncation is not None:
        data = dict(data, truncation=args.truncation)
    return ScenarioConfig.from_dict(data)


def make_report(command: str, cfg: ScenarioConfig, checks) -> dict:
    """Report dict; everything except ``timestamp`` is a function of the inputs."""
    return {
        "tool": {"name": "projsymp", "version": __version__},
        "command": command,
        "config": cfg.to_json(),
        "status": "pass" if all(c.passed for c in checks) else "fail",
        "checks": [c.to_json() for c in checks],
        "timestamp": {
            "utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "python": platform.python_version(),
            "seconds": {c.name: round(c.seconds, 3) for c in checks},
        },
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def _summary(report: dict) -> str:
    lines = []
    for c in report["checks"]:
        w = c["witness"]
        extra = ""
        if "kappa" in w:
            extra = f"  kappa={w['kappa']}"
        elif "report" in w and "dim_h1" in w["report"]:
            extra = f"  dim_h1={w['report']['dim_h1']}"
        lines.append(f"{c['status'].upper():5} {c['name']}{extra}")
    lines.append(f"overall: {report['status']}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    names = COMMANDS[args.command] or tuple(cfg.suites)
    try:
        checks = run_suites(cfg, names)
    except UnstableTruncation as exc:
        print(f"unstable truncation: {exc}; rerun with --truncation {exc.suggested}",
              file=sys.stderr)
        return EXIT_UNSTABLE
    report = make_report(args.command, cfg, checks)
    text = dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text if args.fmt == "json" else _summary(report))
    return EXIT_PASS if report["status"] == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
