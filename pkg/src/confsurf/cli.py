"""Command-line entry point.

Thin client over the service layer: ``compute | check | reconstruct |
catalog`` subcommands, JSON/CSV emission with deterministic bytes, and
the documented exit-code contract (0 ok, 1 failed check, 2 config error,
3 umbilic point, 4 degenerate ambient point, 5 integrability failure,
6 Gram drift).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import ConfsurfError, ConfigError
from . import service
from .reconstruction import ConformalData


def _read_config(path: str | None) -> service.RunConfig:
    if path is None:
        return service.RunConfig()
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}")
    return service.load_config(text)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="confsurf",
        description="Conformal surface invariants, identity checks and "
                    "surface reconstruction.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", metavar="PATH", default=None,
                        help="JSON run configuration")
        sp.add_argument("--out", metavar="PATH", default=None,
                        help="output file (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format (overrides config)")
        sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="parallelism bound (grid evaluation is "
                             "vectorized; records are always emitted in "
                             "deterministic row-major order)")

    sp = sub.add_parser("compute", help="evaluate invariants on a grid")
    common(sp)

    sp = sub.add_parser("check", help="run an identity suite")
    common(sp)
    sp.add_argument("--suite", required=True,
                    help="one of: " + ", ".join(sorted(service.SUITES)))

    sp = sub.add_parser("reconstruct",
                        help="rebuild a surface from conformal data")
    common(sp)
    sp.add_argument("--data", metavar="PATH", default=None,
                    help="tabulated conformal data (JSON); default: "
                         "chart-derived from the config surface")
    sp.add_argument("--seed-transform", metavar="SPEC", default=None,
                    help="boost:dir,rapidity or rotation:i,j,angle")

    sp = sub.add_parser("catalog", help="list surfaces and invariants")
    sp.add_argument("--out", metavar="PATH", default=None)

    return p


def _cmd_compute(args) -> int:
    config = _read_config(args.config)
    rs = service.run_compute(config)
    fmt = args.format or config.output.format
    out_path = args.out or config.output.path
    if fmt == "csv":
        _emit(service.results_to_csv(rs), out_path)
    else:
        _emit(_dump(rs.model_dump()), out_path)
    return 0


def _cmd_check(args) -> int:
    config = _read_config(args.config)
    report = service.run_check(args.suite, config)
    _emit(_dump(report), args.out or config.output.path)
    return 0 if report["passed"] else 1


def _cmd_reconstruct(args) -> int:
    config = _read_config(args.config)
    data = None
    if args.data:
        try:
            with open(args.data) as fh:
                data = ConformalData.from_json(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read data {args.data!r}: {exc}")
    transform = service.parse_seed_transform(args.seed_transform)
    report = service.run_reconstruct(config, data=data,
                                     seed_transform=transform)
    _emit(_dump(report), args.out or config.output.path)
    return 0


def _cmd_catalog(args) -> int:
    _emit(_dump(service.catalog_listing()), args.out)
    return 0


_COMMANDS = {"compute": _cmd_compute, "check": _cmd_check,
             "reconstruct": _cmd_reconstruct, "catalog": _cmd_catalog}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfsurfError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
