"""Command-line front end.

    qstbox check FILE [--witness] [--format text|json] [--trace] [--seed N]
    qstbox validate FILE
    qstbox derive-tables [--format text|json]

``FILE`` may be ``-`` for standard input.  Exit status: 0 for SAT or a clean
validation, 1 for UNSAT, 2 for usage, parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import allen
from .reasoner import Reasoner
from .tbox import TBox, TBoxError, parse_tbox, validate
from .witness import format_text, to_json_obj

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_ERROR = 2


@dataclass
class RunConfig:
    command: str
    path: Optional[str] = None
    witness: bool = False
    format: str = "text"
    trace: bool = False
    seed: Optional[int] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qstbox", description="Decide satisfiability of spatio-temporal TBoxes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="decide satisfiability")
    check.add_argument("path", help="TBox file, or - for stdin")
    check.add_argument("--witness", action="store_true", help="print a model when SAT")
    check.add_argument("--format", choices=("text", "json"), default="text")
    check.add_argument("--trace", action="store_true", help="log every search branch to stderr")
    check.add_argument("--seed", type=_seed, default=None, help="randomise search order")

    val = sub.add_parser("validate", help="report well-formedness diagnostics")
    val.add_argument("path")
    val.add_argument("--format", choices=("text", "json"), default="text")

    tables = sub.add_parser("derive-tables", help="print the derived Allen translation table")
    tables.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _seed(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return value


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> TBox:
    return parse_tbox(_read(path))


def _emit(obj, fmt: str, text: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")
    else:
        out.write(text + "\n")


def _check(cfg: RunConfig, out) -> int:
    t = _load(cfg.path)
    diags = validate(t)
    if diags:
        for d in diags:
            print(f"{cfg.path}: {d}", file=sys.stderr)
        return EXIT_ERROR
    verdict = Reasoner(t, cfg.seed).decide()
    if verdict.sat:
        obj = {"result": "SAT", "branches": verdict.branches}
        lines = ["SAT"]
        if cfg.witness:
            obj["witness"] = to_json_obj(verdict.witness)
            lines.append(format_text(verdict.witness))
        _emit(obj, cfg.format, "\n".join(lines), out)
        return EXIT_SAT
    c = verdict.conflict
    obj = {
        "result": "UNSAT",
        "branches": verdict.branches,
        "conflict": {"stage": c.stage, "concepts": list(c.concepts),
                     "detail": list(c.detail), "message": str(c)},
    }
    _emit(obj, cfg.format, f"UNSAT\nconflict: {c}\nbranches: {verdict.branches}", out)
    return EXIT_UNSAT


def _validate(cfg: RunConfig, out) -> int:
    diags = validate(_load(cfg.path))
    text = "\n".join(diags) if diags else "ok"
    _emit({"diagnostics": diags}, cfg.format, text, out)
    return EXIT_ERROR if diags else EXIT_SAT


def derive_tables() -> List[dict]:
    rows = []
    for atom in allen.AllenAtom:
        derived = allen.derived_symbols(atom)
        published = allen.PUBLISHED_TABLE[atom]
        rows.append({
            "atom": atom.value,
            "translation": str(allen.translate_atom(atom)),
            "derived": derived,
            "published": published,
            "partition": str(allen.partition_of(atom)),
            "status": "ok" if derived == published else "ERRATUM",
        })
    return rows


def _tables(cfg: RunConfig, out) -> int:
    rows = derive_tables()
    lines = [f"{'atom':<5} {'translation':<42} {'derived':<8} {'published':<10} status"]
    for r in rows:
        lines.append(f"{r['atom']:<5} {r['translation']:<42} {r['derived']:<8} "
                     f"{r['published']:<10} {r['status']}")
    _emit({"rows": rows}, cfg.format, "\n".join(lines), out)
    return EXIT_SAT


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if cfg.witness and cfg.command != "check":
        print("--witness only applies to check", file=sys.stderr)
        return EXIT_ERROR
    try:
        if cfg.command == "check":
            return _check(cfg, out)
        if cfg.command == "validate":
            return _validate(cfg, out)
        if cfg.command == "derive-tables":
            return _tables(cfg, out)
    except TBoxError as exc:
        print(f"{cfg.path}:{exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"cannot read {cfg.path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"unknown command {cfg.command!r}", file=sys.stderr)
    return EXIT_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        path=getattr(args, "path", None),
        witness=getattr(args, "witness", False),
        format=args.format,
        trace=getattr(args, "trace", False),
        seed=getattr(args, "seed", None),
    )
    if cfg.trace:
        logging.basicConfig(level=logging.DEBUG, format="%(message)s", stream=sys.stderr)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
