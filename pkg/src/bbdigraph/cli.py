"""Command-line front end.

Exit status: 0 when the property holds or the object is found, 1 when it
fails or is absent, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
from pathlib import Path

from . import __version__
from .catalog import ExceptionName, build_exception
from .conditions import evaluate, satisfies_Bk
from .core import is_strong
from .errors import BBDError
from .factors import MatchDirection, cycle_factor, hall_violation
from .formats import parse_bbd, render_bbd
from .ham import is_hamiltonian
from .search import (
    DEFAULT_PROBABILITIES,
    PROFILES,
    SCHEMA_VERSION,
    Exhaustive,
    RandomMode,
    TheoremId,
    explore_problem1,
    verify,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _default_workers() -> int:
    env = os.environ.get("BBD_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise BBDError(f"cannot read {path}: {exc.strerror}") from None
    return parse_bbd(text)


class _Out:
    def __init__(self, as_json: bool, quiet: bool):
        self.as_json = as_json
        self.quiet = quiet

    def emit(self, payload: dict, text: str) -> None:
        if self.as_json:
            print(json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2, sort_keys=True))
        elif not self.quiet:
            print(text)

    def note(self, text: str) -> None:
        if not self.quiet and not self.as_json:
            print(text, file=sys.stderr)


def cmd_check(args, out: _Out) -> int:
    D = _read(args.file)
    rep = evaluate(D, args.condition)
    if rep.holds:
        text = f"{rep.condition_id}: holds"
    else:
        w = rep.witness
        text = (
            f"{rep.condition_id}: fails at {w.pair.kind.value} pair {w.pair} "
            f"with degrees {w.degrees[0]}, {w.degrees[1]}"
        )
    out.emit({"report": "check", **rep.to_dict()}, text)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_hamilton(args, out: _Out) -> int:
    C = is_hamiltonian(_read(args.file))
    text = f"hamiltonian cycle: {C}" if C else "no hamiltonian cycle"
    out.emit({"report": "hamilton", "hamiltonian": C is not None, "cycle": str(C) if C else None}, text)
    return EXIT_OK if C else EXIT_FAIL


def cmd_factor(args, out: _Out) -> int:
    D = _read(args.file)
    F = cycle_factor(D)
    if F is not None:
        out.emit({"report": "factor", "factor": str(F), "hall_violation": None}, f"cycle factor: {F}")
        return EXIT_OK
    for direction in MatchDirection:
        S = hall_violation(D, direction)
        if S is not None:
            break
    names = sorted(str(v) for v in S)
    payload = {"report": "factor", "factor": None, "hall_violation": {"direction": direction.value, "set": names}}
    out.emit(payload, f"no cycle factor: Hall's condition fails {direction.value} at {{{', '.join(names)}}}")
    return EXIT_FAIL


def cmd_catalog(args, out: _Out) -> int:
    text = render_bbd(build_exception(ExceptionName(args.name)))
    if args.out:
        Path(args.out).write_text(text)
        out.note(f"wrote {args.name} to {args.out}")
    elif out.as_json:
        out.emit({"report": "catalog", "name": args.name, "bbd": text}, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args, out: _Out) -> int:
    if args.exhaustive:
        mode = Exhaustive()
    else:
        seed = args.seed if args.seed is not None else secrets.randbits(32)
        mode = RandomMode(args.samples, seed, tuple(args.p))
        out.note(f"seed: {seed}")
    rep = verify(TheoremId(args.theorem), args.a, mode, workers=args.workers)
    lines = [
        f"theorem {rep.theorem_id.value}, a={rep.a}, {mode.to_dict()['kind']}",
        f"generated {rep.generated}, strong {rep.strong_count}, premise {rep.premise_count}, checked {rep.checked}",
    ]
    if rep.exception_matches:
        lines.append("exceptions: " + ", ".join(f"{k} x{v}" for k, v in sorted(rep.exception_matches.items())))
    lines.append(f"counterexamples: {len(rep.counterexamples)}")
    lines += rep.counterexamples
    out.emit(rep.to_dict(), "\n".join(lines))
    out.note(f"elapsed {rep.elapsed:.2f}s")
    return EXIT_FAIL if rep.counterexamples else EXIT_OK


def cmd_explore(args, out: _Out) -> int:
    seed = args.seed if args.seed is not None else secrets.randbits(32)
    out.note(f"seed: {seed}")
    rep = explore_problem1(args.a, args.k, args.samples, seed, args.profile, workers=args.workers)
    lines = [
        f"a={rep.a}, k={rep.k}, samples={rep.samples}, seed={rep.seed}, profile={rep.profile}",
        f"generated {rep.generated}, strong {rep.strong_count}, B_{rep.k} {rep.premise_count}",
        f"candidates (strong, B_{rep.k}, non-hamiltonian): {len(rep.found)}",
    ]
    for text in rep.found:
        lines += ["", "!!! candidate (re-verified from its BBD text):", text.rstrip("\n")]
        lines += _transcript(parse_bbd(text), rep.k)
    out.emit(rep.to_dict(), "\n".join(lines))
    out.note(f"elapsed {rep.elapsed:.2f}s")
    # a candidate means the hamiltonicity property failed on a B_k digraph
    return EXIT_FAIL if rep.found else EXIT_OK


def _transcript(D, k: int) -> list[str]:
    bk = satisfies_Bk(D, k)
    C = is_hamiltonian(D)
    return [
        f"  strong: {is_strong(D)}",
        f"  B_{k}: {'holds' if bk.holds else 'fails'}",
        f"  hamiltonian cycle: {C if C else 'none'}",
    ]


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 <= p <= 1:
        raise argparse.ArgumentTypeError("probability must lie in [0, 1]")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="no text output")

    parser = argparse.ArgumentParser(prog="bbd", description="Balanced bipartite digraph toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--quiet", action="store_true", help="no text output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="evaluate a degree condition")
    p.add_argument("file")
    p.add_argument("--condition", required=True, help="b<k>, sharp, nonadjacent-3a or dompairs-3a")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hamilton", parents=[common], help="find a hamiltonian cycle")
    p.add_argument("file")
    p.set_defaults(func=cmd_hamilton)

    p = sub.add_parser("factor", parents=[common], help="find a cycle factor")
    p.add_argument("file")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("catalog", parents=[common], help="emit an exceptional digraph in BBD format")
    p.add_argument("name", choices=[n.value for n in ExceptionName])
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_catalog)

    workers = _default_workers()
    p = sub.add_parser("verify", parents=[common], help="check a theorem over many digraphs")
    p.add_argument("--theorem", required=True, choices=[t.value for t in TheoremId])
    p.add_argument("--a", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true", help="every digraph (a <= 3)")
    g.add_argument("--samples", type=int, default=10_000, help="random digraphs to draw")
    p.add_argument("--seed", type=int)
    p.add_argument("--p", type=_probability, nargs="+", default=list(DEFAULT_PROBABILITIES), help="arc probabilities")
    p.add_argument("--workers", type=int, default=workers)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", parents=[common], help="search for Problem-1 candidates")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--profile", choices=PROFILES, default="mixed")
    p.add_argument("--workers", type=int, default=workers)
    p.set_defaults(func=cmd_explore)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.json, args.quiet)
    try:
        return args.func(args, out)
    except BBDError as exc:
        print(f"bbd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
