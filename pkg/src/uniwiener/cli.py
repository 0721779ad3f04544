"""Command-line interface: ``uniwiener {candidates,oracle,conjecture}``.

Exit codes: 0 success, 1 invalid input, 2 internal invariant breach,
3 a structural check recorded a violation (``oracle`` only).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .constructors import PAIR_RULES, ConstructionError, build_candidates
from .degseq import DegreeSequence, DegreeSequenceError, parse_degree_sequence, validate_unicyclic
from .formulas import InvariantError
from .graph_core import to_dot
from .oracle import OracleError, check_theorems, exhaustive_minimum, explore_conjecture

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2
EXIT_CHECK = 3

EMIT_CHOICES = ("json", "dot", "table")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which we reserve for invariant breaches
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    degrees: DegreeSequence
    girths: tuple[int, ...]
    girth_given: bool
    emit: tuple[str, ...]
    budget: int | None
    workers: int
    out: Path | None
    pair_rule: str = "min-wiener"


def parse_girths(text: str) -> tuple[int, ...]:
    """``"6"`` or an inclusive range ``"3..8"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
            if a > b:
                raise UsageError(f"empty girth range {text!r}")
            return tuple(range(a, b + 1))
        return (int(text),)
    except ValueError:
        raise UsageError(f"invalid girth {text!r}; expected g or a..b") from None


def parse_budget(text: str) -> int:
    try:
        value = int(float(text))
    except ValueError:
        raise UsageError(f"invalid budget {text!r}") from None
    if value < 1:
        raise UsageError(f"budget must be positive, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="uniwiener", description="Minimum Wiener index of unicyclic graphs with given degrees and girth.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "candidates": "build the three candidate graphs and report the best",
        "oracle": "exhaustive minimum plus structural checks",
        "conjecture": "sweep girths and compare with the conjectured best girth",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument("--degrees", required=True, help='degree sequence, e.g. "4,3^7,2^2,1^9"')
        p.add_argument("--leaves", choices=["auto"], default=None,
                       help="replace the given 1-entries by the number of leaves the handshake lemma forces")
        p.add_argument("--girth", required=(name != "conjecture"),
                       help="girth g or inclusive range a..b" + (" (default: every feasible girth)" if name == "conjecture" else ""))
        default_emit = "table" if name == "conjecture" else "json"
        p.add_argument("--emit", default=default_emit,
                       help=f"comma list from {{{','.join(EMIT_CHOICES)}}} (default: {default_emit})")
        p.add_argument("--out", type=Path, default=None, help="directory for report.json and DOT files")
        if name != "candidates":
            p.add_argument("--budget", default=None,
                           help="max cyclic arrangements visited per girth (default: $WIENER_BUDGET or 5e7)")
        # construction is sequential; candidates accepts the flag for a uniform interface
        p.add_argument("--workers", type=int, default=1, help="worker processes for the enumeration")
        if name == "candidates":
            p.add_argument("--pair-rule", choices=PAIR_RULES, default="min-wiener",
                           help="how the out-greedy candidate picks its cycle-closing pair")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    degrees = parse_degree_sequence(args.degrees, leaves=args.leaves)
    emit = tuple(e.strip() for e in args.emit.split(",") if e.strip())
    bad = [e for e in emit if e not in EMIT_CHOICES]
    if bad or not emit:
        raise UsageError(f"invalid --emit {args.emit!r}; choose from {', '.join(EMIT_CHOICES)}")
    if "dot" in emit and args.out is None:
        raise UsageError("--emit dot needs --out")
    if "json" in emit and "table" in emit and args.out is None:
        raise UsageError("json and table cannot both go to standard output; add --out")
    if args.girth is None:
        girths = tuple(g for g in range(3, degrees.n + 1) if validate_unicyclic(degrees, g).ok)
        given = False
    else:
        girths = parse_girths(args.girth)
        given = True
    workers = args.workers
    if workers < 1:
        raise UsageError(f"--workers must be >= 1, got {workers}")
    budget = getattr(args, "budget", None)
    return RunConfig(
        command=args.command,
        degrees=degrees,
        girths=girths,
        girth_given=given,
        emit=emit,
        budget=parse_budget(budget) if budget is not None else None,
        workers=workers,
        out=args.out,
        pair_rule=getattr(args, "pair_rule", "min-wiener"),
    )


# --------------------------------------------------------------------------
# output helpers
# --------------------------------------------------------------------------


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _write(cfg: RunConfig, name: str, text: str) -> str:
    cfg.out.mkdir(parents=True, exist_ok=True)
    (cfg.out / name).write_text(text, encoding="utf-8")
    return name


def _emit(cfg: RunConfig, payload, table: str | None):
    if "json" in cfg.emit:
        text = dump_json(payload)
        if cfg.out is not None:
            _write(cfg, "report.json", text)
        else:
            sys.stdout.write(text)
    if "table" in cfg.emit and table is not None:
        sys.stdout.write(table)


def _require_valid(cfg: RunConfig):
    for g in cfg.girths:
        rep = validate_unicyclic(cfg.degrees, g)
        if not rep.ok:
            raise DegreeSequenceError(f"{cfg.degrees} with girth {g}: " + "; ".join(rep.failures))


def _candidates_payload(cfg: RunConfig, girth: int) -> dict:
    summary = build_candidates(cfg.degrees, girth, cfg.pair_rule)
    cands = []
    for c in summary.candidates:
        dot_path = None
        if "dot" in cfg.emit:
            dot_path = _write(cfg, f"{c.kind}-g{girth}.dot", to_dot(c.graph, f"{c.kind}_g{girth}"))
        cands.append({"kind": str(c.kind), "wiener": c.wiener, "canonical": c.canonical, "dot_path": dot_path})
    return {
        "degrees": list(cfg.degrees.degrees),
        "girth": girth,
        "candidates": cands,
        "not_applicable": [{"kind": str(s.kind), "reason": s.reason} for s in summary.skipped],
        "best": {
            "min_wiener": summary.wiener,
            "minimizers": [{"kind": str(c.kind), "canonical": c.canonical} for c in summary.minimizers],
        },
        "oracle": None,
        "checks": [],
    }


def _candidates_table(payloads) -> str:
    lines = []
    for p in payloads:
        vals = ", ".join(f"{c['kind']}={c['wiener']}" for c in p["candidates"])
        lines.append(f"girth {p['girth']}: min {p['best']['min_wiener']} ({len(p['best']['minimizers'])} minimizer(s)); {vals}")
    return "\n".join(lines) + "\n"


def _single_or_list(payloads):
    return payloads[0] if len(payloads) == 1 else payloads


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_candidates(cfg: RunConfig) -> int:
    _require_valid(cfg)
    payloads = [_candidates_payload(cfg, g) for g in cfg.girths]
    _emit(cfg, _single_or_list(payloads), _candidates_table(payloads))
    return EXIT_OK


def cmd_oracle(cfg: RunConfig) -> int:
    _require_valid(cfg)
    payloads = []
    violated = False
    for g in cfg.girths:
        p = _candidates_payload(cfg, g)
        rep = exhaustive_minimum(cfg.degrees, g, budget=cfg.budget, workers=cfg.workers)
        print(f"girth {g}: {rep.visited} arrangements in {rep.wall_time:.2f} s", file=sys.stderr)
        p["oracle"] = {
            "exhaustive": rep.exhaustive,
            "min_wiener": rep.minimum,
            "count": rep.count,
            "minimizers": list(rep.minimizers),
            "visited": rep.visited,
            "budget": rep.budget,
            "matches_candidate": rep.matches_candidate,
        }
        if rep.exhaustive:
            checks = check_theorems(cfg.degrees, g, rep)
            p["checks"] = [{"id": c.theorem, "tested": c.tested, "violations": list(c.violations)} for c in checks]
            violated |= any(c.violations for c in checks)
        else:
            print(f"girth {g}: budget {rep.budget} exceeded, report is partial", file=sys.stderr)
        payloads.append(p)
    table = []
    for p in payloads:
        o = p["oracle"]
        bad = sum(len(c["violations"]) for c in p["checks"])
        table.append(f"girth {p['girth']}: exact min {o['min_wiener']} over {o['count']} graphs"
                     f"{'' if o['exhaustive'] else ' (partial)'}; candidate min {p['best']['min_wiener']}; "
                     f"{bad} check violation(s)")
    _emit(cfg, _single_or_list(payloads), "\n".join(table) + "\n")
    return EXIT_CHECK if violated else EXIT_OK


def conjecture_payload(ex) -> dict:
    return {
        "degrees": list(ex.degrees.degrees),
        "rows": [
            {
                "girth": r.girth,
                "candidate_min": r.candidate_minimum,
                "candidate_kinds": list(r.candidate_kinds),
                "exact_min": r.exact_minimum,
                "exhaustive": r.exhaustive,
                "minimizer_count": r.minimizer_count,
            }
            for r in ex.rows
        ],
        "candidate_argmin": list(ex.candidate_argmin),
        "empirical_argmin": list(ex.empirical_argmin),
        "conjectured_girth": ex.conjectured,
        "hypothesis_violations": list(ex.hypothesis_violations),
        "agrees": ex.agrees,
        "finding": ex.finding,
    }


def conjecture_table(ex) -> str:
    lines = [f"degrees {ex.degrees}", f"{'girth':>5}  {'candidate':>9}  {'exact':>9}  kinds"]
    for r in ex.rows:
        exact = str(r.exact_minimum) if r.exhaustive else "-"
        lines.append(f"{r.girth:>5}  {r.candidate_minimum:>9}  {exact:>9}  {','.join(r.candidate_kinds)}")
    if ex.hypothesis_violations:
        lines.append("hypothesis violated: " + "; ".join(ex.hypothesis_violations))
    lines.append(ex.finding)
    return "\n".join(lines) + "\n"


def cmd_conjecture(cfg: RunConfig) -> int:
    girths = []
    for g in cfg.girths:
        rep = validate_unicyclic(cfg.degrees, g)
        if rep.ok:
            girths.append(g)
        else:
            print(f"warning: skipping girth {g}: " + "; ".join(rep.failures), file=sys.stderr)
    if not girths:
        raise DegreeSequenceError(f"{cfg.degrees}: no feasible girth in the requested range")
    ex = explore_conjecture(cfg.degrees, girths, budget=cfg.budget, workers=cfg.workers)
    _emit(cfg, conjecture_payload(ex), conjecture_table(ex))
    return EXIT_OK


COMMANDS = {"candidates": cmd_candidates, "oracle": cmd_oracle, "conjecture": cmd_conjecture}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, DegreeSequenceError, ConstructionError, OracleError) as exc:
        print(f"uniwiener: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"uniwiener: invariant breach: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
