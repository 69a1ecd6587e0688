# cli/main.py
import argparse
import json
import sys
from typing import List, Literal, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from algebras.builtins import load_algebra
from codim.matrix import ARITHMETIC_MODES, Arithmetic, EvaluationTarget
from codim.report import exponent_frame, exponent_report
from codim.sequence import check_degree_budget, codim_sequence, degree_budget, degree_estimate_mb
from combinatorics.partitions import hook_dimension_trend
from config import config
from errors import PilabError, UsageError
from eval.evaluate import evaluate_suite
from freealg.monomials import SPANNING_KINDS


def status(message: str) -> None:
    """Status lines go to stderr so stdout and report files stay machine-readable"""
    print(message, file=sys.stderr)


def parse_degrees(text: str) -> Tuple[int, int]:
    """"A..B" or a single degree "N" """
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return int(low), int(high)
        return int(text), int(text)
    except ValueError:
        raise UsageError(f"degree range must look like 2..6, got {text!r}")


def parse_hook(text: str) -> Tuple[int, int]:
    try:
        k, l = (int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"hook must look like k,l, got {text!r}")
    return k, l


class RunConfig(BaseModel):
    """One command-line run"""
    algebra: Optional[str] = None
    target: Literal["algebra", "envelope"] = "algebra"
    mode: Literal["ordinary", "graded", "envelope", "envelope-graded"] = "ordinary"
    degrees: Tuple[int, int] = (2, 6)
    arith: Literal["auto", "exact", "modular", "modular-verified"] = "auto"
    verify_exact: bool = False
    spanning: Optional[Literal["left-normed", "all-bracketings"]] = None
    out: Optional[str] = None
    format: Literal["json", "csv", "table"] = "table"
    jobs: int = Field(config.JOBS, ge=1)
    seed: int = config.SEED
    samples: Optional[int] = Field(None, ge=1)
    force: bool = False
    quiet: bool = False
    timings: bool = False

    @field_validator("degrees")
    @classmethod
    def non_empty(cls, degrees):
        low, high = degrees
        if low < 1 or high < low:
            raise ValueError(f"degree range {low}..{high} is empty")
        return degrees

    @model_validator(mode="after")
    def upgrade_arithmetic(self):
        if self.verify_exact and self.arith in ("auto", "modular"):
            self.arith = "modular-verified"
        return self

    @property
    def degree_range(self) -> List[int]:
        return list(range(self.degrees[0], self.degrees[1] + 1))

    @property
    def target_mode(self) -> str:
        """--target envelope --mode graded is the same run as --mode envelope-graded"""
        if self.target == "envelope" and not self.mode.startswith("envelope"):
            return "envelope" if self.mode == "ordinary" else "envelope-graded"
        return self.mode

    def evaluation_target(self) -> EvaluationTarget:
        if not self.algebra:
            raise UsageError("--algebra is required")
        return EvaluationTarget.from_mode(load_algebra(self.algebra), self.target_mode)

    def arithmetic(self) -> Arithmetic:
        return Arithmetic(self.arith, seed=self.seed)


def write_output(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w") as f:
        f.write(text)
    status(f"✅ Wrote {out}")


def announce_forced(cfg: RunConfig, T: EvaluationTarget) -> None:
    budget = degree_budget(T)
    for n in cfg.degree_range:
        if cfg.force and n > budget:
            status(f"⚠️  degree {n} is above the budget of {budget}, estimated {degree_estimate_mb(T, n):.1f} MB")


def cmd_codim(cfg: RunConfig) -> int:
    T = cfg.evaluation_target()
    announce_forced(cfg, T)
    report = codim_sequence(T, cfg.degree_range, cfg.arithmetic(), jobs=cfg.jobs, force=cfg.force,
                            progress=not cfg.quiet, spanning=cfg.spanning)
    if cfg.format == "json":
        write_output(report.to_json(timings=cfg.timings), cfg.out)
    elif cfg.format == "csv":
        write_output(report.to_csv(), cfg.out)
    else:
        write_output(report.to_table(), cfg.out)
    if cfg.out is not None and cfg.format != "table" and not cfg.quiet:
        status(report.to_table())

    failures = [c for c in report.checks if not c.passed]
    if failures:
        status(f"❌ {len(failures)} consistency checks failed, first: {failures[0].name} ({failures[0].witness})")
        return 2
    status(f"✅ {T.label}: {len(report.rows)} degrees computed")
    return 0


def cmd_check(cfg: RunConfig, suite: str) -> int:
    T = cfg.evaluation_target()
    announce_forced(cfg, T)
    for n in cfg.degree_range:
        check_degree_budget(T, n, cfg.force)
    results = evaluate_suite(suite, T, cfg.degree_range, arithmetic=cfg.arithmetic(), samples=cfg.samples,
                             seed=cfg.seed, force=cfg.force)
    df: pd.DataFrame = results["detailed_results"]
    if cfg.format == "json":
        payload = {"suite": suite, "target": T.label, "mode": T.mode_name,
                   "checks": json.loads(df.to_json(orient="records"))}
        write_output(json.dumps(payload, indent=2) + "\n", cfg.out)
    elif cfg.format == "csv":
        write_output(df.to_csv(index=False), cfg.out)
    else:
        write_output(df.fillna("").to_string(index=False) + "\n", cfg.out)

    if not results["passed"]:
        status(f"❌ {suite} on {T.label}: {results['failures']} of {results['total_checks']} checks failed")
        return 2
    status(f"✅ {suite} on {T.label}: {results['total_checks']} checks passed")
    return 0


def cmd_exponent(cfg: RunConfig, hook: Optional[Tuple[int, int]] = None) -> int:
    if hook is not None:
        k, l = hook
        sequence = []
        for n in cfg.degree_range:
            try:
                sequence.append((n, hook_dimension_trend(k, l, n)[1]))
            except PilabError:
                continue
        if not sequence:
            raise UsageError(f"no degree in {cfg.degrees[0]}..{cfg.degrees[1]} has the form {k}*{l} + t*({k}+{l})")
        frame = exponent_frame(exponent_report(sequence), reference=k + l)
        title = f"hook dimensions d_h({k},{l},t)"
    else:
        T = cfg.evaluation_target()
        announce_forced(cfg, T)
        report = codim_sequence(T, cfg.degree_range, cfg.arithmetic(), jobs=cfg.jobs, force=cfg.force,
                                progress=not cfg.quiet, spanning=cfg.spanning)
        sequence = [(row.n, int(row.c_n)) for row in report.rows]
        frame = exponent_frame(exponent_report(sequence, centerless=report.centerless),
                               reference=report.reference_exponent)
        title = f"{T.label} ({T.mode_name})"

    if cfg.format == "json":
        write_output(frame.to_json(orient="records", indent=2) + "\n", cfg.out)
    elif cfg.format == "csv":
        write_output(frame.to_csv(index=False), cfg.out)
    else:
        lines = [title, frame.to_string(index=False)]
        if "reference" in frame.columns:
            lines.append(f"reference exponent: {frame['reference'].iloc[0]} (a limit, not asserted at small n)")
        write_output("\n".join(lines) + "\n", cfg.out)
    if not frame["monotone"].all():
        status("⚠️  codimensions drop for a centerless target")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--algebra", default=None, help="builtin name or path to an algebra JSON file")
    common.add_argument("--target", choices=["algebra", "envelope"], default="algebra")
    common.add_argument("--mode", choices=config.MODES, default="ordinary")
    common.add_argument("--n", dest="degrees", default="2..6", help="degree range A..B")
    common.add_argument("--arith", choices=ARITHMETIC_MODES, default="auto")
    common.add_argument("--verify-exact", action="store_true", help="recompute modular ranks over Q")
    common.add_argument("--spanning", choices=SPANNING_KINDS, default=None)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=["json", "csv", "table"], default="table")
    common.add_argument("--jobs", type=int, default=config.JOBS)
    common.add_argument("--seed", type=int, default=config.SEED)
    common.add_argument("--samples", type=int, default=None, help="random samples for the tilde and oracle suites")
    common.add_argument("--force", action="store_true", help="run degrees above the budget")
    common.add_argument("--quiet", action="store_true", help="no progress bars")
    common.add_argument("--timings", action="store_true", help="add wall-clock timings to JSON reports")

    parser = _Parser(prog="pilab", description="Codimensions and cocharacters of Lie algebras and their Grassmann envelopes")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    commands.add_parser("codim", parents=[common], help="codimension and cocharacter table")
    check = commands.add_parser("check", parents=[common], help="run a consistency suite")
    check.add_argument("--suite", choices=config.SUITES, required=True)
    exponent = commands.add_parser("exponent", parents=[common], help="n-th roots of codimensions")
    exponent.add_argument("--hook", default=None, help="k,l: hook-dimension trend instead of codimensions")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(
            algebra=args.algebra,
            target=args.target,
            mode=args.mode,
            degrees=parse_degrees(args.degrees),
            arith=args.arith,
            verify_exact=args.verify_exact,
            spanning=args.spanning,
            out=args.out,
            format=args.format,
            jobs=args.jobs,
            seed=args.seed,
            samples=args.samples,
            force=args.force,
            quiet=args.quiet,
            timings=args.timings,
        )
        if args.command == "codim":
            return cmd_codim(cfg)
        if args.command == "check":
            return cmd_check(cfg, args.suite)
        return cmd_exponent(cfg, parse_hook(args.hook) if args.hook else None)
    except ValidationError as e:
        status(f"❌ Invalid arguments: {e.errors()[0]['msg']}")
        return 1
    except PilabError as e:
        status(f"❌ {e}")
        return e.exit_code
    except OSError as e:
        status(f"❌ {e}")
        return 1


if __name__ == '__main__':
    sys.exit(main())
