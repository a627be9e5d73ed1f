"""Command-line front end: ``hookcal {verify,table,bijection,split-check}``.

Exit status: 0 when every reported identity holds, 1 on any mismatch,
2 on usage or capacity errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from hookcal import cayley, identity
from hookcal._arith import format_exact
from hookcal.errors import CapacityError
from hookcal.report import IDENTITY_KEYS, VerificationReport

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

MODES = ("enumerate", "recurrence", "closed-form", "all")
OUTPUTS = ("text", "json", "csv")

# identities each mode contributes to `verify`
MODE_IDENTITIES = {
    "enumerate": ("eq1", "eq2", "eq4"),
    "recurrence": ("eq3", "eq5", "link"),
    "closed-form": ("eq4", "eq5", "split"),
}
MODE_IDENTITIES["all"] = tuple(IDENTITY_KEYS)

REPORT_FIELDS = ["identity", "n", "lhs", "rhs", "method_lhs", "method_rhs", "object_count", "verified", "elapsed_ms"]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    nmax: int
    mode: str = "all"
    output: str = "text"
    parallelism: int = 1
    enumeration_cap: int = identity.DEFAULT_ENUMERATION_CAP
    identities: tuple[str, ...] = ()

    def selected_identities(self) -> tuple[str, ...]:
        available = MODE_IDENTITIES[self.mode]
        if not self.identities:
            return available
        chosen = tuple(k for k in IDENTITY_KEYS if k in self.identities)
        missing = [k for k in chosen if k not in available]
        if missing:
            raise UsageError(f"identity {', '.join(missing)} is not checked in mode {self.mode!r}")
        return chosen


# -- verify ---------------------------------------------------------------


def _verify_jobs(cfg: RunConfig) -> list[Callable[[], list[VerificationReport]]]:
    selected = cfg.selected_identities()
    enumerating = cfg.mode in ("enumerate", "all")
    closed = cfg.mode in ("closed-form", "all")
    jobs: list[Callable[[], list[VerificationReport]]] = []
    # refuse before any work starts
    if enumerating and ({"eq1", "eq2"} & set(selected)):
        identity.check_enumeration_capacity(cfg.nmax, cfg.enumeration_cap)
    # exhaustive Eq4 on [n+1]: always for n+1 <= 6; beyond that only when asked for by name
    eq4_exhaustive_max = cayley.MOON_EXHAUSTIVE_MAX - 1
    if enumerating and "eq4" in cfg.identities:
        if cfg.nmax > eq4_exhaustive_max:
            count = cayley.labeled_count(cfg.nmax + 1)
            if count > cayley.DEFAULT_LABELED_CAP:
                raise CapacityError(f"labeled trees on [{cfg.nmax + 1}]", count, cayley.DEFAULT_LABELED_CAP)
            eq4_exhaustive_max = cfg.nmax

    for key in selected:
        for n in range(1, cfg.nmax + 1):
            if key == "eq1" and enumerating:
                jobs.append(lambda n=n: [identity.verify_eq1(n, cfg.enumeration_cap, cfg.parallelism)])
            elif key == "eq2" and enumerating:
                jobs.append(lambda n=n: [identity.verify_eq2(n, cfg.enumeration_cap, cfg.parallelism)])
            elif key == "eq4":
                if closed:
                    jobs.append(lambda n=n: [cayley.verify_eq4(n, "closed-form")])
                if enumerating and n <= eq4_exhaustive_max:
                    jobs.append(lambda n=n: [cayley.verify_eq4(n, "exhaustive")])
            elif key == "eq5":
                jobs.append(lambda n=n: [cayley.verify_eq5(n)])
            elif key == "split":
                jobs.append(lambda n=n: [identity.split_relation_report(n)])
        if key == "eq3":
            jobs.append(lambda: identity.verify_eq3(cfg.nmax))
        elif key == "link":
            jobs.append(lambda: identity.verify_F_equals_rooted_count(cfg.nmax))
    return jobs


def run_verify(cfg: RunConfig) -> list[VerificationReport]:
    """Run every selected (identity, n) check; reports come back sorted by identity, then n."""
    jobs = _verify_jobs(cfg)
    if cfg.parallelism > 1:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            batches = list(pool.map(lambda job: job(), jobs))
    else:
        batches = [job() for job in jobs]
    reports = [r for batch in batches for r in batch]
    return sorted(reports, key=VerificationReport.sort_key)


def exit_status(reports: Sequence[VerificationReport]) -> int:
    return EXIT_OK if all(r.verified for r in reports) else EXIT_MISMATCH


def format_reports(reports: Sequence[VerificationReport], output: str) -> str:
    if output == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2)
    if output == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=REPORT_FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in reports:
            writer.writerow(r.to_dict())
        return buf.getvalue().rstrip("\n")
    lines = []
    for r in reports:
        mark = "OK " if r.verified else "FAIL"
        lines.append(
            f"[{mark}] {r.identity.value:<24} n={r.n:<4} lhs={format_exact(r.lhs)}  rhs={format_exact(r.rhs)}"
        )
        lines.append(f"       lhs: {r.method_lhs}; rhs: {r.method_rhs}; objects={r.object_count}; {r.elapsed_ms} ms")
    ok = sum(r.verified for r in reports)
    lines.append(f"{ok}/{len(reports)} identities verified")
    return "\n".join(lines)


def cmd_verify(cfg: RunConfig, out=sys.stdout) -> int:
    reports = run_verify(cfg)
    print(format_reports(reports, cfg.output), file=out)
    return exit_status(reports)


# -- table ----------------------------------------------------------------

TABLE_FIELDS = ["n", "catalan", "T_n", "R_n", "F_n", "(n+1)^n", "(n+1)^(n-1)"]


def table_rows(nmax: int) -> list[dict[str, str]]:
    rows = []
    for row in identity.sequence_table(nmax):
        rows.append(
            {
                "n": str(row.n),
                "catalan": str(row.catalan),
                "T_n": "-" if row.T is None else str(row.T),
                "R_n": "-" if row.R is None else str(row.R),
                "F_n": format_exact(row.F),
                "(n+1)^n": str(row.closed_rooted),
                "(n+1)^(n-1)": "-" if row.closed_unlabeled is None else str(row.closed_unlabeled),
            }
        )
    return rows


def cmd_table(cfg: RunConfig, out=sys.stdout) -> int:
    rows = table_rows(cfg.nmax)
    if cfg.output == "json":
        print(json.dumps(rows, indent=2), file=out)
    elif cfg.output == "csv":
        writer = csv.DictWriter(out, fieldnames=TABLE_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        widths = {f: max(len(f), *(len(r[f]) for r in rows)) for f in TABLE_FIELDS}
        print("  ".join(f.rjust(widths[f]) for f in TABLE_FIELDS), file=out)
        for r in rows:
            print("  ".join(r[f].rjust(widths[f]) for f in TABLE_FIELDS), file=out)
    consistent = all(r["F_n"] == r["(n+1)^n"] for r in rows)
    return EXIT_OK if consistent else EXIT_MISMATCH


# -- bijection ------------------------------------------------------------


def cmd_bijection(cfg: RunConfig, out=sys.stdout) -> int:
    m = cfg.nmax + 1
    report = cayley.moon_roundtrip(m)
    if cfg.output == "json":
        print(json.dumps(report.to_dict(), indent=2), file=out)
    elif cfg.output == "csv":
        d = report.to_dict()
        writer = csv.DictWriter(out, fieldnames=list(d), lineterminator="\n")
        writer.writeheader()
        writer.writerow(d)
    else:
        print(f"Moon bijection on [{m}]", file=out)
        print(f"  edge-marked trees:      {report.marked_count}", file=out)
        print(f"  ordered rooted pairs:   {report.pair_count}", file=out)
        print(f"  decompose->compose failures: {report.decompose_failures}", file=out)
        print(f"  compose->decompose failures: {report.compose_failures}", file=out)
        print(f"  image mismatches:       {report.image_mismatches}", file=out)
        print(f"  {'OK' if report.ok else 'FAIL'} ({report.elapsed_ms} ms)", file=out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


# -- split-check ----------------------------------------------------------


def cmd_split_check(cfg: RunConfig, out=sys.stdout) -> int:
    reports = [identity.split_relation_report(n) for n in range(1, cfg.nmax + 1)]
    print(format_reports(reports, cfg.output), file=out)
    return exit_status(reports)


COMMANDS = {
    "verify": cmd_verify,
    "table": cmd_table,
    "bijection": cmd_bijection,
    "split-check": cmd_split_check,
}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hookcal",
        description="Exact verification of the binary-tree hook length formula and the identities behind it.",
    )
    parser.add_argument("command", choices=list(COMMANDS))
    parser.add_argument("--nmax", type=_positive_int, required=True)
    parser.add_argument("--mode", choices=MODES, default="all")
    parser.add_argument("--output", choices=OUTPUTS, default="text")
    parser.add_argument("--parallelism", type=_positive_int, default=1)
    parser.add_argument(
        "--cap",
        type=_positive_int,
        default=identity.DEFAULT_ENUMERATION_CAP,
        help="max number of binary tree shapes to enumerate for one n (env HOOKCAL_CAP overrides)",
    )
    parser.add_argument(
        "--identity",
        action="append",
        choices=list(IDENTITY_KEYS),
        help="restrict to this identity; repeatable",
    )
    return parser


def config_from_args(argv: Sequence[str] | None = None, environ=os.environ) -> RunConfig:
    args = build_parser().parse_args(argv)
    cap = args.cap
    if environ.get("HOOKCAL_CAP"):
        try:
            cap = int(environ["HOOKCAL_CAP"])
        except ValueError:
            raise UsageError(f"HOOKCAL_CAP must be an integer, got {environ['HOOKCAL_CAP']!r}") from None
        if cap < 1:
            raise UsageError(f"HOOKCAL_CAP must be positive, got {cap}")
    return RunConfig(
        command=args.command,
        nmax=args.nmax,
        mode=args.mode,
        output=args.output,
        parallelism=args.parallelism,
        enumeration_cap=cap,
        identities=tuple(args.identity or ()),
    )


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        cfg = config_from_args(argv)
        if cfg.command == "bijection":
            count = cayley.labeled_count(cfg.nmax + 1)
            if count > cayley.DEFAULT_LABELED_CAP:
                raise CapacityError(f"labeled trees on [{cfg.nmax + 1}]", count, cayley.DEFAULT_LABELED_CAP)
        return COMMANDS[cfg.command](cfg, out)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except (UsageError, CapacityError) as exc:
        print(f"hookcal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
