"""Command-line interface.

Subcommands: paley-clique, binary-scan, ternary-scan, weil-check, davenport,
croot-sisask, counts, selftest.  Scans read a line-oriented config file,
write a CSV with a fixed header, and can render a PNG figure next to the CSV
with --figures.

Exit codes: 0 success; 1 config error; 2 runtime cap exceeded; 3 invariant
violation detected (an identity or theorem-true inequality failed).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import experiments, figures
from .clique import DEFAULT_CLIQUE_CAP
from .config import load_config
from .errors import CharlabError, ConfigError, NotPrime, TooLarge, WorkCapExceeded
from .reporting import (
    CountsRecord,
    DavenportRecord,
    PaleyRecord,
    PeriodScanRecord,
    ScanRecord,
    SelftestRecord,
    WeilRecord,
    emit_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_CAP = 2
EXIT_INVARIANT = 3


def _add_common(sub, config_required=True):
    if config_required:
        sub.add_argument("--config", required=True, help="experiment config file")
    sub.add_argument("--out", required=True, help="destination CSV path")
    sub.add_argument("--figures", action="store_true", help="render a PNG beside the CSV")
    sub.add_argument("--workers", type=int, default=1, help="worker threads for sweep rows")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charlab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("paley-clique", help="exact Paley graph clique number")
    sp.add_argument("--p", type=int, help="a single prime p = 1 mod 4")
    sp.add_argument("--p-max", type=int, help="sweep every admissible prime up to this bound")
    sp.add_argument("--cap", type=int, default=DEFAULT_CLIQUE_CAP)
    sp.add_argument("--out", help="optional CSV destination")
    sp.add_argument("--figures", action="store_true")
    sp.add_argument("--workers", type=int, default=1)

    for name in ("binary-scan", "ternary-scan", "weil-check", "davenport", "croot-sisask", "counts"):
        _add_common(sub.add_parser(name))

    st = sub.add_parser("selftest", help="run every oracle-equivalence suite")
    st.add_argument("--out", help="optional CSV destination")
    st.add_argument("--workers", type=int, default=1)
    return ap


def _figure_path(out: str) -> str:
    return str(Path(out).with_suffix(".png"))


def _run_scan(args, kind: str) -> int:
    cfg = load_config(args.config)
    if kind in ("binary", "ternary"):
        specs = experiments.scan_row_specs(cfg, kind)
        records = experiments.run_rows(experiments.compute_scan_record, specs, args.workers)
        emit_csv(records, args.out, ScanRecord)
        if args.figures:
            figures.render_scan_figure(records, _figure_path(args.out))
        bad = [r for r in records if r.flag.startswith("error:")]
        print(f"{kind}-scan: wrote {len(records)} rows to {args.out}"
              + (f" ({len(bad)} flagged)" if bad else ""))
        return EXIT_OK
    if kind == "weil":
        records = experiments.run_rows(
            experiments.compute_weil_record, experiments.weil_row_specs(cfg), args.workers
        )
        emit_csv(records, args.out, WeilRecord)
        if args.figures:
            figures.render_weil_figure(records, _figure_path(args.out))
        violations = [r for r in records if r.applicable and not r.holds]
        print(f"weil-check: {len(records)} rows, {len(violations)} violations -> {args.out}")
        return EXIT_INVARIANT if violations else EXIT_OK
    if kind == "davenport":
        records = experiments.run_rows(
            experiments.compute_davenport_record, experiments.davenport_row_specs(cfg), args.workers
        )
        emit_csv(records, args.out, DavenportRecord)
        if args.figures:
            figures.render_davenport_figure(records, _figure_path(args.out))
        violations = [r for r in records if not (r.agree and r.holds)]
        print(f"davenport: {len(records)} rows, {len(violations)} violations -> {args.out}")
        return EXIT_INVARIANT if violations else EXIT_OK
    if kind == "periods":
        records = experiments.run_rows(
            experiments.compute_period_record, experiments.period_row_specs(cfg), args.workers
        )
        emit_csv(records, args.out, PeriodScanRecord)
        if args.figures:
            figures.render_period_figure(records, _figure_path(args.out))
        violations = [r for r in records if not (r.verified and r.chain_holds)]
        print(f"croot-sisask: {len(records)} rows, {len(violations)} violations -> {args.out}")
        return EXIT_INVARIANT if violations else EXIT_OK
    if kind == "counts":
        records = experiments.run_rows(
            experiments.compute_counts_record, experiments.counts_row_specs(cfg), args.workers
        )
        emit_csv(records, args.out, CountsRecord)
        if args.figures:
            figures.render_counts_figure(records, _figure_path(args.out))
        mismatches = [r for r in records if not r.match]
        print(f"counts: {len(records)} rows, {len(mismatches)} mismatches -> {args.out}")
        return EXIT_INVARIANT if mismatches else EXIT_OK
    raise AssertionError(kind)


def _run_paley(args) -> int:
    if args.p is None and args.p_max is None:
        raise ConfigError("paley-clique needs --p or --p-max")
    if args.p is not None:
        specs = [(args.p, args.cap)]
    else:
        specs = experiments.paley_sweep_specs(args.p_max, args.cap)
    records = experiments.run_rows(experiments.compute_paley_record, specs, args.workers)
    for rec in records:
        print(f"p={rec.p} omega={rec.omega}")
    if args.out:
        emit_csv(records, args.out, PaleyRecord)
        if args.figures:
            figures.render_paley_figure(records, _figure_path(args.out))
    return EXIT_OK


def _run_selftest(args) -> int:
    records = experiments.selftest_records(args.workers)
    for rec in records:
        print(f"{rec.suite}: {rec.status} ({rec.cases} cases, {rec.failures} failures)")
    if args.out:
        emit_csv(records, args.out, SelftestRecord)
    failed = [r for r in records if r.status != "PASS"]
    print(f"selftest: {len(records) - len(failed)}/{len(records)} suites passed")
    return EXIT_INVARIANT if failed else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "paley-clique":
            return _run_paley(args)
        if args.command == "selftest":
            return _run_selftest(args)
        kind = {
            "binary-scan": "binary",
            "ternary-scan": "ternary",
            "weil-check": "weil",
            "davenport": "davenport",
            "croot-sisask": "periods",
            "counts": "counts",
        }[args.command]
        return _run_scan(args, kind)
    except (WorkCapExceeded, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ConfigError, NotPrime, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CharlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
