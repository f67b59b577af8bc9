"""Command-line entry point: ``ts-spectra {spectrum,witness,verify,oracle}``.

Exit codes: 0 success, 1 verification failure or no witness, 2 bad
arguments, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from math import comb

from .constructors import CATALOG, sweep
from .errors import NotFound, ResourceLimit, RoundingFailure
from .partitions import partition_count
from .spectrum import (
    LIMIT_ENV,
    brute_spectrum,
    cayley_adjacency_spectrum,
    spectrum_with_multiplicity,
)
from .witness import coverage, theorem_c_inequalities, witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

VERIFY_MIN_N = {"theorem-x": 27, "theorem-xx": 15, "conjecture": 2, "inequalities": 76, "errata": 1}


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def parse_range(spec: str) -> tuple[int, int]:
    """``"27..60"`` -> ``(27, 60)``; a single number gives a one-point range."""
    if ".." in spec:
        lo_s, hi_s = spec.split("..", 1)
    else:
        lo_s = hi_s = spec
    try:
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise UsageError(f"bad range {spec!r}, expected LO..HI")
    if lo > hi:
        raise UsageError(f"empty range {spec!r}")
    return lo, hi


def _threads(args) -> int:
    return args.threads if args.threads else (os.cpu_count() or 1)


# ---------------------------------------------------------------- spectrum

def cmd_spectrum(args) -> int:
    if args.n < 1:
        raise UsageError("n must be >= 1")
    report = brute_spectrum(args.n, with_witnesses=args.witnesses, override=args.limit_override,
                            threads=_threads(args))
    if args.multiplicities:
        report.multiplicities = spectrum_with_multiplicity(args.n).multiplicities
    if args.format == "json":
        _emit(_dump(report.to_json()), args.output)
    elif args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(report.csv_rows())
        _emit(buf.getvalue(), args.output)
    else:
        lines = [f"n = {report.n}: {len(report.values)} distinct eigenvalues "
                 f"({report.scanned} partitions scanned)"]
        for v in report.values:
            line = f"{v:>8}"
            if report.multiplicities is not None:
                line += f"  x{report.multiplicities[v]}"
            if report.witnesses is not None:
                line += f"  {list(report.witnesses[v].parts)}"
            lines.append(line)
        _emit("\n".join(lines), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- witness

def cmd_witness(args) -> int:
    n, e = args.n, args.e
    if n < 1:
        raise UsageError("n must be >= 1")
    if abs(e) > comb(n, 2):
        raise UsageError(f"|e| must be <= C(n,2) = {comb(n, 2)}")
    try:
        cert = witness(n, e, budget=args.budget)
    except NotFound as exc:
        if args.json:
            _emit(_dump({"n": n, "target": e, "verified": False, "error": str(exc)}), args.output)
        else:
            _emit(str(exc), args.output)
        return EXIT_FAIL
    if args.json:
        _emit(_dump(cert.to_json()), args.output)
    else:
        _emit(f"n = {n}, target {e}: {list(cert.partition.parts)}\n"
              f"  eigenvalue {cert.achieved}, verified {cert.verified}\n"
              f"  derivation: {cert.summary()}", args.output)
    return EXIT_OK if cert.verified else EXIT_FAIL


# ---------------------------------------------------------------- verify

def _theorem_x_one(job):
    n, negatives, budget = job
    top = comb(max((n - 15) // 3, 0), 2)
    lo = -top if negatives else 0
    rep = coverage(n, lo, top, budget=budget, keep_derivations=False)
    return {"n": n, "interval": [lo, top], "covered": rep.covered, "missing": rep.missing,
            "searched": len(rep.searched)}


def _map(fn, jobs, threads):
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def _n_values(args, target: str) -> list[int]:
    if args.n is not None and args.n_range is not None:
        raise UsageError("give --n or --n-range, not both")
    if args.n is not None:
        lo = hi = args.n
    elif args.n_range is not None:
        lo, hi = parse_range(args.n_range)
    else:
        raise UsageError(f"verify {target} needs --n or --n-range")
    if lo < VERIFY_MIN_N[target]:
        raise UsageError(f"verify {target} supports n >= {VERIFY_MIN_N[target]}")
    return list(range(lo, hi + 1))


def cmd_verify(args) -> int:
    target = args.target
    ns = _n_values(args, target)
    threads = _threads(args)
    started = time.perf_counter()
    if target in ("theorem-x", "theorem-xx"):
        rows = _map(_theorem_x_one, [(n, target == "theorem-xx", args.budget) for n in ns], threads)
        failures = [r for r in rows if r["missing"]]
        result = {"target": target, "n_range": [ns[0], ns[-1]], "ok": not failures,
                  "failures": [{"n": r["n"], "missing": r["missing"]} for r in failures],
                  "results": rows}
    elif target == "conjecture":
        rows = []
        for n in ns:
            _progress(f"conjecture: scanning partitions of {n}")
            rep = brute_spectrum(n, override=args.limit_override, threads=threads)
            y = comb((2 * n + 1) // 3, 2)
            missing = rep.contains_interval(-y, y)
            expected = partition_count(n)
            rows.append({"n": n, "interval": [-y, y], "scanned": rep.scanned,
                         "expected_partitions": expected, "distinct_values": len(rep.values),
                         "missing": missing, "ok": not missing and rep.scanned == expected})
        failures = [r for r in rows if not r["ok"]]
        result = {"target": target, "n_range": [ns[0], ns[-1]], "ok": not failures,
                  "failures": [{"n": r["n"], "missing": r["missing"]} for r in failures],
                  "results": rows}
    elif target == "inequalities":
        bad = [n for n in ns if not theorem_c_inequalities(n)]
        result = {"target": target, "n_range": [ns[0], ns[-1]], "ok": not bad, "failures": bad}
    else:
        return _verify_errata(args, ns, started)
    _progress(f"verify {target}: {'ok' if result['ok'] else 'FAILED'} "
              f"in {time.perf_counter() - started:.1f}s")
    text = _dump(result)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    _emit(text, args.output)
    return EXIT_OK if result["ok"] else EXIT_FAIL


def resolve_errata(errata, budget: int) -> list[dict]:
    """Attach to every erratum the certificate that covers its target instead."""
    out = []
    for rec in errata:
        row = rec.to_json()
        try:
            cert = witness(rec.n, row["target"], budget=budget)
            row["fallback"] = cert.summary() if cert.verified else None
        except NotFound:
            row["fallback"] = None
        out.append(row)
    return out


def _verify_errata(args, ns, started) -> int:
    summary = sweep(ns[-1], n_min=ns[0])
    rows = resolve_errata(summary.errata, args.budget)
    unresolved = [r for r in rows if not r["documented"] and r["fallback"] is None]
    result = {
        "target": "errata",
        "n_range": [ns[0], ns[-1]],
        "recipes": len(CATALOG),
        "checked": summary.checked,
        "passed": summary.passed,
        "errata": len(rows),
        "documented": sum(r["documented"] for r in rows),
        "unresolved": unresolved,
        "ok": not unresolved,
    }
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            for r in rows:
                fh.write(_dump(r) + "\n")
    _progress(f"verify errata: {summary.checked} points, {len(rows)} errata, "
              f"{len(unresolved)} unresolved in {time.perf_counter() - started:.1f}s")
    _emit(_dump(result), args.output)
    return EXIT_OK if result["ok"] else EXIT_FAIL


# ---------------------------------------------------------------- oracle

def cmd_oracle(args) -> int:
    n = args.n
    if n < 2:
        raise UsageError("oracle needs n >= 2")
    adj = cayley_adjacency_spectrum(n)
    brute = brute_spectrum(n)
    agree = adj.values == brute.values
    out = {"n": n, "adjacency_values": adj.values, "partition_values": brute.values,
           "values_agree": agree}
    if args.multiplicities:
        if adj.multiplicities is None:
            raise ResourceLimit(f"multiplicities from the adjacency matrix are reported for n <= 5, got {n}")
        hooks = spectrum_with_multiplicity(n).multiplicities
        mult_agree = adj.multiplicities == hooks
        out["adjacency_multiplicities"] = {str(k): v for k, v in adj.multiplicities.items()}
        out["hook_multiplicities"] = {str(k): v for k, v in hooks.items()}
        out["multiplicities_agree"] = mult_agree
        out["total"] = sum(hooks.values())
        agree = agree and mult_agree
    out["agree"] = agree
    _emit(_dump(out), args.output)
    return EXIT_OK if agree else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ts-spectra",
        description="Eigenvalues of the transposition graph Cay(S_n, T_n) from integer partitions.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the result here instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="cap on worker processes (default: all CPUs)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="distinct eigenvalues for one n")
    p.add_argument("n", type=int)
    p.add_argument("--witnesses", action="store_true", help="one partition per eigenvalue")
    p.add_argument("--multiplicities", action="store_true", help="hook-length multiplicities (n <= 12)")
    p.add_argument("--format", choices=("json", "csv", "human"), default="human")
    p.add_argument("--limit-override", action="store_true",
                   help=f"allow n above the brute-force ceiling (or set {LIMIT_ENV})")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("witness", parents=[common], help="certified partition for eigenvalue e")
    p.add_argument("n", type=int)
    p.add_argument("e", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--budget", type=int, default=1_000_000, help="search nodes for the fallback scan")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="check an interval claim or sweep the recipes")
    p.add_argument("target", choices=tuple(VERIFY_MIN_N))
    p.add_argument("--n", type=int)
    p.add_argument("--n-range")
    p.add_argument("--report", help="write the full report (JSON; JSON-lines for errata)")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--limit-override", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="adjacency-matrix cross-check, n <= 6")
    p.add_argument("n", type=int)
    p.add_argument("--multiplicities", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is not None and args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except RoundingFailure as exc:
        print(f"oracle failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
