"""Command-line interface: ``satotate <command> ...``.

Exit codes: 0 success, 2 bad input (flags, spec file, catalog name),
3 evaluator failure, 10 inconclusive (agreement up to the bound, or a
dimension that the data does not pin down).

JSON output is an OutputRecord::

    {"command": str, "inputs_digest": "sha256:...", "result": {...}, "timing": {...} | null}

Integers in results are decimal strings.  Wall-clock timing is only
recorded with ``--timing`` so that repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from pathlib import Path

from . import analyzer, catalog, sampler
from .errors import EvaluationError, SatoTateError, SpecError
from .groups import describe_group, describe_rep, validate
from .moments import MomentTable, moment_table
from .specfile import group_to_obj, load_spec, rep_to_obj

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_EVAL = 3
EXIT_INCONCLUSIVE = 10


class Target:
    """A resolved (group, rep) with a display label."""

    def __init__(self, label, group, rep, note=""):
        self.label, self.group, self.rep, self.note = label, group, rep, note

    @property
    def pair(self):
        return self.group, self.rep

    def canonical(self) -> dict:
        return {"group": group_to_obj(self.group), "rep": rep_to_obj(self.rep)}


def resolve_target(catalog_name=None, group_file=None) -> Target:
    if (catalog_name is None) == (group_file is None):
        raise SpecError("give exactly one of --catalog NAME or --group FILE")
    if catalog_name is not None:
        e = catalog.load(catalog_name)
        return Target(e.name, e.group, e.rep, e.note)
    spec = load_spec(group_file)
    label = spec.name or f"{describe_group(spec.group)} {describe_rep(spec.rep)}"
    return Target(label, spec.group, spec.rep)


def resolve_loose(text: str) -> Target:
    """A catalog name, or a path to a spec file."""
    p = Path(text)
    if p.suffix == ".json" and p.exists():
        return resolve_target(group_file=p)
    return resolve_target(catalog_name=text)


def _digest(command: str, inputs: dict) -> str:
    canon = json.dumps({"command": command, **inputs}, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


def record(command: str, inputs: dict, result: dict, elapsed=None) -> str:
    rec = {
        "command": command,
        "inputs_digest": _digest(command, inputs),
        "result": result,
        "timing": None if elapsed is None else {"wall_seconds": f"{elapsed:.6f}"},
    }
    return json.dumps(rec, indent=2, sort_keys=True) + "\n"


def emit(text: str, output=None) -> None:
    """Write the whole payload once; files are replaced atomically."""
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(output)
    tmp = path.with_name(f".{path.name}.tmp{os.getpid()}")
    tmp.write_text(text)
    os.replace(tmp, path)


def _c(z: complex) -> list[str]:
    return [repr(float(z.real)), repr(float(z.imag))]


# ---------------------------------------------------------------- commands


def table_csv(table: MomentTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "b", "F"])
    for a, b, f in table.rows():
        w.writerow([a, b, str(f)])
    return buf.getvalue()


def cmd_moments(args):
    t = resolve_target(args.catalog, args.group)
    bmax = args.amax if args.bmax is None else args.bmax
    if args.amax < 0 or bmax < 0:
        raise SpecError("--amax and --bmax must be nonnegative")
    t0 = time.perf_counter()
    table = moment_table(t.group, t.rep, args.amax, bmax, workers=args.workers)
    if args.format == "csv":
        return EXIT_OK, table_csv(table)
    result = {
        "target": t.label,
        "group": table.group,
        "rep": table.rep,
        "dim": str(table.dim),
        "amax": str(args.amax),
        "bmax": str(bmax),
        "columns": ["a", "b", "F"],
        "table": [[str(a), str(b), str(f)] for a, b, f in table.rows()],
    }
    inputs = {**t.canonical(), "amax": args.amax, "bmax": bmax}
    return EXIT_OK, record("moments", inputs, result, _elapsed(args, t0))


def _elapsed(args, t0):
    return time.perf_counter() - t0 if getattr(args, "timing", False) else None


def cmd_separate(args):
    left, right = resolve_loose(args.left), resolve_loose(args.right)
    t0 = time.perf_counter()
    rep = analyzer.separation_index(left.pair, right.pair, norm=args.norm, bound=args.bound, workers=args.workers)
    result = {
        "left": left.label,
        "right": right.label,
        "norm": rep.norm,
        "bound": str(rep.bound),
        "index": None if rep.index is None else str(rep.index),
        "witness": None
        if rep.witness is None
        else dict(zip(("a", "b", "F_left", "F_right"), (str(x) for x in rep.witness))),
        "status": "separated" if rep.separated else f"agree <= {rep.bound}",
    }
    inputs = {"left": left.canonical(), "right": right.canonical(), "norm": args.norm, "bound": args.bound}
    code = EXIT_OK if rep.separated else EXIT_INCONCLUSIVE
    return code, record("separate", inputs, result, _elapsed(args, t0))


def cmd_torsion(args):
    t = resolve_target(args.catalog, args.group)
    t0 = time.perf_counter()
    rep = analyzer.verify_torsion_agreement(t.group, t.rep, args.n, args.degree, norm=args.norm)
    result = {
        "target": t.label,
        "n": str(args.n),
        "degree": str(args.degree),
        "norm": args.norm,
        "agreement": "full" if rep.full_agreement else "partial",
        "first_disagreement": None if rep.first_disagreement is None else str(rep.first_disagreement),
        "witness": None
        if rep.witness is None
        else dict(zip(("a", "b", "F", "F_n"), (str(x) for x in rep.witness))),
        "cells": [[str(a), str(b), str(x), str(y), "agree" if x == y else "differ"] for a, b, x, y in rep.cells],
    }
    inputs = {**t.canonical(), "n": args.n, "degree": args.degree, "norm": args.norm}
    return EXIT_OK, record("torsion", inputs, result, _elapsed(args, t0))


def read_table(path) -> MomentTable:
    """Load a moments table written by ``satotate moments`` (CSV or JSON)."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise SpecError(f"cannot read table: {exc.strerror}", str(p)) from exc
    rows = []
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
            rows = [tuple(int(x) for x in r) for r in obj["result"]["table"]]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"not a moments record: {exc}", str(p)) from exc
    else:
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header != ["a", "b", "F"]:
            raise SpecError("CSV header must be a,b,F", f"{p}:1")
        for i, r in enumerate(reader, start=2):
            try:
                a, b, f = (int(x) for x in r)
            except ValueError as exc:
                raise SpecError(f"bad row {r!r}", f"{p}:{i}") from exc
            rows.append((a, b, f))
    if not rows:
        raise SpecError("table has no rows", str(p))
    entries = {(a, b): f for a, b, f in rows}
    amax = max(a for a, _ in entries)
    bmax = max(b for _, b in entries)
    return MomentTable(entries, "", "", 0, amax, bmax, meta={"source": str(p)})


def cmd_infer_dim(args):
    t0 = time.perf_counter()
    if args.from_table is not None:
        if args.catalog or args.group:
            raise SpecError("--from-table excludes --catalog/--group")
        table = read_table(args.from_table)
        label = str(args.from_table)
        inputs = {"table": sorted([a, b, str(f)] for (a, b), f in table.entries.items())}
        amax = args.amax if args.amax is not None else min(table.amax, table.bmax)
        if amax > min(table.amax, table.bmax):
            raise SpecError(f"table only reaches a = {min(table.amax, table.bmax)}")
    else:
        t = resolve_target(args.catalog, args.group)
        label = t.label
        amax = 12 if args.amax is None else args.amax
        table = moment_table(t.group, t.rep, amax, amax)
        inputs = t.canonical()
    est = analyzer.infer_dimension(table, amax)
    result = {
        "target": label,
        "amax": str(amax),
        "dimension": None if est.value is None else str(est.value),
        "low": str(est.low),
        "high": None if est.high is None else str(est.high),
        "lower_witness_a": None if est.lower_witness is None else str(est.lower_witness),
        "upper_witness_a": None if est.upper_witness is None else str(est.upper_witness),
        "summary": est.summary(),
    }
    code = EXIT_OK if est.pinned else EXIT_INCONCLUSIVE
    return code, record("infer-dim", {**inputs, "amax": amax}, result, _elapsed(args, t0))


def cmd_sample(args):
    t = resolve_target(args.catalog, args.group)
    bmax = args.amax if args.bmax is None else args.bmax
    try:
        cfg = sampler.SampleConfig(t.group, t.rep, args.samples, args.seed, args.amax, bmax, label=t.label)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    t0 = time.perf_counter()
    emp = sampler.estimate_moments(cfg, workers=args.workers)
    cells = [
        {"a": str(a), "b": str(b), "mean": _c(emp.mean[(a, b)]), "stderr": repr(float(emp.stderr[(a, b)]))}
        for a in range(args.amax + 1)
        for b in range(bmax + 1)
    ]
    result = {"target": t.label, "samples": str(args.samples), "seed": str(args.seed), "retries": str(emp.retries), "cells": cells}
    inputs = {**t.canonical(), "samples": args.samples, "seed": args.seed, "amax": args.amax, "bmax": bmax}
    return EXIT_OK, record("sample", inputs, result, _elapsed(args, t0))


def cmd_catalog(args):
    if args.action == "list":
        lines = []
        for name in catalog.catalog_names():
            e = catalog.load(name)
            lines.append(f"{name}\t{describe_group(e.group)}\tdim {validate(e.group, e.rep)}")
        return EXIT_OK, "\n".join(lines) + "\n"
    if args.action == "show":
        if not args.name:
            raise SpecError("catalog show needs a NAME")
        e = catalog.load(args.name)
        result = {
            "name": e.name,
            "note": e.note,
            "dim": str(validate(e.group, e.rep)),
            "group": group_to_obj(e.group),
            "rep": rep_to_obj(e.rep),
        }
        return EXIT_OK, json.dumps(result, indent=2, sort_keys=True) + "\n"
    rows = catalog.verify_catalog()
    lines = [f"{'ok' if ok else 'FAIL'}\t{name}\t{msg}" for name, ok, msg in rows]
    bad = sum(1 for _, ok, _ in rows if not ok)
    lines.append(f"{len(rows) - bad}/{len(rows)} files passed")
    return (EXIT_OK if not bad else EXIT_EVAL), "\n".join(lines) + "\n"


def cmd_gaussian(args):
    rows = sampler.gaussian_limit_report(args.n, args.amax, samples=args.samples, seed=args.seed)
    result = {
        "rows": [
            {
                "n": str(r.n),
                "a": str(r.a),
                "exact": str(r.exact),
                "gaussian": str(r.gaussian),
                "diff": str(r.diff),
                **({} if r.estimate is None else {"estimate": _c(r.estimate), "stderr": repr(float(r.stderr))}),
            }
            for r in rows
        ]
    }
    inputs = {"n": args.n, "amax": args.amax, "samples": args.samples, "seed": args.seed}
    return EXIT_OK, record("gaussian", inputs, result)


def cmd_crude_bound(args):
    rep = analyzer.crude_bound_threshold(args.n, args.amax)
    result = {
        "n": str(rep.n),
        "amax": str(rep.amax),
        "threshold": None if rep.threshold is None else str(rep.threshold),
        "status": rep.summary(),
        "ratios": [str(r) for r in rep.ratios],
    }
    code = EXIT_OK if rep.attained else EXIT_INCONCLUSIVE
    return code, record("crude-bound", {"n": args.n, "amax": args.amax}, result)


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _target_flags(p):
    p.add_argument("--catalog", metavar="NAME", help="catalog entry, e.g. su2-std, cyclic(5), 2i")
    p.add_argument("--group", metavar="FILE", type=Path, help="JSON spec file")


def _common(p, timing=True):
    p.add_argument("--output", metavar="FILE", help="write the result here (atomically) instead of stdout")
    if timing:
        p.add_argument("--timing", action="store_true", help="record wall-clock time in the output")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="satotate", description="Exact and sampled Sato-Tate moments F(a,b) = dim (V^a (x) V*^b)^G.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("moments", help="table of F(a,b)")
    _target_flags(p)
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--bmax", type=int)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int)
    _common(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("separate", help="first norm at which two Sato-Tate functions differ")
    p.add_argument("--left", required=True, metavar="NAME|FILE")
    p.add_argument("--right", required=True, metavar="NAME|FILE")
    p.add_argument("--norm", choices=analyzer.NORMS, default="total")
    p.add_argument("--bound", type=int, default=analyzer.MAX_SEPARATION_BOUND)
    p.add_argument("--workers", type=int)
    _common(p)
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("torsion", help="compare with the n-torsion approximant")
    _target_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--norm", choices=analyzer.NORMS, default="total")
    _common(p)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("infer-dim", help="recover dim V from the diagonal F(a,a)")
    _target_flags(p)
    p.add_argument("--from-table", metavar="FILE", type=Path, help="CSV or JSON written by 'moments'")
    p.add_argument("--amax", type=int)
    _common(p)
    p.set_defaults(func=cmd_infer_dim)

    p = sub.add_parser("sample", help="Monte Carlo moment estimates under Haar measure")
    _target_flags(p)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--amax", type=int, default=3)
    p.add_argument("--bmax", type=int)
    p.add_argument("--workers", type=int)
    _common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("catalog", help="list, show or verify catalog entries")
    p.add_argument("action", choices=("list", "show", "verify"))
    p.add_argument("name", nargs="?")
    _common(p, timing=False)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("gaussian", help="F_U(n)(a,a) against the Gaussian moment a!")
    p.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    p.add_argument("--amax", type=int, default=6)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    _common(p, timing=False)
    p.set_defaults(func=cmd_gaussian)

    p = sub.add_parser("crude-bound", help="where F_U(n)(a,a) > (n-1)^(2a) starts to hold")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--amax", type=int, default=analyzer.MAX_CRUDE_WINDOW)
    _common(p, timing=False)
    p.set_defaults(func=cmd_crude_bound)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code, text = args.func(args)
    except SpecError as exc:
        print(f"satotate: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EvaluationError as exc:
        cell = f" at cell {exc.cell}" if getattr(exc, "cell", None) else ""
        print(f"satotate: evaluation failed{cell}: {exc}", file=sys.stderr)
        return EXIT_EVAL
    except SatoTateError as exc:
        print(f"satotate: {exc}", file=sys.stderr)
        return EXIT_EVAL
    except ValueError as exc:
        print(f"satotate: invalid argument: {exc}", file=sys.stderr)
        return EXIT_PARSE
    emit(text, args.output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
