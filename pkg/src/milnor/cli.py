"""Command-line frontend.

Subcommands:
  analyze    full pipeline on one polynomial (file, inline text, or stdin)
  chebyshev  grid of Chebyshev hypersurfaces with conjecture verdict table
  hilbert    Hilbert function and thresholds only
  defects    defect table, optionally cross-checked by the node oracle
  verify     reproduction harness for the known-value table
  cache      inspect or clear the Hilbert-function cache

Exit codes: 0 all results certified, 1 error (nothing written), 2 results
computed but uncertified.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor, as_completed

from .cache import HilbertCache, cached_hilbert_function
from .chebyshev import ChebyshevSpec, canonical_spec, cc_node_count, st_formula
from .hilbert import NotNodalError
from .monomials import num_monomials
from .nodes import OracleConfig, defect_direct, injectivity_threshold
from .poly import PolynomialParseError, parse_polynomial
from .report import ReportLintError, RunConfig, analyze

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNCERTIFIED = 2

_EXTENSIONS = {"json": "json", "csv": "csv", "text": "txt"}


class CommandError(Exception):
    """Fatal CLI error carrying the exit code."""

    def __init__(self, message: str, code: int = EXIT_ERROR):
        super().__init__(message)
        self.code = code


# -- shared plumbing ----------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--primes", type=int, default=3, metavar="N",
                   help="random 31-bit primes per rank (default 3)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the prime stream (default 0)")
    p.add_argument("--dense-threshold", type=int, default=2000, metavar="COLS",
                   help="column bound for the exact dense fallback")
    p.add_argument("--max-degree", type=int, default=20, metavar="D",
                   help="refuse inputs of higher degree (default 20)")
    p.add_argument("--format", choices=("json", "csv", "text"),
                   default="json", help="output format (default json)")
    p.add_argument("--out", metavar="DIR",
                   help="write results into DIR instead of stdout")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers (default 1)")
    p.add_argument("--cache-dir", metavar="DIR",
                   help="cache directory (default: env MILNOR_CACHE_DIR "
                        "or ~/.cache/milnor)")
    p.add_argument("--no-cache", action="store_true",
                   help="recompute everything, touch no cache")
    p.add_argument("--timing", action="store_true",
                   help="record wall-clock timing in reports "
                        "(breaks byte-identical output)")
    return p


def _run_config(args) -> RunConfig:
    if args.primes < 1:
        raise CommandError("--primes must be at least 1")
    if args.jobs < 1:
        raise CommandError("--jobs must be at least 1")
    return RunConfig(primes=args.primes,
                     escalation_primes=max(7, args.primes),
                     seed=args.seed,
                     dense_threshold=args.dense_threshold,
                     max_degree=args.max_degree,
                     jobs=args.jobs,
                     cache_dir=args.cache_dir,
                     format=args.format)


def _hilbert_loader(args):
    """Read-through cache hook for analyze(), or None when caching is off."""
    if args.no_cache:
        return None
    cache = HilbertCache(args.cache_dir)

    def loader(f, config):
        return cached_hilbert_function(f, config.rank_config(), cache,
                                       jobs=config.jobs)
    return loader


def _read_polynomial_arg(arg: str, num_vars):
    if arg == "-":
        text, label = sys.stdin.read(), "stdin"
    elif os.path.isfile(arg):
        with open(arg) as fh:
            text = fh.read()
        label = os.path.splitext(os.path.basename(arg))[0]
    else:
        text, label = arg, "inline"
    try:
        return parse_polynomial(text, num_vars=num_vars), label
    except PolynomialParseError as exc:
        line = text.count("\n", 0, exc.position) + 1
        col = exc.position - text.rfind("\n", 0, exc.position)
        raise CommandError(f"parse error at line {line}, column {col}: {exc}")
    except ValueError as exc:
        raise CommandError(f"invalid polynomial: {exc}")


def _check_degree_cap(n: int, d: int, cap) -> None:
    if cap is None or d <= cap:
        return
    T = (n + 1) * (d - 2)
    rows = num_monomials(n + 1, T + 1)
    cols = (n + 1) * num_monomials(n + 1, T + 1 - (d - 1))
    raise CommandError(
        f"degree {d} exceeds --max-degree {cap}: this run would need "
        f"{T + 2} strand ranks, the largest on a {rows} x {cols} matrix "
        f"({rows * cols:,} cells); raise --max-degree to proceed")


def _slug(source: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", source).strip("_")


def _emit(content: str, args, filename: str) -> None:
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, filename)
        with open(path, "w") as fh:
            fh.write(content)
        print(f"wrote {path}")
    else:
        sys.stdout.write(content)


def _finish(report, args, t0: float):
    if args.timing:
        report.timing = {"seconds": round(time.time() - t0, 3)}
    return report


# -- analyze / hilbert --------------------------------------------------------


def _cmd_analyze(args, nodal_default: bool = True) -> int:
    f, label = _read_polynomial_arg(args.polynomial, args.num_vars)
    n, d = f.num_vars - 1, f.degree
    if args.n is not None and args.n != n:
        raise CommandError(f"input has n={n} (in P^{n}), expected --n {args.n}")
    if args.d is not None and args.d != d:
        raise CommandError(f"input has degree {d}, expected --d {args.d}")
    _check_degree_cap(n, d, args.max_degree)
    config = _run_config(args)
    nodal = nodal_default and not getattr(args, "no_nodal", False)
    t0 = time.time()
    report = _finish(analyze(f, source=label, config=config, nodal=nodal,
                             hilbert_loader=_hilbert_loader(args)), args, t0)
    _emit(report.render(args.format), args,
          f"{_slug(label)}.{_EXTENSIONS[args.format]}")
    return EXIT_OK if report.certified else EXIT_UNCERTIFIED


def _cmd_hilbert(args) -> int:
    return _cmd_analyze(args, nodal_default=False)


# -- chebyshev grid -----------------------------------------------------------


def _parse_degree_spec(spec: str, even_only: bool) -> list[int]:
    m = re.fullmatch(r"(\d+)\.\.(\d+)", spec)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        ds = list(range(lo, hi + 1))
    elif re.fullmatch(r"\d+(,\d+)*", spec):
        ds = [int(x) for x in spec.split(",")]
    else:
        raise CommandError(f"cannot parse degree spec {spec!r}; "
                           "use D, A..B, or D1,D2,...")
    if even_only:
        ds = [d for d in ds if d % 2 == 0]
    ds = sorted(set(ds))
    if not ds:
        raise CommandError("degree spec selects no degrees")
    if min(ds) < 3:
        raise CommandError("chebyshev grid needs degrees >= 3")
    return ds


def _grid_worker(payload):
    spec_fields, config, use_cache, cache_dir = payload
    spec = ChebyshevSpec(*spec_fields)
    loader = None
    if use_cache:
        cache = HilbertCache(cache_dir)
        loader = lambda f, cfg: cached_hilbert_function(
            f, cfg.rank_config(), cache, jobs=1)
    return analyze(chebyshev=spec, config=config, hilbert_loader=loader)


def _cmd_chebyshev(args) -> int:
    ds = _parse_degree_spec(args.d, args.even_only)
    for d in ds:
        _check_degree_cap(args.n, d, args.max_degree)
    config = _run_config(args)
    specs = []
    for d in ds:
        if args.k is not None:
            specs.append(ChebyshevSpec(args.n, d, args.k))
        else:
            specs.append(canonical_spec(args.n, d))

    reports = []
    t0 = time.time()
    if args.jobs > 1 and len(specs) > 1:
        payloads = [((s.n, s.d, s.k), config, not args.no_cache,
                     args.cache_dir) for s in specs]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_grid_worker, p) for p in payloads]
            for fut in as_completed(futures):
                reports.append(_finish(fut.result(), args, t0))
    else:
        loader = _hilbert_loader(args)
        for spec in specs:
            reports.append(_finish(
                analyze(chebyshev=spec, config=config, hilbert_loader=loader),
                args, t0))
    reports.sort(key=lambda r: (r.n, r.d))

    verdicts = sorted((v for r in reports for v in r.conjectures),
                      key=lambda v: (v.name, v.n, v.d))
    verdict_lines = ["name,n,d,predicted,computed,agree,label"]
    verdict_lines += [f"{v.name},{v.n},{v.d},{v.predicted},{v.computed},"
                      f"{v.agree},{v.label}" for v in verdicts]
    verdict_csv = "\n".join(verdict_lines) + "\n"

    if args.out or args.format != "json":
        for rep in reports:
            _emit(rep.render(args.format), args,
                  f"{_slug(rep.source)}.{_EXTENSIONS[args.format]}")
        if args.out:
            _emit(verdict_csv, args, "verdicts.csv")
        else:
            sys.stdout.write("\nconjecture verdicts:\n" + verdict_csv)
    else:
        doc = {"schema": 1,
               "reports": [r.to_dict() for r in reports],
               "verdicts": [{"name": v.name, "n": v.n, "d": v.d,
                             "predicted": v.predicted,
                             "computed": v.computed, "agree": v.agree,
                             "label": v.label} for v in verdicts]}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    certified = all(r.certified for r in reports)
    return EXIT_OK if certified else EXIT_UNCERTIFIED


# -- defects ------------------------------------------------------------------


def _parse_cc_arg(text: str) -> ChebyshevSpec:
    parts = text.split(",")
    if len(parts) not in (2, 3):
        raise CommandError(f"--cc expects n,d or n,d,k, got {text!r}")
    try:
        nums = [int(x) for x in parts]
    except ValueError:
        raise CommandError(f"--cc expects integers, got {text!r}")
    if len(nums) == 2:
        return canonical_spec(nums[0], nums[1])
    return ChebyshevSpec(nums[0], nums[1], nums[2])


def _cmd_defects(args) -> int:
    if (args.polynomial is None) == (args.cc is None):
        raise CommandError("pass a polynomial or --cc n,d, not both")
    config = _run_config(args)
    spec = None
    if args.cc is not None:
        spec = _parse_cc_arg(args.cc)
        _check_degree_cap(spec.n, spec.d, args.max_degree)
        report = analyze(chebyshev=spec, config=config,
                         hilbert_loader=_hilbert_loader(args))
    else:
        f, label = _read_polynomial_arg(args.polynomial, args.num_vars)
        _check_degree_cap(f.num_vars - 1, f.degree, args.max_degree)
        report = analyze(f, source=label, config=config,
                         hilbert_loader=_hilbert_loader(args))
    if report.defects is None:
        raise CommandError("no defect table for this input")

    oracle = None
    mismatches = []
    if args.oracle:
        if spec is None or not spec.singular:
            raise CommandError("--oracle needs a singular --cc input")
        ocfg = OracleConfig(seed=config.seed)
        oracle = {}
        for k in range(report.thresholds.T + 1):
            oracle[k] = defect_direct(spec.n, spec.d, k, k_shift=spec.k,
                                      config=ocfg)
            if oracle[k] != report.defects.defect(k):
                mismatches.append(k)

    T = report.thresholds.T
    if args.format == "csv":
        header = "k,defect" + (",oracle_defect" if oracle else "")
        lines = [header]
        for k in range(T + 1):
            row = f"{k},{report.defects.defect(k)}"
            if oracle:
                row += f",{oracle[k]}"
            lines.append(row)
        content = "\n".join(lines) + "\n"
    elif args.format == "json":
        content = json.dumps({
            "schema": 1,
            "source": report.source,
            "n": report.n, "d": report.d,
            "node_count": report.defects.node_count,
            "defects": [[k, report.defects.defect(k)] for k in range(T + 1)],
            "oracle_defects": [[k, oracle[k]] for k in range(T + 1)]
                              if oracle else None,
        }, sort_keys=True, indent=2) + "\n"
    else:
        nz = report.defects.nonzero()
        content = (f"source: {report.source}\nnodes: "
                   f"{report.defects.node_count}\n"
                   + ("nonzero defects: "
                      + (", ".join(f"S_{k}={v}" for k, v in nz) or "none"))
                   + "\n")
        if oracle is not None:
            content += ("oracle agrees on all degrees\n" if not mismatches
                        else f"oracle mismatch at k={mismatches}\n")
    _emit(content, args, f"defects_{_slug(report.source)}."
          f"{_EXTENSIONS[args.format]}")
    if mismatches:
        raise CommandError(f"node oracle disagrees with strand ranks at "
                           f"k={mismatches}")
    return EXIT_OK if report.certified else EXIT_UNCERTIFIED


# -- verify -------------------------------------------------------------------

_KUMMER = ("x0^4 + x1^4 + x2^4 + x3^4"
           " - x0^2*x1^2 - x0^2*x2^2 - x0^2*x3^2"
           " - x1^2*x2^2 - x1^2*x3^2 - x2^2*x3^2")

_FERMAT = "x0^4 + x1^4 + x2^4 + x3^4"


def _verify_cases(config: RunConfig, full: bool):
    """Yield (name, ok, detail) rows for the known-value table."""
    def cc(n, d, k=None):
        spec = canonical_spec(n, d) if k is None else ChebyshevSpec(n, d, k)
        return analyze(chebyshev=spec, config=config)

    rep = analyze(parse_polynomial(_KUMMER, 4), source="kummer",
                  config=config)
    t = rep.thresholds
    got = (t.tau, t.ct, t.st, t.mdr, rep.defects.defect(2),
           rep.alexander.text(), rep.betti.value)
    want = (16, 5, 5, 3, 6, "(t + 1)^6", 7)
    yield ("kummer-quartic", got == want, f"{got} vs {want}")

    rep = analyze(parse_polynomial(_FERMAT, 4), source="fermat",
                  config=config)
    yield ("fermat-smooth", rep.thresholds.smooth
           and rep.alexander.trivial,
           f"smooth={rep.thresholds.smooth} "
           f"alexander={rep.alexander.text()}")

    for n, d, tau in ((2, 3, 2), (2, 5, 8), (3, 3, 3), (3, 4, 12),
                      (4, 4, 24)):
        rep = cc(n, d)
        t = rep.thresholds
        with warnings.catch_warnings():
            warnings.filterwarnings("ignore",
                                    message=".*not maximal over the shift.*")
            formula = cc_node_count(n, d)
        ok = (t.tau == tau == formula
              and t.st == st_formula(n, d)
              and all(c.ok for c in rep.checks))
        yield (f"CC({n},{d})-invariants", ok,
               f"tau={t.tau} ct={t.ct} st={t.st} alexander="
               f"{rep.alexander.text()}")
        if rep.conjectures:
            bad = [v for v in rep.conjectures if not v.agree]
            yield (f"CC({n},{d})-conjectures", not bad,
                   "; ".join(f"{v.name}: {v.predicted} vs {v.computed}"
                             for v in rep.conjectures))

    rep = cc(3, 4, k=-1)
    yield ("C(3,4,-1)-trivial-alexander", rep.alexander.trivial
           and rep.thresholds.tau == 6, f"tau={rep.thresholds.tau}")

    ocfg = OracleConfig(seed=config.seed)
    for n, d, k, expect in ((3, 4, 2, 3), (2, 5, 1, 5), (3, 4, 5, 0)):
        got = defect_direct(n, d, k, config=ocfg)
        yield (f"oracle-defect({n},{d})-S_{k}", got == expect,
               f"{got} vs {expect}")
    for n, d in ((2, 5), (3, 4)):
        res = injectivity_threshold(n, d, config=ocfg)
        yield (f"oracle-injectivity({n},{d})", res.certified
               and res.r_star == d - 3, f"r*={res.r_star}")

    if full:
        for n, d, tau in ((2, 8, 24), (3, 6, 54), (4, 5, 96)):
            rep = cc(n, d)
            t = rep.thresholds
            with warnings.catch_warnings():
                warnings.filterwarnings(
                    "ignore", message=".*not maximal over the shift.*")
                formula = cc_node_count(n, d)
            ok = (t.tau == tau == formula
                  and t.st == st_formula(n, d)
                  and all(c.ok for c in rep.checks)
                  and all(v.agree for v in rep.conjectures))
            yield (f"CC({n},{d})-invariants", ok,
                   f"tau={t.tau} ct={t.ct} st={t.st}")


def _cmd_verify(args) -> int:
    config = _run_config(args)
    failures = 0
    for name, ok, detail in _verify_cases(config, args.full):
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        failures += 0 if ok else 1
    print(f"{'all checks passed' if not failures else f'{failures} failed'}")
    return EXIT_OK if not failures else EXIT_ERROR


# -- cache --------------------------------------------------------------------


def _cmd_cache(args) -> int:
    cache = HilbertCache(args.cache_dir)
    if args.action == "clear":
        removed = cache.clear()
        print(f"removed {removed} entries from {cache.directory}")
        return EXIT_OK
    entries = cache.entries()
    print(f"cache directory: {cache.directory}")
    if not entries:
        print("no entries")
        return EXIT_OK
    for e in entries:
        if e.get("corrupt"):
            print(f"  {e['key'][:16]}  CORRUPT  ({e['size']} bytes)")
        else:
            print(f"  {e['key'][:16]}  n={e['n']} d={e['d']} "
                  f"tau={e['tau']}  ({e['size']} bytes)")
    print(f"{len(entries)} entries")
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="milnor",
        description="Graded invariants of nodal projective hypersurfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common],
                       help="full pipeline on one polynomial")
    p.add_argument("polynomial",
                   help="polynomial file, inline text, or - for stdin")
    p.add_argument("--num-vars", type=int,
                   help="number of variables (default: inferred)")
    p.add_argument("--n", type=int, help="expected ambient dimension")
    p.add_argument("--d", type=int, help="expected degree")
    p.add_argument("--no-nodal", action="store_true",
                   help="do not assume nodal singularities; "
                        "skip defect, Alexander, and Betti output")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("chebyshev", parents=[common],
                       help="Chebyshev hypersurface grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", required=True, metavar="SPEC",
                   help="degree, range A..B, or comma list")
    p.add_argument("--k", type=int, help="shift override (default canonical)")
    p.add_argument("--even-only", action="store_true",
                   help="keep only even degrees")
    p.set_defaults(func=_cmd_chebyshev)

    p = sub.add_parser("hilbert", parents=[common],
                       help="Hilbert function and thresholds only")
    p.add_argument("polynomial",
                   help="polynomial file, inline text, or - for stdin")
    p.add_argument("--num-vars", type=int)
    p.add_argument("--n", type=int, help="expected ambient dimension")
    p.add_argument("--d", type=int, help="expected degree")
    p.set_defaults(func=_cmd_hilbert)

    p = sub.add_parser("defects", parents=[common],
                       help="defect table of a node set")
    p.add_argument("polynomial", nargs="?",
                   help="polynomial file, inline text, or - for stdin")
    p.add_argument("--num-vars", type=int)
    p.add_argument("--cc", metavar="N,D[,K]",
                   help="use the Chebyshev hypersurface instead")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against node-evaluation ranks "
                        "(--cc only)")
    p.set_defaults(func=_cmd_defects)

    p = sub.add_parser("verify", parents=[common],
                       help="recompute the known-value table")
    p.add_argument("--full", action="store_true",
                   help="include the larger examples (slower)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("cache", parents=[common],
                       help="inspect or clear the Hilbert-function cache")
    p.add_argument("action", choices=("inspect", "clear"))
    p.set_defaults(func=_cmd_cache)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NotNodalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ReportLintError as exc:
        print(f"error: report failed the consistency lint: {exc}",
              file=sys.stderr)
        return EXIT_ERROR
    except ArithmeticError as exc:
        print(f"uncertified: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
