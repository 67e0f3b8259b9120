"""Command-line front door: load algebra descriptions, run homology
computations and certification suites, emit machine-readable reports.

Reports are canonical JSON (sorted keys, two-space indent, trailing
newline) so that repeated runs with the same configuration are
byte-identical; per-slice wall-clock times are only included when
explicitly requested, since they would break that guarantee.
"""

import argparse
import csv
import io
import json
import sys
import time

from . import __version__
from .algebras import Coefficients, PRESETS, load_algebra, preset
from .chains import long_exact_sequence_nodes
from .fields import QQ, field_from_name
from .gamma import GammaComplex
from .hochschild import HochschildComplex, harrison_homology
from .symhom import ComparisonData, SymmetricComplex, hs0_consistency
from .verify import SUITES, run_suite

THEORIES = ("hochschild", "harrison", "gamma", "symmetric", "comparison")

DEFAULT_BASIS_CEILING = 200_000


class ConfigError(Exception):
    pass


def _resolve_algebra(args):
    field = field_from_name(args.field) if args.field else None
    if args.algebra_file:
        alg = load_algebra(args.algebra_file, field_override=field)
        problems = alg.validate()
        if problems:
            raise ConfigError("algebra file failed validation: "
                              + "; ".join(problems))
        return alg
    return preset(args.preset, field or QQ)


def _config_echo(args, alg):
    return {
        "algebra": alg.name,
        "algebra_file": args.algebra_file,
        "field": alg.field.name,
        "theory": getattr(args, "theory", None),
        "coefficients": getattr(args, "coefficients", None),
        "max_degree": getattr(args, "max_degree", None),
        "max_weight": getattr(args, "max_weight", None),
        "jobs": getattr(args, "jobs", 1),
    }


def _guard_dim(dim, ceiling, what):
    if dim > ceiling:
        raise ConfigError(
            f"{what} has {dim} basis elements, over the ceiling {ceiling}; "
            "lower --max-degree/--max-weight or raise --max-basis")


def _compute_rows(alg, args, timings):
    """Dimension-table rows plus inline certifications for one theory."""
    theory = args.theory
    N, W = args.max_degree, args.max_weight
    ceiling = args.max_basis
    co = Coefficients(alg, args.coefficients)
    rows = []
    certs = []

    def timed(label, fn):
        t0 = time.perf_counter()
        out = fn()
        timings[label] = round(time.perf_counter() - t0, 6)
        return out

    if theory == "hochschild":
        hc = HochschildComplex(alg, co)
        for w in range(W + 1):
            _guard_dim(max(hc.dim(n, w) for n in range(N + 2)), ceiling,
                       f"hochschild slice w={w}")
            dims = timed(f"w={w}",
                         lambda w=w: hc.full_slice(w, N + 1).homology().dims())
            rows += [{"theory": theory, "n": n, "w": w, "dim": dims[n]}
                     for n in range(N + 1)]
        certs.append({"name": "boundary squares to zero", "status": "pass"})
    elif theory == "harrison":
        table = timed("table",
                      lambda: harrison_homology(alg, co, N, W))
        rows += [{"theory": theory, "n": n, "w": w, "dim": table[(n, w)]}
                 for (n, w) in sorted(table)]
        certs.append({"name": "quotient and eulerian pipelines agree",
                      "status": "pass"})
    elif theory == "gamma":
        for variant in ("I", "A"):
            gc = GammaComplex(alg, co, variant)
            for w in range(W + 1):
                _guard_dim(max(gc.dim(n, w) for n in range(N + 2)), ceiling,
                           f"gamma({variant}) slice w={w}")
                dims = timed(f"{variant} w={w}",
                             lambda gc=gc, w=w:
                             gc.slice(w, N + 1).homology().dims())
                rows += [{"theory": theory, "variant": variant, "n": n,
                          "w": w, "dim": dims[n]} for n in range(N + 1)]
        certs.append({"name": "boundary squares to zero", "status": "pass"})
        certs.append({
            "name": "full-algebra variant truncated to strings with "
                    "initial domain <= weight",
            "status": "pass"})
    elif theory == "symmetric":
        if co.kind != "k":
            raise ConfigError("symmetric homology is computed with k "
                              "coefficients")
        sym = SymmetricComplex(alg, "full")
        for w in range(W + 1):
            _guard_dim(max(sym.dim(n, w) for n in range(N + 2)), ceiling,
                       f"symmetric slice w={w}")
            dims = timed(f"w={w}",
                         lambda w=w: sym.slice(w, N + 1).homology().dims())
            rows += [{"theory": theory, "n": n, "w": w, "dim": dims[n]}
                     for n in range(N + 1)]
        bad = [(w, got, exp) for w, got, exp in hs0_consistency(alg, W)
               if got != exp]
        certs.append({"name": "degree-zero law vs algebra dimensions",
                      "status": "pass" if not bad else "fail",
                      **({"witness": str(bad)} if bad else {})})
    elif theory == "comparison":
        if co.kind != "k":
            raise ConfigError("the comparison runs with k coefficients")
        for w in range(W + 1):
            cd = timed(f"build w={w}",
                       lambda w=w: ComparisonData(alg, w, N + 1))
            _guard_dim(max(cd.sym_chain.dims), ceiling,
                       f"symmetric slice w={w}")
            for label, flag in (
                    ("quotient map is a chain map", cd.q_is_chain_map()),
                    ("comparison map is a chain map", cd.phi_is_chain_map()),
                    ("comparison map surjective", cd.surjective())):
                certs.append({"name": f"{label} (w={w})",
                              "status": "pass" if flag else "fail"})
            inc, proj, sub, total, quot = cd.ses()
            nodes = timed(f"les w={w}",
                          lambda: long_exact_sequence_nodes(
                              inc, proj, sub, total, quot, N))
            bad = [node for node, rin, kout in nodes if rin != kout]
            certs.append({"name": f"long exact sequence exact (w={w})",
                          "status": "pass" if not bad else "fail",
                          **({"witness": str(bad)} if bad else {})})
            for src, chain in (("kernel", sub), ("symmetric", total),
                               ("gamma", quot)):
                hom = chain.homology()
                rows += [{"theory": f"comparison/{src}", "n": n, "w": w,
                          "dim": hom.dim(n)} for n in range(N + 1)]
    else:
        raise ConfigError(f"unknown theory {theory!r}")
    return rows, certs


def _emit(report, args):
    if args.format == "json":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["theory", "variant", "n", "w", "dim"])
        for row in report.get("tables", []):
            writer.writerow([row.get("theory"), row.get("variant", ""),
                             row.get("n"), row.get("w"), row.get("dim")])
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_compute(args):
    alg = _resolve_algebra(args)
    timings = {}
    if args.jobs > 1 and args.theory in ("hochschild", "gamma", "symmetric"):
        rows, certs = _compute_parallel(alg, args, timings)
    else:
        rows, certs = _compute_rows(alg, args, timings)
    rows.sort(key=lambda r: (r["theory"], r.get("variant", ""),
                             r["w"], r["n"]))
    report = {
        "tool": "exacthom",
        "version": __version__,
        "config": _config_echo(args, alg),
        "tables": rows,
        "certifications": certs,
    }
    if args.timings:
        report["timings"] = timings
    _emit(report, args)
    failed = [c for c in certs if c["status"] != "pass"]
    return 1 if failed else 0


def _parallel_worker(payload):
    (preset_name, algebra_file, field_name, theory, coefficients,
     max_degree, w, ceiling) = payload
    ns = argparse.Namespace(
        preset=preset_name, algebra_file=algebra_file, field=field_name,
        theory=theory, coefficients=coefficients, max_degree=max_degree,
        max_weight=w, max_basis=ceiling, jobs=1, timings=False)
    alg = _resolve_algebra(ns)
    # compute just the weight-w layer by running with W = w and keeping it
    rows, certs = _compute_rows(alg, ns, {})
    return w, [r for r in rows if r["w"] == w], certs


def _compute_parallel(alg, args, timings):
    from concurrent.futures import ProcessPoolExecutor

    payloads = [(args.preset, args.algebra_file, args.field, args.theory,
                 args.coefficients, args.max_degree, w, args.max_basis)
                for w in range(args.max_weight + 1)]
    rows, certs = [], []
    t0 = time.perf_counter()
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        for w, wrows, wcerts in sorted(pool.map(_parallel_worker, payloads)):
            rows += wrows
            for cert in wcerts:
                if cert not in certs:
                    certs.append(cert)
    timings["parallel total"] = round(time.perf_counter() - t0, 6)
    return rows, certs


def cmd_verify(args):
    config = {
        "max_n": args.max_n,
        "max_degree": args.max_degree,
        "max_weight": args.max_weight,
    }
    config = {k: v for k, v in config.items() if v is not None}
    if args.preset:
        config["presets"] = [args.preset]
    if args.field:
        config["field"] = field_from_name(args.field)
    checks, elapsed = run_suite(args.suite, config)
    report = {
        "tool": "exacthom",
        "version": __version__,
        "suite": args.suite,
        "config": {k: str(v) for k, v in config.items()},
        "certifications": [c.as_dict() for c in checks],
    }
    if args.timings:
        report["timings"] = {"suite": round(elapsed, 6)}
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(c.ok for c in checks) else 1


def cmd_presets(args):
    rows = []
    for name in sorted(PRESETS):
        alg = preset(name)
        rows.append({
            "name": name,
            "generators": [{"symbol": s, "weight": w}
                           for s, w in zip(alg.generators, alg.weights)],
        })
    sys.stdout.write(json.dumps({"presets": rows}, sort_keys=True, indent=2)
                     + "\n")
    return 0


def cmd_validate(args):
    field = field_from_name(args.field) if args.field else None
    alg = load_algebra(args.algebra_file, field_override=field)
    problems = alg.validate()
    report = {
        "algebra": alg.name,
        "valid": not problems,
        "violations": problems,
    }
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0 if not problems else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="exacthom",
        description="Exact homology workbench for weight-graded augmented "
                    "commutative algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_algebra_opts(p):
        p.add_argument("--preset", default="dual-numbers",
                       choices=sorted(PRESETS))
        p.add_argument("--algebra-file", default=None,
                       help="JSON algebra description (overrides --preset)")
        p.add_argument("--field", default=None,
                       help="field override: Q or Fp:<prime>")

    comp = sub.add_parser("compute", help="compute homology dimension tables")
    add_algebra_opts(comp)
    comp.add_argument("--theory", required=True, choices=THEORIES)
    comp.add_argument("--coefficients", default="k", choices=("k", "A"))
    comp.add_argument("--max-degree", type=int, default=3)
    comp.add_argument("--max-weight", type=int, default=3)
    comp.add_argument("--format", default="json", choices=("json", "csv"))
    comp.add_argument("--output", default=None)
    comp.add_argument("--jobs", type=int, default=1,
                      help="parallel slice workers (default sequential)")
    comp.add_argument("--timings", action="store_true",
                      help="include wall-clock times (breaks byte-for-byte "
                           "reproducibility)")
    comp.add_argument("--max-basis", type=int, default=DEFAULT_BASIS_CEILING,
                      help="abort if a slice basis exceeds this size")
    comp.set_defaults(fn=cmd_compute)

    ver = sub.add_parser("verify", help="run a certification suite")
    add_algebra_opts(ver)
    ver.add_argument("--suite", required=True, choices=sorted(SUITES))
    ver.add_argument("--max-n", type=int, default=None,
                     help="symmetric-group bound for the eulerian suite")
    ver.add_argument("--max-degree", type=int, default=None)
    ver.add_argument("--max-weight", type=int, default=None)
    ver.add_argument("--output", default=None)
    ver.add_argument("--timings", action="store_true")
    ver.set_defaults(fn=cmd_verify)

    pre = sub.add_parser("presets", help="list shipped algebra presets")
    pre.set_defaults(fn=cmd_presets)

    val = sub.add_parser("validate", help="validate an algebra description")
    val.add_argument("--algebra-file", required=True)
    val.add_argument("--field", default=None)
    val.set_defaults(fn=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
