"""Command-line front end: angle tables, projection experiments, identities.

Reports are line-delimited JSON, one record per line with a summary record
last, and every real number is serialized with 17 significant digits so
identical (input, flags, seed, workers) runs produce byte-identical bytes.
Wall-clock timings go to standard error only, for the same reason.

Exit codes: 0 all checks passed, 1 a check failed, 2 input or usage error.
"""

import argparse
import json
import math
import sys
import time

import numpy as np

from . import families, identities, projection
from .angles import solid_angle
from .geometry import load_polytope, sphere_area

DEFAULT_SAMPLES = 10 ** 6
DEFAULT_TOL = 1e-9


def _fmt(value):
    """Serialize one JSON value; floats get 17 significant digits."""
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return "null"
        return format(value, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join("%s: %s" % (json.dumps(k), _fmt(v)) for k, v in value.items()) + "}"
    raise TypeError("cannot serialize %r" % (value,))


class _Report:
    """Collects record lines and writes them to --out or standard output."""

    def __init__(self):
        self.lines = []

    def emit(self, record):
        self.lines.append(_fmt(record))

    def write(self, out_path):
        text = "".join(line + "\n" for line in self.lines)
        if out_path:
            with open(out_path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="polyangles",
        description="Solid angles, projection experiments, and identity checks for convex polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, with_input=True):
        if with_input:
            sp.add_argument("input", nargs="?", help="polytope JSON file")
            sp.add_argument(
                "--builtin",
                nargs="+",
                metavar="SPEC",
                help="generator instead of a file: regular-simplex N | cube N | "
                "flat-apex H | skew D | random-simplex SEED [DIM]",
            )
        sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
        sp.add_argument("--method", choices=("auto", "exact", "mc"), default="auto")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--out", help="write the report to this file instead of stdout")

    sp = sub.add_parser("angles", help="solid angle of every proper face")
    common(sp)

    sp = sub.add_parser("simulate", help="projection experiment vs prediction")
    common(sp)
    sp.add_argument("--k", type=int, default=None, help="count surviving k-faces instead of classifying simplex shadows")

    sp = sub.add_parser("verify", help="run every applicable identity check")
    common(sp)

    sp = sub.add_parser("scan", help="shadow probability along a degenerate family")
    sp.add_argument("--family", choices=(identities.FLAT_APEX, identities.SKEW_SEGMENTS), required=True)
    sp.add_argument("--from", dest="start", type=float, required=True, help="first parameter value")
    sp.add_argument("--to", dest="stop", type=float, required=True, help="last parameter value")
    sp.add_argument("--steps", type=int, required=True, help="grid size (log spacing)")
    common(sp, with_input=False)
    return parser


def _load_input(args, tol):
    builtin = getattr(args, "builtin", None)
    path = getattr(args, "input", None)
    if (builtin is None) == (path is None):
        raise ValueError("exactly one of an input file or --builtin is required")
    if path is not None:
        return load_polytope(path, tol=tol)
    name, params = builtin[0], builtin[1:]
    if name == "regular-simplex" and len(params) == 1:
        return families.regular_simplex(int(params[0]), tol=tol)
    if name == "cube" and len(params) == 1:
        return families.cube(int(params[0]), tol=tol)
    if name == "flat-apex" and len(params) == 1:
        return families.flat_apex_tetrahedron(float(params[0]), tol=tol)
    if name == "skew" and len(params) == 1:
        return families.skew_segment_tetrahedron(float(params[0]), tol=tol)
    if name == "random-simplex" and len(params) in (1, 2):
        dim = int(params[1]) if len(params) == 2 else 3
        return families.random_simplex(dim, int(params[0]), tol=tol)
    raise ValueError("bad --builtin spec: %s" % " ".join(builtin))


def _summary(report, command, p, args, passed, extra=None):
    record = {
        "record": "summary",
        "command": command,
        "dim": None if p is None else p.dim,
        "f_vector": None if p is None else list(p.f_vector),
        "samples": args.samples,
        "seed": args.seed,
        "workers": args.workers,
        "method": args.method,
        "passed": passed,
    }
    if extra:
        record.update(extra)
    report.emit(record)


def _cmd_angles(args, report):
    p = _load_input(args, args.tolerance)
    for k in range(p.dim):
        total_raw = 0.0
        total_norm = 0.0
        for i, face in enumerate(p.faces(k)):
            m = solid_angle(
                p, face, method=args.method, samples=args.samples,
                seed=[args.seed, k, i], workers=args.workers,
            )
            total_raw += m.raw
            total_norm += m.normalized
            report.emit({
                "record": "angle",
                "dim": k,
                "face": i,
                "vertices": list(face.vertex_ids),
                "raw": m.raw,
                "normalized": m.normalized,
                "stderr": m.stderr,
                "method": m.method,
            })
        report.emit({"record": "angle-total", "dim": k, "raw": total_raw, "normalized": total_norm})
    _summary(report, "angles", p, args, True)
    return 0


def _cmd_simulate(args, report):
    p = _load_input(args, args.tolerance)
    if args.k is None:
        exp = projection.estimate_simplex_probability(
            p, args.samples, args.seed, workers=args.workers, tol=args.tolerance
        )
        s = identities.angle_sum(
            p, 0, method=args.method, samples=args.samples, seed=args.seed, workers=args.workers
        )
        area = sphere_area(p.dim)
        prediction = 2.0 * s.value / area
        prediction_stderr = 2.0 * s.stderr / area
        residual = abs(exp.estimate - prediction)
        tolerance = max(args.tolerance, 4.0 * math.hypot(exp.stderr, prediction_stderr))
        passed = residual <= tolerance
        report.emit({
            "record": "experiment",
            "kind": "simplex-probability",
            "estimate": exp.estimate,
            "stderr": exp.stderr,
            "prediction": prediction,
            "prediction_stderr": prediction_stderr,
            "residual": residual,
            "tolerance": tolerance,
            "degenerate": exp.degenerate,
            "passed": passed,
        })
        runtime = exp.runtime
    else:
        exp = projection.estimate_expected_face_count(
            p, args.k, args.samples, args.seed, workers=args.workers,
            tol=args.tolerance, method=args.method,
        )
        tolerance = max(args.tolerance, 4.0 * math.hypot(exp.stderr, exp.prediction_stderr))
        passed = exp.residual <= tolerance
        report.emit({
            "record": "experiment",
            "kind": "face-count",
            "k": args.k,
            "estimate": exp.estimate,
            "stderr": exp.stderr,
            "prediction": exp.prediction,
            "prediction_stderr": exp.prediction_stderr,
            "residual": exp.residual,
            "tolerance": tolerance,
            "degenerate": exp.degenerate,
            "passed": passed,
        })
        runtime = exp.runtime
    print("# runtime %.3fs" % runtime, file=sys.stderr)
    _summary(report, "simulate", p, args, bool(passed))
    return 0 if passed else 1


def _cmd_verify(args, report):
    p = _load_input(args, args.tolerance)
    start = time.perf_counter()
    checks = identities.run_verification(
        p, samples=args.samples, seed=args.seed, method=args.method,
        workers=args.workers, base_tol=args.tolerance,
    )
    for c in checks:
        report.emit({
            "record": "check",
            "name": c.name,
            "lhs": c.lhs,
            "rhs": c.rhs,
            "residual": c.residual,
            "tolerance": c.tolerance,
            "lhs_stderr": c.lhs_stderr,
            "rhs_stderr": c.rhs_stderr,
            "passed": c.passed,
            "method_trail": c.method_trail,
        })
    print("# runtime %.3fs" % (time.perf_counter() - start), file=sys.stderr)
    passed = all(c.passed for c in checks)
    failures = sum(1 for c in checks if not c.passed)
    _summary(report, "verify", p, args, passed, extra={"checks": len(checks), "failures": failures})
    return 0 if passed else 1


def _cmd_scan(args, report):
    grid = identities.log_grid(args.start, args.stop, args.steps)
    points = identities.gaddum_scan(
        args.family, grid, method=args.method, samples=args.samples,
        seed=args.seed, workers=args.workers,
    )
    in_range = True
    for x, prob in points:
        ok = 0.0 < prob < 1.0
        in_range = in_range and ok
        report.emit({
            "record": "scan-point",
            "family": args.family,
            "parameter": x,
            "probability": prob,
            "in_range": ok,
        })
    _summary(report, "scan", None, args, in_range, extra={"family": args.family, "steps": args.steps})
    return 0 if in_range else 1


_COMMANDS = {
    "angles": _cmd_angles,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
}


def run(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.samples < 1:
        parser.error("--samples must be >= 1")
    if args.seed < 0:
        parser.error("--seed must be >= 0")
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    report = _Report()
    try:
        code = _COMMANDS[args.command](args, report)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    report.write(args.out)
    return code


if __name__ == "__main__":
    sys.exit(run())
