"""Command-line front end: classify, curvature, sweep, embed-check.

Exit codes are a stable contract: 0 success, 1 usage or parse error,
2 admissibility failure, 3 degenerate metric.  Outputs are byte
deterministic for a fixed configuration and seed: pseudo-random chart
points come from numpy's seeded PCG64 generator, and every float is
serialized with 17 significant digits so values round-trip exactly.

``--config FILE`` loads a JSON object whose keys mirror the flag names
with underscores (``t_min`` for ``--t-min``); explicit flags win.  The
environment variable GDS_THREADS caps the worker pool used for sweeps
and embedding checks (0 or unset picks a size automatically); results
are ordered by index either way.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from .curvature import curvature_report, scalar_curvature
from .errors import DegenerateMetric, NotInPsi, OutOfChart
from .geometry import (CHART_MARGIN, ChartPoint, defining_residual, embed,
                       embed_inverse, pullback_check, warped_metric)
from .oracles import ClosedForm4D, christoffel_closed, ricci_closed, scalar_closed
from .profiles import (Family, beta, check_psi, classify, eval_jet,
                       format_profile, parse_profile)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_ADMISSIBLE = 2
EXIT_DEGENERATE = 3

_DEFAULTS = {
    "n": 3,
    "t_min": -10.0,
    "t_max": 10.0,
    "samples": 2001,
    "tol": 1e-9,
    "seed": 42,
    "format": "csv",
    "count": 100,
    "lambda_const": None,
    "point": None,
    "quantity": None,
    "out": None,
}


# ---------------------------------------------------------------------------
# deterministic serialization
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    """17 significant digits: enough for exact double round-trips."""
    if isinstance(x, float) and math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return f"{x:.17g}"


def dumps17(doc, indent: int = 0) -> str:
    """JSON text with floats rendered at 17 significant digits, keys in order."""
    pad = "  " * indent
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        items = [f'{pad}  "{k}": {dumps17(v, indent + 1)}' for k, v in doc.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(doc, (list, tuple)):
        if not doc:
            return "[]"
        items = [f"{pad}  {dumps17(v, indent + 1)}" for v in doc]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(doc, bool):
        return "true" if doc else "false"
    if doc is None:
        return "null"
    if isinstance(doc, float):
        return _fmt(doc)
    if isinstance(doc, int):
        return str(doc)
    return json.dumps(doc)


def _emit(text: str, out_path: Optional[str], stdout) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


# ---------------------------------------------------------------------------
# worker pool
# ---------------------------------------------------------------------------

def _worker_count() -> int:
    raw = os.environ.get("GDS_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap == 0:
        cap = os.cpu_count() or 1
    return max(1, cap)


def _ordered_map(fn, items):
    workers = _worker_count()
    items = list(items)
    if workers <= 1 or len(items) < 4:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# seeded chart sampling
# ---------------------------------------------------------------------------

def sample_chart_points(seed: int, count: int, n: int, t_min: float,
                        t_max: float, margin: float = CHART_MARGIN):
    """Deterministic chart points: per point, t first, then angles in order."""
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        t = rng.uniform(t_min, t_max)
        angles = [rng.uniform(margin, math.pi - margin) for _ in range(n - 1)]
        angles.append(rng.uniform(0.0, 2.0 * math.pi))
        points.append(ChartPoint(t, tuple(angles)))
    return points


def sample_vectors(seed: int, count: int, dim: int):
    """Deterministic tangent-vector pairs with entries in [-1, 1]."""
    rng = np.random.default_rng(seed + 1)
    return [(rng.uniform(-1.0, 1.0, dim), rng.uniform(-1.0, 1.0, dim))
            for _ in range(count)]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _coord_names(n: int):
    if n == 3:
        return ["t", "psi", "theta", "phi"]
    return ["t"] + [f"phi{i}" for i in range(1, n + 1)]


def cmd_classify(args, stdout, stderr) -> int:
    profile = parse_profile(args.profile)
    report = check_psi(profile, args.t_min, args.t_max, args.samples)
    doc = {
        "profile": format_profile(profile),
        "in_psi": report.in_psi,
        "in_psi_hat": report.in_psi_hat,
        "character": None,
        "beta_min": None,
        "beta_max": None,
        "witness_t0": report.witness_t0,
    }
    code = EXIT_OK
    if report.in_psi:
        character = classify(profile, args.t_min, args.t_max, args.samples, args.tol)
        doc["character"] = character.kind.value
        doc["beta_min"] = character.beta_min
        doc["beta_max"] = character.beta_max
    else:
        code = EXIT_NOT_ADMISSIBLE
    _emit(dumps17(doc) + "\n", args.out, stdout)
    return code


def _parse_point(raw: str, n: int) -> ChartPoint:
    parts = [float(p) for p in raw.split(",")]
    if len(parts) != n + 1:
        raise ValueError(f"--point needs {n + 1} comma-separated values for n={n}")
    return ChartPoint(parts[0], tuple(parts[1:]))


def _gamma_entries(gamma: np.ndarray, names) -> list:
    entries = []
    dim = gamma.shape[0]
    for r in range(dim):
        for m in range(dim):
            for nn in range(m, dim):
                if gamma[r, m, nn] != 0.0:
                    entries.append({"upper": names[r],
                                    "lower": [names[m], names[nn]],
                                    "value": float(gamma[r, m, nn])})
    return entries


def cmd_curvature(args, stdout, stderr) -> int:
    profile = parse_profile(args.profile)
    if args.point is None:
        raise ValueError("curvature requires --point t,phi1,...,phin")
    point = _parse_point(args.point, args.n)
    field = warped_metric(profile, args.n)
    report = curvature_report(field, point, lambda_const=args.lambda_const)
    names = _coord_names(args.n)
    doc = {
        "profile": format_profile(profile),
        "n": args.n,
        "point": [point.t, *point.angles],
        "christoffel": _gamma_entries(report.christoffel, names),
        "ricci": [[float(v) for v in row] for row in report.ricci],
        "scalar": report.scalar,
        "oracle": None,
        "max_deviation": None,
        "einstein_residual": report.einstein_residual,
    }
    if (profile.family is Family.EXP and abs(profile.lam) < 1.0 and args.n == 3):
        cf = ClosedForm4D(profile.lam, profile.r)
        o_gamma = christoffel_closed(cf, point)
        o_ricci = ricci_closed(cf, point)
        o_scalar = scalar_closed(cf, point.t)
        doc["oracle"] = {
            "christoffel": _gamma_entries(o_gamma, names),
            "ricci": [[float(v) for v in row] for row in o_ricci],
            "scalar": o_scalar,
        }
        doc["max_deviation"] = float(max(
            np.max(np.abs(report.christoffel - o_gamma)),
            np.max(np.abs(report.ricci - o_ricci)),
            abs(report.scalar - o_scalar),
        ))
    _emit(dumps17(doc) + "\n", args.out, stdout)
    return EXIT_OK


def cmd_sweep(args, stdout, stderr) -> int:
    profile = parse_profile(args.profile)
    if args.quantity not in ("scalar", "beta", "radius"):
        raise ValueError("--quantity must be scalar, beta, or radius")
    ts = np.linspace(args.t_min, args.t_max, args.samples)
    if args.quantity == "scalar":
        field = warped_metric(profile, args.n)
        angles = tuple([0.5 * math.pi] * (args.n - 1) + [1.0])

        def value(t: float) -> float:
            return scalar_curvature(field, ChartPoint(t, angles))
    elif args.quantity == "beta":
        def value(t: float) -> float:
            return beta(profile, t)
    else:
        def value(t: float) -> float:
            jet = eval_jet(profile, t)
            return jet.v * math.cosh(t)

    values = _ordered_map(value, [float(t) for t in ts])
    if args.format == "json":
        doc = {
            "profile": format_profile(profile),
            "quantity": args.quantity,
            "t": [float(t) for t in ts],
            "value": [float(v) for v in values],
        }
        _emit(dumps17(doc) + "\n", args.out, stdout)
    else:
        lines = ["t,value"]
        lines += [f"{t:.17g},{v:.17g}" for t, v in zip(ts, values)]
        _emit("\n".join(lines) + "\n", args.out, stdout)
    return EXIT_OK


def cmd_embed_check(args, stdout, stderr) -> int:
    profile = parse_profile(args.profile)
    report = check_psi(profile, args.t_min, args.t_max, args.samples)
    if not report.in_psi:
        raise NotInPsi(f"profile not admissible (witness {report.witness_t0})")

    forced = None
    if args.point is not None:
        forced = _parse_point(args.point, args.n)
        points = [forced] * 1
        vectors = sample_vectors(args.seed, 1, args.n + 1)
    else:
        points = sample_chart_points(args.seed, args.count, args.n,
                                     args.t_min, args.t_max)
        vectors = sample_vectors(args.seed, args.count, args.n + 1)

    def check_one(item):
        point, (u, v) = item
        x = embed(profile, point)
        residual = abs(defining_residual(profile, x)) / (1.0 + float(np.dot(x, x)))
        back = embed_inverse(profile, x)
        roundtrip = max(abs(back.t - point.t),
                        max(abs(b - a) for a, b in zip(point.angles, back.angles)))
        try:
            g_uv, eta_uv = pullback_check(profile, point, u, v)
            pullback = abs(g_uv - eta_uv) / (1.0 + abs(g_uv))
        except OutOfChart:
            pullback = None  # forced points may sit on a chart degeneracy
        return residual, roundtrip, pullback

    results = _ordered_map(check_one, list(zip(points, vectors)))
    residuals = [r for r, _, _ in results]
    roundtrips = [r for _, r, _ in results]
    pullbacks = [p for _, _, p in results if p is not None]
    max_residual = max(residuals)
    max_roundtrip = max(roundtrips)
    max_pullback = max(pullbacks) if pullbacks else None
    passed = (max_residual <= args.tol and max_roundtrip <= args.tol
              and (max_pullback is None or max_pullback <= args.tol))
    doc = {
        "profile": format_profile(profile),
        "n": args.n,
        "count": len(points),
        "seed": args.seed,
        "t_min": args.t_min,
        "t_max": args.t_max,
        "point": [forced.t, *forced.angles] if forced is not None else None,
        "max_defining_residual": max_residual,
        "max_pullback_deviation": max_pullback,
        "max_roundtrip_error": max_roundtrip,
        "tol": args.tol,
        "pass": passed,
    }
    _emit(dumps17(doc) + "\n", args.out, stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exit code is 2; keep 1 for usage
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser() -> _Parser:
    parser = _Parser(prog="gds", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--profile", required=False,
                       help="profile spec, e.g. exp:r=1,lambda=0.5")
        p.add_argument("--config", help="JSON file with defaults for these flags")
        p.add_argument("--n", type=int)
        p.add_argument("--t-min", dest="t_min", type=float)
        p.add_argument("--t-max", dest="t_max", type=float)
        p.add_argument("--samples", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--out", dest="out")
        p.add_argument("--format", choices=("json", "csv"))

    p = sub.add_parser("classify", help="admissibility and causal character")
    common(p)

    p = sub.add_parser("curvature", help="curvature at a chart point")
    common(p)
    p.add_argument("--point", help="comma-separated t,phi1,...,phin")
    p.add_argument("--lambda-const", dest="lambda_const", type=float)

    p = sub.add_parser("sweep", help="CSV sweep of a scalar quantity over t")
    common(p)
    p.add_argument("--quantity", choices=("scalar", "beta", "radius"))

    p = sub.add_parser("embed-check", help="seeded embedding verification")
    common(p)
    p.add_argument("--count", type=int)
    p.add_argument("--point", help="forced chart point instead of random draws")
    return parser


def _apply_config(args) -> None:
    """Resolution order: explicit flag > config file > built-in default."""
    file_values = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            file_values = json.load(fh)
        if not isinstance(file_values, dict):
            raise ValueError("--config must contain a JSON object")
    for key, default in _DEFAULTS.items():
        if getattr(args, key, None) is None:
            value = file_values.get(key, default)
            setattr(args, key, value)
    if getattr(args, "profile", None) is None:
        args.profile = file_values.get("profile")
    if args.profile is None:
        raise ValueError("a profile spec is required (--profile or config file)")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args)
        handler = {
            "classify": cmd_classify,
            "curvature": cmd_curvature,
            "sweep": cmd_sweep,
            "embed-check": cmd_embed_check,
        }[args.command]
        return handler(args, stdout, stderr)
    except _UsageError as exc:
        print(f"gds: {exc}", file=stderr)
        return EXIT_USAGE
    except (ValueError, OSError, OutOfChart, json.JSONDecodeError) as exc:
        print(f"gds: {exc}", file=stderr)
        return EXIT_USAGE
    except NotInPsi as exc:
        print(f"gds: {exc}", file=stderr)
        return EXIT_NOT_ADMISSIBLE
    except DegenerateMetric as exc:
        print(f"gds: {exc}", file=stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    raise SystemExit(main())
