"""Command line front end: ``relcalc classify | perturb | sweep | truncation``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import classify
from . import extensions as ext
from . import perturb
from . import relation as rel
from . import spectral
from .documents import DocumentError, load
from .errors import NotInRegularSet, NotSelfadjoint, PreconditionFailed
from .spectral import Interval
from .subspace import DEFAULT_TOL

EXIT_OK = 0
EXIT_VERDICT_FAILED = 1
EXIT_INPUT_ERROR = 2


def resolve_tol(flag: float | None, document_tol: float | None = None) -> float:
    """CLI flag, then the document's own tol, then ``RELCALC_TOL``, then the default."""
    if flag is not None:
        return flag
    if document_tol is not None:
        return document_tol
    env = os.environ.get("RELCALC_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise SystemExit(f"relcalc: RELCALC_TOL is not a number: {env!r}")
    return DEFAULT_TOL


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, ext.Infinity):
        return "inf"
    return x


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")


def parse_interval(text: str) -> Interval:
    try:
        a, b = (float(v) for v in text.split(","))
        return Interval(a, b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad interval {text!r}: {exc}") from None


def parse_taus(text: str) -> list:
    if not text.strip():
        return []
    try:
        return [ext.parse_tau(v) for v in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid tau grid {text!r}: {exc}") from None


def parse_ints(text: str) -> list[int]:
    try:
        out = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")
    if not out or any(v < 1 for v in out):
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return out


def _load_relation(path, tol_flag):
    doc = load(path)
    return doc.to_relation(resolve_tol(tol_flag, doc.tol))


def classify_report(t) -> dict:
    p = rel.parts(t)
    eta_minus, eta_plus = classify.deficiency_indices(t)
    diag = classify.selfadjoint_diagnostics(t)
    return {
        "n": t.n,
        "graph_dim": t.dim,
        "flags": {
            "symmetric": classify.is_symmetric(t),
            "dissipative": classify.is_dissipative(t),
            "selfadjoint": bool(diag),
            "bounded": classify.is_bounded(t),
            "maximal_dissipative": classify.is_maximal_dissipative(t),
        },
        "parts": {"dom": p.dom.dim, "ran": p.ran.dim, "ker": p.ker.dim, "mul": p.mul.dim},
        "deficiency": {"eta_minus": eta_minus, "eta_plus": eta_plus},
    }


def cmd_classify(args) -> tuple[dict, int]:
    t = _load_relation(args.file, args.tol)
    return {"command": {"name": "classify", "file": args.file},
            "results": classify_report(t), "warnings": []}, EXIT_OK


def _eigen_candidates(*relations) -> list[complex]:
    vals = []
    for t in relations:
        report = spectral.spectrum(t)
        for e in report.eigenvalues:
            if all(abs(e.value - v) > math.sqrt(t.tol) * max(1.0, abs(v)) for v in vals):
                vals.append(e.value)
    return vals


def perturb_report(a, l, zeta, intervals) -> tuple[dict, list[str], bool]:
    warnings = []
    diff = perturb.resolvent_difference(a, l, zeta)
    ok = True
    results = {
        "zeta": zeta,
        "rank_F": diff.rank,
        "singular_values_F": diff.singular_values,
        "check_zeta": diff.check_zeta,
        "check_rank_F": diff.check_rank,
        "counting": [],
        "eigenspaces": [],
    }
    if diff.rank_uncertain:
        warnings.append("rank-uncertain")
    if not diff.rank_constant:
        warnings.append("rank-not-constant")

    both_sa = bool(classify.is_selfadjoint(a)) and bool(classify.is_selfadjoint(l))
    if intervals and not both_sa:
        warnings.append("counting bounds skipped: both relations must be selfadjoint")
    elif intervals:
        for delta in intervals:
            v = perturb.check_counting_bounds(a, l, delta, zeta)
            entry = {"interval": [delta.alpha, delta.beta], **v.as_dict()}
            results["counting"].append(entry)
            if v.holds is False:
                ok = False
            if v.holds is None:
                warnings.append(f"endpoint-collision on ({delta.alpha}, {delta.beta})")

    if classify.is_maximal_dissipative(a) and classify.is_maximal_dissipative(l):
        for lam in _eigen_candidates(a, l):
            v = perturb.eigenspace_comparison(a, l, lam, zeta)
            results["eigenspaces"].append({"lambda": lam, **v.as_dict()})
            if v.holds is False:
                ok = False
    else:
        warnings.append("eigenspace bounds skipped: both relations must be maximal dissipative")
    return results, warnings, ok


def random_intervals(a, l, count, seed) -> list[Interval]:
    """Intervals with endpoints drawn around the joint spectrum of ``a`` and ``l``."""
    rng = np.random.default_rng(seed)
    w = np.zeros(0)
    if classify.is_selfadjoint(a) and classify.is_selfadjoint(l):
        w = np.concatenate([spectral.spectral_measure(t, check=False).eigenvalues for t in (a, l)])
    lo, hi = (w.min() - 1, w.max() + 1) if w.size else (-1.0, 1.0)
    out = []
    for _ in range(count):
        x, y = np.sort(rng.uniform(lo, hi, size=2))
        out.append(Interval(float(x), float(y) + 1e-6))
    return out


def cmd_perturb(args) -> tuple[dict, int]:
    a = _load_relation(args.file_a, args.tol)
    l = _load_relation(args.file_l, args.tol)
    intervals = list(args.interval or [])
    if args.random_intervals:
        intervals += random_intervals(a, l, args.random_intervals, args.seed)
    command = {"name": "perturb", "files": [args.file_a, args.file_l], "zeta": args.zeta,
               "intervals": [[d.alpha, d.beta] for d in intervals], "seed": args.seed}
    try:
        results, warnings, ok = perturb_report(a, l, args.zeta, intervals)
    except NotInRegularSet as exc:
        try:
            suggestion = perturb.find_regular_point(a, l, near=args.zeta)
        except NotInRegularSet:
            suggestion = None
        return {"command": command, "error": str(exc), "reason": exc.reason,
                "suggested_zeta": suggestion}, EXIT_INPUT_ERROR
    return {"command": command, "results": results, "warnings": warnings}, (
        EXIT_OK if ok else EXIT_VERDICT_FAILED)


def sweep_rows(n, delta_index, taus, diag=0.0, offdiag=1.0):
    j = ext.jacobi(n, diag, offdiag)
    if not 1 <= delta_index <= n:
        raise ValueError(f"delta index must be in 1..{n}")
    delta = np.zeros(n)
    delta[delta_index - 1] = 1.0
    fam = ext.family(j, delta)
    rows = []
    for row in ext.family_sweep(fam, taus):
        for k, lam in enumerate(row.eigenvalues, start=1):
            rows.append((row.tau, k, lam))
    return rows


def format_tau(tau) -> str:
    return "inf" if tau is ext.TAU_INF else repr(float(tau))


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["tau", "k", "lambda"])
    for tau, k, lam in rows:
        writer.writerow([format_tau(tau), k, repr(float(lam))])
    return buf.getvalue()


def cmd_sweep(args):
    rows = sweep_rows(args.jacobi, args.delta, args.taus, args.diag, args.offdiag)
    if args.format == "json":
        return {"command": {"name": "sweep", "n": args.jacobi, "delta": args.delta,
                            "taus": [format_tau(t) for t in args.taus]},
                "results": [{"tau": format_tau(t), "k": k, "lambda": lam} for t, k, lam in rows],
                "warnings": []}, EXIT_OK
    return rows_to_csv(rows), EXIT_OK


def arcsine_ks(values) -> float:
    """Kolmogorov distance between ``values`` and the free Jacobi limit density on (-2, 2)."""
    x = np.sort(np.clip(values, -2, 2))
    if x.size == 0:
        return float("nan")
    cdf = 0.5 + np.arcsin(x / 2) / np.pi
    k = np.arange(1, x.size + 1)
    return float(max(np.max(k / x.size - cdf), np.max(cdf - (k - 1) / x.size)))


def truncation_study(sizes, tau, margin=0.01) -> dict:
    """Out-of-band eigenvalues of the truncated free Jacobi extensions ``J_N(tau)``.

    Empirical: the assertion is the rank-one counting bound (at most one
    eigenvalue outside ``[-2 - margin, 2 + margin]``); the in-band
    Kolmogorov distance to the arcsine law is reported as evidence only.
    """
    tau = ext.parse_tau(tau)
    per_size = []
    for n in sizes:
        delta = np.zeros(n)
        delta[0] = 1.0
        fam = ext.family(ext.jacobi(n), delta)
        w = spectral.spectral_measure(ext.extension(fam, tau), check=False).eigenvalues
        outside = w[np.abs(w) > 2 + margin]
        inside = w[np.abs(w) <= 2 + margin]
        per_size.append({
            "N": n,
            "out_of_band": [float(v) for v in outside],
            "count": int(outside.size),
            "bound_holds": bool(outside.size <= 1),
            "in_band_ks_distance": arcsine_ks(inside),
        })
    drift = []
    for prev, cur in zip(per_size, per_size[1:]):
        if prev["count"] == cur["count"] == 1:
            drift.append({"from": prev["N"], "to": cur["N"],
                          "change": abs(cur["out_of_band"][0] - prev["out_of_band"][0])})
    return {
        "label": "empirical",
        "tau": format_tau(tau),
        "band": [-2 - margin, 2 + margin],
        "sizes": per_size,
        "out_of_band_drift": drift,
        "all_bounds_hold": all(r["bound_holds"] for r in per_size),
    }


def cmd_truncation(args):
    if sorted(args.sizes) != args.sizes or len(set(args.sizes)) != len(args.sizes):
        raise ValueError("sizes must be strictly increasing")
    results = truncation_study(args.sizes, args.tau, args.band_margin)
    return {"command": {"name": "truncation", "sizes": args.sizes, "tau": format_tau(args.tau),
                        "band_margin": args.band_margin},
            "results": results, "warnings": []}, (
        EXIT_OK if results["all_bounds_hold"] else EXIT_VERDICT_FAILED)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="rank tolerance (overrides documents and RELCALC_TOL)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    parser = argparse.ArgumentParser(prog="relcalc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a relation")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("perturb", parents=[common],
                       help="resolvent difference rank and perturbation verdicts")
    p.add_argument("file_a")
    p.add_argument("file_l")
    p.add_argument("--zeta", type=parse_complex, default=complex(0, 1), help="re,im")
    p.add_argument("--interval", type=parse_interval, action="append",
                   help="a,b (repeatable; write --interval=-1,1 for negative starts)")
    p.add_argument("--random-intervals", type=int, default=0,
                   help="add this many random intervals drawn with --seed")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("sweep", parents=[common], help="spectra of J(tau) over a tau grid")
    p.add_argument("--jacobi", type=int, required=True, help="matrix size n")
    p.add_argument("--delta", type=int, default=1, help="1-based index of the canonical delta")
    p.add_argument("--taus", type=parse_taus, required=True,
                   help="comma separated, 'inf' allowed (write --taus=-1,0 for negative starts)")
    p.add_argument("--diag", type=float, default=0.0)
    p.add_argument("--offdiag", type=float, default=1.0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("truncation", parents=[common],
                       help="out-of-band eigenvalues of truncated free Jacobi extensions")
    p.add_argument("--sizes", type=parse_ints, required=True)
    p.add_argument("--tau", type=ext.parse_tau, required=True)
    p.add_argument("--band-margin", type=float, default=0.01)
    p.set_defaults(func=cmd_truncation)
    return parser


def _emit(report, fmt, out):
    if isinstance(report, str):
        text = report
    else:
        text = json.dumps(_jsonable(report), indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "sweep" else "json"
    if args.format == "csv" and args.command != "sweep":
        parser.error("--format csv is only available for sweep")
    try:
        report, code = args.func(args)
    except DocumentError as exc:
        print(f"relcalc: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ValueError, PreconditionFailed, NotSelfadjoint) as exc:
        print(f"relcalc: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    _emit(report, args.format, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
