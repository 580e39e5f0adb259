"""Command-line surface: one verb per library operation.

Every verb prints machine-readable JSON (default) or CSV to stdout or
``--out``; identical argv and seed produce byte-identical output.  Exit
codes: 0 success, 1 failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import cutoff as _cutoff
from . import moments as _moments
from . import sampler as _sampler
from . import verification as _verification
from .errors import CutoffLabError
from .heatseries import (density, dominating_series, eta_quotient,
                         per_term_bound_sweep, t_zero, tv_upper_bound)
from .partitions import Weight
from .repchar import casimir_exponent
from .spaces import FAMILY_NAMES, describe, indexing_set, minimal_weight

_EXIT_OK, _EXIT_FAILED, _EXIT_USAGE = 0, 1, 2


def _default_threads() -> int:
    env = os.environ.get("CUTOFFLAB_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    def cell(v) -> str:
        if isinstance(v, float):
            return "%.12g" % v
        return str(v)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell(v) for v in row])
    return buffer.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as handle:
            handle.write(text)


def _space(parser: argparse.ArgumentParser, args: argparse.Namespace):
    try:
        return describe(args.family, args.n, getattr(args, "q", None))
    except CutoffLabError as exc:
        parser.error(str(exc))


def _parse_weight(parser: argparse.ArgumentParser, desc, text: str) -> Weight:
    idx = indexing_set(desc)
    try:
        parts = [Fraction(tok) for tok in text.split(",")]
    except ValueError:
        parser.error(f"cannot parse weight {text!r}")
    parts += [Fraction(0)] * (idx.length - len(parts))
    try:
        return Weight.of(parts, idx.kind)
    except CutoffLabError as exc:
        parser.error(str(exc))


def _parse_pattern(parser: argparse.ArgumentParser, text: str) -> list[tuple]:
    """``--pattern`` grammar: comma-separated ``row.col`` factors, 1-based,
    with a ``*`` suffix marking a conjugated factor."""
    items = []
    for token in text.split(","):
        token = token.strip()
        conj = token.endswith("*")
        if conj:
            token = token[:-1]
        try:
            row_text, col_text = token.split(".")
            row, col = int(row_text), int(col_text)
        except ValueError:
            parser.error(f"cannot parse pattern factor {token!r}")
        if row < 1 or col < 1:
            parser.error("pattern indices are 1-based")
        items.append((row - 1, col - 1, True) if conj else (row - 1, col - 1))
    if not items:
        parser.error("empty pattern")
    return items


def _add_space_flags(sub: argparse.ArgumentParser, families=None) -> None:
    sub.add_argument("--family", required=True,
                     choices=list(families or FAMILY_NAMES))
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--q", type=int, default=None)


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--out", default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cutofflab",
        description="Cut-off profiles, heat-kernel series, exact moments, "
                    "and Monte Carlo estimates on compact groups and "
                    "symmetric spaces.")
    subs = parser.add_subparsers(dest="verb", required=True)

    sub = subs.add_parser("describe", help="table constants of one space")
    _add_space_flags(sub)
    _add_output_flags(sub)

    sub = subs.add_parser("series", help="dominating series with tail bound")
    _add_space_flags(sub)
    sub.add_argument("--t", type=float, required=True)
    sub.add_argument("--cap", type=int, default=None)
    _add_output_flags(sub)

    sub = subs.add_parser("tv-bound",
                          help="total-variation upper bound at a time")
    _add_space_flags(sub)
    sub.add_argument("--t", type=float, default=None)
    sub.add_argument("--eps", type=float, default=None,
                     help="evaluate at (1+eps) times the cut-off time")
    _add_output_flags(sub)

    sub = subs.add_parser("bound-sweep",
                          help="per-term maxima at the cut-off time")
    _add_space_flags(sub)
    sub.add_argument("--cap", type=int, default=40)
    _add_output_flags(sub)

    sub = subs.add_parser("eta", help="growth-step dimension quotients")
    _add_space_flags(sub)
    sub.add_argument("--l", type=int, default=1, help="width of the grown block")
    sub.add_argument("--cap", type=int, default=10,
                     help="number of growth steps")
    sub.add_argument("--base", default=None,
                     help="comma-separated base weight (default: zero)")
    sub.add_argument("--t", type=float, default=None,
                     help="time (default: cut-off time)")
    _add_output_flags(sub)

    sub = subs.add_parser("density", help="heat-kernel density at a point")
    _add_space_flags(sub, families=list(FAMILY_NAMES) + ["circle"])
    sub.add_argument("--t", type=float, required=True)
    sub.add_argument("--theta", type=float, default=None)
    sub.add_argument("--alphabet", default=None,
                     help="comma-separated eigenvalue angles")
    sub.add_argument("--cap", type=int, default=40)
    _add_output_flags(sub)

    sub = subs.add_parser("moment", help="joint moment of matrix entries")
    _add_space_flags(sub, families=("SO", "SU", "USp"))
    sub.add_argument("--pattern", required=True,
                     help="e.g. '1.1,2.2' or '1.2,1.2*' (1-based, * = conjugate)")
    sub.add_argument("--t", type=float, required=True)
    _add_output_flags(sub)

    sub = subs.add_parser("eigentable",
                          help="verify a tabulated eigen-structure")
    _add_space_flags(sub, families=("SO", "SU", "USp"))
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--l", type=int, default=0)
    _add_output_flags(sub)

    sub = subs.add_parser("zonal-expansion",
                          help="squared minimal zonal function in the zonal basis")
    _add_space_flags(sub)
    _add_output_flags(sub)

    sub = subs.add_parser("simulate", help="endpoint statistics of heat-flow paths")
    _add_space_flags(sub)
    sub.add_argument("--t", type=float, required=True)
    sub.add_argument("--paths", type=int, default=100)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--steps", type=int, default=None,
                     help="time steps (default: t / 0.05, rounded up)")
    _add_output_flags(sub)

    sub = subs.add_parser("estimate", help="Monte Carlo estimate of a statistic")
    _add_space_flags(sub)
    sub.add_argument("--statistic", required=True,
                     choices=list(_sampler.STATISTICS))
    sub.add_argument("--t", type=float, default=None,
                     help="time (omit for the uniform measure)")
    sub.add_argument("--paths", type=int, default=1000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--threshold", type=float, default=None)
    sub.add_argument("--threads", type=int, default=None)
    _add_output_flags(sub)

    sub = subs.add_parser("profile",
                          help="lower/upper distance profile on a time grid")
    _add_space_flags(sub)
    sub.add_argument("--t-min", type=float, default=None)
    sub.add_argument("--t-max", type=float, default=None)
    sub.add_argument("--points", type=int, default=41)
    _add_output_flags(sub)

    sub = subs.add_parser("verify-all", help="run the full verification suite")
    sub.add_argument("--threads", type=int, default=None)
    _add_output_flags(sub)

    return parser


# -- verb implementations --------------------------------------------------


def _run_describe(parser, args) -> int:
    desc = _space(parser, args)
    weight, a_min, b_min = minimal_weight(desc)
    payload = desc.to_json_dict()
    payload.update({
        "param": desc.param,
        "matrix_size": desc.matrix_size,
        "t_cutoff": t_zero(desc),
        "minimal_weight": str(weight),
        "a_min": str(a_min),
        "b_min": str(b_min),
    })
    if args.format == "csv":
        keys = sorted(payload)
        _emit(_csv_text(keys, [[payload[k] for k in keys]]), args.out)
    else:
        _emit(_json_text(payload), args.out)
    return _EXIT_OK


def _run_series(parser, args) -> int:
    desc = _space(parser, args)
    report = dominating_series(desc, args.t, size_cap=args.cap)
    payload = report.to_json_dict()
    if args.format == "csv":
        keys = sorted(payload)
        _emit(_csv_text(keys, [[payload[k] for k in keys]]), args.out)
    else:
        _emit(_json_text(payload), args.out)
    return _EXIT_OK


def _run_tv_bound(parser, args) -> int:
    desc = _space(parser, args)
    if (args.t is None) == (args.eps is None):
        parser.error("give exactly one of --t and --eps")
    t = args.t if args.t is not None else (1.0 + args.eps) * t_zero(desc)
    value = tv_upper_bound(desc, t)
    payload = {"space": str(desc), "t": t, "tv_upper": value,
               "certified": value < 1.0}
    if args.eps is not None:
        payload["eps"] = args.eps
    _emit(_json_text(payload), args.out)
    return _EXIT_OK


def _run_bound_sweep(parser, args) -> int:
    desc = _space(parser, args)
    payload = per_term_bound_sweep(desc, size_cap=args.cap).to_json_dict()
    payload["space"] = str(desc)
    _emit(_json_text(payload), args.out)
    return _EXIT_OK


def _run_eta(parser, args) -> int:
    desc = _space(parser, args)
    idx = indexing_set(desc)
    if args.base is not None:
        base = _parse_weight(parser, desc, args.base)
    else:
        base = Weight.zero(idx.length, idx.kind)
    if not 1 <= args.l <= idx.length:
        parser.error(f"--l must be in [1, {idx.length}]")
    if args.cap < 1:
        parser.error("--cap must be >= 1")
    rows = [(k, eta_quotient(desc, base, args.l, k, t0=args.t))
            for k in range(1, args.cap + 1)]
    if args.format == "csv":
        _emit(_csv_text(("k", "eta"), rows), args.out)
    else:
        _emit(_json_text({"space": str(desc), "base": str(base), "l": args.l,
                          "quotients": [{"k": k, "eta": v} for k, v in rows]}),
              args.out)
    return _EXIT_OK


def _run_density(parser, args) -> int:
    if args.family == "circle":
        desc = "circle"
        label = "circle"
    else:
        desc = _space(parser, args)
        label = str(desc)
    if (args.theta is None) == (args.alphabet is None):
        parser.error("give exactly one of --theta and --alphabet")
    if args.theta is not None:
        point = {"theta": args.theta}
    else:
        try:
            angles = [float(tok) for tok in args.alphabet.split(",")]
        except ValueError:
            parser.error(f"cannot parse alphabet {args.alphabet!r}")
        point = {"alphabet": [complex(math.cos(a), math.sin(a))
                              for a in angles]}
    value = density(desc, point, args.t, size_cap=args.cap)
    _emit(_json_text({"space": label, "t": args.t, "density": value}),
          args.out)
    return _EXIT_OK


def _run_moment(parser, args) -> int:
    desc = _space(parser, args)
    algebra = {"SO": "so", "SU": "su", "USp": "usp"}[args.family]
    pattern = _parse_pattern(parser, args.pattern)
    size = desc.matrix_size
    for item in pattern:
        if max(item[0], item[1]) >= size:
            parser.error(f"pattern index exceeds matrix size {size}")
    value = complex(_moments.moment(algebra, args.n, pattern, args.t))
    _emit(_json_text({"space": str(desc), "pattern": args.pattern,
                      "t": args.t, "value_re": value.real,
                      "value_im": value.imag}), args.out)
    return _EXIT_OK


def _run_eigentable(parser, args) -> int:
    algebra = {"SO": "so", "SU": "su", "USp": "usp"}[args.family]
    kl = (args.k, args.l) if args.l else args.k
    report = _moments.verify_eigentable(algebra, args.n, kl)
    payload = report.to_json_dict()
    if report.verified and report.dims_match:
        _emit(_json_text(payload), args.out)
        return _EXIT_OK
    failures = [{"claimed": e.claimed_mult, "computed": e.computed_mult,
                 "eigenvalue": str(e.eigenvalue), "tolerance": 1e-8,
                 "residual": e.max_residual}
                for e in report.entries
                if (e.claimed_mult is not None
                    and e.claimed_mult != e.computed_mult)
                or e.max_residual > 1e-8]
    payload["failures"] = failures
    _emit(_json_text(payload), args.out)
    return _EXIT_FAILED


def _run_zonal_expansion(parser, args) -> int:
    desc = _space(parser, args)
    try:
        expansion = _moments.zonal_square_expansion(desc)
    except CutoffLabError as exc:
        parser.error(str(exc))
    rows = []
    for weight in sorted(expansion, key=lambda w: (w.size, w.parts2)):
        rate = Fraction(0) if weight.is_zero else casimir_exponent(desc, weight)
        rows.append((str(weight), str(expansion[weight]), str(rate)))
    if args.format == "csv":
        _emit(_csv_text(("weight", "coefficient", "decay_rate"), rows),
              args.out)
    else:
        _emit(_json_text({
            "space": str(desc),
            "terms": [{"weight": w, "coefficient": c, "decay_rate": r}
                      for w, c, r in rows]}), args.out)
    return _EXIT_OK


def _run_simulate(parser, args) -> int:
    desc = _space(parser, args)
    if args.paths < 1:
        parser.error("--paths must be >= 1")
    step = args.t / args.steps if args.steps else 0.05
    try:
        config = _sampler.SimulationConfig(paths=args.paths, seed=args.seed,
                                           step_size=step)
    except ValueError as exc:
        parser.error(str(exc))
    spec = _cutoff.omega_spec(desc)
    endpoints = _sampler.simulate_endpoints(desc, args.t, config,
                                            range(args.paths))
    rows = []
    for index, matrix in enumerate(endpoints):
        value = complex(_cutoff.omega_value(spec, matrix))
        rows.append((index, value.real, value.imag))
    if args.format == "csv":
        _emit(_csv_text(("path", "omega_re", "omega_im"), rows), args.out)
    else:
        _emit(_json_text({"space": str(desc), "t": args.t, "seed": args.seed,
                          "omega": [{"path": p, "re": re, "im": im}
                                    for p, re, im in rows]}), args.out)
    return _EXIT_OK


def _run_estimate(parser, args) -> int:
    desc = _space(parser, args)
    threads = args.threads if args.threads else _default_threads()
    try:
        config = _sampler.SimulationConfig(paths=args.paths, seed=args.seed,
                                           threads=threads)
        estimate = _sampler.estimate(desc, args.statistic, args.t, config,
                                     threshold=args.threshold)
    except (ValueError, CutoffLabError) as exc:
        parser.error(str(exc))
    payload = estimate.to_json_dict()
    payload["space"] = str(desc)
    payload["seed"] = args.seed
    _emit(_json_text(payload), args.out)
    return _EXIT_OK


def _run_profile(parser, args) -> int:
    desc = _space(parser, args)
    t0 = t_zero(desc)
    t_min = args.t_min if args.t_min is not None else 0.25 * t0
    t_max = args.t_max if args.t_max is not None else 2.5 * t0
    if not (0.0 < t_min < t_max):
        parser.error("need 0 < --t-min < --t-max")
    if args.points < 2:
        parser.error("--points must be >= 2")
    grid = np.linspace(t_min, t_max, args.points)
    points = _cutoff.profile(desc, grid)
    if args.format == "csv":
        _emit(_cutoff.profile_csv(points), args.out)
    else:
        _emit(_json_text({"space": str(desc),
                          "points": [p.to_json_dict() for p in points]}),
              args.out)
    return _EXIT_OK


def _run_verify_all(parser, args) -> int:
    threads = args.threads if args.threads else _default_threads()
    results = _verification.run_all(threads=threads)
    if args.format == "csv":
        rows = [(r.name, "pass" if r.passed else "FAIL",
                 round(r.elapsed, 3)) for r in results]
        _emit(_csv_text(("check", "result", "seconds"), rows), args.out)
    else:
        _emit(_json_text({
            "checks": [r.to_json_dict() for r in results],
            "all_passed": all(r.passed for r in results)}), args.out)
    return _EXIT_OK if all(r.passed for r in results) else _EXIT_FAILED


_RUNNERS = {
    "describe": _run_describe,
    "series": _run_series,
    "tv-bound": _run_tv_bound,
    "bound-sweep": _run_bound_sweep,
    "eta": _run_eta,
    "density": _run_density,
    "moment": _run_moment,
    "eigentable": _run_eigentable,
    "zonal-expansion": _run_zonal_expansion,
    "simulate": _run_simulate,
    "estimate": _run_estimate,
    "profile": _run_profile,
    "verify-all": _run_verify_all,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _RUNNERS[args.verb](parser, args)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    except CutoffLabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
