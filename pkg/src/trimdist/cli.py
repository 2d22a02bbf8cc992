"""Command-line interface.

Distribution specs::

    normal:<mu>,<sigma>   uniform:<a>,<b>   csv:<path>   mixture:<spec>,<spec>,<alpha>
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Any, Sequence

from trimdist import csvio
from trimdist.core import DEFAULT_GRID, DistributionSpec, GridFunction, Interp, Kind, TrimParams, empirical_cdf, normal, uniform
from trimdist.diff import directional_derivative_lipschitz
from trimdist.envelopes import pasch_hausdorff, ubhaya_envelopes
from trimdist.errors import (
    BoundaryDegenerate,
    DegenerateCase,
    InvalidInput,
    NotAttained,
    TrimDistError,
    UnsupportedCase,
    UnsupportedDistribution,
)
from trimdist.gaussian import gaussian_trimmed_distance
from trimdist.lipschitz_box import optimizer_sets
from trimdist.trimming import (
    mixture_cdf,
    oracle_distance,
    search_contamination_level,
    trimmed_distance,
)

EXIT_INPUT = 2
EXIT_DEGENERATE = 3
_EXIT_CODES = {
    InvalidInput: EXIT_INPUT,
    UnsupportedDistribution: EXIT_INPUT,
    UnsupportedCase: EXIT_INPUT,
    BoundaryDegenerate: EXIT_DEGENERATE,
    DegenerateCase: EXIT_DEGENERATE,
    NotAttained: EXIT_DEGENERATE,
}


# -- spec mini-language ---------------------------------------------------------


def _number(tok: str) -> float:
    try:
        v = float(tok)
    except ValueError as exc:
        raise InvalidInput(f"expected a number in distribution spec, got {tok!r}") from exc
    if not math.isfinite(v):
        raise InvalidInput(f"non-finite number {tok!r} in distribution spec")
    return v


def _parse(tokens: list[str]) -> DistributionSpec:
    if not tokens:
        raise InvalidInput("truncated distribution spec")
    head = tokens.pop(0)
    name, sep, rest = head.partition(":")
    if not sep:
        raise InvalidInput(f"distribution spec {head!r} lacks a 'name:' prefix")
    name = name.strip().lower()

    def take(k: int) -> list[str]:
        args = [rest] + [tokens.pop(0) for _ in range(min(k - 1, len(tokens)))]
        if len(args) < k:
            raise InvalidInput(f"{name} needs {k} arguments")
        return args

    if name == "normal":
        mu, sigma = map(_number, take(2))
        return normal(mu, sigma)
    if name == "uniform":
        a, b = map(_number, take(2))
        return uniform(a, b)
    if name == "csv":
        return empirical_cdf(csvio.read_sample(rest))
    if name == "mixture":
        tokens.insert(0, rest)
        first = _parse(tokens)
        second = _parse(tokens)
        if not tokens:
            raise InvalidInput("mixture needs a weight")
        return mixture_cdf(first, second, _number(tokens.pop(0)))
    raise InvalidInput(f"unknown distribution {name!r}")


def parse_spec(text: str) -> DistributionSpec:
    tokens = [t.strip() for t in text.split(",")]
    spec = _parse(tokens)
    if tokens:
        raise InvalidInput(f"trailing tokens in distribution spec: {','.join(tokens)}")
    return spec


# -- output ---------------------------------------------------------------------


def _encode(obj: Any) -> str:
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        s = f"{obj:.17g}"
        return s if any(c in s for c in ".e") else s + ".0"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if hasattr(obj, "item"):
        return _encode(obj.item())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """JSON with insertion-ordered keys and floats at 17 significant digits."""
    return _encode(obj)


def _default_grid() -> int:
    raw = os.environ.get("TRIMDIST_GRID")
    if raw is None:
        return DEFAULT_GRID
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidInput(f"TRIMDIST_GRID must be an integer, got {raw!r}") from exc


# -- subcommands ----------------------------------------------------------------


def _cmd_distance(args, out) -> None:
    f0, f = parse_spec(args.f0), parse_spec(args.f)
    grid = args.grid if args.grid is not None else _default_grid()
    res = trimmed_distance(f0, f, TrimParams(args.alpha), grid)
    if args.emit_h:
        csvio.write_curves(args.emit_h, ["h_tilde", "h_opt"], [res.h_tilde, res.h_opt])
    empirical = f.kind is Kind.EMPIRICAL
    out.write(dumps({
        "distance": res.distance,
        "alpha": res.params.alpha,
        "grid": None if empirical else grid,
        "n": f.n,
    }) + "\n")


def _cmd_alpha_min(args, out) -> None:
    f0, f = parse_spec(args.f0), parse_spec(args.f)
    grid = args.grid if args.grid is not None else _default_grid()
    res = search_contamination_level(f0, f, args.threshold, grid)
    out.write(dumps({"alpha_hat": res.alpha_hat, "iterations": res.iterations}) + "\n")


def _cmd_envelope(args, out) -> None:
    f = csvio.read_curve(args.input)
    if args.mode == "ph":
        if args.lip is None:
            raise InvalidInput("--lip is required for Lipschitz envelopes")
        env = pasch_hausdorff(f, args.lip)
        names, fns = ["lower", "upper", "mid"], [env.lower, env.upper, env.mid]
    else:
        env = ubhaya_envelopes(f)
        names, fns = ["upper", "lower", "mid"], [env.upper_env, env.lower_env, env.mid]
    if args.output:
        csvio.write_curves(args.output, names, fns)
    else:
        csvio.write_curves(out, names, fns)


def _cmd_gaussian(args, out) -> None:
    d, case = gaussian_trimmed_distance(args.mu, args.sigma, args.alpha)
    out.write(dumps({"distance": d, "regime": case.regime.value, "t_a": case.t_a, "t_b": case.t_b}) + "\n")


def _cmd_deriv(args, out) -> None:
    f = csvio.read_curve(args.input)
    j = csvio.read_curve(args.perturb)
    value = directional_derivative_lipschitz(f, j, args.lip, args.tol)
    sets = optimizer_sets(f, args.lip, args.tol)
    out.write(dumps({
        "derivative": value,
        "t1": sets.t1,
        "t2": sets.t2,
        "t3": [list(p) for p in sets.t3],
    }) + "\n")


def _cmd_oracle(args, out) -> None:
    gamma = csvio.read_curve(args.input)
    if gamma.interp is Interp.LINEAR:
        # a curve without jump rows is still a list of one-sided limits
        gamma = GridFunction(gamma.nodes, gamma.values, Interp.JUMP_LINEAR, gamma.values)
    out.write(dumps({"distance": oracle_distance(gamma, TrimParams(args.alpha))}) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trimdist", description="Trimmed Kolmogorov distances.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("distance", help="trimmed distance from F0 to the trimmings of F")
    d.add_argument("--f0", required=True)
    d.add_argument("--f", required=True)
    d.add_argument("--alpha", type=float, required=True)
    d.add_argument("--grid", type=int, default=None)
    d.add_argument("--emit-h", dest="emit_h", default=None, help="write h_tilde and h_opt as a curve CSV")
    d.set_defaults(func=_cmd_distance)

    a = sub.add_parser("alpha-min", help="smallest trimming level reaching a threshold")
    a.add_argument("--f0", required=True)
    a.add_argument("--f", required=True)
    a.add_argument("--threshold", type=float, default=0.0)
    a.add_argument("--grid", type=int, default=None)
    a.set_defaults(func=_cmd_alpha_min)

    e = sub.add_parser("envelope", help="Lipschitz or monotone envelopes of a curve")
    e.add_argument("--input", required=True)
    e.add_argument("--lip", type=float, default=None)
    e.add_argument("--mode", choices=["ph", "ubhaya"], default="ph")
    e.add_argument("--output", default=None)
    e.set_defaults(func=_cmd_envelope)

    g = sub.add_parser("gaussian", help="closed form for N(0,1) against N(mu, sigma^2)")
    g.add_argument("--mu", type=float, required=True)
    g.add_argument("--sigma", type=float, required=True)
    g.add_argument("--alpha", type=float, required=True)
    g.set_defaults(func=_cmd_gaussian)

    r = sub.add_parser("deriv", help="directional derivative of the pinned Lipschitz error")
    r.add_argument("--input", required=True)
    r.add_argument("--perturb", required=True)
    r.add_argument("--lip", type=float, required=True)
    r.add_argument("--tol", type=float, default=None)
    r.set_defaults(func=_cmd_deriv)

    o = sub.add_parser("oracle", help="brute-force distance for an empirical Gamma curve (curve CSV on nodes i/m)")
    o.add_argument("--input", required=True)
    o.add_argument("--alpha", type=float, required=True)
    o.set_defaults(func=_cmd_oracle)
    return p


def _exit_code(exc: TrimDistError) -> int:
    for cls in type(exc).__mro__:
        if cls in _EXIT_CODES:
            return _EXIT_CODES[cls]
    return EXIT_INPUT


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except TrimDistError as exc:
        err.write(json.dumps({"error": type(exc).__name__, "detail": str(exc)}) + "\n")
        return _exit_code(exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
