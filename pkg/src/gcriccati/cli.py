"""Command-line front end.

Scalar results go to stdout as JSON, grids and paths as CSV. Complex numbers
are written ``re,im`` on the command line and ``[re, im]`` in JSON.

Exit status: 0 success, 1 verification failure, 2 usage error, 3 numeric
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time

import numpy as np
from pydantic import ValidationError

from . import abel, gc2, gc3, verify
from .config import ProblemConfig, load_config
from .errata import errata_report
from .errors import GCRiccatiError, NearPole
from .polynomial import (
    CubicCoefficients,
    PairState,
    QuadraticCoefficients,
    multiply_pairs_reduced,
    partial_fraction_weights,
    solve_cubic,
    solve_quadratic,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1,0" and "-2.5" through as values rather than option names
        self._negative_number_matcher = re.compile(r"^-(\d|\.\d)")


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected a complex literal re,im, got {text!r}")


def _clean(x: float) -> float:
    return 0.0 if x == 0 else float(x)


def jsonable(obj):
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(obj.real), _clean(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return _clean(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def _flatten(obj, prefix=""):
    """Flatten nested results into ``key -> scalar`` for CSV output."""
    if isinstance(obj, (complex, np.complexfloating)):
        return {f"{prefix}_re": _clean(obj.real), f"{prefix}_im": _clean(obj.imag)}
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}_{k}" if prefix else k))
        return out
    if isinstance(obj, (list, tuple)):
        out = {}
        for i, v in enumerate(obj):
            out.update(_flatten(v, f"{prefix}{i}"))
        return out
    return {prefix: obj}


def render(result, fmt: str) -> str:
    rows = result if isinstance(result, list) else None
    if fmt == "json":
        return json.dumps(jsonable(result), indent=2) + "\n"
    flat = [_flatten(r) for r in (rows if rows is not None else [result])]
    buf = io.StringIO()
    fields = list(flat[0]) if flat else []
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


# -- problem ingestion -----------------------------------------------------------


def _coefficients(args, cfg: ProblemConfig, order: int):
    flag = args.quadratic if order == 2 else args.cubic
    if flag is not None:
        vals = flag
    elif cfg.coefficients is not None:
        if cfg.order != order:
            raise UsageError(f"config has order {cfg.order}, command needs order {order}")
        vals = cfg.complex_coefficients()
    else:
        raise UsageError(f"coefficients required: pass --{'quadratic' if order == 2 else 'cubic'} or --config")
    return QuadraticCoefficients(*vals) if order == 2 else CubicCoefficients(*vals)


def _grid(start: complex, stop: complex, num: int):
    if num < 1:
        raise UsageError("--num must be at least 1")
    if num == 1:
        return [start]
    return [start + (stop - start) * k / (num - 1) for k in range(num)]


# -- commands --------------------------------------------------------------------


def cmd_roots(args, cfg):
    order = 2 if args.quadratic is not None or (args.cubic is None and cfg.order == 2) else 3
    if order == 2:
        q = _coefficients(args, cfg, 2)
        x1, x2 = solve_quadratic(q)
        return {"order": 2, "roots": [x1, x2], "m12": x1 - x2}
    r = solve_cubic(_coefficients(args, cfg, 3), cfg.sep_min)
    return {
        "order": 3,
        "roots": list(r.roots),
        "V": r.V,
        "m": {"m12": r.m12, "m13": r.m13, "m21": r.m21, "m23": r.m23, "m31": r.m31, "m32": r.m32},
        "partial_fraction_weights": list(partial_fraction_weights(r)),
    }


def cmd_g2(args, cfg):
    q = _coefficients(args, cfg, 2)
    g = gc2.g2_eval(q, args.phi, args.method, cfg.sep_min)
    return {"phi": args.phi, "g0": g.g0, "g1": g.g1, "norm": gc2.g2_norm(q, g)}


def cmd_g3(args, cfg):
    c = _coefficients(args, cfg, 3)
    psi = gc3.PhasePoint(args.phi1, args.phi2)
    g = gc3.g3_eval(c, psi, args.method, cfg.sep_min)
    return {
        "phi1": psi.phi1,
        "phi2": psi.phi2,
        "g0": g.g0,
        "g1": g.g1,
        "g2": g.g2,
        "det": gc3.g3_det(g, c),
    }


def cmd_eval2(args, cfg):
    q = _coefficients(args, cfg, 2)
    sol = gc2.Riccati2Solution.from_coeffs(q, cfg.sep_min)
    rows = []
    for phi in _grid(args.phi_start, args.phi_stop, args.num):
        try:
            if args.phi0 is None:
                u = gc2.riccati2_eval(sol, phi, cfg.pole_eps)
            else:
                u = gc2.riccati2_coth(sol, phi, args.phi0, cfg.pole_eps)
            rows.append({"phi": phi, "u": u, "status": "ok"})
        except NearPole:
            rows.append({"phi": phi, "u": complex("nan+nanj"), "status": "pole"})
    return rows


def _path_rows(points):
    return [{"phi": phi, "u": u} for phi, u in points]


def cmd_eval3(args, cfg):
    c = _coefficients(args, cfg, 3)
    prob = abel.RiccatiAbelProblem.from_coeffs(c, cfg.sep_min)
    phi_start = abel.log_map(prob, args.u0) / prob.roots.V
    phis = [phi_start + args.step * k for k in range(1, args.steps + 1)]
    try:
        us = abel.continue_log_map(prob, args.u0, phis, phi_start=phi_start)
    except NearPole as exc:
        exc.partial = _path_rows([(phi_start, args.u0)] + list(zip(phis, exc.partial)))
        raise
    return _path_rows([(phi_start, args.u0)] + list(zip(phis, us)))


def cmd_sum2(args, cfg):
    q = _coefficients(args, cfg, 2)
    return {"u": args.u, "v": args.v, "w": gc2.riccati2_sum(args.u, args.v, q)}


def cmd_sum3(args, cfg):
    c = _coefficients(args, cfg, 3)
    if len(args.pair) != 2:
        raise UsageError("sum3 needs exactly two --pair T S arguments")
    pa, pb = (PairState(*p) for p in args.pair)
    A, B, C = multiply_pairs_reduced(pa, pb, c)
    out = abel.pair_sum(pa, pb, c)
    return {"A": A, "B": B, "C": C, "r": out.t, "w": out.s}


def _bridge_row(c, st):
    return {
        "phi2": st.phi2,
        "phi1": st.phi1,
        "u": st.u,
        "ode_residual": abel.bridge_residual(c, st),
    }


def cmd_bridge(args, cfg):
    c = _coefficients(args, cfg, 3)
    start = abel.bridge_start(c, args.phi1)
    targets = [start.phi2 + args.step * k for k in range(1, args.steps + 1)]
    try:
        path = abel.bridge_track(c, start, targets)
    except NearPole as exc:
        exc.partial = [_bridge_row(c, s) for s in [start] + list(exc.partial)]
        raise
    return [_bridge_row(c, s) for s in [start] + path]


def cmd_verify(args, cfg):
    trials = cfg.trials if args.trials is None else args.trials
    if trials < 0:
        raise UsageError("--trials must be non-negative")
    t0 = time.perf_counter()
    report = verify.run_suite(args.suite, trials, cfg.seed, cfg.tolerances, ode_tol=cfg.tol)
    print(f"verify: wall time {time.perf_counter() - t0:.2f} s", file=sys.stderr)
    return report.as_dict(), (EXIT_OK if report.passed else EXIT_VERIFY)


def cmd_errata(args, cfg):
    report = errata_report()
    # one row per entry reads better as a table
    if args.out != "csv":
        return report
    return [{k: v for k, v in e.items() if not isinstance(v, list)} for e in report["errata"]]


# -- parser ----------------------------------------------------------------------


def _common(default=None) -> argparse.ArgumentParser:
    # the subcommand copies use SUPPRESS so they never overwrite a value
    # given before the subcommand name
    p = _Parser(add_help=False, argument_default=default)
    g = p.add_argument_group("global options")
    g.add_argument("--config", help="JSON problem configuration")
    g.add_argument("--out", choices=("json", "csv"), help="output format")
    g.add_argument("--output", help="write output to this path instead of stdout")
    g.add_argument("--seed", type=int, help="RNG seed (u64)")
    g.add_argument("--tol", type=float, help="ODE oracle tolerance")
    g.add_argument("--sep-min", type=float, help="minimum root separation for spectral formulas")
    g.add_argument("--pole-eps", type=float, help="pole guard for closed-form evaluation")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gcriccati", description=__doc__.splitlines()[0], parents=[_common()])
    common = _common(argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, default_out="json"):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func, default_out=default_out)
        return sp

    def quad(sp):
        sp.add_argument("--quadratic", nargs=2, type=parse_complex, metavar=("A1", "A0"))

    def cubic(sp):
        sp.add_argument("--cubic", nargs=3, type=parse_complex, metavar=("A2", "A1", "A0"))

    sp = add("roots", cmd_roots, "roots and derived weights of the quadratic or cubic")
    quad(sp)
    cubic(sp)

    sp = add("g2", cmd_g2, "order-2 g-functions at a phase")
    quad(sp)
    sp.add_argument("--phi", type=parse_complex, required=True)
    sp.add_argument("--method", choices=("auto", "spectral", "series"), default="auto")

    sp = add("g3", cmd_g3, "order-3 g-functions at a phase point")
    cubic(sp)
    sp.add_argument("--phi1", type=parse_complex, required=True)
    sp.add_argument("--phi2", type=parse_complex, required=True)
    sp.add_argument("--method", choices=("auto", "spectral", "series"), default="auto")

    sp = add("eval2", cmd_eval2, "Riccati solution on a phase grid", "csv")
    quad(sp)
    sp.add_argument("--phi-start", type=parse_complex, default=0.1 + 0j)
    sp.add_argument("--phi-stop", type=parse_complex, default=1.0 + 0j)
    sp.add_argument("--num", type=int, default=10)
    sp.add_argument("--phi0", type=parse_complex, help="integration constant (default: canonical branch)")

    sp = add("eval3", cmd_eval3, "Riccati-Abel solution by log-map continuation", "csv")
    cubic(sp)
    sp.add_argument("--u0", type=parse_complex, default=0j)
    sp.add_argument("--step", type=parse_complex, default=-0.01 + 0j)
    sp.add_argument("--steps", type=int, default=50)

    sp = add("sum2", cmd_sum2, "Riccati summation formula")
    quad(sp)
    sp.add_argument("--u", type=parse_complex, required=True)
    sp.add_argument("--v", type=parse_complex, required=True)

    sp = add("sum3", cmd_sum3, "pair-state summation for the cubic")
    cubic(sp)
    sp.add_argument("--pair", nargs=2, type=parse_complex, action="append", default=[], metavar=("T", "S"))

    sp = add("bridge", cmd_bridge, "track the g2 = 0 solution curve", "csv")
    cubic(sp)
    sp.add_argument("--phi1", type=parse_complex, default=0.5 + 0j)
    sp.add_argument("--step", type=float, default=-0.01)
    sp.add_argument("--steps", type=int, default=50)

    sp = add("verify", cmd_verify, "run the property suites")
    sp.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    sp.add_argument("--trials", type=int)

    add("errata", cmd_errata, "published versus corrected coefficients with oracle evidence")
    return parser


def _resolve_config(args) -> ProblemConfig:
    data = {}
    if args.config:
        try:
            data = load_config(args.config).model_dump(exclude_unset=True)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"config is not valid JSON: {exc}") from None
    overrides = {"seed": args.seed, "tol": args.tol, "sep_min": args.sep_min, "pole_eps": args.pole_eps}
    data.update({k: v for k, v in overrides.items() if v is not None})
    return ProblemConfig.model_validate(data)


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _diagnostic(exc: BaseException) -> str:
    return " ".join(str(exc).split()) or type(exc).__name__


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.out or args.default_out
    try:
        cfg = _resolve_config(args)
        result = args.func(args, cfg)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "config"
        print(f"gcriccati: error: invalid configuration: {where}: {first['msg']}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, argparse.ArgumentTypeError) as exc:
        print(f"gcriccati: error: {_diagnostic(exc)}", file=sys.stderr)
        return EXIT_USAGE
    except GCRiccatiError as exc:
        partial = getattr(exc, "partial", None)
        if partial:
            _emit(render(partial, fmt), args.output)
        print(f"gcriccati: numeric failure ({type(exc).__name__}): {_diagnostic(exc)}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"gcriccati: error: {_diagnostic(exc)}", file=sys.stderr)
        return EXIT_USAGE
    except (OverflowError, ZeroDivisionError, FloatingPointError) as exc:
        print(f"gcriccati: numeric failure ({type(exc).__name__}): {_diagnostic(exc)}", file=sys.stderr)
        return EXIT_NUMERIC
    status = EXIT_OK
    if isinstance(result, tuple):
        result, status = result
    _emit(render(result, fmt), args.output)
    return status


run_command = main


if __name__ == "__main__":
    sys.exit(main())
