"""Command-line front end.

    timoshenko-lie classify --case equal --element 0,0,1,0,0,0,0,0
    timoshenko-lie adjoint --case greater --lambda 1 --eps 1,0,0,0,0,0,0,0
    timoshenko-lie transform --case less --eps ... --base shear --format csv --out grid.csv
    timoshenko-lie verify --example 1
    timoshenko-lie reduce --case equal --row C --alpha 0.5 --ics 0,0,1,0
    timoshenko-lie catalog

Exit codes: 0 success, 2 configuration or input error, 3 numerical failure.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import jsonio
from .adjoint import adjoint_composed, adjoint_product
from .algebra import CASE_KINDS, EQUAL, CaseParams
from .chi import ChiSpec
from .errors import (CaseMismatch, ConfigError, ConstraintViolation, GridTooCoarse, NumericalDegeneracy,
                     RequiresLinearChi, SingularCoefficient, StepUnstable, WindowExceeded, ZeroElement)
from .group_action import drift_solution, shear_solution, transform_solution
from .optimal_system import DEFAULT_TOL, classify, verify_conjugacy
from .reduction import (DERIVED, PRINTED, ansatz, check_example, example_solution, lift, load_catalog,
                        reduced_residual, solve_reduced)
from .residual import convergence_study, pde_residual, read_grid_csv, sample, write_grid_csv

log = logging.getLogger(__name__)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3
DEFAULTS = {
    "case": None, "lambda": None, "mu": None, "rho1": 1.0, "rho2": 1.0, "k": 1.0, "b": 1.0, "d": None,
    "tol": DEFAULT_TOL, "element": None, "eps": None, "window": "0,1,0,1", "grid": "101,101",
    "levels": 3, "chi": "linear", "c3": 0.3, "out": None, "format": "json", "example": None,
    "grid_file": None, "base": "shear", "row": None, "alpha": None, "beta": None, "gamma": None,
    "ics": "0,0,0,0", "constants": "0,0,0,0", "reading": DERIVED, "step": 1e-3,
}
CONFIG_ERRORS = (ConfigError, ZeroElement, ConstraintViolation, CaseMismatch, WindowExceeded,
                 GridTooCoarse, RequiresLinearChi, ValueError, KeyError, OSError)
NUMERIC_ERRORS = (NumericalDegeneracy, SingularCoefficient, StepUnstable, ArithmeticError)


# -------------------------------------------------------------------- parsing

def _floats(text, n=None, name="value"):
    if isinstance(text, (list, tuple)):
        vals = [float(v) for v in text]
    else:
        try:
            vals = [float(v) for v in str(text).split(",") if v.strip() != ""]
        except ValueError as exc:
            raise ConfigError(f"field '{name}': expected comma-separated numbers, got {text!r}") from exc
    if n is not None and len(vals) != n:
        raise ConfigError(f"field '{name}': expected {n} numbers, got {len(vals)}")
    if not all(np.isfinite(vals)):
        raise ConfigError(f"field '{name}': values must be finite")
    return vals


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default values for any flag")
    common.add_argument("--case", choices=CASE_KINDS)
    common.add_argument("--lambda", dest="lambda", type=float)
    common.add_argument("--mu", type=float)
    common.add_argument("--rho1", type=float)
    common.add_argument("--rho2", type=float)
    common.add_argument("-k", type=float)
    common.add_argument("-b", type=float)
    common.add_argument("-d", type=float)
    common.add_argument("--tol", type=float)
    common.add_argument("--window", help="t0,t1,x0,x1")
    common.add_argument("--grid", help="nt,nx of the coarsest grid")
    common.add_argument("--levels", type=int)
    common.add_argument("--chi", choices=("linear", "cubic"))
    common.add_argument("--c3", type=float)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="timoshenko-lie", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("classify", parents=[common], help="optimal-system class of an element")
    p.add_argument("--element", help="8 comma-separated coefficients")
    p = sub.add_parser("adjoint", parents=[common], help="composed adjoint matrix")
    p.add_argument("--eps", help="8 comma-separated group parameters")
    p = sub.add_parser("transform", parents=[common], help="sample a transformed exact solution")
    p.add_argument("--eps")
    p.add_argument("--base", choices=("shear", "drift"))
    p = sub.add_parser("verify", parents=[common], help="residual and convergence report")
    p.add_argument("--example", type=int, choices=(1, 2, 3))
    p.add_argument("--grid-file", dest="grid_file")
    p.add_argument("--base", choices=("shear", "drift"))
    p.add_argument("--eps")
    p.add_argument("--constants", help="c1,c2,c3,c4 for --example")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--reading", choices=(DERIVED, PRINTED))
    p = sub.add_parser("reduce", parents=[common], help="solve a reduced system and lift it")
    p.add_argument("--row", help="table row A..H")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--ics", help="Z,Z',W,W' at the start of the zeta range")
    p.add_argument("--reading", choices=(DERIVED, PRINTED))
    p.add_argument("--step", type=float)
    sub.add_parser("catalog", parents=[common], help="dump the reduction catalogue")
    return parser


def resolve(args):
    """Merge defaults < config file < command-line flags."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"field 'config': cannot read {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("field 'config': must be a JSON object")
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"field 'config': unknown keys {sorted(unknown)}")
        cfg.update(data)
    for key, value in vars(args).items():
        if key in DEFAULTS and value is not None:
            cfg[key] = value
    return cfg


def make_params(cfg):
    kw = {name: float(cfg[name]) for name in ("rho1", "rho2", "k", "b")}
    kind = cfg["case"]
    if cfg["d"] is not None:
        params = CaseParams.from_damping(d=float(cfg["d"]), **kw)
        if kind is not None and params.kind != kind:
            raise ConfigError(f"field 'd': damping {cfg['d']} gives case {params.kind}, not {kind}")
        return params
    return CaseParams.from_case(kind or EQUAL, lam=cfg["lambda"], mu=cfg["mu"], **kw)


def make_chi(cfg, params):
    if cfg["chi"] == "cubic":
        return ChiSpec.cubic(params.b, float(cfg["c3"]))
    if cfg["chi"] != "linear":
        raise ConfigError(f"field 'chi': must be 'linear' or 'cubic', got {cfg['chi']!r}")
    return ChiSpec.linear(params.b)


def _window(cfg):
    w = _floats(cfg["window"], 4, "window")
    if not (w[1] > w[0] and w[3] > w[2]):
        raise ConfigError("field 'window': need t0 < t1 and x0 < x1")
    return tuple(w)


def _grid(cfg):
    g = _floats(cfg["grid"], 2, "grid")
    if any(v != int(v) or v < 5 for v in g):
        raise ConfigError("field 'grid': need two integers >= 5")
    return int(g[0]), int(g[1])


def _levels(cfg):
    n = int(cfg["levels"])
    if n < 3:
        raise ConfigError("field 'levels': need at least 3")
    return n


def _free(cfg):
    return {k: float(cfg[k]) for k in ("alpha", "beta", "gamma") if cfg[k] is not None}


def _emit(cfg, payload):
    text = jsonio.dumps(payload)
    if cfg["out"]:
        Path(cfg["out"]).write_text(text + "\n")
    else:
        print(text)


# ------------------------------------------------------------------- commands

def cmd_classify(cfg):
    params = make_params(cfg)
    if cfg["element"] is None:
        raise ConfigError("field 'element': required")
    a = np.array(_floats(cfg["element"], 8, "element"))
    result = classify(a, params, float(cfg["tol"]))
    report = verify_conjugacy(a, result, params)
    payload = result.to_dict()
    payload["element"] = a.tolist()
    payload["params"] = params.to_dict()
    payload["verified"] = report.to_dict()
    _emit(cfg, payload)
    if not report.passed:
        log.error("conjugacy check failed: %.3e", report.max_error)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_adjoint(cfg):
    params = make_params(cfg)
    eps = np.array(_floats(cfg["eps"] or [0.0] * 8, 8, "eps"))
    m = adjoint_composed(eps, params)
    if not np.all(np.isfinite(m)):
        raise NumericalDegeneracy("adjoint matrix overflowed")
    err = float(np.max(np.abs(m - adjoint_product(eps, params))))
    for row in m:
        print(" ".join(f"{v:12.5g}" for v in row), file=sys.stderr)
    _emit(cfg, {"params": params.to_dict(), "eps": eps.tolist(), "matrix": m.tolist(), "product_error": err})
    return EXIT_OK


def _base_field(cfg):
    return drift_solution() if cfg["base"] == "drift" else shear_solution()


def cmd_transform(cfg):
    params = make_params(cfg)
    eps = np.array(_floats(cfg["eps"] or [0.0] * 8, 8, "eps"))
    fld = transform_solution(_base_field(cfg), eps, params)
    nt, nx = _grid(cfg)
    g = sample(fld, _window(cfg), nt, nx)
    if cfg["format"] == "csv":
        if not cfg["out"]:
            raise ConfigError("field 'out': CSV output needs a path")
        write_grid_csv(g, cfg["out"])
        return EXIT_OK
    chi = make_chi(cfg, params)
    _emit(cfg, {"params": params.to_dict(), "eps": eps.tolist(), "base": cfg["base"],
                "grid": g.meta(), "residual": pde_residual(g, chi, params).to_dict()})
    return EXIT_OK


def cmd_verify(cfg):
    params = make_params(cfg)
    chi = make_chi(cfg, params)
    window = _window(cfg)
    if cfg["grid_file"]:
        g = read_grid_csv(cfg["grid_file"])
        _emit(cfg, {"source": str(cfg["grid_file"]), "grid": g.meta(),
                    "report": pde_residual(g, chi, params).to_dict()})
        return EXIT_OK
    payload = {"params": params.to_dict(), "chi": chi.to_dict()}
    if cfg["example"] is not None:
        which = int(cfg["example"])
        consts = _floats(cfg["constants"], 4, "constants")
        free = _free(cfg)
        if cfg["reading"] == PRINTED:
            ck = check_example(which, consts, free, params, window, _levels(cfg), _grid(cfg))
            payload.update(source=f"example {which}", check=ck.to_dict())
            study = ck.study
        else:
            fld = example_solution(which, consts, free, params, DERIVED)
            study = convergence_study(fld, chi, params, window, _levels(cfg), _grid(cfg))
            payload.update(source=f"example {which} (derived)")
    else:
        fld = _base_field(cfg)
        if cfg["eps"] is not None:
            fld = transform_solution(fld, _floats(cfg["eps"], 8, "eps"), params)
        study = convergence_study(fld, chi, params, window, _levels(cfg), _grid(cfg))
        payload.update(source=cfg["base"], eps=cfg["eps"] and _floats(cfg["eps"], 8, "eps"))
    print(study.table(), file=sys.stderr)
    payload["report"] = study.finest.to_dict()
    payload["convergence"] = study.to_dict()
    _emit(cfg, payload)
    return EXIT_OK


def cmd_reduce(cfg):
    params = make_params(cfg)
    chi = make_chi(cfg, params)
    if not cfg["row"]:
        raise ConfigError("field 'row': required")
    spec = ansatz((params.kind, cfg["row"]), _free(cfg), params, cfg["reading"])
    window = _window(cfg)
    ics = _floats(cfg["ics"], 4, "ics")
    red = solve_reduced(spec, None, chi, params, ics, spec.zeta_range(window), float(cfg["step"]))
    rr = reduced_residual(red, spec, chi)
    fld = lift(spec, red)
    if cfg["format"] == "csv":
        if not cfg["out"]:
            raise ConfigError("field 'out': CSV output needs a path")
        nt, nx = _grid(cfg)
        write_grid_csv(sample(fld, window, nt, nx), cfg["out"])
        return EXIT_OK
    study = convergence_study(fld, chi, params, window, _levels(cfg), _grid(cfg))
    print(study.table(), file=sys.stderr)
    _emit(cfg, {"params": params.to_dict(), "chi": chi.to_dict(), "ansatz": spec.to_dict(),
                "reduced": red.to_dict(), "reduced_residual": rr.to_dict(),
                "report": study.finest.to_dict(), "convergence": study.to_dict()})
    return EXIT_OK


def cmd_catalog(cfg):
    _emit(cfg, load_catalog())
    return EXIT_OK


COMMANDS = {"classify": cmd_classify, "adjoint": cmd_adjoint, "transform": cmd_transform,
            "verify": cmd_verify, "reduce": cmd_reduce, "catalog": cmd_catalog}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve(args)
        return COMMANDS[args.command](cfg)
    except NUMERIC_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except CONFIG_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
