"""Command-line surface: factor, maxmod, verify, compare, plot.

Problem descriptions come from a JSON file:

    {
      "classes": {
        "A": [{"kind": "monotone"}],
        "B": [{"kind": "monotone"}, {"kind": "lipschitz", "L": 0.5}],
        "C": [{"kind": "cocoercive", "beta": 1.0},
              {"kind": "strongly_monotone", "mu": 0.5}]
      },
      "params": {"alpha": 1.0, "lambda": 1.0, "s": 0.0},
      "search": {"eps_grid": 0.0083333},
      "enlargement": {"mode": "none"}
    }

Unknown keys are rejected and every number must be finite.  All reports
are JSON on stdout with floats in shortest round-trip form.  Exit codes:
0 ok, 1 verification counterexample, 2 parse error, 3 violated
precondition, 4 unbounded search domain, 5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import classes as cls
from . import rates
from .errors import (DysRatesError, InvalidClassError, PreconditionError,
                     UnboundedRegionError)
from .geometry import boundary_pieces
from .search import SearchConfig, search
from .svgplot import SvgFigure, bounds_for
from .symbol import DysParams, zeta
from .verify import verify_averagedness, verify_contraction

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_UNBOUNDED = 4
EXIT_IO = 5

_ATOM_KINDS = {
    "monotone": ((), cls.Monotone),
    "strongly_monotone": (("mu",), cls.StronglyMonotone),
    "cocoercive": (("beta",), cls.Cocoercive),
    "lipschitz": (("L",), cls.Lipschitz),
    "averaged": (("theta",), cls.Averaged),
    "shifted_lipschitz_ball": (("center", "radius"), cls.ShiftedLipschitzBall),
}

_SEARCH_KEYS = {"eps_grid", "ascent_step", "ascent_shrink", "max_iters",
                "stop_tol", "top_k", "parallel"}


class SpecFileError(DysRatesError):
    pass


def _finite_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecFileError(f"{where}: expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise SpecFileError(f"{where}: number must be finite, got {value!r}")
    return x


def _reject_unknown(obj: dict, allowed, where: str) -> None:
    unknown = set(obj) - set(allowed)
    if unknown:
        raise SpecFileError(
            f"{where}: unknown keys {sorted(unknown)}; allowed: "
            f"{sorted(allowed)}")


def _parse_atom(obj, where: str):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SpecFileError(f"{where}: atom must be an object with 'kind'")
    kind = obj["kind"]
    if kind not in _ATOM_KINDS:
        raise SpecFileError(
            f"{where}: unknown kind {kind!r}; known: {sorted(_ATOM_KINDS)}")
    fields, ctor = _ATOM_KINDS[kind]
    _reject_unknown(obj, ("kind",) + fields, where)
    try:
        return ctor(*[_finite_number(obj[f], f"{where}.{f}") for f in fields])
    except KeyError as exc:
        raise SpecFileError(f"{where}: missing field {exc}") from exc


def _parse_class(objs, where: str) -> cls.OperatorClassSpec:
    if not isinstance(objs, list) or not objs:
        raise SpecFileError(f"{where}: expected a nonempty list of atoms")
    atoms = tuple(_parse_atom(a, f"{where}[{i}]") for i, a in enumerate(objs))
    return cls.OperatorClassSpec(atoms)


class ProblemSpec:
    """Validated contents of a problem JSON file."""

    def __init__(self, raw: dict):
        if not isinstance(raw, dict):
            raise SpecFileError("top level must be an object")
        _reject_unknown(raw, {"classes", "params", "search", "enlargement",
                              "plot"}, "top level")
        classes = raw.get("classes")
        if not isinstance(classes, dict):
            raise SpecFileError("'classes' object is required")
        _reject_unknown(classes, {"A", "B", "C", "Cprime"}, "classes")
        for key in ("A", "B", "C"):
            if key not in classes:
                raise SpecFileError(f"classes.{key} is required")
        self.a = _parse_class(classes["A"], "classes.A")
        self.b = _parse_class(classes["B"], "classes.B")
        self.c = _parse_class(classes["C"], "classes.C")
        self.c_prime = None
        if "Cprime" in classes:
            self.c_prime = _parse_class(classes["Cprime"], "classes.Cprime")

        params = raw.get("params")
        if not isinstance(params, dict):
            raise SpecFileError("'params' object is required")
        _reject_unknown(params, {"alpha", "lambda", "s"}, "params")
        if "alpha" not in params or "lambda" not in params:
            raise SpecFileError("params.alpha and params.lambda are required")
        self.alpha = _finite_number(params["alpha"], "params.alpha")
        self.lam = _finite_number(params["lambda"], "params.lambda")
        self.shift = _finite_number(params.get("s", 0.0), "params.s")

        search_cfg = raw.get("search", {})
        if not isinstance(search_cfg, dict):
            raise SpecFileError("'search' must be an object")
        _reject_unknown(search_cfg, _SEARCH_KEYS, "search")
        self.search_kwargs = {}
        for key, value in search_cfg.items():
            if key == "parallel":
                if not isinstance(value, bool):
                    raise SpecFileError("search.parallel must be a boolean")
                self.search_kwargs[key] = value
            elif key in ("max_iters", "top_k"):
                self.search_kwargs[key] = int(
                    _finite_number(value, f"search.{key}"))
            else:
                self.search_kwargs[key] = _finite_number(value,
                                                         f"search.{key}")

        enlargement = raw.get("enlargement", {"mode": "none"})
        if isinstance(enlargement, str):
            enlargement = {"mode": enlargement}
        if not isinstance(enlargement, dict):
            raise SpecFileError("'enlargement' must be an object or string")
        _reject_unknown(enlargement, {"mode", "mu"}, "enlargement")
        mode = enlargement.get("mode", "none")
        if mode not in ("none", "disk_hull", "thm33", "thm41"):
            raise SpecFileError(f"unknown enlargement mode {mode!r}")
        self.enlargement_mode = mode
        self.enlargement_mu = None
        if "mu" in enlargement:
            self.enlargement_mu = _finite_number(enlargement["mu"],
                                                 "enlargement.mu")

        plot_cfg = raw.get("plot", {})
        if not isinstance(plot_cfg, dict):
            raise SpecFileError("'plot' must be an object")
        _reject_unknown(plot_cfg, {"circle_radius", "eps"}, "plot")
        self.plot_circle = None
        if "circle_radius" in plot_cfg:
            self.plot_circle = _finite_number(plot_cfg["circle_radius"],
                                              "plot.circle_radius")
        self.plot_eps = _finite_number(plot_cfg.get("eps", 1.0 / 30.0),
                                       "plot.eps")

    def params(self) -> DysParams:
        return DysParams(self.alpha, self.lam, self.shift)

    def effective_c(self) -> cls.OperatorClassSpec:
        if self.enlargement_mode == "none":
            return self.c
        mu = self.enlargement_mu
        if mu is None and self.enlargement_mode == "thm41":
            mu = self.a.mu if self.a.mu is not None else self.b.mu
        return cls.enlarge_C(self.c, self.params(), self.enlargement_mode,
                             mu=mu)


def load_spec(path: str) -> ProblemSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"invalid JSON in {path}: {exc}") from exc
    return ProblemSpec(raw)


def _emit(payload: dict, indent) -> None:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    sys.stdout.write(json.dumps(payload, indent=indent, sort_keys=True))
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# Theorem dispatch
# ---------------------------------------------------------------------------

def _dispatch_auto(spec: ProblemSpec) -> str:
    a, b, c = spec.a, spec.b, spec.c
    if c.mu is not None:
        return "33"
    if c.L is not None and c.beta is None:
        return "41"
    if (a.mu is not None and a.L is not None) or \
            (b.mu is not None and b.L is not None):
        return "31"
    if (a.L is not None and b.mu is not None) or \
            (a.mu is not None and b.L is not None):
        return "32"
    raise PreconditionError(
        "theorem hypotheses recognizable",
        "no theorem matches the (mu, L) placement across A, B, C")


def compute_factor(spec: ProblemSpec, theorem: str = "auto"):
    if theorem == "auto":
        theorem = _dispatch_auto(spec)
    a, b, c = spec.a, spec.b, spec.c
    alpha, lam = spec.alpha, spec.lam
    if theorem == "31":
        carrier, role = (a, "A") if a.mu is not None and a.L is not None \
            else (b, "B")
        if carrier.mu is None or carrier.L is None or c.beta is None:
            raise PreconditionError(
                "one of A, B carries (mu, L) and C carries beta_C")
        return rates.contraction_thm31(alpha, lam, c.beta, carrier.mu,
                                       carrier.L, role=role)
    if theorem == "32":
        if c.beta is None:
            raise PreconditionError("C carries beta_C")
        if a.L is not None and b.mu is not None:
            return rates.contraction_thm32(alpha, lam, c.beta, a.L, b.mu,
                                           role="A_lip_B_sm")
        if a.mu is not None and b.L is not None:
            return rates.contraction_thm32(alpha, lam, c.beta, b.L, a.mu,
                                           role="A_sm_B_lip")
        raise PreconditionError("A Lipschitz and B strongly monotone, or "
                                "A strongly monotone and B Lipschitz")
    if theorem == "33":
        if c.beta is None or c.mu is None:
            raise PreconditionError("C carries beta_C and mu_C")
        if a.L is not None:
            return rates.contraction_thm33(alpha, lam, c.beta, a.L, c.mu,
                                           role="A_lip")
        if b.L is not None:
            return rates.contraction_thm33(alpha, lam, c.beta, b.L, c.mu,
                                           role="B_lip")
        raise PreconditionError("A or B carries L")
    if theorem == "41":
        if c.L is None:
            raise PreconditionError("C carries L_C")
        if abs(lam - 1.0) > 1e-12:
            raise PreconditionError("lambda = 1",
                                    "averagedness requires lambda = 1")
        if a.mu is not None:
            return rates.averagedness_thm41(alpha, a.mu, c.L, role="A_sm")
        if b.mu is not None:
            return rates.averagedness_thm41(alpha, b.mu, c.L, role="B_sm")
        raise PreconditionError("A or B carries mu")
    raise SpecFileError(f"unknown theorem {theorem!r}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_factor(args) -> int:
    spec = load_spec(args.spec)
    report = compute_factor(spec, args.theorem)
    _emit(report.as_dict(), args.json_indent)
    return EXIT_OK


def _search_config(spec: ProblemSpec, args) -> SearchConfig:
    kwargs = dict(spec.search_kwargs)
    if getattr(args, "eps", None) is not None:
        kwargs["eps_grid"] = args.eps
    return SearchConfig(**kwargs)


def cmd_maxmod(args) -> int:
    spec = load_spec(args.spec)
    shift = args.shift if args.shift is not None else spec.shift
    params = DysParams(spec.alpha, spec.lam, shift)
    config = _search_config(spec, args)
    effective_c = spec.effective_c()
    result = search(spec.a, spec.b, effective_c, params, config)
    if args.dump_grid is not None:
        _dump_grid_csv(args.dump_grid, spec, effective_c, params,
                       config.eps_grid)
    payload = result.as_dict()
    payload["params"] = {"alpha": params.alpha, "lambda": params.lam,
                         "s": params.shift}
    payload["eps_grid"] = config.eps_grid
    _emit(payload, args.json_indent)
    return EXIT_OK


def _dump_grid_csv(path: str, spec: ProblemSpec, c_spec, params: DysParams,
                   eps: float, cap: int = 100_000) -> None:
    """Decimated symbol values on the grid product, for external plotting."""
    import csv

    values = _cloud(spec, c_spec, params, eps, cap=cap)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["re", "im", "shifted_modulus"])
            for v in values:
                writer.writerow([repr(float(v.real)), repr(float(v.imag)),
                                 repr(abs(complex(v) - params.shift))])
    except OSError as exc:
        raise SpecFileError(f"cannot write {path}: {exc}") from exc


def cmd_verify(args) -> int:
    spec = load_spec(args.spec)
    params = spec.params()
    if args.rho == "auto":
        report = compute_factor(spec, "auto")
        if isinstance(report, rates.AveragednessReport):
            theta = report.theta
            ver = verify_averagedness(spec.a, spec.b, spec.c, params, theta,
                                      n_trials=args.trials,
                                      rng_seed=args.seed)
        else:
            ver = verify_contraction(spec.a, spec.b, spec.c, params,
                                     report.rho, n_trials=args.trials,
                                     rng_seed=args.seed)
    else:
        try:
            rho = float(args.rho)
        except ValueError as exc:
            raise SpecFileError("--rho must be a number or 'auto'") from exc
        ver = verify_contraction(spec.a, spec.b, spec.c, params, rho,
                                 n_trials=args.trials, rng_seed=args.seed)
    for warning in ver.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    _emit(ver.as_dict(), args.json_indent)
    return EXIT_OK if ver.passed else EXIT_COUNTEREXAMPLE


def cmd_compare(args) -> int:
    spec = load_spec(args.spec)
    a, b, c = spec.a, spec.b, spec.c
    alpha, lam = spec.alpha, spec.lam
    if c.beta is None:
        raise PreconditionError("C carries beta_C")
    beta_c = c.beta
    eps = rates.default_eps(alpha, beta_c)
    eta = rates.default_eta(alpha, beta_c, eps)
    pairs = []

    def add(new_report, prior_report):
        pairs.append({
            "new": new_report.as_dict(), "prior": prior_report.as_dict(),
            "margin": prior_report.rho - new_report.rho})

    for carrier, role in ((a, "A"), (b, "B")):
        if carrier.mu is not None and carrier.L is not None:
            new = rates.contraction_thm31(alpha, lam, beta_c, carrier.mu,
                                          carrier.L, role=role)
            add(new, rates.prior_d61(alpha, lam, beta_c, carrier.mu,
                                     carrier.L))
            add(new, rates.prior_d62(alpha, lam, beta_c, carrier.mu,
                                     carrier.L, eps))
    if a.mu is not None and b.L is not None:
        new = rates.contraction_thm32(alpha, lam, beta_c, b.L, a.mu,
                                      role="A_sm_B_lip")
        add(new, rates.prior_d63(alpha, lam, beta_c, a.mu, b.L, eps))
    if a.L is not None and b.mu is not None:
        new = rates.contraction_thm32(alpha, lam, beta_c, a.L, b.mu,
                                      role="A_lip_B_sm")
        add(new, rates.prior_d64(alpha, lam, beta_c, b.mu, a.L, eps))
    if c.mu is not None and a.L is not None:
        new = rates.contraction_thm33(alpha, lam, beta_c, a.L, c.mu,
                                      role="A_lip")
        add(new, rates.prior_d65(alpha, lam, beta_c, c.mu, a.L, eps, eta))
    if c.mu is not None and b.L is not None:
        new = rates.contraction_thm33(alpha, lam, beta_c, b.L, c.mu,
                                      role="B_lip")
        add(new, rates.prior_d66(alpha, lam, beta_c, c.mu, b.L, eta))
    if not pairs:
        raise PreconditionError(
            "comparable factor pair available",
            "no (mu, L) placement matches a theorem/prior pairing")
    _emit({"pairs": pairs, "epsilon": eps, "eta": eta}, args.json_indent)
    return EXIT_OK


def _cloud(spec: ProblemSpec, c_spec, params: DysParams, eps: float,
           cap: int = 30000):
    from .classes import resolvent_srg, srg
    from .geometry import boundary_grid
    za = boundary_grid(resolvent_srg(spec.a, params.alpha), eps).points
    zb = boundary_grid(resolvent_srg(spec.b, params.alpha), eps).points
    zc = boundary_grid(srg(c_spec), eps).points
    values = zeta(za[:, None, None], zb[None, :, None], zc[None, None, :],
                  params).ravel()
    if values.size > cap:
        stride = values.size // cap + 1
        values = values[::stride]
    return values


def cmd_plot(args) -> int:
    spec = load_spec(args.spec)
    params = spec.params()
    eps = spec.plot_eps
    dark = _cloud(spec, spec.c, params, eps)
    light = None
    if spec.c_prime is not None:
        light = _cloud(spec, spec.c_prime, params, eps)
    elif spec.enlargement_mode != "none":
        light = _cloud(spec, spec.effective_c(), params, eps)

    circle = spec.plot_circle
    if circle is None:
        peak = float(np.max(np.abs(dark)))
        if light is not None:
            peak = max(peak, float(np.max(np.abs(light))))
        circle = peak

    pts = list(dark) + (list(light) if light is not None else [])
    xmin, xmax, ymin, ymax = bounds_for(pts, circle)
    fig = SvgFigure(xmin, xmax, ymin, ymax)
    fig.add_axes()
    if light is not None:
        fig.add_points(light, "#bbbbbb")
    fig.add_points(dark, "#555555")
    fig.add_circle(0j, circle, "#000000")
    from .classes import srg
    for piece in boundary_pieces(srg(spec.c)):
        fig.add_piece_outline(piece, "#2060c0")
    legend = [("symbol cloud", "#555555")]
    if light is not None:
        legend.append(("enlarged cloud", "#bbbbbb"))
    legend.append((f"|z| = {circle:.10f}", "#000000"))
    fig.add_legend(legend)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(fig.render())
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    _emit({"out": args.out, "dark_points": int(len(dark)),
           "light_points": int(len(light)) if light is not None else 0,
           "circle_radius": circle}, args.json_indent)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dysrates",
        description="Contraction and averagedness factors for three-operator "
                    "splitting via complex-plane region analysis")
    parser.add_argument("--json-indent", type=int, default=2,
                        help="indentation for JSON output (default 2)")
    parser.add_argument("--threads", type=int, default=1,
                        help="reserved; results are identical for any value")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="closed-form factor for a spec file")
    p.add_argument("spec")
    p.add_argument("--theorem", choices=["31", "32", "33", "41", "auto"],
                   default="auto")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("maxmod", help="boundary search for max |zeta - s|")
    p.add_argument("spec")
    p.add_argument("--eps", type=float, default=None,
                   help="boundary grid spacing (overrides spec file)")
    p.add_argument("--shift", type=float, default=None,
                   help="shift s (overrides spec file)")
    p.add_argument("--dump-grid", default=None, metavar="FILE",
                   help="write decimated symbol samples as CSV")
    p.set_defaults(func=cmd_maxmod)

    p = sub.add_parser("verify", help="2x2 realization check of a factor")
    p.add_argument("spec")
    p.add_argument("--rho", default="auto")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="new factors vs corrected priors")
    p.add_argument("spec")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("plot", help="SVG of the symbol cloud")
    p.add_argument("spec")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidClassError as exc:
        print(f"error: invalid class: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PreconditionError as exc:
        print(f"error: violated precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except UnboundedRegionError as exc:
        print(f"error: unbounded search domain: {exc}", file=sys.stderr)
        return EXIT_UNBOUNDED
    except DysRatesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
