"""Command-line front end producing CSV or JSON tables.

Subcommands: ``field-map``, ``converge``, ``compare``, ``node-velocity``.
Exit codes: 0 ok, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import io
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy

from . import __version__
from .asymptotic import N_MAX, series_F
from .errors import (CoreProximityError, DegenerateModulusError, DivergenceError,
                     DomainError, QuadratureNonconvergence, SingularIntegrandError)
from .field import EVALUATORS, FilamentNodeState, evaluate, filament_node_velocity
from .geometry import ArcGeometry, FieldPoint

log = logging.getLogger("vortexarc")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

FIELD_MAP_COLUMNS = ["evaluator", "x1", "x2", "x3", "eps", "v_t", "v_n", "v_b", "v_norm", "tol"]
CONVERGE_COLUMNS = ["lambda", "k", "N", "series", "lo", "hi", "F_quad", "in_bracket"]
NODE_COLUMNS = ["evaluator", "x1", "x2", "x3", "VI_t", "VI_n", "VI_b",
                "dxi_dt_x", "dxi_dt_y", "dxi_dt_z"]
# rounding allowance when testing a sub-ulp bracket in double precision
BRACKET_SLACK_ULPS = 8

_NUMERIC_ERRORS = (CoreProximityError, DegenerateModulusError, DivergenceError,
                   QuadratureNonconvergence, SingularIntegrandError, ArithmeticError)


class ConfigError(Exception):
    pass


def compare_columns(evaluators, reference):
    cols = ["x1", "x2", "x3", "eps"]
    cols += [f"b_{e}" for e in evaluators]
    cols += [f"dev_{e}" for e in evaluators]
    return cols


@dataclass
class RunConfig:
    command: str
    radius: float = 1.0
    half_angle: float = math.pi / 2
    evaluator: list = field(default_factory=lambda: ["elliptic"])
    reference: str = "oracle"
    tol: float = 1e-10
    circulation_scale: float = 1.0
    format: str = "csv"
    out: str | None = None
    seed: int = 0
    sample: int = 0
    jobs: int = 1
    eps_range: tuple = (0.1, 0.1, 1)
    gamma1_range: tuple = (math.pi / 2, math.pi / 2, 1)
    gamma2_range: tuple = (math.pi / 2, math.pi / 2, 1)
    lambda_range: tuple = (0.05, 0.9, 15)
    k_range: tuple = (0.5, 0.999, 15)
    orders: list = field(default_factory=lambda: [1, 2, 3, 4])
    point: tuple = (0.0, 0.05, 0.0)
    vs: tuple = (0.0, 0.0, 0.0)
    vn: tuple = (0.0, 0.0, 0.0)
    tangent: tuple = (1.0, 0.0, 0.0)
    beta: float = 0.0
    beta_prime: float = 0.0

    def validate(self):
        if not self.radius > 0.0:
            raise ConfigError("--radius must be positive")
        if not 0.0 <= self.half_angle <= math.pi:
            raise ConfigError("--half-angle must lie in [0, pi]")
        if not 0.0 < self.tol <= 1e-3:
            raise ConfigError("--tol must lie in (0, 1e-3]")
        for name in list(self.evaluator) + [self.reference]:
            if name not in EVALUATORS:
                raise ConfigError(f"unknown evaluator {name!r}; choose from {sorted(EVALUATORS)}")
        for label in ("eps_range", "gamma1_range", "gamma2_range", "lambda_range", "k_range"):
            if getattr(self, label)[2] < 1:
                raise ConfigError(f"--{label.replace('_', '-')} count must be >= 1")
        if self.sample < 0 or self.jobs < 1:
            raise ConfigError("--sample must be >= 0 and --jobs >= 1")
        if any(not 1 <= n <= N_MAX for n in self.orders):
            raise ConfigError(f"--orders must lie in 1..{N_MAX}")

    @property
    def arc(self) -> ArcGeometry:
        return ArcGeometry(self.radius, self.half_angle, self.circulation_scale)


# --- parsing ---------------------------------------------------------------

def _range(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected a:b:n, got {text!r}")
    try:
        return (float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _vec(text):
    try:
        v = tuple(float(c) for c in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if len(v) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    return v


def _names(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _ints(text):
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radius", type=float, default=1.0)
    common.add_argument("--half-angle", type=float, default=math.pi / 2)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--circulation-scale", type=float, default=1.0)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH", default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--eps-range", type=_range, default=(0.1, 0.1, 1))
    grid.add_argument("--gamma1-range", type=_range, default=(math.pi / 2, math.pi / 2, 1))
    grid.add_argument("--gamma2-range", type=_range, default=(math.pi / 2, math.pi / 2, 1))
    grid.add_argument("--sample", type=int, default=0,
                      help="draw this many random directions per eps instead of the gamma grid")

    parser = argparse.ArgumentParser(prog="vortexarc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-map", parents=[common, grid], help="velocity on a grid of field points")
    p.add_argument("--evaluator", type=_names, default=["elliptic"])

    p = sub.add_parser("converge", parents=[common], help="series value and bracket versus quadrature F")
    p.add_argument("--lambda-range", type=_range, default=(0.05, 0.9, 15))
    p.add_argument("--k-range", type=_range, default=(0.5, 0.999, 15))
    p.add_argument("--orders", type=_ints, default=[1, 2, 3, 4])

    p = sub.add_parser("compare", parents=[common, grid], help="binormal speeds of several evaluators")
    p.add_argument("--evaluator", type=_names, default=["lia", "glie", "local", "oracle"])
    p.add_argument("--reference", default="oracle")

    p = sub.add_parser("node-velocity", parents=[common], help="filament node kinematics")
    p.add_argument("--evaluator", type=_names, default=["elliptic"])
    p.add_argument("--point", type=_vec, default=(0.0, 0.05, 0.0))
    p.add_argument("--vs", type=_vec, default=(0.0, 0.0, 0.0))
    p.add_argument("--vn", type=_vec, default=(0.0, 0.0, 0.0))
    p.add_argument("--tangent", type=_vec, default=(1.0, 0.0, 0.0))
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--beta-prime", type=float, default=0.0)
    return parser


def config_from_args(ns) -> RunConfig:
    kw = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**kw)


# --- output ------------------------------------------------------------------

def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return format(float(v), ".16e")


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def render(cfg: RunConfig, columns, rows, footer=None) -> str:
    if cfg.format == "csv":
        buf = io.StringIO()
        buf.write(",".join(columns) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(row[c]) for c in columns) + "\n")
        for rec in footer or []:
            buf.write("# " + ",".join(f"{k}={_fmt(v)}" for k, v in rec.items()) + "\n")
        return buf.getvalue()
    meta = {
        # the output path is excluded so identical runs are byte-identical wherever they land
        "config": {k: (list(v) if isinstance(v, tuple) else v)
                   for k, v in asdict(cfg).items() if k != "out"},
        "columns": columns,
        "versions": {"vortexarc": __version__, "numpy": np.__version__, "scipy": scipy.__version__},
    }
    doc = {"metadata": meta,
           "rows": [{c: _jsonable(row[c]) for c in columns} for row in rows]}
    if footer is not None:
        doc["summary"] = [{k: _jsonable(v) for k, v in rec.items()} for rec in footer]
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def emit(cfg: RunConfig, text: str):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- grids -------------------------------------------------------------------

def _lin(rng):
    a, b, n = rng
    return np.linspace(a, b, n) if n > 1 else np.array([a])


def grid_points(cfg: RunConfig):
    """Field points in deterministic order: eps outer, then gamma1, gamma2."""
    R = cfg.radius
    pts = []
    if cfg.sample:
        gen = np.random.default_rng(cfg.seed)
        for eps in _lin(cfg.eps_range):
            for _ in range(cfg.sample):
                d = gen.normal(size=3)
                d /= np.linalg.norm(d)
                pts.append(FieldPoint.from_cartesian([float(c) for c in eps * R * d]))
        return pts
    for eps in _lin(cfg.eps_range):
        for g1 in _lin(cfg.gamma1_range):
            for g2 in _lin(cfg.gamma2_range):
                pts.append(FieldPoint.from_spherical(float(eps * R), float(g1), float(g2)))
    return pts


def _eval_task(args):
    name, arc, x, tol = args
    try:
        return evaluate(name, arc, x, min(tol, 1e-6)), None
    except _NUMERIC_ERRORS as e:
        return None, f"{type(e).__name__}: {e}"


def _run_tasks(cfg, tasks):
    if cfg.jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as ex:
            results = list(ex.map(_eval_task, tasks))
    else:
        results = [_eval_task(t) for t in tasks]
    for (name, _, x, _), (_, err) in zip(tasks, results):
        if err is not None:
            raise NumericFailure(f"evaluator {name} failed at x={x.cartesian}: {err}")
    return [v for v, _ in results]


class NumericFailure(Exception):
    pass


# --- subcommands ----------------------------------------------------------------

def cmd_field_map(cfg: RunConfig):
    arc = cfg.arc
    pts = grid_points(cfg)
    tasks = [(name, arc, x, cfg.tol) for x in pts for name in cfg.evaluator]
    vels = _run_tasks(cfg, tasks)
    rows = []
    for (name, _, x, _), v in zip(tasks, vels):
        rows.append({"evaluator": name, "x1": x.cartesian[0], "x2": x.cartesian[1],
                     "x3": x.cartesian[2], "eps": x.norm / arc.R, "v_t": v.tangent,
                     "v_n": v.normal, "v_b": v.binormal, "v_norm": v.norm, "tol": cfg.tol})
    return FIELD_MAP_COLUMNS, rows, None


def _quad_F(lam, k):
    # reference F by quadrature in the amplitude variable, independent of Carlson
    from scipy import integrate

    if lam == 0.0:
        return 0.0
    phi = math.asin(lam)
    if k == 1.0:
        return math.atanh(lam)
    val, _ = integrate.quad(lambda t: 1.0 / math.sqrt(1.0 - (k * math.sin(t)) ** 2), 0.0, phi,
                            epsabs=1e-16, epsrel=2e-14, limit=200)
    return val


def cmd_converge(cfg: RunConfig):
    rows = []
    for lam in map(float, _lin(cfg.lambda_range)):
        for k in map(float, _lin(cfg.k_range)):
            if not (0.0 <= lam < 1.0 and 0.0 < k <= 1.0):
                raise ConfigError(f"(lambda, k) = ({lam}, {k}) outside [0,1) x (0,1]")
            F = _quad_F(lam, k)
            for N in cfg.orders:
                s = series_F(lam, k, N)
                slack = BRACKET_SLACK_ULPS * np.spacing(abs(F))
                rows.append({"lambda": lam, "k": k, "N": N, "series": s.value,
                             "lo": s.remainder_lo, "hi": s.remainder_hi, "F_quad": F,
                             "in_bracket": bool(s.contains(F, slack))})
    return CONVERGE_COLUMNS, rows, None


def log_regression(eps, values):
    """Least-squares fit values = intercept + slope * ln(1/eps)."""
    X = np.log(1.0 / np.asarray(eps, dtype=float))
    y = np.asarray(values, dtype=float)
    if len(X) < 2 or np.ptp(X) == 0.0:
        return float("nan"), float("nan")
    slope, intercept = np.polyfit(X, y, 1)
    return float(slope), float(intercept)


def cmd_compare(cfg: RunConfig):
    arc = cfg.arc
    pts = grid_points(cfg)
    names = list(dict.fromkeys(list(cfg.evaluator) + [cfg.reference]))
    tasks = [(name, arc, x, cfg.tol) for x in pts for name in names]
    vels = _run_tasks(cfg, tasks)
    per = len(names)
    rows = []
    for i, x in enumerate(pts):
        b = {name: vels[i * per + j].binormal for j, name in enumerate(names)}
        ref = b[cfg.reference]
        row = {"x1": x.cartesian[0], "x2": x.cartesian[1], "x3": x.cartesian[2],
               "eps": x.norm / arc.R}
        for name in cfg.evaluator:
            row[f"b_{name}"] = abs(b[name])
            row[f"dev_{name}"] = (abs(b[name] - ref) / abs(ref)) if ref != 0.0 else abs(b[name] - ref)
        rows.append(row)
    footer = []
    eps = [r["eps"] for r in rows]
    for name in cfg.evaluator:
        slope, intercept = log_regression(eps, [r[f"b_{name}"] for r in rows])
        footer.append({"record": "regression", "evaluator": name, "slope": slope,
                       "intercept": intercept, "kappa": arc.kappa})
    return compare_columns(cfg.evaluator, cfg.reference), rows, footer


def cmd_node_velocity(cfg: RunConfig):
    arc = cfg.arc
    x = FieldPoint.from_cartesian(cfg.point)
    name = cfg.evaluator[0]
    (vi,) = _run_tasks(cfg, [(name, arc, x, cfg.tol)])
    t = np.asarray(cfg.tangent, dtype=float)
    if abs(np.linalg.norm(t) - 1.0) > 1e-9:
        raise ConfigError("--tangent must be a unit vector")
    state = FilamentNodeState(position=np.zeros(3), unit_tangent=t,
                              V_S=np.asarray(cfg.vs), V_N=np.asarray(cfg.vn),
                              V_I=vi.cartesian, beta_mf=cfg.beta, beta_mf_prime=cfg.beta_prime)
    out = filament_node_velocity(state)
    row = {"evaluator": name, "x1": x.cartesian[0], "x2": x.cartesian[1], "x3": x.cartesian[2],
           "VI_t": vi.tangent, "VI_n": vi.normal, "VI_b": vi.binormal,
           "dxi_dt_x": out[0], "dxi_dt_y": out[1], "dxi_dt_z": out[2]}
    return NODE_COLUMNS, [row], None


COMMANDS = {
    "field-map": cmd_field_map,
    "converge": cmd_converge,
    "compare": cmd_compare,
    "node-velocity": cmd_node_velocity,
}


def run(cfg: RunConfig) -> str:
    """Execute a validated config and return the rendered table."""
    cfg.validate()
    columns, rows, footer = COMMANDS[cfg.command](cfg)
    return render(cfg, columns, rows, footer)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits with status 2 on malformed flags
    try:
        cfg = config_from_args(ns)
        text = run(cfg)
    except (ConfigError, DomainError) as e:
        log.error("configuration error: %s", e)
        return EXIT_CONFIG
    except NumericFailure as e:
        log.error("numerical failure: %s", e)
        return EXIT_NUMERIC
    emit(cfg, text)
    return EXIT_OK


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
