"""Command-line front end.

Exit codes: 0 success (or all stationarity tests agree: stationary),
2 all tests agree: nonstationary, 3 tests disagree, 64 usage error,
74 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import bounds, econotest, fixtures, ingest
from .errors import GeoARError, InsufficientDataError, InvalidSpecError, SeriesFileError
from .model import GeometricARSpec, build_coefficients
from .roots import CharPolynomial, char_polynomial, is_stationary_by_roots
from .schur import schur_stationarity
from .simulate import SimulationConfig, TimeSeries, forecast, simulate

EXIT_OK = 0
EXIT_NONSTATIONARY = 2
EXIT_DISAGREE = 3
EXIT_USAGE = 64
EXIT_IO = 74

TABLE1_BETAS = (0.0001, 0.3, 0.35, 0.4)
TABLE1_DELTAS = (0.5, 0.55, 0.6, 0.65, 0.7)
WORKERS_ENV = "GEOAR_WORKERS"


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.6g}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(fmt(v) for v in x) + "]"
    return "-" if x is None else str(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def emit(data: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        json.dump(_jsonable(data), out, indent=2, sort_keys=False)
        out.write("\n")
        return
    def walk(prefix, val):
        if isinstance(val, dict):
            for sub, v in val.items():
                walk(f"{prefix}.{sub}" if prefix else str(sub), v)
        else:
            out.write(f"{prefix}: {fmt(val)}\n")

    walk("", data)


def lag_weights(beta: float, delta: float, k: int, sign: str) -> np.ndarray:
    """AR coefficients for simulation under either sign convention.

    ``negative`` is the model's own form (b_i = -beta*delta**(i-2));
    ``positive`` feeds lagged values back with weights +beta*delta**(i-2).
    """
    spec = GeometricARSpec(beta, delta, k, epsilon2=min(1e-8, beta * delta ** (k - 2)))
    if sign == "negative":
        return build_coefficients(spec).as_array()
    if sign == "positive":
        return spec.lag_weights()
    raise ValueError(f"sign must be 'negative' or 'positive' (got {sign!r})")


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------- analyze

@dataclass
class AnalysisReport:
    spec: dict
    coefficients: list[float]
    roots: dict
    schur: dict
    kappa: list[float]
    bound: dict
    corollary1: dict
    agreement: dict

    @property
    def exit_code(self) -> int:
        verdicts = set(self.agreement["verdicts"].values())
        if verdicts == {True}:
            return EXIT_OK
        if verdicts == {False}:
            return EXIT_NONSTATIONARY
        return EXIT_DISAGREE

    def to_dict(self) -> dict:
        return asdict(self)


def analyze(spec: GeometricARSpec, tol: float = 1e-9) -> AnalysisReport:
    p = char_polynomial(spec)
    rv = is_stationary_by_roots(p, tol)
    sr = schur_stationarity(p)
    tb = bounds.theorem_bound(spec)
    cs = bounds.coefficient_sum_check(spec)
    inside = tb.contains(spec.beta)
    verdicts = {"roots": rv.stationary, "schur": sr.all_positive, "theorem": inside}
    return AnalysisReport(
        spec={"beta": spec.beta, "delta": spec.delta, "k": spec.k, "epsilon2": spec.epsilon2},
        coefficients=list(build_coefficients(spec).b),
        roots={
            "stationary": rv.stationary,
            "max_modulus": rv.max_modulus,
            "margin": rv.margin,
            "borderline": rv.borderline,
        },
        schur={
            "all_positive": sr.all_positive,
            "first_failure": sr.first_failure,
            "determinants": sr.determinants,
        },
        kappa=bounds.kappa_series(spec),
        bound={
            "kappa_k": tb.kappa_k,
            "beta_upper": tb.beta_upper,
            "beta_lower": tb.beta_lower,
            "delta_lower": tb.delta_lower,
            "delta_lower_note": tb.delta_lower_note,
            "inside": inside,
            "distance_to_upper": tb.beta_upper - spec.beta,
            "convention": bounds.EIGVEC_CONVENTION,
        },
        corollary1={
            "coefficient_sum": cs.coefficient_sum,
            "bound_rhs": cs.bound_rhs,
            "sum_below_one": cs.sum_below_one,
        },
        agreement={"verdicts": verdicts, "unanimous": len(set(verdicts.values())) == 1},
    )


# ---------------------------------------------------------------- grid

GRID_FIELDS = [
    "beta", "delta", "k", "sign", "beta_upper", "theorem_inside",
    "model_max_modulus", "model_stationary", "simulated_max_modulus", "simulated_stationary",
    "adf_category", "median_statistic", "explosive_runs",
] + [f"n_{c}" for c in econotest.CATEGORIES]


def _cell_category(b: np.ndarray, n_steps: int, seed: int, sd: float) -> tuple[str, float]:
    ts = simulate(SimulationConfig(b, n_steps=n_steps, seed=seed, innovation_sd=sd))
    if ts.meta["explosive"]:
        return econotest.NON_STATIONARY, float("inf")
    res = econotest.adf_test(ts)
    return res.category, res.statistic


def grid_cell(beta: float, delta: float, k: int = 5, replications: int = 20, seed: int = 0,
              n_steps: int = 500, sign: str = "positive", innovation_sd: float = 1.0) -> dict:
    """One Table-1 style cell: bound verdicts plus the majority ADF category.

    Replication r uses seed ``seed + r``; every cell shares the same seeds.
    """
    spec = GeometricARSpec(beta, delta, k, epsilon2=min(1e-8, beta * delta ** (k - 2)))
    tb = bounds.theorem_bound(spec)
    model_v = is_stationary_by_roots(char_polynomial(spec))
    b = lag_weights(beta, delta, k, sign)
    sim_v = is_stationary_by_roots(CharPolynomial.from_ar(b))
    results = [_cell_category(b, n_steps, seed + r, innovation_sd) for r in range(replications)]
    cats = [c for c, _ in results]
    row = {
        "beta": beta,
        "delta": delta,
        "k": k,
        "sign": sign,
        "beta_upper": tb.beta_upper,
        "theorem_inside": tb.contains(beta),
        "model_max_modulus": model_v.max_modulus,
        "model_stationary": model_v.stationary,
        "simulated_max_modulus": sim_v.max_modulus,
        "simulated_stationary": sim_v.stationary,
        "adf_category": econotest.majority_category(cats),
        "median_statistic": float(np.median([s for _, s in results])),
        "explosive_runs": sum(1 for _, s in results if s == float("inf")),
    }
    for c in econotest.CATEGORIES:
        row[f"n_{c}"] = cats.count(c)
    return row


def grid_rows(betas=TABLE1_BETAS, deltas=TABLE1_DELTAS, k: int = 5, replications: int = 20,
              seed: int = 0, n_steps: int = 500, sign: str = "positive",
              innovation_sd: float = 1.0, workers: int | None = None) -> list[dict]:
    """Rows ordered delta-major, beta-minor regardless of worker count."""
    if not betas or not deltas:
        raise ValueError("beta and delta lists must be nonempty")
    cells = [(b, d) for d in deltas for b in betas]

    def run(cell):
        return grid_cell(cell[0], cell[1], k, replications, seed, n_steps, sign, innovation_sd)

    workers = workers or default_workers()
    if workers == 1:
        return [run(c) for c in cells]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, cells))


def rows_to_csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({f: (repr(float(v)) if isinstance(v, float) else v) for f, v in r.items()})
    return buf.getvalue()


# ---------------------------------------------------------------- appendix

def one_step_predictions(x: np.ndarray, b: np.ndarray, start: int, stop: int) -> np.ndarray:
    """Predict x[t] from the actual x[t-k..t-1] for t in start..stop-1."""
    k = b.size
    rev = b[::-1]
    return np.array([rev @ x[t - k : t] for t in range(start, stop)])


def appendix_comparison(series: TimeSeries, window: int = 100, horizon: int = 40,
                        k: int = 5, delta: float = 0.5) -> dict:
    """Fit on the first ``window`` differences, score on the next ``horizon``.

    Differences are centred on the training-window mean before fitting.
    The unconstrained model is OLS AR(k); the geometric model fits one scale
    s with b = s*(1, 1, delta, ..., delta**(k-2)). The headline RMSE uses
    one-step-ahead predictions from actual history; multi-step forecasts from
    the end of the window are reported too.
    """
    if horizon < 1 or window < 1:
        raise ValueError("window and horizon must be >= 1")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    diffs = ingest.first_difference(series).values
    if diffs.size < window + horizon:
        raise InsufficientDataError(
            f"need {window + horizon + 1} levels for window {window} + horizon {horizon} (got {len(series)})"
        )
    train = diffs[:window]
    mu = float(train.mean())
    x = diffs[: window + horizon] - mu
    actual = x[window:]

    ar1 = econotest.fit_ar(train, 1, with_intercept=True)
    ols = econotest.fit_ar(x[:window], k)
    scale = econotest.fit_geometric_scale(x[:window], k, delta)
    geo = scale * np.concatenate(([1.0], delta ** np.arange(k - 1, dtype=float)))

    out = {
        "window": window,
        "horizon": horizon,
        "k": k,
        "delta": delta,
        "ar1_coefficient": float(ar1.ar[0]),
        "ar1_below_one": bool(abs(ar1.ar[0]) < 1),
        "ols_coefficients": ols.ar.tolist(),
        "geometric_scale": scale,
        "geometric_beta": -scale,
        "geometric_coefficients": geo.tolist(),
    }
    r_ols = econotest.rmse(actual, one_step_predictions(x, ols.ar, window, window + horizon))
    r_geo = econotest.rmse(actual, one_step_predictions(x, geo, window, window + horizon))
    m_ols = econotest.rmse(actual, forecast(x[:window], ols.ar, horizon).values)
    m_geo = econotest.rmse(actual, forecast(x[:window], geo, horizon).values)
    out.update({
        "rmse_ols": r_ols,
        "rmse_geometric": r_geo,
        "rmse_ratio": r_geo / r_ols if r_ols > 0 else float("nan"),
        "geometric_not_worse": bool(r_geo <= r_ols),
        "multistep_rmse_ols": m_ols,
        "multistep_rmse_geometric": m_geo,
    })
    return out


# ---------------------------------------------------------------- argparse

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1 (got {v})")
    return v


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _spec_from(args) -> GeometricARSpec:
    return GeometricARSpec(args.beta, args.delta, args.k, epsilon2=args.epsilon2)


def cmd_analyze(args) -> int:
    rep = analyze(_spec_from(args), args.tol)
    emit(rep.to_dict(), args.json)
    return rep.exit_code


def cmd_bound(args) -> int:
    spec = GeometricARSpec(args.beta, args.delta, args.k, epsilon2=args.epsilon2)
    tb = bounds.theorem_bound(spec)
    emit({
        "delta": spec.delta,
        "k": spec.k,
        "kappa_k": tb.kappa_k,
        "beta_upper": tb.beta_upper,
        "beta_lower": tb.beta_lower,
        "delta_lower": tb.delta_lower,
        "delta_lower_note": tb.delta_lower_note,
        "delta_lower_beta": spec.beta,
        "kappa": bounds.kappa_series(spec),
        "convention": bounds.EIGVEC_CONVENTION,
    }, args.json)
    return EXIT_OK


def cmd_grid(args) -> int:
    rows = grid_rows(args.betas, args.deltas, args.k, args.replications, args.seed,
                     args.n, args.sign, args.sd, args.workers)
    text = rows_to_csv(rows, GRID_FIELDS)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not args.quiet:
        sys.stderr.write(f"category rule: {econotest.CATEGORY_RULE}\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    b = lag_weights(args.beta, args.delta, args.k, args.sign)
    ts = simulate(SimulationConfig(b, n_steps=args.n, burn_in=args.burn_in, innovation_sd=args.sd,
                                   seed=args.seed, innovation=args.innovation))
    text = ingest.format_csv(ts)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if ts.meta["explosive"]:
        sys.stderr.write(f"explosive: path exceeded threshold after {len(ts)} kept steps\n")
    return EXIT_OK


def _load(args) -> TimeSeries:
    ts = ingest.load_csv(args.input, args.column, args.header)
    return ingest.first_difference(ts) if getattr(args, "diff", False) else ts


def cmd_fit(args) -> int:
    fit = econotest.fit_ar(_load(args), args.k, args.intercept)
    emit({
        "k": args.k,
        "coefficients": fit.ar.tolist(),
        "intercept": fit.intercept,
        "standard_errors": fit.standard_errors.tolist(),
        "residual_variance": fit.residual_variance,
        "n_used": fit.n_used,
        "rank_deficient": fit.rank_deficient,
    }, args.json)
    return EXIT_OK


def cmd_adf(args) -> int:
    res = econotest.adf_test(_load(args), args.max_lags)
    emit({
        "statistic": res.statistic,
        "lags_used": res.lags_used,
        "nobs": res.nobs,
        "category": res.category,
        "critical_values": res.critical_values,
        "rule": econotest.CATEGORY_RULE,
    }, args.json)
    return EXIT_OK


def cmd_appendix(args) -> int:
    ts = ingest.load_csv(args.input, args.column, args.header)
    emit(appendix_comparison(ts, args.window, args.horizon, args.k, args.delta), args.json)
    return EXIT_OK


def cmd_fixture(args) -> int:
    if args.seed is None:
        args.seed = 2017 if args.kind == "sensex" else 0
    if args.n is None:
        args.n = 1044 if args.kind == "sensex" else 500
    if args.kind == "sensex":
        ts = fixtures.sensex_like(args.seed, args.n)
    elif args.kind == "geometric":
        ts = fixtures.geometric_levels(GeometricARSpec(args.beta, args.delta, args.k), args.n, args.seed)
    elif args.kind == "white-noise":
        ts = fixtures.white_noise(args.n, args.seed)
    else:
        ts = fixtures.random_walk(args.n, args.seed)
    text = ingest.format_csv(ts)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="geoar", description="Stationarity analysis of geometric-coefficient AR(k) models.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def spec_args(sp, beta_required=True):
        sp.add_argument("--beta", type=float, required=beta_required, default=None if beta_required else 0.1)
        sp.add_argument("--delta", type=float, required=True)
        sp.add_argument("--k", type=int, default=5)
        sp.add_argument("--epsilon2", type=float, default=1e-8)

    def input_args(sp):
        sp.add_argument("--input", required=True, help="CSV file")
        sp.add_argument("--column", default=None, help="value column name or index (default: last numeric)")
        sp.add_argument("--header", choices=["auto", "yes", "no"], default="auto")

    a = sub.add_parser("analyze", help="root, Schur and theorem-bound verdicts for one spec")
    spec_args(a)
    a.add_argument("--tol", type=float, default=1e-9)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bound", help="beta interval and delta lower bound")
    spec_args(b, beta_required=False)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bound)

    g = sub.add_parser("grid", help="Table-1 style beta x delta sweep (CSV)")
    g.add_argument("--betas", type=_float_list, default=list(TABLE1_BETAS))
    g.add_argument("--deltas", type=_float_list, default=list(TABLE1_DELTAS))
    g.add_argument("--k", type=int, default=5)
    g.add_argument("--replications", type=_positive_int, default=20)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=_positive_int, default=500)
    g.add_argument("--sd", type=float, default=1.0)
    g.add_argument("--sign", choices=["positive", "negative"], default="positive")
    g.add_argument("--workers", type=_positive_int, default=None)
    g.add_argument("--out", default=None)
    g.add_argument("--quiet", action="store_true")
    g.set_defaults(func=cmd_grid)

    s = sub.add_parser("simulate", help="simulate one path (CSV t,value)")
    spec_args(s)
    s.add_argument("--n", type=_positive_int, default=500)
    s.add_argument("--burn-in", type=int, default=None)
    s.add_argument("--sd", type=float, default=1.0)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--sign", choices=["negative", "positive"], default="negative")
    s.add_argument("--innovation", choices=["gaussian", "uniform"], default="gaussian")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_simulate)

    f = sub.add_parser("fit", help="OLS AR(k) fit")
    input_args(f)
    f.add_argument("--k", type=_positive_int, default=5)
    f.add_argument("--intercept", action="store_true")
    f.add_argument("--diff", action="store_true", help="fit first differences")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_fit)

    d = sub.add_parser("adf", help="augmented Dickey-Fuller test")
    input_args(d)
    d.add_argument("--max-lags", type=int, default=None)
    d.add_argument("--diff", action="store_true", help="test first differences")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_adf)

    x = sub.add_parser("appendix", help="AR(1)/AR(k)/geometric forecast comparison")
    input_args(x)
    x.add_argument("--window", type=_positive_int, default=100)
    x.add_argument("--horizon", type=_positive_int, default=40)
    x.add_argument("--k", type=_positive_int, default=5)
    x.add_argument("--delta", type=float, default=0.5)
    x.add_argument("--json", action="store_true")
    x.set_defaults(func=cmd_appendix)

    fx = sub.add_parser("fixture", help="write a seeded synthetic series")
    fx.add_argument("--kind", choices=["sensex", "geometric", "white-noise", "random-walk"], default="sensex")
    fx.add_argument("--seed", type=int, default=None, help="default 2017 for sensex, 0 otherwise")
    fx.add_argument("--n", type=_positive_int, default=None, help="default 1044 for sensex, 500 otherwise")
    fx.add_argument("--beta", type=float, default=0.3)
    fx.add_argument("--delta", type=float, default=0.5)
    fx.add_argument("--k", type=int, default=5)
    fx.add_argument("--out", default=None)
    fx.set_defaults(func=cmd_fixture)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SeriesFileError, OSError) as exc:
        sys.stderr.write(f"geoar: I/O error: {exc}\n")
        return EXIT_IO
    except (InvalidSpecError, InsufficientDataError, GeoARError, ValueError) as exc:
        sys.stderr.write(f"geoar: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
