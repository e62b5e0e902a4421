"""Command-line front end.

Subcommands: generate, estimate, forecast, plot, data, bench. Results go
to stdout as a JSON run report; series/plot files go to disk. Exit
codes: 0 success, 2 validation error, 3 numerical failure, 4 data/IO
error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from . import bench as benchmod
from .classic import log_variance_est, rescaled_range_est
from .data import load_csv, nhtemp_data, nile_data
from .errors import DataError, LongmemError, NumericalError, RangeError
from .forecast import csa_forecast, fi_forecast, har_forecast
from .generate import RngSpec, Series, csa_gen, csa_gen_finite, fi_gen, sds_gen
from .parametric import csa_mle_est, fi_mle_est, har_est
from .plotting import (
    acf_plot,
    dump_csv,
    forecast_plot,
    lm_plot,
    log_variance_plot,
    periodogram_plot,
    render_svg,
    rescaled_range_plot,
)
from .semiparam import exact_whittle_est, gph_est, gph_est_variance, whittle_est, whittle_est_variance

__all__ = ["main"]


def _version() -> str:
    try:
        return version("longmem")
    except PackageNotFoundError:
        return "unknown"


def _report(command: str, parameters: dict, results: dict, t0: float, seed=None) -> None:
    out = {
        "command": command,
        "parameters": parameters,
        "results": results,
        "timings": {"elapsed_s": round(time.perf_counter() - t0, 6)},
        "version": _version(),
        "seed": seed,
    }
    json.dump(out, sys.stdout, indent=2, default=_jsonable)
    sys.stdout.write("\n")


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON-serializable: {type(obj)}")


def _load_series(args) -> Series:
    if getattr(args, "data", None):
        ds = {"nile": nile_data, "nhtemp": nhtemp_data}[args.data]()
        return ds.series()
    if getattr(args, "input", None):
        if not args.column:
            raise DataError("--input requires --column")
        return load_csv(args.input, args.column)
    raise DataError("no input: pass --data {nile,nhtemp} or --input FILE --column NAME")


def _write_series(path: str, x: Series, column: str = "x") -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", column])
        for t, v in enumerate(x.values):
            writer.writerow([t, repr(float(v))])


def _parse_lags(text: str) -> tuple:
    try:
        return tuple(int(s) for s in text.split(","))
    except ValueError:
        raise RangeError(f"could not parse lag list {text!r}; expected e.g. 1,5,22") from None


# ------------------------------------------------------------- subcommands


def _cmd_generate(args, t0) -> None:
    rng = RngSpec(args.seed)
    if args.kind == "fi":
        x = fi_gen(args.n, args.d, args.sigma, rng)
    elif args.kind == "csa":
        x = csa_gen(args.n, args.p, args.q, args.sigma, rng)
    elif args.kind == "csa-finite":
        x = csa_gen_finite(args.n, args.N, args.p, args.q, args.sigma, rng)
    else:
        x = sds_gen(args.n, args.d, args.sigma, rng)
    _write_series(args.out, x)
    _report(
        "generate",
        {k: getattr(args, k, None) for k in ("kind", "n", "d", "p", "q", "N", "sigma", "out")},
        {"label": x.label, "length": len(x), "mean": float(x.values.mean()),
         "sd": float(x.values.std(ddof=1)) if len(x) > 1 else 0.0, "path": args.out},
        t0,
        seed=args.seed,
    )


def _estimate_results(args, x: Series) -> dict:
    method = args.method
    if method in ("gph", "lw", "elw"):
        if method == "gph":
            est = gph_est(x, m=args.m, br=args.br)
            var = gph_est_variance(x, br=args.br)
        elif method == "lw":
            est = whittle_est(x, m=args.m)
            var = whittle_est_variance(x)
        else:
            est = exact_whittle_est(x, m=args.m)
            var = whittle_est_variance(x)
        return {
            "d_hat": est.d_hat,
            "bandwidth_m": est.bandwidth_m,
            "asy_variance": est.asy_variance,
            "default_variance": var,
            "br_order": est.br_order,
            "aux": est.aux,
        }
    if method == "fi-mle":
        fit = fi_mle_est(x)
        return {"d_hat": fit.d, "sigma": fit.sigma, "boundary": fit.boundary}
    if method == "csa-mle":
        fit = csa_mle_est(x)
        return {"p_hat": fit.p, "q_hat": fit.q, "scale": fit.sigma,
                "implied_d": 1.0 - fit.q / 2.0, "boundary": fit.boundary}
    if method == "har":
        model = har_est(x, _parse_lags(args.lags))
        return {"lags": list(model.lags), "coefficients": model.coefficients,
                "sigma": model.sigma}
    if method == "logvar":
        reg = log_variance_est(x, args.m or 100)
        return {"slope": reg.slope, "intercept": reg.intercept, "implied_d": reg.implied_d}
    reg = rescaled_range_est(x, args.k)
    return {"slope": reg.slope, "intercept": reg.intercept, "implied_d": reg.implied_d}


def _cmd_estimate(args, t0) -> None:
    x = _load_series(args)
    results = _estimate_results(args, x)
    _report(
        "estimate",
        {k: getattr(args, k, None)
         for k in ("method", "data", "input", "column", "m", "br", "lags", "k", "bandwidth_exp")},
        results,
        t0,
    )


def _cmd_forecast(args, t0) -> None:
    x = _load_series(args)
    z = x.values
    mu = float(z.mean()) if args.demean else 0.0
    work = Series(z - mu, label=x.label) if args.demean else x
    model_info: dict = {}
    if args.model == "har":
        fc = har_forecast(x, args.h, _parse_lags(args.lags))
        model_info = {"lags": list(fc.model.lags), "coefficients": fc.model.coefficients,
                      "sigma": fc.model.sigma}
        mu = 0.0  # HAR carries its own intercept; no demeaning applied
    elif args.model == "fi":
        if args.fit:
            fit = fi_mle_est(x)
            d, sigma = fit.d, fit.sigma
        elif args.d is not None and args.sigma is not None:
            d, sigma = args.d, args.sigma
        else:
            raise RangeError("forecast fi needs --fit or both --d and --sigma")
        fc = fi_forecast(work, args.h, d, sigma)
        model_info = {"d": d, "sigma": sigma}
    else:
        if args.fit:
            fit = csa_mle_est(x)
            p, q, sigma = fit.p, fit.q, fit.sigma / np.sqrt(fit.p + fit.q - 1.0)
        elif args.p is not None and args.q is not None and args.sigma is not None:
            p, q, sigma = args.p, args.q, args.sigma
        else:
            raise RangeError("forecast csa needs --fit or --p, --q and --sigma")
        fc = csa_forecast(work, args.h, p, q, sigma)
        model_info = {"p": p, "q": q, "sigma": sigma}
    point, lower, upper = fc.point + mu, fc.lower + mu, fc.upper + mu
    if args.plot:
        from .forecast import Forecast

        shifted = Forecast(fc.history_length, fc.horizon, point, lower, upper, fc.model)
        render_svg(forecast_plot(x, shifted), args.plot)
    _report(
        "forecast",
        {k: getattr(args, k, None)
         for k in ("model", "data", "input", "column", "h", "fit", "demean", "lags", "plot")},
        {"model": model_info, "horizon": fc.horizon, "point": point,
         "lower": lower, "upper": upper},
        t0,
    )


def _cmd_plot(args, t0) -> None:
    x = _load_series(args)
    if args.kind == "acf":
        spec = acf_plot(x, K=args.K)
    elif args.kind == "periodogram":
        spec = periodogram_plot(x)
    elif args.kind == "logvar":
        spec = log_variance_plot(x, m=args.m or 100, slopes=args.slopes)
    elif args.kind == "rs":
        spec = rescaled_range_plot(x, k=args.k, slopes=args.slopes)
    else:
        spec = lm_plot(x, K=args.K, m=args.m or 100)
    render_svg(spec, args.out)
    outputs = {"svg": args.out, "panels": len(spec.panels)}
    if args.dump:
        dump_csv(spec, args.dump)
        outputs["dump"] = args.dump
    _report(
        "plot",
        {k: getattr(args, k, None)
         for k in ("kind", "data", "input", "column", "K", "m", "k", "slopes", "out", "dump")},
        outputs,
        t0,
    )


def _cmd_data(args, t0) -> None:
    ds = {"nile": nile_data, "nhtemp": nhtemp_data}[args.name]()
    results = {
        "name": ds.name,
        "columns": list(ds.columns),
        "length": len(next(iter(ds.columns.values()))),
        "source_note": ds.source_note,
    }
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(list(ds.columns))
            for row in zip(*ds.columns.values()):
                writer.writerow([repr(float(v)) for v in row])
        results["path"] = args.out
    _report("data", {"name": args.name, "out": args.out}, results, t0)


def _cmd_bench(args, t0) -> None:
    res = benchmod.run_suite(args.suite, args.n, args.reps)
    results = {}
    for key, val in res.items():
        results[key] = asdict(val) if isinstance(val, benchmod.BenchResult) else val
    _report("bench", {"suite": args.suite, "n": args.n, "reps": args.reps}, results, t0)


# ---------------------------------------------------------------- parser


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", choices=["nile", "nhtemp"], help="bundled dataset")
    p.add_argument("--input", help="CSV file path")
    p.add_argument("--column", help="column name inside --input")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="longmem",
                                 description="Long-memory time series toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("generate", help="simulate a long-memory series to CSV")
    g.add_argument("kind", choices=["fi", "csa", "csa-finite", "sds"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=float, default=0.3)
    g.add_argument("--p", type=float, default=1.3)
    g.add_argument("--q", type=float, default=1.5)
    g.add_argument("--N", type=int, default=100)
    g.add_argument("--sigma", type=float, default=1.0)
    g.add_argument("--seed", type=int, default=1234)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_generate)

    e = sub.add_parser("estimate", help="estimate the memory parameter")
    e.add_argument("method",
                   choices=["gph", "lw", "elw", "fi-mle", "csa-mle", "har", "logvar", "rs"])
    _add_input_flags(e)
    e.add_argument("--m", type=int, default=None, help="bandwidth / block count")
    e.add_argument("--bandwidth-exp", type=float, default=0.8)
    e.add_argument("--br", type=int, default=0, help="GPH bias-reduction order")
    e.add_argument("--lags", default="1,5,22", help="HAR lags, comma-separated")
    e.add_argument("--k", type=int, default=100, help="R/S window count")
    e.set_defaults(func=_cmd_estimate)

    f = sub.add_parser("forecast", help="h-step-ahead forecast")
    f.add_argument("model", choices=["fi", "csa", "har"])
    _add_input_flags(f)
    f.add_argument("--h", type=int, required=True)
    f.add_argument("--fit", action="store_true", help="estimate parameters first")
    f.add_argument("--demean", action="store_true")
    f.add_argument("--d", type=float, default=None)
    f.add_argument("--p", type=float, default=None)
    f.add_argument("--q", type=float, default=None)
    f.add_argument("--sigma", type=float, default=None)
    f.add_argument("--lags", default="1,5,22")
    f.add_argument("--plot", default=None, help="write a forecast SVG here")
    f.set_defaults(func=_cmd_forecast)

    pl = sub.add_parser("plot", help="diagnostic plots as SVG")
    pl.add_argument("kind", choices=["acf", "periodogram", "logvar", "rs", "lm"])
    _add_input_flags(pl)
    pl.add_argument("--K", type=int, default=50, help="ACF lags")
    pl.add_argument("--m", type=int, default=None, help="log-variance block count")
    pl.add_argument("--k", type=int, default=100, help="R/S window count")
    pl.add_argument("--slopes", action="store_true", help="draw fitted and reference slopes")
    pl.add_argument("--out", required=True)
    pl.add_argument("--dump", default=None, help="also dump plot numbers as CSV")
    pl.set_defaults(func=_cmd_plot)

    dt = sub.add_parser("data", help="describe / export a bundled dataset")
    dt.add_argument("name", choices=["nile", "nhtemp"])
    dt.add_argument("--out", default=None, help="export as CSV here")
    dt.set_defaults(func=_cmd_data)

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("suite", choices=["coef-recursion", "csa-finite-vs-asym",
                                     "fracdiff-fft-vs-naive", "estimators"])
    b.add_argument("--n", type=int, default=10_000)
    b.add_argument("--reps", type=int, default=5)
    b.set_defaults(func=_cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        args.func(args, t0)
    except NumericalError as exc:
        print(f"longmem: numerical failure: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"longmem: data error: {exc}", file=sys.stderr)
        return 4
    except LongmemError as exc:
        print(f"longmem: invalid request: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"longmem: I/O error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
