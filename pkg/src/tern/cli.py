"""Command-line interface: ``tern test | pragmatic | sweep | calibrate``.

Every command writes a JSON envelope ``{command, config, result, timestamp}``
(or a CSV table with ``--format csv``).  Everything except ``timestamp`` is a
pure function of the resolved configuration, so reruns with the same seed
agree byte for byte whatever ``--threads`` is.

Exit codes: 0 success, 2 usage or configuration error, 3 data error,
4 numeric failure.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import datetime
import hashlib
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

import numpy as np

from . import __version__
from .calibration import estimate_fcp, estimate_levels
from .core import AgnosticTest, UsageError, decide_from_region
from .data import READERS, DataError, GravityData, TwoSampleData
from .estimators import (
    NormalPosteriorCredible,
    NormalPosteriorHPD,
    TInterval,
    TwoSampleTInterval,
    ZInterval,
    gravity_g_interval,
)
from .hypotheses import GRAMMAR, HypothesisSyntaxError, ParsedHypothesis, parse_hypothesis
from .models import (
    GravityRegressionModel,
    Model,
    NormalMeanModel,
    TwoSampleDifferenceModel,
    gravity_regression_model,
    normal_mean_model,
    simulate_gravity_data,
    simulate_normal_data,
    simulate_two_sample_data,
    two_sample_difference_model,
)
from .pragmatic import CSV_HEADER as PRAGMATIC_CSV_HEADER
from .pragmatic import PragmaticConfig, pragmatic_approx, pragmatic_exact_normal
from .regions import Interval, RegionError
from .rng import substream
from .sweep import CSV_HEADER as SWEEP_CSV_HEADER
from .sweep import SweepHypothesis, approximate_band, exact_normal_band, sample_size_sweep

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4

MODEL_NAMES = ("normal", "two-sample", "gravity")
ESTIMATORS = {
    "normal": ("z", "t", "credible", "hpd"),
    "two-sample": ("t",),
    "gravity": ("regression",),
}
DEFAULT_HEIGHTS = tuple(float(h) for h in range(1, 11))

# never part of the serialized configuration
_UNSERIALIZED = {"config", "threads", "output", "data", "command"}


# -- argument types -------------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _int_list(text: str) -> list[int]:
    values = _float_list(text)
    if any(v != int(v) or v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return [int(v) for v in values]


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {v}")
    return v


def _finite_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so :func:`main` controls exit codes and messages."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# -- parser ---------------------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("model and hypothesis")
    g.add_argument("--config", help="INI file with a [tern] section; keys mirror the long flags")
    g.add_argument("--model", choices=MODEL_NAMES, default="normal")
    g.add_argument("--h0", action="append", metavar="HYP", help=GRAMMAR)
    g.add_argument("--alpha", type=_finite_float, help="1 - level of the region estimator (default 0.05)")
    g.add_argument("--level", type=_finite_float, help="confidence or credibility level")
    g.add_argument("--estimator", help="z, t, credible or hpd (normal); t (two-sample); regression (gravity)")
    g.add_argument("--sigma", type=_finite_float,
                   help="known sd (normal default 1; two-sample: estimated by pooling when omitted)")
    g.add_argument("--prior-mean", type=_finite_float, default=0.0)
    g.add_argument("--prior-sd", type=_finite_float, default=1.0)

    d = p.add_argument_group("data")
    d.add_argument("--x", type=_float_list, help="comma-separated observations (normal model)")
    d.add_argument("--data", metavar="CSV", help="input CSV: x | group,y | height,time")
    d.add_argument("--simulate", action="store_true", help="generate synthetic data")
    d.add_argument("--n", type=_positive_int, help="observations to simulate (per group for two-sample)")
    d.add_argument("--true-theta", type=_finite_float, help="generating mean (normal)")
    d.add_argument("--mean-a", type=_finite_float, help="generating mean of group a")
    d.add_argument("--mean-b", type=_finite_float, help="generating mean of group b")
    d.add_argument("--true-g", type=_finite_float, default=9.8)
    d.add_argument("--beta0", type=_finite_float, default=0.2, help="reaction-time intercept (gravity)")
    d.add_argument("--noise-sd", type=_finite_float, help="generating noise sd (default: --sigma, or 0.02 for gravity)")
    d.add_argument("--heights", type=_float_list, help="drop heights cycled by the gravity simulator")

    q = p.add_argument_group("pragmatic hypothesis")
    q.add_argument("--tau", type=_finite_float, default=0.95, help="accuracy threshold in (0.5, 1)")
    q.add_argument("--grid-lo", type=_finite_float)
    q.add_argument("--grid-hi", type=_finite_float)
    q.add_argument("--grid-points", type=_positive_int, default=201)
    q.add_argument("--n-sims", type=_positive_int, default=10_000)
    q.add_argument("--refine", action="store_true", help="bisect each band edge")
    q.add_argument("--crn", action="store_true", help="common random numbers across grid points")
    q.add_argument("--n-future", type=_positive_int, default=1,
                   help="future replicates (per group for two-sample, of the height design for gravity)")
    q.add_argument("--plug-in", type=_float_list, help="nuisance values instead of estimates from the data")

    r = p.add_argument_group("run")
    r.add_argument("--seed", type=_nonneg_int, default=0)
    r.add_argument("--threads", type=_positive_int, default=1)
    r.add_argument("--output", "-o", help="write here instead of stdout")
    r.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = _Parser(prog="tern", description="Agnostic hypothesis tests and pragmatic hypotheses.")
    parser.add_argument("--version", action="version", version=f"tern {__version__}")
    subs = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    subs.required = True
    common = _common_flags()
    out = {}

    p = subs.add_parser("test", parents=[common], help="run one agnostic test")
    p.add_argument("--pragmatic", action="store_true", help="test the pragmatic band of a point hypothesis")
    out["test"] = p

    p = subs.add_parser("pragmatic", parents=[common], help="compute a pragmatic hypothesis")
    out["pragmatic"] = p

    p = subs.add_parser("sweep", parents=[common], help="tests over growing sample sizes")
    p.add_argument("--n-list", type=_int_list, help="comma-separated sample sizes")
    p.add_argument("--band", choices=("approx", "exact"), default="approx",
                   help="grid search, or the closed form when sigma is known")
    out["sweep"] = p

    p = subs.add_parser("calibrate", parents=[common], help="Monte Carlo error rates of a test")
    p.add_argument("--theta-grid", type=_float_list, help="values of the tested coordinate")
    p.add_argument("--fcp-prior-mean", type=_finite_float, default=0.0)
    p.add_argument("--fcp-prior-sd", type=_finite_float,
                   help="also estimate the false conclusion probability under this normal prior")
    out["calibrate"] = p
    return parser, out


# -- configuration file -----------------------------------------------------------


def _convert(action: argparse.Action, key: str, raw: str):
    if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
        low = raw.strip().lower()
        if low not in configparser.ConfigParser.BOOLEAN_STATES:
            raise UsageError(f"config key {key!r}: expected a boolean, got {raw!r}")
        return configparser.ConfigParser.BOOLEAN_STATES[low]
    try:
        value = action.type(raw.strip()) if action.type else raw.strip()
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"config key {key!r}: {exc}") from None
    if action.choices is not None and value not in action.choices:
        raise UsageError(f"config key {key!r}: {value!r} is not one of {list(action.choices)}")
    return value


def _load_config(path: str, sub: argparse.ArgumentParser) -> dict[str, Any]:
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    cp.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    except configparser.Error as exc:
        raise UsageError(f"config {path}: {exc}") from None
    if "tern" not in cp:
        raise UsageError(f"config {path}: missing [tern] section")
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
    values: dict[str, Any] = {}
    for key, raw in cp["tern"].items():
        dest = key.strip().lstrip("-").replace("-", "_")
        action = actions.get(dest)
        if action is None:
            raise UsageError(f"config {path}: unknown key {key!r}")
        if isinstance(action, argparse._AppendAction):
            values[dest] = [_convert(action, key, line) for line in raw.splitlines() if line.strip()]
        else:
            values[dest] = _convert(action, key, raw)
    return values


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser, subs = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    if args.config:
        sub = subs[args.command]
        values = _load_config(args.config, sub)
        # appended flags would extend the config list, so merge them by hand
        appended = {k: values.pop(k) for k in list(values) if isinstance(
            next(a for a in sub._actions if a.dest == k), argparse._AppendAction)}
        sub.set_defaults(**values)
        args = parser.parse_args(argv)
        for k, v in appended.items():
            if getattr(args, k) is None:
                setattr(args, k, v)
    return args


# -- resolution of flags into library objects ------------------------------------


def _level(args) -> float:
    if args.alpha is not None and args.level is not None and not math.isclose(args.alpha, 1 - args.level):
        raise UsageError(f"--alpha {args.alpha} and --level {args.level} disagree")
    level = args.level if args.level is not None else 1.0 - (0.05 if args.alpha is None else args.alpha)
    if not 0 < level < 1:
        raise UsageError(f"--level must lie in (0, 1), got {level}")
    return level


def _estimator_kind(args) -> str:
    kind = args.estimator or ESTIMATORS[args.model][0]
    if kind not in ESTIMATORS[args.model]:
        raise UsageError(f"--estimator {kind!r} is not available for model {args.model!r}; "
                         f"choose from {list(ESTIMATORS[args.model])}")
    return kind


def make_estimator(args) -> Callable[[Any], Interval]:
    level, kind = _level(args), _estimator_kind(args)
    sigma = 1.0 if args.sigma is None else args.sigma
    if kind == "z":
        return ZInterval(sigma, level)
    if kind == "t":
        return TInterval(level) if args.model == "normal" else TwoSampleTInterval(level)
    if kind == "credible":
        return NormalPosteriorCredible(args.prior_mean, args.prior_sd, sigma, level)
    if kind == "hpd":
        return NormalPosteriorHPD(args.prior_mean, args.prior_sd, sigma, level)
    return gravity_g_interval(level)


def _noise_sd(args) -> float:
    if args.noise_sd is not None:
        sd = args.noise_sd
    elif args.model == "gravity":
        sd = 0.02
    else:
        sd = 1.0 if args.sigma is None else args.sigma
    if not sd >= 0:
        raise UsageError(f"--noise-sd must be non-negative, got {sd}")
    return sd


def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError(f"{args.command} --model {args.model} needs " + ", ".join(f"--{n}" for n in missing))


@dataclass
class Loaded:
    data: Any
    info: dict


def load_data(args, n: Optional[int] = None) -> Loaded:
    sources = [s for s, on in (("--x", args.x is not None), ("--data", args.data is not None),
                               ("--simulate", args.simulate)) if on]
    if len(sources) != 1:
        raise UsageError("give exactly one of --x, --data, --simulate" + (f" (got {', '.join(sources)})" if sources else ""))
    if args.x is not None:
        if args.model != "normal":
            raise UsageError("--x is only available for the normal model; use --data")
        x = np.asarray(args.x, dtype=float)
        return Loaded(x, {"source": "inline", "n": int(x.size)})
    if args.data is not None:
        data = READERS[args.model](args.data)
        with open(args.data, "rb") as fh:
            digest = hashlib.sha256(fh.read()).hexdigest()
        return Loaded(data, {"source": "file", "sha256": digest, "n": _size(data)})
    n = n or args.n
    if n is None:
        raise UsageError("--simulate needs --n")
    rng = substream(args.seed, "data")
    sd = _noise_sd(args)
    if args.model == "normal":
        _require(args, "true-theta")
        data = simulate_normal_data(n, args.true_theta, sd, rng)
    elif args.model == "two-sample":
        _require(args, "mean-a", "mean-b")
        data = simulate_two_sample_data(n, args.mean_a, args.mean_b, sd, rng)
    else:
        data = simulate_gravity_data(n, args.true_g, args.beta0, sd, args.heights or DEFAULT_HEIGHTS, rng)
    return Loaded(data, {"source": "simulated", "n": _size(data)})


def _size(data) -> int:
    if isinstance(data, TwoSampleData):
        return int(min(data.a.size, data.b.size))
    if isinstance(data, GravityData):
        return len(data)
    return int(np.asarray(data).size)


def pragmatic_model(args, data: Any = None) -> Model:
    """Model of the future experiment for the tested coordinate."""
    if args.model == "normal":
        return normal_mean_model(1.0 if args.sigma is None else args.sigma, args.n_future)
    if args.model == "two-sample":
        return two_sample_difference_model(args.sigma, args.n_future)
    if isinstance(data, GravityData):
        heights = tuple(np.unique(data.heights))
    else:
        heights = tuple(args.heights or DEFAULT_HEIGHTS)
    return gravity_regression_model(heights, args.n_future)


def pragmatic_config(args) -> PragmaticConfig:
    _require(args, "grid-lo", "grid-hi")
    return PragmaticConfig(args.tau, args.grid_lo, args.grid_hi, args.grid_points, args.n_sims,
                           args.seed, args.refine, args.crn, args.threads)


def _hypotheses(args, allow_many: bool = False) -> list[ParsedHypothesis]:
    if not args.h0:
        raise UsageError(f"{args.command} needs --h0 ({GRAMMAR})")
    if len(args.h0) > 1 and not allow_many:
        raise UsageError(f"{args.command} takes a single --h0")
    return [parse_hypothesis(h, args.model) for h in args.h0]


def _point(h: ParsedHypothesis) -> float:
    if not h.is_point:
        raise UsageError(f"pragmatic hypotheses need a point null such as 'theta=0', got {h.text!r}")
    return float(h.point)


def _run_pragmatic(args, theta0: float, data: Any):
    model = pragmatic_model(args, data)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        result = pragmatic_approx(model, theta0, pragmatic_config(args), plug_in=args.plug_in, data=data)
    for note in result.warnings:
        print(f"tern: warning: {note}", file=sys.stderr)
    return model, result


# -- commands -------------------------------------------------------------------


@dataclass
class Outcome:
    result: dict
    header: Sequence[str]
    rows: list


def cmd_test(args) -> Outcome:
    (hyp,) = _hypotheses(args)
    loaded = load_data(args)
    region = make_estimator(args)(loaded.data)
    target, prag = hyp.region, None
    if args.pragmatic:
        _, res = _run_pragmatic(args, _point(hyp), loaded.data)
        target = res.retained
        prag = {"band": res.retained.to_dict(), "plug_in": res.plug_in, "convex": res.convex,
                "boundary_estimates": res.boundary_estimates, "warnings": res.warnings}
    decision = decide_from_region(region, target)
    result = {
        "decision": str(decision),
        "decision_value": decision.value,
        "estimator": _estimator_kind(args),
        "level": _level(args),
        "region": region.to_dict(),
        "hypothesis": {"text": hyp.text, "coordinate": hyp.name, "region": hyp.region.to_dict()},
        "tested_region": target.to_dict(),
        "pragmatic": prag,
        "data": loaded.info,
    }
    band = target if args.pragmatic else None
    row = (str(decision), region.lo, region.hi, hyp.text,
           None if band is None else band.lo, None if band is None else band.hi)
    return Outcome(result, ("decision", "ci_lo", "ci_hi", "h0", "pg_lo", "pg_hi"), [row])


def cmd_pragmatic(args) -> Outcome:
    (hyp,) = _hypotheses(args)
    theta0 = _point(hyp)
    data_given = args.x is not None or args.data is not None or args.simulate
    loaded = load_data(args) if data_given else None
    model, res = _run_pragmatic(args, theta0, None if loaded is None else loaded.data)
    result = res.to_dict()
    result["model"] = model.describe()
    result["data"] = None if loaded is None else loaded.info
    if isinstance(model, NormalMeanModel):
        result["exact"] = pragmatic_exact_normal(theta0, model.sigma, model.n_future, args.tau).to_dict()
    return Outcome(result, PRAGMATIC_CSV_HEADER, res.csv_rows())


def cmd_sweep(args) -> Outcome:
    if args.n_list is None:
        raise UsageError("sweep needs --n-list")
    hyps = _hypotheses(args, allow_many=True)
    loaded = load_data(args, n=max(args.n_list))
    band = None
    if any(h.is_point for h in hyps):
        if args.band == "exact":
            if args.model == "gravity" or args.sigma is None:
                raise UsageError("--band exact needs --sigma and the normal or two-sample model")
            band = exact_normal_band(args.sigma, args.n_future, args.tau)
        else:
            model = pragmatic_model(args, loaded.data)
            band = approximate_band(model, pragmatic_config(args), relative=False, plug_in=args.plug_in)
    sweep_hyps = [SweepHypothesis(h.text, h.region, h.point) for h in hyps]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = sample_size_sweep(loaded.data, args.n_list, make_estimator(args), sweep_hyps, band)
    table = [r.to_dict() for r in rows]
    final = {h.text: str(rows[-len(hyps) + i].decision) for i, h in enumerate(hyps)}
    result = {"rows": table, "final": final, "data": loaded.info, "estimator": _estimator_kind(args),
              "level": _level(args)}
    return Outcome(result, SWEEP_CSV_HEADER, [tuple(d[k] for k in SWEEP_CSV_HEADER) for d in table])


def _calibration_setup(args, n: int):
    """Data-generating model, full parameter builder and dataset adapter for one coordinate."""
    sd = _noise_sd(args)
    if sd <= 0:
        raise UsageError("calibration needs a positive --noise-sd")
    if args.model == "normal":
        model = NormalMeanModel(sd, n)
        return model, (lambda t: np.array([t])), (lambda z: z), (lambda th: th)
    if args.model == "two-sample":
        model = TwoSampleDifferenceModel(sd, n)
        mu_b = 0.0 if args.mean_b is None else args.mean_b
        return (model, (lambda t: np.array([t, mu_b])),
                (lambda z: TwoSampleData(z[:n], z[n:])), (lambda th: th[..., :1]))
    heights = np.resize(np.asarray(args.heights or DEFAULT_HEIGHTS, dtype=float), n)
    if len(set(heights.tolist())) < 2:
        raise UsageError("gravity calibration needs --n covering at least 2 distinct heights")
    model = GravityRegressionModel(tuple(heights.tolist()), 1)
    return (model, (lambda t: np.array([t, args.beta0, sd])),
            (lambda z: GravityData(heights, z)), (lambda th: th[..., :1]))


def cmd_calibrate(args) -> Outcome:
    (hyp,) = _hypotheses(args)
    if args.theta_grid is None:
        raise UsageError("calibrate needs --theta-grid")
    n = args.n or 1
    model, full, to_dataset, project = _calibration_setup(args, n)
    test = AgnosticTest(hyp.region, make_estimator(args))
    report = estimate_levels(test, model, [full(t) for t in args.theta_grid], args.n_sims, args.seed,
                             to_dataset=to_dataset, project=project, threads=args.threads)
    if args.fcp_prior_sd is not None:
        if not args.fcp_prior_sd > 0:
            raise UsageError("--fcp-prior-sd must be positive")
        mean, sd = args.fcp_prior_mean, args.fcp_prior_sd

        def prior(rng: np.random.Generator, size: int) -> np.ndarray:
            t = mean + sd * rng.standard_normal(size)
            return np.stack([full(v) for v in t])

        fcp = estimate_fcp(test, model, prior, args.n_sims, args.seed, to_dataset=to_dataset,
                           project=project, threads=args.threads)
        report.gamma_hat = fcp.value
        report.mc_std_errors["gamma_hat"] = fcp.std_error
    result = report.to_dict()
    result["hypothesis"] = {"text": hyp.text, "region": hyp.region.to_dict()}
    result["estimator"] = _estimator_kind(args)
    result["level"] = _level(args)
    result["observations_per_dataset"] = n
    names = list(model.param_names)
    header = (*names, "in_null", "reject_rate", "accept_rate", "type3_rate")
    return Outcome(result, header, report.csv_rows())


COMMANDS = {"test": cmd_test, "pragmatic": cmd_pragmatic, "sweep": cmd_sweep, "calibrate": cmd_calibrate}


# -- output -----------------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        if math.isnan(f):
            return None
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def resolved_config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in _UNSERIALIZED}
    cfg["level"] = _level(args)
    cfg.pop("alpha", None)
    return cfg


def render(args, outcome: Outcome) -> str:
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(outcome.header)
        for row in outcome.rows:
            w.writerow(["" if v is None else (repr(float(v)) if isinstance(v, (float, np.floating)) else v)
                        for v in row])
        return buf.getvalue()
    envelope = {
        "command": args.command,
        "version": __version__,
        "config": resolved_config(args),
        "result": outcome.result,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }
    return json.dumps(_jsonable(envelope), indent=2, sort_keys=True, allow_nan=False) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
        outcome = COMMANDS[args.command](args)
        text = render(args, outcome)
        if args.output:
            try:
                with open(args.output, "w", encoding="utf-8", newline="") as fh:
                    fh.write(text)
            except OSError as exc:
                raise UsageError(f"cannot write {args.output}: {exc.strerror}") from None
        else:
            sys.stdout.write(text)
        return EXIT_OK
    except DataError as exc:
        print(f"tern: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (UsageError, HypothesisSyntaxError, RegionError) as exc:
        print(f"tern: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"tern: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
