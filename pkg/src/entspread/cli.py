"""Command-line front end: parse state specs, dispatch to the library, emit JSON/CSV.

No numerical logic lives here; every command is a thin wrapper over the
library so that CLI output can be checked against direct calls.  Exit codes:
0 ok, 2 parse/usage, 3 domain error, 4 resource guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict

from .bounds import alpha_beta_bound, smoothed_bound, smoothing_level
from .entropy import delta as spread0
from .entropy import renyi
from .errors import DomainError, ResourceGuardError, SpecParseError
from .majorization import locc_feasible
from .protocols import YIELD_NOTE, concentration_simulate, embezzler_bound_check
from .smoothing import delta_ab_eps, delta_eps, s0_eps, sinf_eps
from .spectrum import Spectrum, embezzler_spectrum, group, parse_state_spec, realize, uniform_spectrum
from .tensor_power import clt_delta_prediction, clt_params, power_grouped_spectrum

_EPR = uniform_spectrum(2)  # single maximally entangled pair: zero spread source

SCAN_COLUMNS = {
    "dilution": (
        "n", "s0_eps", "sinf_eps", "delta_eps", "bound_qubits",
        "bound_cbits", "naive_cbits", "clt_prediction",
    ),
    "embezzler": ("n", "delta_eps", "paper_floor", "holds", "bound_cbits"),
    "concentration": ("n", "trials", "mean_yield", "yield_rate", "comm_bits"),
}


def _fmt(x) -> str:
    """Scalar to text: floats at 12 significant digits, booleans lowercase."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _jsonify(obj):
    """Round floats to 12 significant digits; infinities become strings."""
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return float(f"{obj:.12g}")
    return obj


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_record(record: dict, args) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        keys = [k for k, v in record.items() if not isinstance(v, (dict, list))]
        writer.writerow(keys)
        writer.writerow([_fmt(record[k]) for k in keys])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(json.dumps(_jsonify(record), indent=2) + "\n", args.out)


def _emit_rows(columns, rows, args, header_obj=None) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
        _emit(buf.getvalue(), args.out)
    else:
        payload = dict(header_obj or {})
        payload["rows"] = rows
        _emit(json.dumps(_jsonify(payload), indent=2) + "\n", args.out)


def _order(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def _alpha_repr(a: float):
    return "inf" if math.isinf(a) else a


def _realized(text: str):
    return realize(parse_state_spec(text))


def _witness_summary(w) -> dict:
    return {
        "start_group": w.start_group,
        "end_group": w.end_group,
        "copies_in_start_log2": float(math.log2(w.copies_in_start)),
        "copies_in_end_log2": float(math.log2(w.copies_in_end)),
        "mass": w.mass,
        "count_log2": w.count_log2,
        "max_log2_value": w.max_log2_value,
    }


def cmd_entropy(args) -> int:
    s = _realized(args.state)
    value = renyi(s, args.alpha)
    _emit_record(
        {"state": args.state, "alpha": _alpha_repr(args.alpha), "value_bits": value}, args
    )
    return 0


def cmd_delta(args) -> int:
    s = _realized(args.state)
    if (args.alpha is None) != (args.beta is None):
        raise DomainError("orders must be given together: both --alpha and --beta")
    if args.alpha is not None:
        mode = args.mode
        if mode is None:
            mode = "exact" if isinstance(s, Spectrum) and s.rank <= 20 else "window"
        value = delta_ab_eps(s, args.alpha, args.beta, args.eps, mode=mode)
        _emit_record(
            {
                "state": args.state,
                "eps": args.eps,
                "alpha": _alpha_repr(args.alpha),
                "beta": _alpha_repr(args.beta),
                "mode": mode,
                "value_bits": value,
            },
            args,
        )
        return 0
    value, w = delta_eps(s, args.eps, return_witness=True)
    _emit_record(
        {
            "state": args.state,
            "eps": args.eps,
            "value_bits": value,
            "witness": _witness_summary(w),
        },
        args,
    )
    return 0


def cmd_bound(args) -> int:
    source = _realized(args.source)
    target = _realized(args.target)
    if not isinstance(source, Spectrum):
        raise DomainError("the source spectrum must be dense (its exact spread is needed)")
    if (args.alpha is None) != (args.beta is None):
        raise DomainError("orders must be given together: both --alpha and --beta")
    if args.alpha is not None:
        if args.channel != "qubit":
            raise DomainError("the generalized-order bound is stated for qubit channels")
        if not isinstance(target, Spectrum):
            raise DomainError("the generalized-order bound needs a dense target (rank <= 20)")
        report = alpha_beta_bound(source, target, args.eps, args.alpha, args.beta)
    else:
        report = smoothed_bound(source, target, args.eps, channel=args.channel)
    _emit_record(report.to_dict(), args)
    return 0


def cmd_feasible(args) -> int:
    source = _realized(args.source)
    target = _realized(args.target)
    if not isinstance(source, Spectrum) or not isinstance(target, Spectrum):
        raise DomainError("majorization needs dense spectra on both sides")
    ok = locc_feasible(source, target)
    d = max(source.rank, target.rank)
    pf = [float(sum(source.probs[: i + 1])) for i in range(d)]
    pt = [float(sum(target.probs[: i + 1])) for i in range(d)]
    if args.format == "csv":
        rows = [
            {"index": i + 1, "prefix_from": pf[i], "prefix_to": pt[i], "ok": pf[i] <= pt[i] + 1e-12}
            for i in range(d)
        ]
        _emit_rows(("index", "prefix_from", "prefix_to", "ok"), rows, args)
    else:
        _emit_record(
            {
                "from": args.source,
                "to": args.target,
                "feasible": ok,
                "prefix_from": pf,
                "prefix_to": pt,
            },
            args,
        )
    return 0


def cmd_power(args) -> int:
    base = _realized(args.state)
    if not isinstance(base, Spectrum):
        raise DomainError("power command needs a dense base spectrum")
    g = power_grouped_spectrum(base, args.n)
    record = {
        "state": args.state,
        "n": args.n,
        "num_groups": g.num_groups,
        "s0": renyi(g, 0.0),
        "s1": renyi(g, 1.0),
        "sinf": renyi(g, math.inf),
        "delta0": spread0(g),
    }
    try:
        params = clt_params(base)
        record["clt_mean_bits"] = params.mean_bits
        record["clt_sigma_bits"] = params.sigma_bits
        if args.delta_level is not None:
            record["clt_prediction"] = clt_delta_prediction(base, args.n, args.delta_level)
    except DomainError:
        record["clt_mean_bits"] = None
        record["clt_sigma_bits"] = None
    _emit_record(record, args)
    return 0


def cmd_concentrate(args) -> int:
    base = _realized(args.state)
    if not isinstance(base, Spectrum):
        raise DomainError("concentration needs a dense base spectrum")
    stats = concentration_simulate(base, args.n, args.trials, seed=args.seed)
    record = asdict(stats)
    record["histogram"] = {str(k): v for k, v in stats.histogram.items()}
    _emit_record(record, args)
    return 0


def _scan_values(args) -> list[int]:
    if args.n_min < 1 or args.n_max < args.n_min:
        raise DomainError("need 1 <= n-min <= n-max")
    ns = []
    if args.n_step is not None:
        if args.n_step < 1:
            raise DomainError("linear step must be a positive integer")
        ns = list(range(args.n_min, args.n_max + 1, args.n_step))
    else:
        factor = args.n_factor
        if factor <= 1.0:
            raise DomainError("geometric factor must exceed 1")
        x = args.n_min
        while x <= args.n_max:
            ns.append(x)
            x = max(x + 1, int(round(x * factor)))
    return ns


def _dilution_row(base: Spectrum, n: int, eps: float) -> dict:
    g = power_grouped_spectrum(base, n)
    cls = smoothed_bound(_EPR, g, eps, channel="classical")
    qub = smoothed_bound(_EPR, g, eps, channel="qubit")
    s0 = s0_eps(g, eps)
    try:
        clt = clt_delta_prediction(base, n, smoothing_level(eps))
    except DomainError:
        clt = math.nan
    return {
        "n": n,
        "s0_eps": s0,
        "sinf_eps": sinf_eps(g, eps),
        "delta_eps": delta_eps(g, eps),
        "bound_qubits": qub.bound_bits,
        "bound_cbits": cls.bound_bits,
        "naive_cbits": 2 * math.ceil(s0),
        "clt_prediction": clt,
    }


def _embezzler_row(n: int, delta_level: float) -> dict:
    check = embezzler_bound_check(n, delta_level)
    eps_equiv = delta_level**8 / 4.0
    cls = smoothed_bound(_EPR, group(embezzler_spectrum(n)), eps_equiv, channel="classical")
    return {
        "n": n,
        "delta_eps": check.delta_eps_exact,
        "paper_floor": check.paper_floor,
        "holds": check.holds,
        "bound_cbits": cls.bound_bits,
    }


def _concentration_row(base: Spectrum, n: int, trials: int, seed: int) -> dict:
    stats = concentration_simulate(base, n, trials, seed=seed)
    return {
        "n": n,
        "trials": trials,
        "mean_yield": stats.mean_yield_bits,
        "yield_rate": stats.yield_rate,
        "comm_bits": stats.comm_bits,
    }


def cmd_scan(args) -> int:
    ns = _scan_values(args)
    metadata: dict = {"experiment": args.experiment}
    if args.experiment == "dilution":
        if args.state is None:
            raise DomainError("dilution scan needs --state")
        base = _realized(args.state)
        if not isinstance(base, Spectrum):
            raise DomainError("dilution scan needs a dense base spectrum")
        work = lambda n: _dilution_row(base, n, args.eps)  # noqa: E731
        try:
            metadata["clt_sigma_bits"] = clt_params(base).sigma_bits
        except DomainError:
            metadata["clt_sigma_bits"] = None
        metadata["envelope_note"] = "lower bound scales as c*sqrt(n); fit c from the rows"
        metadata["epsilon"] = args.eps
    elif args.experiment == "embezzler":
        work = lambda n: _embezzler_row(n, args.delta)  # noqa: E731
        metadata["delta"] = args.delta
        metadata["epsilon_equivalent"] = args.delta**8 / 4.0
    else:
        if args.state is None:
            raise DomainError("concentration scan needs --state")
        base = _realized(args.state)
        if not isinstance(base, Spectrum):
            raise DomainError("concentration scan needs a dense base spectrum")
        work = lambda n: _concentration_row(base, n, args.trials, args.seed)  # noqa: E731
        metadata["trials"] = args.trials
        metadata["seed"] = args.seed
        metadata["note"] = YIELD_NOTE
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(work, ns))
    else:
        rows = [work(n) for n in ns]
    rows.sort(key=lambda r: r["n"])
    _emit_rows(SCAN_COLUMNS[args.experiment], rows, args, header_obj={"metadata": metadata})
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="PRNG stream selector")
    common.add_argument("--threads", type=int, default=1, help="worker threads for scans")

    parser = argparse.ArgumentParser(
        prog="entspread",
        description="Smoothed spread measures of Schmidt spectra and communication lower bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", parents=[common], help="Renyi entropy of a spectrum")
    p.add_argument("--state", required=True, help="state spec, e.g. uniform:4 or list:0.5,0.5")
    p.add_argument("--alpha", type=_order, required=True, help="Renyi order in [0, inf]")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("delta", parents=[common], help="smoothed spread of a spectrum")
    p.add_argument("--state", required=True)
    p.add_argument("--eps", type=float, required=True, help="smoothing level in [0, 1)")
    p.add_argument("--alpha", type=_order, default=None, help="lower order (with --beta)")
    p.add_argument("--beta", type=_order, default=None, help="upper order (with --alpha)")
    p.add_argument("--mode", choices=("exact", "window"), default=None,
                   help="subset search mode for generalized orders")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("bound", parents=[common], help="communication lower bound")
    p.add_argument("--from", dest="source", required=True, help="source state spec")
    p.add_argument("--to", dest="target", required=True, help="target state spec")
    p.add_argument("--eps", type=float, required=True, help="trace-distance tolerance, [0, 1/4)")
    p.add_argument("--channel", choices=("qubit", "classical"), default="qubit")
    p.add_argument("--alpha", type=_order, default=None)
    p.add_argument("--beta", type=_order, default=None)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("feasible", parents=[common], help="LOCC majorization test")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("power", parents=[common], help="exact tensor-power spectrum summary")
    p.add_argument("--state", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta-level", type=float, default=None)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("concentrate", parents=[common], help="simulate entanglement concentration")
    p.add_argument("--state", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.set_defaults(func=cmd_concentrate)

    p = sub.add_parser("scan", parents=[common], help="n-scan of an experiment, CSV or JSON")
    p.add_argument("--experiment", choices=("dilution", "embezzler", "concentration"), required=True)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-factor", type=float, default=2.0, help="geometric step (default)")
    p.add_argument("--n-step", type=int, default=None, help="linear step, overrides the factor")
    p.add_argument("--state", default=None, help="base spectrum for dilution/concentration")
    p.add_argument("--eps", type=float, default=1e-6, help="dilution tolerance")
    p.add_argument("--delta", type=float, default=0.1, help="embezzler smoothing level")
    p.add_argument("--trials", type=int, default=100, help="concentration trials per n")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
