"""Batch command-line front end.

    lctlab <subcommand> --job job.json [--format json|csv|svg]
                        [--tol 1e-12] [--window 64] [--out path] [--timing]

The job file declares the ring, named objects and default arguments (see
jobspec); the subcommand selects the computation. Exact rationals are
emitted as "p/q" strings; approximate values carry the tolerance used and,
where available, a certified interval. Output is deterministic: identical
job files produce byte-identical output (timing is opt-in because it
necessarily breaks that guarantee).

Exit codes: 0 success, 1 input error, 2 computation error,
3 property-suite failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import checks as checks_mod
from .asymptotics import enlarge, fekete_limit
from .errors import InputError, LctlabError
from .jobspec import (
    COMMANDS,
    JobError,
    JobSpec,
    format_rational,
    parse_job,
    parse_rational,
    resolve_arg,
)
from .multiplier import (
    arn_ideal,
    arn_monomial,
    arn_monomial_interval,
    asymptotic_system,
    computing_valuations,
    jumping_numbers,
    lct_ideal,
    multiplier_ideal,
    E_ALL,
)
from .newton import (
    GradedSequence,
    MonomialIdeal,
    MonomialValuation,
    OracleRegion,
    PolyhedralRegion,
    val_on_sequence_windowed,
)
from .render import render_region_svg, render_steps_svg
from .valspace2d import Polynomial2, PuiseuxData, SkpChain, chi_trace, fan_refine


def _encode(value):
    """Exact-first JSON encoding: Fractions as 'p/q', floats as floats."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return value if value not in (float("inf"), float("-inf")) else "inf"
    if isinstance(value, MonomialIdeal):
        return {"gens": [list(u) for u in value.gens], "zero": value.is_zero}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    return value


def _exactness(seq: GradedSequence) -> dict:
    region = seq.limit_region()
    if isinstance(region, OracleRegion):
        return {"approximate": True, "tolerance": region.tol}
    if not region.exact:
        return {"approximate": True, "reason": "windowed inner approximation"}
    return {"approximate": False}


def _u_arg(spec: JobSpec):
    u = spec.args.get("u", [0] * spec.nvars)
    if not isinstance(u, list) or len(u) != spec.nvars \
            or not all(isinstance(e, int) and e >= 0 for e in u):
        raise JobError("/run/args/u", f"need {spec.nvars} nonnegative ints")
    return tuple(u)


def _q_arg(spec: JobSpec):
    if "q" in spec.args:
        return resolve_arg(spec, "q", MonomialIdeal, required=True)
    return MonomialIdeal.unit(spec.nvars)


def _window(spec: JobSpec, opts) -> int:
    return int(spec.args.get("window", opts.window))


# -- subcommand implementations ---------------------------------------------

def _cmd_lct(spec, opts):
    seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
    q = _q_arg(spec)
    value = lct_ideal(seq, q, _window(spec, opts))
    arn = arn_ideal(seq, q, _window(spec, opts))
    return {"lct": value, "arn": arn, **_exactness(seq)}


def _cmd_arn(spec, opts):
    seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
    window = _window(spec, opts)
    if "u" in spec.args:
        u = _u_arg(spec)
        value = arn_monomial(seq, u, window)
        result = {"arn": value, "u": list(u), **_exactness(seq)}
        if result["approximate"]:
            lo, hi = arn_monomial_interval(seq, u, window)
            result["interval"] = [str(lo), str(hi)]
        return result
    q = _q_arg(spec)
    return {"arn": arn_ideal(seq, q, window), **_exactness(seq)}


def _cmd_multiplier(spec, opts):
    seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
    lam = parse_rational(spec.args.get("lambda", 1), "/run/args/lambda")
    ideal = multiplier_ideal(seq, lam, _window(spec, opts))
    return {"lambda": lam, "ideal": ideal, **_exactness(seq)}


def _cmd_jumps(spec, opts):
    seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
    lam_max = parse_rational(spec.args.get("max", 2), "/run/args/max")
    report = jumping_numbers(seq, lam_max, _window(spec, opts))
    return {"max": lam_max, "jumps": list(report.jumps),
            "ideals_between": list(report.ideals_between),
            "approximate": not report.exact}


def _cmd_region(spec, opts):
    seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
    region = seq.limit_region(_window(spec, opts))
    if isinstance(region, PolyhedralRegion):
        return {"vertices": [list(v) for v in region.vertices],
                "facets": [list(f) for f in region.facets()],
                **_exactness(seq)}
    return {"oracle": region.name, "tolerance": region.tol, "approximate": True}


def _cmd_valuations(spec, opts):
    seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
    u = _u_arg(spec)
    directions = computing_valuations(seq, u, _window(spec, opts))
    if directions == E_ALL:
        return {"u": list(u), "directions": "all", **_exactness(seq)}
    out = []
    for d in directions:
        out.append(list(d.alpha) if isinstance(d, MonomialValuation) else list(d))
    return {"u": list(u), "directions": out, **_exactness(seq)}


def _cmd_asym(spec, opts):
    seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
    grid = spec.args.get("t_grid", [1, 2])
    if not isinstance(grid, list) or not grid:
        raise JobError("/run/args/t_grid", "need a nonempty list of parameters")
    sys_ = asymptotic_system(seq, _window(spec, opts))
    samples = []
    for i, t in enumerate(grid):
        t = parse_rational(t, f"/run/args/t_grid/{i}")
        samples.append({"t": t, "ideal": sys_.ideal_at(t)})
    return {"samples": samples, **_exactness(seq)}


def _cmd_fekete(spec, opts):
    seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
    val = resolve_arg(spec, "valuation", MonomialValuation, required=True)
    window = _window(spec, opts)
    best, argmin, trace = val_on_sequence_windowed(val, seq, window)
    return {"value": best, "argmin": argmin, "window": window,
            "trace": [[m, v] for m, v in trace], **_exactness(seq)}


def _cmd_enlarge(spec, opts):
    seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
    p = spec.args.get("p", 1)
    if not isinstance(p, int) or p < 1:
        raise JobError("/run/args/p", "p must be a positive integer")
    depth = spec.args.get("depth", 4)
    enlarged = enlarge(seq, p)
    return {"p": p,
            "ideals": [{"j": j, "ideal": enlarged.ideal_at(j)}
                       for j in range(1, depth + 1)],
            **_exactness(seq)}


def _cmd_chain(spec, opts):
    source = None
    if "chain" in spec.args:
        source = resolve_arg(spec, "chain", SkpChain, required=True)
    elif "puiseux" in spec.args:
        source = resolve_arg(spec, "puiseux", PuiseuxData, required=True)
    else:
        raise JobError("/run/args", "need a 'chain' or 'puiseux' argument")
    levels = min(int(spec.args.get("levels", source.max_level)), source.max_level)
    rows = []
    for n in range(levels + 1):
        rows.append({
            "level": n,
            "log_discrepancy": source.log_discrepancy_level(n),
            "lattice": source.lattice_at(n),
            "retraction": list(source.retraction(n)),
        })
    result = {"levels": rows}
    if "sequence" in spec.args:
        seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
        if "poly" in spec.args:
            q = resolve_arg(spec, "poly", Polynomial2, required=True)
        else:
            q = _q_arg(spec)
        trace = chi_trace(source, seq, q, levels, _window(spec, opts))
        result["chi"] = [{"level": r.level, "chi": r.chi, "seq_value": r.seq_value,
                          "q_value": r.q_value} for r in trace.rows]
        result["strict_decrease_from"] = trace.strict_decrease_from
    return result


def _cmd_fan(spec, opts):
    alpha = spec.args.get("alpha")
    if not isinstance(alpha, list) or len(alpha) != 2 \
            or not all(isinstance(a, int) and a >= 0 for a in alpha):
        raise JobError("/run/args/alpha", "need a pair of nonnegative ints")
    fan = fan_refine(tuple(alpha))
    return {"alpha": alpha, "rays": [list(r) for r in fan.rays]}


def _cmd_check(spec, opts):
    names = spec.args.get("suites") if spec else None
    results = checks_mod.run_checks(names)
    fails = [name for name, ok, _ in results if not ok]
    return {"results": [{"suite": n, "passed": ok, "detail": d}
                        for n, ok, d in results],
            "failed": fails}


_HANDLERS = {
    "lct": _cmd_lct,
    "arn": _cmd_arn,
    "multiplier": _cmd_multiplier,
    "jumps": _cmd_jumps,
    "region": _cmd_region,
    "valuations": _cmd_valuations,
    "asym": _cmd_asym,
    "fekete": _cmd_fekete,
    "enlarge": _cmd_enlarge,
    "chain": _cmd_chain,
    "fan": _cmd_fan,
    "check": _cmd_check,
}


# -- output formatting -------------------------------------------------------

def _to_csv(result: dict) -> str:
    """Flatten list-of-dict payloads to CSV; scalars become a one-row table."""
    rows_key = next((k for k in ("samples", "levels", "chi", "jumps", "results",
                                 "trace", "ideals")
                     if k in result and isinstance(result[k], list)), None)
    lines = []
    if rows_key and result[rows_key] and isinstance(result[rows_key][0], dict):
        header = sorted(result[rows_key][0])
        lines.append(",".join(header))
        for row in result[rows_key]:
            lines.append(",".join(_csv_cell(row.get(h)) for h in header))
    elif rows_key:
        lines.append(rows_key)
        for row in result[rows_key]:
            lines.append(_csv_cell(row))
    else:
        header = sorted(result)
        lines.append(",".join(header))
        lines.append(",".join(_csv_cell(result[h]) for h in header))
    return "\n".join(lines) + "\n"


def _csv_cell(value) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return f"{value:.12g}~"
    if isinstance(value, MonomialIdeal):
        return '"' + " ".join(",".join(map(str, u)) for u in value.gens) + '"'
    if isinstance(value, (list, tuple)):
        return '"' + " ".join(str(_csv_cell(v)).strip('"') for v in value) + '"'
    return str(value)


def _to_svg(spec: JobSpec, command: str, result: dict, opts) -> str:
    if command in ("region", "lct", "arn", "multiplier", "jumps"):
        seq = resolve_arg(spec, "sequence", GradedSequence, required=True)
        region = seq.limit_region(opts.window)
        if not isinstance(region, PolyhedralRegion):
            raise InputError("SVG rendering needs a polyhedral region")
        u = _u_arg(spec)
        entry = arn_monomial(seq, u, opts.window)
        return render_region_svg(region, ray_through=u, entry_param=entry)
    if command == "chain" and "chi" in result:
        pairs = [(row["level"], float(row["chi"])) for row in result["chi"]]
        return render_steps_svg(pairs, title="chi trace")
    if command == "fekete":
        pairs = [(m, float(v)) for m, v in result["trace"] if v != float("inf")]
        return render_steps_svg(pairs, title="scaled values")
    raise InputError(f"no SVG rendering for command {command!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lctlab",
        description="Exact singularity invariants of monomial ideal sequences")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--job", help="JSON job file", default=None)
        p.add_argument("--format", choices=("json", "csv", "svg"), default="json")
        p.add_argument("--tol", type=float, default=1e-12)
        p.add_argument("--window", type=int, default=64)
        p.add_argument("--out", default=None)
        p.add_argument("--timing", action="store_true")
    opts = parser.parse_args(argv)

    started = time.perf_counter()
    try:
        if opts.job is not None:
            with open(opts.job, "r", encoding="utf-8") as fh:
                spec = parse_job(fh.read())
        elif opts.command == "check":
            spec = None
        else:
            raise InputError("--job is required for this subcommand")
        if spec is not None and spec.command not in (None, opts.command):
            raise JobError("/run/cmd",
                           f"job file says {spec.command!r}, CLI says {opts.command!r}")
        result = _HANDLERS[opts.command](spec, opts)
    except (JobError, InputError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except LctlabError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1

    envelope = {
        "command": opts.command,
        "args": spec.args if spec else {},
        "result": _encode(result),
    }
    if spec is not None and spec.warnings:
        envelope["warnings"] = spec.warnings
    if opts.timing:
        envelope["timing_seconds"] = round(time.perf_counter() - started, 6)

    if opts.format == "json":
        text = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    elif opts.format == "csv":
        text = _to_csv(result)
    else:
        try:
            text = _to_svg(spec, opts.command, result, opts)
        except (JobError, InputError) as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return 1

    if opts.out:
        with open(opts.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if opts.command == "check" and result.get("failed"):
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
