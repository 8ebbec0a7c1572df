"""Command-line front end: ``curlicue {trace,diagnose,curvature,cf,section}``.

Exit codes: 0 success, 2 configuration error, 3 precondition failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io
from .circle_maps import CircleLift, iterate_orbit, parse_map, parse_number
from .core import birkhoff_stats, build_curlicue, weyl_curve
from .curvature import (
    empirical_distribution,
    formula_mean,
    periodicity_test,
    radius_series,
    range_coverage,
    recurrence_test,
)
from .diagnostics import (
    CLOSURE_TOL_EXACT,
    CLOSURE_TOL_FLOAT,
    classify_periodic_case,
    denjoy_koksma_check,
    detect_period,
    growth_exponent_fit,
    reconstruct_section,
)
from .errors import ConfigError, PreconditionError
from .rotation import cf_expand, classify_arithmetic_type, closest_return_denominators, reduce_unit

EXIT_OK, EXIT_CONFIG, EXIT_PRECONDITION, EXIT_IO = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _count(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _real(text: str) -> float:
    try:
        return float(parse_number(text))
    except ConfigError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError(f"entries must be positive integers: {text!r}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curlicue", description="Curlicues generated by circle homeomorphisms.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def orbit_args(sp, n_default=1000):
        sp.add_argument("--config", help="key=value file; command-line flags take precedence")
        sp.add_argument("--map", required=False, help="rotation:<rho> | conj-pl:<rho> | conj-quad:<rho> | arnold:<omega>:<K>")
        sp.add_argument("--x0", type=_real, default=0.0)
        sp.add_argument("--n", type=_count, default=n_default, help="number of iterates")

    t = sub.add_parser("trace", help="build the curve and write CSV/SVG")
    orbit_args(t)
    t.add_argument("--q", type=_int_list, default=[1], help="comma-separated multipliers for Gamma(q u)")
    t.add_argument("--csv")
    t.add_argument("--svg")
    t.add_argument("--json")

    d = sub.add_parser("diagnose", help="polygon / Denjoy-Koksma / growth / section report")
    orbit_args(d, 4096)
    d.add_argument("--period", type=_count)
    d.add_argument("--max-period", type=_count, default=64)
    d.add_argument("--r", type=_real, help="Diophantine type for the sup|z_n|/(n^(1-1/r) log n) statistic")
    d.add_argument("--checkpoints", type=_int_list)
    d.add_argument("--dk-c", choices=["auto", "zero", "estimate"], default="auto")
    d.add_argument("--out", default="-")

    c = sub.add_parser("curvature", help="radius-of-curvature series")
    orbit_args(c, 10000)
    c.add_argument("--period", type=_count)
    c.add_argument("--bins", type=_count, default=50)
    c.add_argument("--delta", type=_real, default=0.01)
    c.add_argument("--epsilon", type=_real, help="recurrence tolerance (enables the recurrence test)")
    c.add_argument("--csv")
    c.add_argument("--json", default="-")

    f = sub.add_parser("cf", help="continued fraction of a rotation number")
    f.add_argument("--config")
    f.add_argument("--value", help="decimal, p/q, ln2, pi or golden; reduced mod 1")
    f.add_argument("--depth", type=_count, default=40)
    f.add_argument("--qmax", type=_count, default=10 ** 6)
    f.add_argument("--epsilon", type=_real, default=1.0)
    f.add_argument("--out", default="-")

    s = sub.add_parser("section", help="sorted (theta, z) samples of the invariant section")
    orbit_args(s, 1000)
    s.add_argument("--csv")
    s.add_argument("--json", default="-")
    return p


@dataclass
class RunConfig:
    command: str
    values: dict = field(default_factory=dict)

    def __getattr__(self, key):
        try:
            return self.values[key]
        except KeyError:
            raise AttributeError(key) from None


def _read_config_file(path: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def parse_config(argv: list[str]) -> RunConfig:
    """Parse ``argv``; a ``--config`` file supplies defaults that flags override."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        file_vals = _read_config_file(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
        file_argv = []
        for key, value in file_vals.items():
            if key not in actions:
                raise ConfigError(f"unknown config key {key!r} for '{args.command}'")
            file_argv += [actions[key].option_strings[-1], value]
        base = parser.parse_args([args.command] + file_argv)
        explicit = parser.parse_args([args.command] + [a for a in argv[1:]])
        merged = vars(base)
        given = _explicit_dests(sub, argv[1:])
        for k, v in vars(explicit).items():
            if k in given:
                merged[k] = v
        args = argparse.Namespace(**merged)
    vals = vars(args)
    if vals["command"] != "cf" and not vals.get("map"):
        raise ConfigError("--map is required")
    if vals["command"] == "cf" and not vals.get("value"):
        raise ConfigError("--value is required")
    if vals.get("map"):
        parse_map(vals["map"])  # validate early
    return RunConfig(vals.pop("command"), vals)


def _explicit_dests(sub: argparse.ArgumentParser, argv: list[str]) -> set[str]:
    flags = {}
    for a in sub._actions:
        for opt in a.option_strings:
            flags[opt] = a.dest
    out = set()
    for tok in argv:
        name = tok.split("=", 1)[0]
        if name in flags:
            out.add(flags[name])
    return out


# ---------------------------------------------------------------- commands

def _suffixed(path: str, q: int, multi: bool) -> str:
    if not multi:
        return path
    p = Path(path)
    return str(p.with_name(f"{p.stem}_q{q}{p.suffix}"))


def cmd_trace(cfg: RunConfig) -> int:
    lift = parse_map(cfg.map)
    orbit = iterate_orbit(lift, cfg.x0, cfg.n)
    curves = weyl_curve(orbit, cfg.q)
    multi = len(curves) > 1
    summary = {}
    for q, curve in curves.items():
        if cfg.csv:
            io.write_vertices_csv(curve, _suffixed(cfg.csv, q, multi))
        if cfg.svg:
            io.render_svg(curve, _suffixed(cfg.svg, q, multi))
        summary[str(q)] = {
            "z_last": curve.z[-1],
            "sup_abs_z": float(np.max(np.abs(curve.z))),
            "average": curve.z[-1] / max(curve.n, 1),
        }
    if cfg.json:
        io.write_report({"meta": _meta(cfg), "curves": summary}, cfg.json)
    return EXIT_OK


def _meta(cfg: RunConfig) -> dict:
    return {"map": cfg.map, "x0": cfg.x0, "n": cfg.n, "seed": None}


def _rho_of(lift: CircleLift, orbit) -> float:
    if lift.rotation_number is not None:
        return float(lift.rotation_number)
    return float((orbit.winding[-1] - orbit.winding[0]) + (orbit.frac[-1] - orbit.frac[0])) / orbit.n


def _looks_bounded(curve) -> bool:
    a = np.abs(curve.z)
    half = float(a[: len(a) // 2 + 1].max())
    return float(a.max()) <= 1.5 * half + 1.0


def cmd_diagnose(cfg: RunConfig) -> int:
    lift = parse_map(cfg.map)
    orbit = iterate_orbit(lift, cfg.x0, cfg.n)
    curve = build_curlicue(orbit)
    stats = birkhoff_stats(curve)
    notes = []

    polygon = None
    q = cfg.period
    if q is None and isinstance(lift.rotation_number, Fraction):
        q = lift.rotation_number.denominator
    tol = CLOSURE_TOL_EXACT if lift.rotation_number is not None else CLOSURE_TOL_FLOAT
    if q is None and lift.is_rational is not False:
        q = detect_period(orbit, cfg.max_period, tol)
    start = cfg.x0
    if q is None and lift.rotation_number is None:
        # transient before an attracting cycle: look for a period on the tail
        m = orbit.n // 2
        q = detect_period(orbit.tail(m), cfg.max_period, tol)
        if q is not None:
            start = float(orbit.frac[m])
            notes.append(f"polygon classified on the tail of the orbit, from u_{m} mod 1")
    if q is not None:
        try:
            rep = classify_periodic_case(lift, start, q, closure_tol=tol)
        except PreconditionError:
            if cfg.period is not None:
                raise
            notes.append(f"orbit of x0 is not {q}-periodic; polygon classification skipped")
        else:
            polygon = {
                "q": rep.q,
                "classification": rep.classification,
                "average": rep.average,
                "drift": rep.drift,
                "start": start,
            "schlafli": list(rep.schlafli) if rep.schlafli else None,
                "displacements": list(rep.displacements),
                "closure_tol": rep.closure_tol,
            }

    dk = None
    if lift.is_rational is False:
        cf = cf_expand(float(reduce_unit(lift.rotation_number)))
        mode = cfg.dk_c
        if mode == "auto":
            mode = "zero" if _looks_bounded(curve) else "estimate"
        c = 0j if mode == "zero" else stats.c
        rep = denjoy_koksma_check(curve, cf, c)
        dk = {
            "c_mode": mode,
            "c": rep.c,
            "q": list(rep.q),
            "residuals": list(rep.residuals),
            "bound": rep.bound,
            "passed": rep.all_passed,
            "decreasing_trend": rep.decreasing_trend,
        }
    else:
        notes.append("Denjoy-Koksma check needs a known irrational rotation number")

    growth = None
    if curve.n >= 128:
        g = growth_exponent_fit(curve, cfg.checkpoints, r=cfg.r, irrational=lift.is_rational is False)
        growth = {
            "checkpoints": list(g.checkpoints),
            "abs_z": list(g.abs_z),
            "diameter": list(g.diameters),
            "n_over_diameter": list(g.ratios),
            "beta": g.beta,
            "const": g.const,
            "fit_residual": g.fit_residual,
            "fit_range": list(g.fit_range),
            "verdict": g.verdict,
            "verdict_reason": g.verdict_reason,
            "sup_over_log": g.sup_over_log,
            "sup_over_power_log": g.sup_over_power_log,
            "thresholds": g.thresholds,
        }

    section = None
    if lift.is_rational is False:
        try:
            s = reconstruct_section(curve, orbit)
        except PreconditionError as e:
            notes.append(str(e))
        else:
            section = _section_summary(s)

    io.write_report(
        {
            "meta": dict(_meta(cfg), rotation_number=_rho_of(lift, orbit), birkhoff_average=stats.c, notes=notes),
            "polygon": polygon,
            "denjoy_koksma": dk,
            "growth": growth,
            "section": section,
        },
        cfg.out,
    )
    return EXIT_OK


def _section_summary(s) -> dict:
    return {
        "samples": len(s.theta),
        "max_neighbour_jump": s.max_jump,
        "max_angular_gap": s.max_gap,
        "closure_defect": s.closure_defect,
        "circle_center": s.center,
        "circle_radius": s.radius,
        "circle_deviation": s.circle_deviation,
        "warnings": list(s.warnings),
    }


def cmd_curvature(cfg: RunConfig) -> int:
    lift = parse_map(cfg.map)
    orbit = iterate_orbit(lift, cfg.x0, cfg.n)
    series = radius_series(orbit)
    if cfg.csv:
        io.write_curvature_csv(series, cfg.csv)
    rho = _rho_of(lift, orbit)
    dist = empirical_distribution(series, min(cfg.bins, len(series)))
    q = cfg.period
    if q is None and isinstance(lift.rotation_number, Fraction):
        q = lift.rotation_number.denominator
    defect = None
    if q is not None and len(series) >= 2 * q + 1:
        defect = periodicity_test(series, q, len(series) // 2 - q)
    coverage = None
    if lift.is_rational is False:
        cov = range_coverage(series, delta=cfg.delta)
        coverage = {"target": list(cov.target), "delta": cov.delta, "fraction": cov.fraction}
    recurrence = None
    if cfg.epsilon is not None:
        rec = recurrence_test(series, cfg.epsilon)
        recurrence = {"epsilon": rec.epsilon, "window": rec.window, "observed": rec.observed}
    fm = formula_mean(rho)
    io.write_report(
        {
            "meta": _meta(cfg),
            "mean": dist.mean,
            "formula_value": fm,
            "formula_gap": dist.mean - fm,
            "periodicity_defect": defect,
            "period": q,
            "coverage": coverage,
            "recurrence": recurrence,
            "infinite_radii": dist.excluded_infinite,
            "histogram": {"edges": dist.edges, "counts": dist.counts},
        },
        cfg.json,
    )
    return EXIT_OK


def cmd_cf(cfg: RunConfig) -> int:
    raw = parse_number(cfg.value)
    x = reduce_unit(raw) if isinstance(raw, Fraction) else float(reduce_unit(raw))
    if x == 0:
        raise ConfigError(f"value {cfg.value!r} is an integer; its expansion is empty")
    cf = cf_expand(x, cfg.depth)
    doc = {
        "value": float(x),
        "quotients": list(cf.quotients),
        "convergents": [[str(p), str(q)] for p, q in cf.convergents],
        "terminated": cf.terminated,
        "closest_returns": closest_return_denominators(cf, cfg.qmax),
    }
    if len(cf.convergents) >= 2:
        rep = classify_arithmetic_type(cf, cfg.epsilon)
        doc.update(
            classification=rep.classification,
            max_ratio=rep.max_ratio,
            tail_ratio=rep.tail_ratio,
            max_quotient=rep.max_quotient,
            bounded_type_prefix=rep.bounded_type_prefix,
            hypothesis3_prefix=rep.hypothesis3_prefix,
            hypothesis3_violations=list(rep.hypothesis3_violations),
            epsilon=rep.epsilon,
            heuristic=True,
        )
    else:
        doc.update(
            classification="rational" if cf.terminated else "irrational_prefix",
            max_ratio=None,
            bounded_type_prefix=None,
            hypothesis3_prefix=None,
        )
    io.write_report(doc, cfg.out)
    return EXIT_OK


def cmd_section(cfg: RunConfig) -> int:
    lift = parse_map(cfg.map)
    orbit = iterate_orbit(lift, cfg.x0, cfg.n)
    s = reconstruct_section(build_curlicue(orbit), orbit)
    if cfg.csv:
        io.write_section_csv(s.theta, s.z, cfg.csv)
    io.write_report({"meta": _meta(cfg), "section": _section_summary(s)}, cfg.json)
    return EXIT_OK


COMMANDS = {
    "trace": cmd_trace,
    "diagnose": cmd_diagnose,
    "curvature": cmd_curvature,
    "cf": cmd_cf,
    "section": cmd_section,
}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.command](cfg)
    except ConfigError as e:
        print(f"curlicue: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except PreconditionError as e:
        print(f"curlicue: precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as e:
        print(f"curlicue: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
