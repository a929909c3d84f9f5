"""Command-line driver: ``python -m moyalcocycle <command>``.

Every command builds a JSON-able report.  ``--format json`` prints it with
sorted keys, so a fixed configuration always yields the same bytes; ``text``
prints a short human summary.  ``verify`` exits 0 iff every hard criterion
passes; configuration errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from itertools import combinations

from .algebra import QQ, HElement, ScalarSeries, frac_str
from .algebra import parse_frac as _parse_frac
from .cocycle import (
    LAMBDA,
    CocycleConfig,
    calibrate_q_coefficient,
    ce_differential,
    default_calibration_sample,
    graded_differentials,
    monomial_tuples,
    pair_c_lambda,
    pairing_matrix,
    psi3,
    psi3_even,
    psi3_odd,
    published_pairing_matrix,
    published_targets,
)
from .moyal import DEFAULT_ORDER, build_q, q_coefficient
from .psdo import build_r, r_coefficient
from . import suites

SCHEMA_VERSION = "moyalcocycle.report/1"
MIN_ORDER = 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    order: int = DEFAULT_ORDER
    depth: int = 8
    psdo_grid: int = 3
    derivation_grid: int = 3
    cocycle_grid: int = 2
    pbw_degree: int = 6
    seed: int = 0
    format: str = "json"
    substitutions: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.order < MIN_ORDER:
            raise ConfigError(f"--order must be >= {MIN_ORDER} (the odd part of Psi3 starts at hbar^3), got {self.order}")
        if self.depth < 1:
            raise ConfigError("--depth must be >= 1")
        for name in ("psdo_grid", "derivation_grid", "cocycle_grid"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be non-negative")

    def to_json(self) -> dict:
        d = asdict(self)
        d["substitutions"] = {k: frac_str(v) for k, v in self.substitutions.items()}
        return d


def _series_json(s: ScalarSeries) -> dict:
    return {"pretty": str(s), **s.to_json()}


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_verify(config: RunConfig, args) -> tuple[dict, int]:
    criteria = [
        suites.parity_suite(config.order, seed=config.seed),
        suites.inner_derivation_suite(config.order, config.derivation_grid),
        suites.derivation_values_suite(config.order),
        suites.pbw_suite(config.pbw_degree),
        suites.psdo_suite(config.psdo_grid, config.depth),
        suites.cycle_suite(config.order),
        suites.cocycle_suite(config.order, config.cocycle_grid, limit=args.limit, seed=config.seed),
        suites.alternation_table_suite(config.order),
        suites.reconciliation_suite(CocycleConfig.at_order(config.order)),
    ]
    hard_ok = all(c.passed for c in criteria if c.hard)
    report = {
        "command": "verify",
        "criteria": [c.to_json() for c in criteria],
        "passed": hard_ok,
        "summary": [c.line() for c in criteria],
    }
    return report, 0 if hard_ok else 1


def cmd_q_series(config: RunConfig, args) -> tuple[dict, int]:
    k_max = args.series_order
    if k_max < 0:
        raise ConfigError("q-series order must be non-negative")
    q_terms = [
        {"hbar": 2 * k + 1, "p": -(2 * k + 1), "q": -(2 * k + 1), "coeff": frac_str(q_coefficient(k))}
        for k in range(k_max) if 2 * k + 1 <= k_max
    ]
    r_terms = [{"hbar": k, "x": -k, "d": -k, "coeff": frac_str(r_coefficient(k))} for k in range(1, k_max + 1)]
    report = {
        "command": "q-series",
        "up_to_order": k_max,
        "Q": {"pretty": str(build_q(k_max)) if k_max >= 1 else "0", "terms": q_terms},
        "R": {"pretty": str(build_r(k_max)) if k_max >= 1 else "0", "terms": r_terms},
    }
    return report, 0


def parse_frac(raw: str) -> QQ:
    try:
        return _parse_frac(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {raw}") from exc


def _values(lambdas: list[str]) -> list:
    return [parse_frac(v) for v in lambdas]


def cmd_pair(config: RunConfig, args) -> tuple[dict, int]:
    cfg = CocycleConfig.at_order(config.order)
    pairing = pair_c_lambda(cfg)
    published_even, published_odd = published_targets(config.order)
    hbar = parse_frac(args.hbar) if args.hbar is not None else config.substitutions.get("hbar", QQ(1))
    lambdas = _values(args.lambdas) if args.lambdas else []
    for name in ("lam", "lam1", "lam2"):
        if not args.lambdas and name in config.substitutions:
            lambdas.append(config.substitutions[name])
    symbolic = {
        "even": _series_json(pairing.even),
        "odd": _series_json(pairing.odd),
        "published_even": _series_json(published_even),
        "published_odd": _series_json(published_odd),
        "even_difference": str(pairing.even - published_even),
        "odd_difference": str(pairing.odd - published_odd),
    }
    rows = [
        {
            "lambda": frac_str(lam),
            "even": str(pairing.even.evaluate(hbar, {LAMBDA: lam})),
            "odd": str(pairing.odd.evaluate(hbar, {LAMBDA: lam})),
        }
        for lam in lambdas
    ]
    matrices = []
    for i, j in combinations(range(len(lambdas)), 2):
        l1, l2 = lambdas[i], lambdas[j]
        matrices.append({
            "lambdas": [frac_str(l1), frac_str(l2)],
            "computed": pairing_matrix(l1, l2, hbar, cfg, pairing).to_json(),
            "published_model": published_pairing_matrix(l1, l2).to_json(),
        })
    report = {
        "command": "pair",
        "hbar": frac_str(hbar),
        "symbolic": symbolic,
        "rows": rows,
        "matrices": matrices,
    }
    return report, 0


def cmd_psi3(config: RunConfig, args) -> tuple[dict, int]:
    try:
        with open(args.file) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {args.file}: {exc}") from exc
    if not isinstance(data, list) or len(data) != 3:
        raise ConfigError("psi3 input must be a JSON array of three HElements")
    try:
        elems = [HElement.from_json(x) for x in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed HElement: {exc}") from exc
    order = min(e.order for e in elems)
    if order < MIN_ORDER:
        raise ConfigError(f"HElement order must be >= {MIN_ORDER}, got {order}")
    cfg = CocycleConfig.at_order(order)
    report = {
        "command": "psi3",
        "order": order,
        "total": _series_json(psi3(*elems, config=cfg)),
        "even": _series_json(psi3_even(*elems, config=cfg)),
        "odd": _series_json(psi3_odd(*elems, config=cfg)),
    }
    return report, 0


def cmd_pbw(config: RunConfig, args) -> tuple[dict, int]:
    if args.max_degree < 1:
        raise ConfigError("--max-degree must be >= 1")
    c = suites.pbw_suite(args.max_degree)
    return {"command": "pbw", "criterion": c.to_json()}, 0 if c.passed else 1


def cmd_psdo(config: RunConfig, args) -> tuple[dict, int]:
    grid = config.psdo_grid if args.grid is None else args.grid
    depth = config.depth if args.depth is None else args.depth
    if grid < 0 or depth < 1:
        raise ConfigError("--grid must be >= 0 and --depth >= 1")
    c = suites.psdo_suite(grid, depth)
    return {"command": "psdo", "criterion": c.to_json()}, 0 if c.passed else 1


def cmd_calibrate(config: RunConfig, args) -> tuple[dict, int]:
    prescale = parse_frac(args.q_prescale)
    cfg = CocycleConfig.at_order(config.order).with_q_coefficient(prescale)
    if args.sample == "default":
        sample = default_calibration_sample(config.order)
    elif args.sample == "empty":
        sample = []
    else:
        sample = monomial_tuples(config.cocycle_grid, 4, config.order)
    result = calibrate_q_coefficient(sample, cfg)
    report: dict = {"command": "calibrate", "q_prescale": frac_str(prescale), "sample": args.sample,
                    "sample_size": len(sample), "calibration": result.to_json(), "result": str(result)}
    if result.status == "unique":
        calibrated = cfg.with_q_coefficient(prescale * result.value)
        phi = lambda *a: psi3(*a, config=calibrated)  # noqa: E731
        residual = ScalarSeries.zero(config.order)
        for tup in sample:
            residual = residual + ce_differential(phi, *tup)
        report["residual_on_sample"] = str(residual)
        if args.check_grid:
            bad = sum(
                1 for tup in monomial_tuples(config.cocycle_grid, 4, config.order)
                if any(not v.is_zero() for v in graded_differentials(phi, *tup).values())
            )
            report["grid_tuples_with_residual"] = bad
    return report, 0 if result.status == "unique" else 1


COMMANDS = {
    "verify": cmd_verify,
    "q-series": cmd_q_series,
    "pair": cmd_pair,
    "psi3": cmd_psi3,
    "pbw": cmd_pbw,
    "psdo": cmd_psdo,
    "calibrate": cmd_calibrate,
}


# --------------------------------------------------------------------------
# argument handling and output
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="moyalcocycle", description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=DEFAULT_ORDER, help="hbar truncation order N (>= 3)")
    ap.add_argument("--depth", type=int, default=8, help="pseudodifferential window depth K")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--cocycle-grid", type=int, default=2, help="|i|,|j| bound for cocycle 4-tuples")
    ap.add_argument("--psdo-grid", type=int, default=3)
    ap.add_argument("--derivation-grid", type=int, default=3)
    ap.add_argument("--pbw-degree", type=int, default=6)
    for name in ("lam", "lam1", "lam2", "hbar"):
        ap.add_argument(f"--set-{name}", dest=f"set_{name}", metavar="R",
                        help=f"numeric value substituted for {name} in reports")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run every criterion")
    v.add_argument("--limit", type=int, default=None, help="only the first LIMIT cocycle 4-tuples")

    q = sub.add_parser("q-series", help="Q and the comparison series R side by side")
    q.add_argument("--order", dest="series_order", type=int, default=DEFAULT_ORDER)

    p = sub.add_parser("pair", help="pairings of Psi3^even, Psi3^odd with c_lambda")
    p.add_argument("--lambda", dest="lambdas", action="append", metavar="R")
    p.add_argument("--hbar", metavar="R")

    f = sub.add_parser("psi3", help="evaluate Psi3 on three HElements read from JSON")
    f.add_argument("--file", required=True)

    b = sub.add_parser("pbw", help="PBW symmetrization checks")
    b.add_argument("--max-degree", type=int, default=6)

    d = sub.add_parser("psdo", help="pseudodifferential comparison")
    d.add_argument("--grid", type=int, default=None)
    d.add_argument("--depth", type=int, default=None)

    c = sub.add_parser("calibrate", help="solve for the Q-term weight")
    c.add_argument("--q-prescale", default="1", metavar="R", help="multiply the Q-summand by R first")
    c.add_argument("--sample", choices=("default", "empty", "grid"), default="default")
    c.add_argument("--check-grid", action="store_true", help="also test the calibrated cocycle on the grid")
    return ap


def config_from_args(ns) -> RunConfig:
    subs = {}
    for name in ("lam", "lam1", "lam2", "hbar"):
        raw = getattr(ns, f"set_{name}")
        if raw is not None:
            subs[name] = parse_frac(raw)
    cfg = RunConfig(
        order=ns.order, depth=ns.depth, psdo_grid=ns.psdo_grid, derivation_grid=ns.derivation_grid,
        cocycle_grid=ns.cocycle_grid, pbw_degree=ns.pbw_degree, seed=ns.seed, format=ns.format,
        substitutions=subs,
    )
    cfg.validate()
    return cfg


def render_text(report: dict) -> str:
    cmd = report["command"]
    lines: list[str] = []
    if cmd == "verify":
        lines += report["summary"]
        lines.append("all hard criteria passed" if report["passed"] else "HARD CRITERIA FAILED")
    elif cmd == "q-series":
        lines.append(f"Q = {report['Q']['pretty']}")
        lines.append(f"R = {report['R']['pretty']}")
        width = max([len(t["coeff"]) for t in report["Q"]["terms"]] + [4])
        for k in range(1, report["up_to_order"] + 1):
            qc = next((t["coeff"] for t in report["Q"]["terms"] if t["hbar"] == k), "0")
            rc = next(t["coeff"] for t in report["R"]["terms"] if t["hbar"] == k)
            lines.append(f"hbar^{k}: Q {qc:>{width}}   R {rc}")
    elif cmd == "pair":
        s = report["symbolic"]
        lines.append(f"Psi3^even(c_lam) = {s['even']['pretty']}    published {s['published_even']['pretty']}")
        lines.append(f"Psi3^odd(c_lam)  = {s['odd']['pretty']}    published {s['published_odd']['pretty']}")
        for r in report["rows"]:
            lines.append(f"lam={r['lambda']}, hbar={report['hbar']}: even {r['even']}, odd {r['odd']}")
        for m in report["matrices"]:
            lines.append(f"lam1,lam2 = {', '.join(m['lambdas'])}: det computed {m['computed']['determinant']},"
                         f" published model {m['published_model']['determinant']}")
    elif cmd == "psi3":
        for key in ("total", "even", "odd"):
            lines.append(f"{key}: {report[key]['pretty']}")
    elif cmd in ("pbw", "psdo"):
        c = report["criterion"]
        lines.append(("[PASS] " if c["passed"] else "[FAIL] ") + c["name"])
    elif cmd == "calibrate":
        lines.append(f"q coefficient: {report['result']}")
        if "residual_on_sample" in report:
            lines.append(f"residual on sample: {report['residual_on_sample']}")
        if "grid_tuples_with_residual" in report:
            lines.append(f"grid tuples with residual: {report['grid_tuples_with_residual']}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        config = config_from_args(ns)
        report, code = COMMANDS[ns.command](config, ns)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    report = {"schema": SCHEMA_VERSION, "config": config.to_json(), **report}
    if config.format == "json":
        out = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    else:
        out = render_text(report)
    if ns.out:
        with open(ns.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
