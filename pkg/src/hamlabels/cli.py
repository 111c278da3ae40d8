"""Command-line front end.

Subcommands: info, construct <builder>, scan, expect, smin, verify.
Groups are named by descriptor ("2x4", "Z12") or generated from an order
range ("--orders 3..10", expanding to every abelian group of each order).
Reports are byte-deterministic for a fixed configuration: the thread
count only changes wall time, exact rationals are printed as "p/q", and
any decimal shown approximates a rational printed next to it.

Exit codes: 0 all pass, 1 some check failed, 2 usage error, 3 a search
budget left a result inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from . import cache as cache_mod
from .constructions import BUILDERS, ConstructionError
from .expectation import (
    asymptotic_residual,
    expected_distinct_diffs,
    expected_distinct_sums,
    monte_carlo_estimate,
)
from .groups import (
    GroupParseError,
    GroupSpec,
    abelian_groups_in_range,
    parse_group,
)
from .search import (
    DEFAULT_ENUMERATION_CAP,
    extremal_scan,
    minimum_connection_size,
)
from .trails import diff_labels, sum_labels, trail_to_json_dict
from .verify import verify_orders

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

CACHE_ENV = "HAMLABELS_CACHE"

__all__ = ["RunConfig", "run", "main", "EXIT_PASS", "EXIT_FAIL", "EXIT_USAGE", "EXIT_INCONCLUSIVE"]


@dataclass
class RunConfig:
    command: str
    groups: tuple[str, ...] = ()
    orders: tuple[int, int] | None = None
    builder: str | None = None
    budget: int | None = None
    threads: int = 1
    seed: int = 0
    fmt: str = "json"
    cache_path: str | None = None
    mc_trials: int | None = None
    cap: int = DEFAULT_ENUMERATION_CAP
    digits: int = 12

    def cache_payload(self) -> dict:
        # threads excluded: it never affects output bytes
        return {
            "command": self.command,
            "groups": list(self.groups),
            "orders": list(self.orders) if self.orders else None,
            "builder": self.builder,
            "budget": self.budget,
            "seed": self.seed,
            "fmt": self.fmt,
            "mc_trials": self.mc_trials,
            "cap": self.cap,
            "digits": self.digits,
        }


class UsageError(ValueError):
    pass


def _parse_orders(text: str) -> tuple[int, int]:
    parts = text.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise UsageError(f"bad order range {text!r}; expected e.g. 3..10") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"bad order range {text!r}")
    return lo, hi


def _resolve_groups(cfg: RunConfig) -> list[GroupSpec]:
    out: list[GroupSpec] = []
    for desc in cfg.groups:
        try:
            out.append(parse_group(desc))
        except GroupParseError as exc:
            raise UsageError(str(exc)) from None
    if cfg.orders:
        out.extend(abelian_groups_in_range(*cfg.orders))
    if not out:
        raise UsageError("no groups given; use --group or --orders")
    return out


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _frac_decimal(q: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_info(cfg: RunConfig) -> tuple[dict, int]:
    reports = []
    for G in _resolve_groups(cfg):
        n = G.order
        orders = {}
        for d in range(1, n + 1):
            if n % d == 0:
                orders[str(d)] = G.count_by_order(d)
        reports.append({
            "group": str(G),
            "invariant_factors": list(G.invariant_factors),
            "order": n,
            "rank": G.rank,
            "element_sum": list(G.element_sum()),
            "element_sum_is_zero": G.element_sum() == G.zero(),
            "two_torsion": G.two_torsion_count(),
            "involutions": G.two_torsion_count() - 1,
            "elements_by_order": orders,
        })
    return {"command": "info", "reports": reports}, EXIT_PASS


def _cmd_construct(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.builder not in BUILDERS:
        raise UsageError(
            f"unknown builder {cfg.builder!r}; choose from {sorted(BUILDERS)}"
        )
    build = BUILDERS[cfg.builder]
    reports = []
    for G in _resolve_groups(cfg):
        try:
            t = build(G)
        except (ValueError, ConstructionError) as exc:
            raise UsageError(f"{cfg.builder} on {G}: {exc}") from None
        reports.append({
            "group": str(G),
            "builder": cfg.builder,
            "trail": trail_to_json_dict(t),
            "distinct_sums": sum_labels(t).distinct_count,
            "distinct_diffs": diff_labels(t).distinct_count,
        })
    return {"command": "construct", "reports": reports}, EXIT_PASS


def _cmd_scan(cfg: RunConfig) -> tuple[dict, int]:
    reports = []
    for G in _resolve_groups(cfg):
        try:
            rep = extremal_scan(G, cap=cfg.cap, threads=cfg.threads)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        reports.append(rep.to_json_dict())
    return {"command": "scan", "reports": reports}, EXIT_PASS


def _cmd_expect(cfg: RunConfig) -> tuple[dict, int]:
    reports = []
    for G in _resolve_groups(cfg):
        if G.order < 3:
            raise UsageError(f"expectations need |G| >= 3, got {G}")
        for mode in ("diff", "sum"):
            exact = (expected_distinct_diffs if mode == "diff"
                     else expected_distinct_sums)(G)
            entry = {
                "group": str(G),
                "mode": mode,
                "exact": _frac(exact),
                "decimal": _frac_decimal(exact, cfg.digits),
                "residual": str(asymptotic_residual(G, mode, cfg.digits)),
                "mc": None,
            }
            if cfg.mc_trials:
                est = monte_carlo_estimate(G, mode, cfg.mc_trials, cfg.seed)
                entry["mc"] = {
                    "mean": est.mean,
                    "std_error": est.std_error,
                    "trials": est.trials,
                    "seed": est.seed,
                }
            reports.append(entry)
    return {"command": "expect", "reports": reports}, EXIT_PASS


def _cmd_smin(cfg: RunConfig) -> tuple[dict, int]:
    reports = []
    code = EXIT_PASS
    for G in _resolve_groups(cfg):
        if G.order < 2:
            raise UsageError("minimum connection size needs |G| >= 2")
        res = minimum_connection_size(G, budget=cfg.budget)
        entry = {
            "group": str(G),
            "status": res.status,
            "size": res.size,
            "lower": res.lower,
            "upper": res.upper,
            "witness_set": (
                [list(s) for s in res.witness_set] if res.witness_set else None
            ),
            "witness_cycle": (
                trail_to_json_dict(res.witness_cycle) if res.witness_cycle else None
            ),
        }
        if res.status == "interval":
            code = EXIT_INCONCLUSIVE
        reports.append(entry)
    return {"command": "smin", "reports": reports}, code


def _cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    lo, hi = cfg.orders if cfg.orders else (3, 10)
    try:
        records = verify_orders(lo, hi, budget=cfg.budget,
                                threads=cfg.threads, cap=cfg.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    summary = {"pass": 0, "fail": 0, "inconclusive": 0}
    for r in records:
        summary[r.verdict] += 1
    if summary["fail"]:
        code = EXIT_FAIL
    elif summary["inconclusive"]:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_PASS
    return {
        "command": "verify",
        "orders": [lo, hi],
        "records": [r.to_json_dict() for r in records],
        "summary": summary,
    }, code


_COMMANDS = {
    "info": _cmd_info,
    "construct": _cmd_construct,
    "scan": _cmd_scan,
    "expect": _cmd_expect,
    "smin": _cmd_smin,
    "verify": _cmd_verify,
}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_csv(payload: dict) -> str:
    cmd = payload["command"]
    if cmd == "scan":
        lines = [
            "group,order,rank,min_distinct_diffs,max_distinct_diffs,"
            "min_distinct_sums,max_distinct_sums,cycle_count,"
            "mean_distinct_diffs,mean_distinct_sums"
        ]
        for r in payload["reports"]:
            lines.append(
                f"{r['group']},{r['order']},{r['rank']},"
                f"{r['min_distinct_diffs']},{r['max_distinct_diffs']},"
                f"{r['min_distinct_sums']},{r['max_distinct_sums']},"
                f"{r['cycle_count']},{r['mean_distinct_diffs']},"
                f"{r['mean_distinct_sums']}"
            )
        return "\n".join(lines) + "\n"
    if cmd == "verify":
        lines = ["check,group,predicted,measured,verdict"]
        for r in payload["records"]:
            lines.append(
                f"{r['check']},{r['group']},{r['predicted']},"
                f"{r['measured']},{r['verdict']}"
            )
        return "\n".join(lines) + "\n"
    raise UsageError(f"csv output is not available for {cmd!r}")


def _render_text(payload: dict) -> str:
    lines: list[str] = []

    def emit(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}{k}:")
                    emit(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    emit(v, indent)
                    lines.append("")
                else:
                    lines.append(f"{pad}{v}")
        else:
            lines.append(f"{pad}{obj}")

    emit(payload)
    return "\n".join(lines) + "\n"


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return _render_csv(payload)
    if fmt == "text":
        return _render_text(payload)
    raise UsageError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def run(cfg: RunConfig, out=None) -> int:
    """Execute a config and write the report; returns the exit status."""
    out = out if out is not None else sys.stdout
    cache_root = cfg.cache_path or os.environ.get(CACHE_ENV) or None
    key = cache_mod.cache_key(cfg.cache_payload()) if cache_root else None
    if cache_root and key:
        hit = cache_mod.cache_get(cache_root, key)
        if hit is not None:
            out.write(hit["report"])
            return hit["exit_code"]
    try:
        payload, code = _COMMANDS[cfg.command](cfg)
        report = _render(payload, cfg.fmt)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(report)
    if cache_root and key:
        try:
            cache_mod.cache_put(cache_root, key, report, code)
        except OSError as exc:
            print(f"warning: cache not written: {exc}", file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamlabels",
        description=(
            "Hamiltonian cycles on finite abelian groups: constructions, "
            "exhaustive scans, exact expectations, and claim verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, orders_default=None):
        p.add_argument("--group", action="append", default=[],
                       help="group descriptor, e.g. 12 or 2x4 or Z2xZ6 (repeatable)")
        p.add_argument("--orders", default=orders_default,
                       help="order range A..B expanding to all abelian groups")
        p.add_argument("--budget", type=int, default=None,
                       help="search budget in nodes (reproducible, not wall time)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads (wall time only, never output)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for Monte Carlo sampling")
        p.add_argument("--format", dest="fmt", default="json",
                       choices=["json", "csv", "text"])
        p.add_argument("--cache", dest="cache_path", default=None,
                       help=f"report cache directory (or ${CACHE_ENV})")
        p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP,
                       help="enumeration cap on |G| for full scans")

    common(sub.add_parser("info", help="group structure report"))
    p_construct = sub.add_parser("construct", help="run a named cycle/path builder")
    p_construct.add_argument("builder", choices=sorted(BUILDERS))
    common(p_construct)
    common(sub.add_parser("scan", help="exhaustive extremal/mean label statistics"))
    p_expect = sub.add_parser("expect", help="exact expected distinct label counts")
    p_expect.add_argument("--exact", action="store_true",
                          help="exact values (always computed; flag kept for scripts)")
    p_expect.add_argument("--mc-trials", dest="mc_trials", type=int, default=None,
                          help="add a Monte Carlo estimate with this many trials")
    common(p_expect)
    common(sub.add_parser("smin", help="minimum Hamiltonian connection-set size"))
    common(sub.add_parser("verify", help="run all claim checks over an order range"))
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    orders = _parse_orders(args.orders) if args.orders else None
    return RunConfig(
        command=args.command,
        groups=tuple(args.group),
        orders=orders,
        builder=getattr(args, "builder", None),
        budget=args.budget,
        threads=args.threads,
        seed=args.seed,
        fmt=args.fmt,
        cache_path=args.cache_path,
        mc_trials=getattr(args, "mc_trials", None),
        cap=args.cap,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
