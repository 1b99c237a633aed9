"""Command-line front end.

Results go to stdout as CSV or JSON; diagnostics go to stderr.  Exit
status is 0 on success, 1 when a check or audit fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, fields

from . import constants, correlations, oracle, patterns, sieve
from ._reduce import DEFAULT_SEGMENT_SIZE
from .correlations import Domain, DomainKind, TermSpec, Weight
from .errors import ArithCorrError
from .repro import repro

CACHE_ENV = "ARITHCORR_CACHE_DIR"

DOMAIN_NAMES = {
    "integers": DomainKind.INTEGERS,
    "primes": DomainKind.SHIFTED_PRIMES,
    "short": DomainKind.SHORT_INTERVAL,
    "ap": DomainKind.ARITH_PROGRESSION,
    "prime-ap": DomainKind.PRIME_ARITH_PROGRESSION,
}
WEIGHT_NAMES = {"unit": Weight.UNIT, "mangoldt": Weight.VON_MANGOLDT, "reciprocal": Weight.RECIPROCAL}
TABLE_KINDS = {"mu": "MU", "lambda": "LAMBDA", "omega": "BIG_OMEGA", "mangoldt": "MANGOLDT", "prime": "IS_PRIME"}
SUM_KINDS = {"mu": "MU", "lambda": "LAMBDA", "mu2": "MU_SQUARED", "pi": "PRIME_COUNT", "psi": "MANGOLDT_PSI"}


@dataclass
class ExperimentConfig:
    subcommand: str
    x: int | None = None
    y: int = 0
    q: int = 1
    r: int = 0
    lo: int | None = None
    hi: int | None = None
    domain: str = "integers"
    kind: str | None = None
    fn: str | None = None
    shifts: list[int] | None = None
    terms: str | None = None
    weight: str = "unit"
    B: float = 0.0
    name: str = "all"
    cutoff: int | None = None
    which: str = "all"
    shift: int = 1
    oracle: str | None = None
    format: str = "json"
    threads: int = 1
    segment_size: int = DEFAULT_SEGMENT_SIZE
    cache_dir: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        data = json.loads(text)
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})

    def engine_kw(self) -> dict:
        return {"threads": self.threads, "segment_size": self.segment_size}

    def make_domain(self) -> Domain:
        kind = DOMAIN_NAMES[self.domain]
        return Domain(kind, self.x, self.y, self.q, self.r)


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    if v is None:
        return ""
    return str(v)


def _big(v):
    if isinstance(v, int) and not isinstance(v, bool) and abs(v) > 2**53:
        return str(v)
    return v


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        payload = rows[0] if len(rows) == 1 else rows
        return json.dumps(payload, sort_keys=True, default=str) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.writer(buf, lineterminator="\n")
        header = list(rows[0].keys())
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(row.get(h)) for h in header])
    return buf.getvalue()


def _need(cfg, *names):
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise UsageError("missing --" + ", --".join(m.replace("_", "-") for m in missing))


class UsageError(Exception):
    pass


def _cmd_table(cfg):
    _need(cfg, "kind", "lo", "hi")
    kind = TABLE_KINDS[cfg.kind]
    cache = cfg.cache_dir or os.environ.get(CACHE_ENV)
    t = sieve.build_table(kind, sieve.Window(cfg.lo, cfg.hi), cache_dir=cache, **cfg.engine_kw())
    rows = []
    for n, v in t.items():
        if kind == "MANGOLDT":
            rows.append({"n": n, "p": v[0] if v else "", "k": v[1] if v else 0})
        else:
            rows.append({"n": n, "value": v})
    if cfg.format == "json":
        values = [r["value"] if "value" in r else [r["p"] or None, r["k"]] for r in rows]
        return [{"kind": kind, "lo": cfg.lo, "hi": cfg.hi, "values": values}], 0
    return rows, 0


def _cmd_sum(cfg):
    _need(cfg, "kind", "x")
    kind = SUM_KINDS[cfg.kind]
    value = sieve.summatory(kind, cfg.x, **cfg.engine_kw())
    return [{"kind": kind, "x": cfg.x, "value": _big(value)}], 0


def _cmd_correlate(cfg):
    _need(cfg, "x", "terms")
    res = correlations.correlate(cfg.make_domain(), WEIGHT_NAMES[cfg.weight], TermSpec.parse(cfg.terms),
                                 **cfg.engine_kw())
    rec = res.as_record()
    if cfg.format == "csv":
        dom = rec.pop("domain")
        rec = {**{f"domain_{k}": v for k, v in dom.items()}, **rec}
    return [rec], 0


def _cmd_census(cfg):
    _need(cfg, "fn", "shifts", "x")
    fn = "MU" if cfg.fn == "mu" else "LAMBDA"
    c = patterns.census(fn, cfg.shifts, cfg.make_domain(), **cfg.engine_kw())
    cut = cfg.cutoff or constants.DEFAULT_CUTOFF
    rows = []
    for row in patterns.densities(c, cut):
        rec = {f"{cfg.fn}(n+{a})": s for a, s in zip(c.shifts, row.key)}
        rec.update(count=row.count, density=row.density, predicted=row.predicted, source=row.source)
        rows.append(rec)
    if cfg.format == "json":
        return [{
            "fn": fn,
            "shifts": list(c.shifts),
            "domain": c.domain.as_record(),
            "total": c.total,
            "signed_combination": patterns.signed_combination(c),
            "cells": [
                {"key": list(r.key), "count": r.count, "density": r.density, "predicted": r.predicted,
                 "source": r.source}
                for r in patterns.densities(c, cut)
            ],
        }], 0
    return rows, 0


def _cmd_constants(cfg):
    names = constants.CONSTANT_NAMES if cfg.name == "all" else (cfg.name,)
    rows = []
    for name in names:
        try:
            rows.append(constants.by_name(name, cfg.cutoff).as_record() | {"name": name})
        except KeyError:
            raise UsageError(f"unknown constant {name!r}; choose from {', '.join(constants.CONSTANT_NAMES)}")
    return rows, 0


def _cmd_hypothesis(cfg):
    _need(cfg, "fn", "shifts", "x")
    fn = "MU" if cfg.fn == "mu" else "LAMBDA"
    q_max = correlations.hypothesis_modulus_limit(cfg.x, cfg.B)
    value = correlations.hypothesis_sum(fn, cfg.shifts, cfg.x, cfg.B, **cfg.engine_kw())
    return [{"fn": fn, "shifts": list(cfg.shifts), "x": cfg.x, "B": cfg.B, "q_max": q_max, "value": _big(value)}], 0


def _cmd_audit(cfg):
    if cfg.oracle:
        _need(cfg, "lo", "hi")
        kind = TABLE_KINDS[cfg.oracle]
        w = sieve.Window(cfg.lo, cfg.hi)
        rep = oracle.check_window(kind, w, sieve.build_table(kind, w, **cfg.engine_kw()))
        rec = {"kind": kind, "lo": cfg.lo, "hi": cfg.hi, "mismatches": len(rep.mismatches), "holds": rep.ok}
        return [rec], 0 if rep.ok else 1
    _need(cfg, "x")
    which = list(correlations.Identity) if cfg.which == "all" else [correlations.Identity(cfg.which.upper())]
    rows = [correlations.identity_audit(w, cfg.x, cfg.shift).as_record() for w in which]
    if cfg.format == "csv":
        for r in rows:
            r["offending"] = " ".join(map(str, r["offending"]))
    return rows, 0 if all(r["holds"] for r in rows) else 1


def _cmd_repro(cfg):
    report = repro(threads=cfg.threads, segment_size=cfg.segment_size)
    for c in report.checks:
        if not c.passed:
            print(f"FAIL {c.name}: expected {c.expected}, computed {c.computed}", file=sys.stderr)
    return report.records(), 0 if report.passed else 1


def _cmd_bench(cfg):
    x = cfg.x or 10**6
    rows = []
    for label, fn in (
        ("factor_window", lambda: sieve.factor_window(sieve.Window(1, x), **cfg.engine_kw())),
        ("primes_in", lambda: sieve.primes_in(sieve.Window(1, x), **cfg.engine_kw())),
        ("correlate_mu_mu", lambda: correlations.correlate(Domain.integers(x), Weight.UNIT,
                                                            TermSpec.parse("mu@0,mu@1"), **cfg.engine_kw())),
        ("census_lambda", lambda: patterns.census("LAMBDA", (0, 1), Domain.integers(x), **cfg.engine_kw())),
    ):
        t0 = time.perf_counter()
        fn()
        rows.append({"task": label, "x": x, "threads": cfg.threads, "seconds": round(time.perf_counter() - t0, 4)})
    return rows, 0


COMMANDS = {
    "table": _cmd_table,
    "sum": _cmd_sum,
    "correlate": _cmd_correlate,
    "census": _cmd_census,
    "constants": _cmd_constants,
    "hypothesis": _cmd_hypothesis,
    "audit": _cmd_audit,
    "repro": _cmd_repro,
    "bench": _cmd_bench,
}


def run(cfg: ExperimentConfig) -> tuple[str, int]:
    """Execute a parsed configuration; returns (stdout text, exit status)."""
    rows, status = COMMANDS[cfg.subcommand](cfg)
    return render(rows, cfg.format), status


def _int(text: str) -> int:
    """Integer that also accepts 1e6-style and 10**6-style literals."""
    t = text.strip().replace("_", "")
    if "**" in t:
        b, e = t.split("**")
        return int(b) ** int(e)
    if "e" in t.lower():
        m, e = t.lower().split("e")
        return int(m) * 10 ** int(e)
    return int(t)


def _shifts(text: str) -> list[int]:
    return [int(s) for s in text.split(",") if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="json")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--segment-size", type=_int, default=DEFAULT_SEGMENT_SIZE)
    common.add_argument("--cache-dir", default=None, help=f"segment cache directory (env {CACHE_ENV})")

    dom = argparse.ArgumentParser(add_help=False)
    dom.add_argument("--domain", choices=sorted(DOMAIN_NAMES), default="integers")
    dom.add_argument("--x", type=_int)
    dom.add_argument("--y", type=_int, default=0)
    dom.add_argument("--q", type=_int, default=1)
    dom.add_argument("--r", type=_int, default=0)

    p = argparse.ArgumentParser(prog="arithcorr", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("table", parents=[common], help="function table over a window")
    s.add_argument("--kind", choices=sorted(TABLE_KINDS), required=True)
    s.add_argument("--lo", type=_int, required=True)
    s.add_argument("--hi", type=_int, required=True)

    s = sub.add_parser("sum", parents=[common], help="summatory function M, L, Q, pi or psi")
    s.add_argument("--kind", choices=sorted(SUM_KINDS), required=True)
    s.add_argument("--x", type=_int, required=True)

    s = sub.add_parser("correlate", parents=[common, dom], help="weighted sum of shifted products")
    s.add_argument("--terms", required=True, help="e.g. mu@0,mu@1 or mu2@1,lambda@3")
    s.add_argument("--weight", choices=sorted(WEIGHT_NAMES), default="unit")

    s = sub.add_parser("census", parents=[common, dom], help="sign-pattern census")
    s.add_argument("--fn", choices=("mu", "lambda"), required=True)
    s.add_argument("--shifts", type=_shifts, required=True)
    s.add_argument("--cutoff", type=_int)

    s = sub.add_parser("constants", parents=[common], help="Euler products and series")
    s.add_argument("--name", default="all", help="all, " + ", ".join(constants.CONSTANT_NAMES))
    s.add_argument("--cutoff", type=_int)

    s = sub.add_parser("hypothesis", parents=[common], help="maximal progression sum over shifted primes")
    s.add_argument("--fn", choices=("mu", "lambda"), required=True)
    s.add_argument("--shifts", type=_shifts, required=True)
    s.add_argument("--x", type=_int, required=True)
    s.add_argument("--B", type=float, default=0.0)

    s = sub.add_parser("audit", parents=[common], help="identity audits and oracle comparison")
    s.add_argument("--which", default="all", help="all or one of " + ", ".join(i.value for i in correlations.Identity))
    s.add_argument("--x", type=_int)
    s.add_argument("--shift", type=int, default=1)
    s.add_argument("--oracle", choices=sorted(TABLE_KINDS), help="compare a sieve table with trial division")
    s.add_argument("--lo", type=_int)
    s.add_argument("--hi", type=_int)

    sub.add_parser("repro", parents=[common], help="check every published numerical example")

    s = sub.add_parser("bench", parents=[common], help="time the main engines")
    s.add_argument("--x", type=_int)
    return p


def parse_config(argv=None) -> ExperimentConfig:
    ns = build_parser().parse_args(argv)
    names = {f.name for f in fields(ExperimentConfig)}
    return ExperimentConfig(**{k: v for k, v in vars(ns).items() if k in names})


def main(argv=None) -> int:
    cfg = parse_config(argv)
    try:
        text, status = run(cfg)
    except UsageError as exc:
        print(f"arithcorr {cfg.subcommand}: {exc}", file=sys.stderr)
        return 2
    except ArithCorrError as exc:
        print(f"arithcorr {cfg.subcommand}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
