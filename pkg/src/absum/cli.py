"""Command-line entry point: ``absum {verify,table,oracle,mc}``.

Exit status is 0 when every selected check passes, 1 on an identity (or
Monte Carlo FAIL) failure and 2 on a usage error.  Big integers are written
as decimal strings in JSON and CSV.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from . import identities as ids
from .oracle import K_ORACLE, OracleLimitError, enumerate_histogram, oracle_s0, oracle_s1
from .exact_core import binomial
from .stochastic import RngSpec, check_estimate, mc_mean_abs, mc_mean_absdiffsq, offset_law_test

__all__ = ["RunConfig", "ConfigError", "run", "main", "TABLE_HEADER"]

COMMANDS = ("verify", "table", "oracle", "mc")
FORMATS = ("json", "csv", "text")
TABLE_HEADER = ["k", "S0", "S1", "S2", "S3"]

# default k ranges per command
_DEFAULT_RANGE = {"verify": (0, 50), "table": (0, 10), "oracle": (0, K_ORACLE), "mc": (1, 20)}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    k_min: int | None = None
    k_max: int | None = None
    identities: list[str] | None = None
    fmt: str = "text"
    seed: int = 0
    samples: int = 1_000_000
    oracle_max: int = K_ORACLE
    fail_fast: bool = False
    threads: int = 1
    z_max: float = 5.0
    p_floor: float = 1e-4

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.fmt not in FORMATS:
            raise ConfigError(f"unknown format {self.fmt!r}")
        lo, hi = _DEFAULT_RANGE[self.command]
        if self.k_min is None:
            self.k_min = lo if self.k_max is None else min(lo, self.k_max)
        if self.k_max is None:
            self.k_max = max(hi, self.k_min)
        if self.k_min < 0 or self.k_min > self.k_max:
            raise ConfigError(f"need 0 <= k_min <= k_max, got {self.k_min}..{self.k_max}")
        if self.command == "mc" and self.samples < 2:
            raise ConfigError("--samples must be at least 2")
        if not 0 <= self.seed < 1 << 64:
            raise ConfigError("--seed must be an unsigned 64-bit integer")
        if self.command == "oracle" and self.k_max > self.oracle_max:
            raise ConfigError(f"k={self.k_max} exceeds --oracle-max {self.oracle_max}")
        if self.identities is not None:
            try:
                self.identities = [ids.IdentityId(i.strip().upper()).value for i in self.identities]
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if self.threads < 1:
            self.threads = 1


@dataclass
class Record:
    k: int
    passed: bool
    fields: dict = field(default_factory=dict)
    status: str | None = None


# -- per-k workers (module level so they pickle) ----------------------------


def _verify_k(k: int, only: list[str] | None) -> list[Record]:
    return [Record(k, r.equal, r.as_dict()) for r in ids.verify_all(k, only)]


def _table_k(k: int) -> list[Record]:
    row = {
        "k": k,
        "S0": str(ids.s0_closed(k)),
        "S1": str(ids.s1_closed(k)),
        "S2": str(ids.s2_closed(k)),
        "S3": str(ids.s3_closed(k)),
    }
    return [Record(k, True, row)]


def _oracle_k(k: int, oracle_max: int) -> list[Record]:
    h = enumerate_histogram(k, oracle_max)
    hist_ok = all(h[p] == binomial(2 * k, k + p) for p in range(-k - 2, k + 3))
    o0, o1 = oracle_s0(k, oracle_max), oracle_s1(k, oracle_max)
    c0, c1 = ids.s0_closed(k), ids.s1_closed(k)
    ok = hist_ok and o0 == c0 and o1 == c1
    return [Record(k, ok, {
        "k": k,
        "histogram_matches_binomial": hist_ok,
        "oracle_s0": str(o0),
        "s0_closed": str(c0),
        "oracle_s1": str(o1),
        "s1_closed": str(c1),
        "equal": ok,
    })]


def _mc_k(k: int, n: int, seed: int, z_max: float, p_floor: float) -> list[Record]:
    spec = RngSpec(seed=seed, stream=k)
    out = []
    for name, fn in (("mean_abs", mc_mean_abs), ("mean_absdiffsq", mc_mean_absdiffsq)):
        status, est = check_estimate(fn, k, n, spec, z_max)
        out.append(Record(k, status != "FAIL", {"k": k, "estimate": name, **est.as_dict()}, status))
    ok, pvalue = offset_law_test(k, n, spec, p_floor)
    out.append(Record(k, ok, {"k": k, "estimate": "offset_law", "n": n, "p_value": pvalue,
                              "p_floor": p_floor}, "PASS" if ok else "FAIL"))
    return out


def _worker(config: RunConfig) -> Callable[[int], list[Record]]:
    if config.command == "verify":
        return _Bound(_verify_k, config.identities)
    if config.command == "table":
        return _Bound(_table_k)
    if config.command == "oracle":
        return _Bound(_oracle_k, config.oracle_max)
    return _Bound(_mc_k, config.samples, config.seed, config.z_max, config.p_floor)


class _Bound:
    """Picklable ``partial`` with the k argument first."""

    def __init__(self, fn, *args):
        self.fn, self.args = fn, args

    def __call__(self, k: int) -> list[Record]:
        return self.fn(k, *self.args)


def _collect(config: RunConfig) -> list[Record]:
    ks = range(config.k_min, config.k_max + 1)
    work = _worker(config)
    records: list[Record] = []
    if config.threads > 1 and not config.fail_fast and len(ks) > 1:
        with ProcessPoolExecutor(config.threads) as pool:
            for batch in pool.map(work, ks):  # map keeps ascending k
                records.extend(batch)
        return records
    for k in ks:
        batch = work(k)
        records.extend(batch)
        if config.fail_fast and not all(r.passed for r in batch):
            break
    return records


# -- rendering --------------------------------------------------------------


def _render(config: RunConfig, records: list[Record], passed: bool) -> str:
    if config.fmt == "json":
        cfg = asdict(config)
        cfg.pop("threads")  # output must not depend on parallelism
        doc = {
            "command": config.command,
            "config": cfg,
            "passed": passed,
            "records": [dict(r.fields, **({"status": r.status} if r.status else {}))
                        for r in records],
        }
        return json.dumps(doc, indent=2) + "\n"
    if config.fmt == "csv":
        buf = io.StringIO()
        if config.command == "table":
            header = TABLE_HEADER
        else:
            header = list(records[0].fields) if records else ["k"]
            if config.command == "mc":
                header = sorted({key for r in records for key in r.fields}, key=_mc_key_order)
                header.append("status")
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for r in records:
            row = dict(r.fields)
            if config.command == "mc":
                row["status"] = r.status
            writer.writerow(row)
        return buf.getvalue()
    return _render_text(config, records, passed)


_MC_ORDER = ["k", "estimate", "n", "mean", "stderr", "target", "z", "p_value", "p_floor",
             "seed", "stream", "algorithm"]


def _mc_key_order(key: str) -> int:
    return _MC_ORDER.index(key) if key in _MC_ORDER else len(_MC_ORDER)


def _render_text(config: RunConfig, records: list[Record], passed: bool) -> str:
    lines = []
    for r in records:
        f = r.fields
        if config.command == "verify":
            mark = "ok  " if r.passed else "FAIL"
            lines.append(f"{mark} k={f['k']:<4} {f['identity']:<11} lhs={f['lhs']} rhs={f['rhs']}")
        elif config.command == "table":
            lines.append("  ".join(f"{h}={f[h]}" for h in TABLE_HEADER))
        elif config.command == "oracle":
            mark = "ok  " if r.passed else "FAIL"
            lines.append(f"{mark} k={f['k']:<3} S0={f['oracle_s0']} S1={f['oracle_s1']}")
        else:
            if f["estimate"] == "offset_law":
                lines.append(f"{r.status:<4} k={f['k']:<3} offset_law  p-value={f['p_value']:.4g}")
            else:
                lines.append(
                    f"{r.status:<4} k={f['k']:<3} {f['estimate']:<15} mean={f['mean']:.6f} "
                    f"target={f['target']} z={f['z']:+.2f}"
                )
    lines.append(f"{'PASSED' if passed else 'FAILED'}: {len(records)} records")
    return "\n".join(lines) + "\n"


def run(config: RunConfig, out=None) -> int:
    """Execute ``config``, write the report to ``out`` and return the exit status."""
    out = sys.stdout if out is None else out
    try:
        records = _collect(config)
    except (OracleLimitError, ids.IdentityFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    passed = all(r.passed for r in records)
    out.write(_render(config, records, passed))
    return 0 if passed else 1


def _threads_from_env() -> int:
    raw = os.environ.get("ABSUM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="absum", description="Verify absolute-value binomial sum identities exactly."
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--k", type=int, help="single k (sets --k-min and --k-max)")
    parser.add_argument("--k-min", type=int)
    parser.add_argument("--k-max", type=int)
    parser.add_argument("--identity", help="comma-separated identity ids (verify only)")
    parser.add_argument("--format", dest="fmt", choices=FORMATS, default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--oracle-max", type=int, default=K_ORACLE)
    parser.add_argument("--fail-fast", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    k_min, k_max = args.k_min, args.k_max
    if args.k is not None:
        k_min = k_max = args.k
    try:
        config = RunConfig(
            command=args.command,
            k_min=k_min,
            k_max=k_max,
            identities=args.identity.split(",") if args.identity else None,
            fmt=args.fmt,
            seed=args.seed,
            samples=args.samples,
            oracle_max=args.oracle_max,
            fail_fast=args.fail_fast,
            threads=_threads_from_env(),
        )
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"absum: error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
