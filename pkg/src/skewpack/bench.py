"""Benchmark harness: run packers over instances and compare with certified bounds.

Rows record the bin count together with the area lower bound and, when
available, the family optimum or an oracle optimum. Ratios are only formed
against such certified optima. Instances run in a process pool whose size
is bounded by the ``SKEWPACK_THREADS`` environment variable.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .core import InvariantViolation, SkewpackError, ceil, validate_layout
from .guillotine import stage_counts
from .oracle import MAX_ITEMS, ExceedsMax, OracleBudgetExceeded, oracle_opt
from .runner import run_algorithm


def pool_size(requested: int | None = None) -> int:
    """Workers to use: ``requested`` capped by ``SKEWPACK_THREADS`` and the CPU count."""
    limit = os.environ.get("SKEWPACK_THREADS")
    n = requested or os.cpu_count() or 1
    if limit:
        try:
            n = min(n, max(1, int(limit)))
        except ValueError:
            raise ValueError(f"SKEWPACK_THREADS must be an integer, got {limit!r}") from None
    return max(1, n)


@dataclass
class BenchRow:
    instance: str
    algo: str
    n: int
    bins: int | None
    area_lb: int
    family_opt: int | None = None
    oracle_opt: int | None = None
    guillotine_stages: int | None = None
    discard_area: Fraction | None = None
    valid: bool = True
    runtime: float | None = None
    error: str | None = None


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    def aggregate(self) -> dict:
        out = {}
        for algo in sorted({r.algo for r in self.rows}):
            rows = [r for r in self.rows if r.algo == algo and r.error is None]
            ratios = []
            for r in rows:
                opt = r.family_opt if r.family_opt is not None else r.oracle_opt
                if opt:
                    ratios.append(Fraction(r.bins, opt))
            out[algo] = {
                "instances": len(rows),
                "bins": sum(r.bins for r in rows),
                "area_lb": sum(r.area_lb for r in rows),
                "certified": len(ratios),
                "max_ratio": max(ratios) if ratios else None,
                "mean_ratio": sum(ratios, Fraction(0)) / len(ratios) if ratios else None,
            }
        return out

    def to_json(self) -> dict:
        return {"rows": [asdict(r) for r in self.rows], "aggregate": self.aggregate()}

    def table(self) -> str:
        head = f"{'instance':<24} {'algo':<12} {'n':>5} {'bins':>5} {'lb':>5} {'opt':>5} {'stages':>6}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            opt = r.family_opt if r.family_opt is not None else r.oracle_opt
            bins = "n/a" if r.bins is None else r.bins
            lines.append(f"{r.instance[:24]:<24} {r.algo:<12} {r.n:>5} {bins:>5} "
                         f"{r.area_lb:>5} {'-' if opt is None else opt:>5} "
                         f"{'-' if r.guillotine_stages is None else r.guillotine_stages:>6}")
        return "\n".join(lines) + "\n"


def _one(job):
    name, instance, algo, params, with_oracle, timing = job
    t0 = time.perf_counter()
    try:
        res = run_algorithm(algo, instance, params)
    except InvariantViolation:
        raise
    except SkewpackError as exc:
        # the algorithm does not apply to this instance
        return BenchRow(name, algo, len(instance), None, ceil(instance.area),
                        error=f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t0
    layout = res.layout
    rep = validate_layout(instance, layout, res.rules)
    lb = ceil(instance.area)
    if layout.num_bins < lb:
        raise InvariantViolation(f"{algo} used {layout.num_bins} bins below the area bound {lb}")
    stages = stage_counts(layout) if res.rules_name == "whole" else []
    worst = None
    if stages:
        worst = -1 if any(s is None for s in stages) else max(stages)
    stats = layout.meta.get("stats", {}) if isinstance(layout.meta, dict) else {}
    discard = None
    if "discard_area_wide" in stats:
        discard = stats["discard_area_wide"] + stats["discard_area_tall"]
    elif "discard_area" in layout.meta:
        discard = layout.meta["discard_area"]
    opt = None
    if with_oracle and len(instance) <= MAX_ITEMS:
        try:
            opt = oracle_opt(instance)[0]
        except (ExceedsMax, OracleBudgetExceeded):
            opt = None
    family = instance.meta.get("opt") if isinstance(instance.meta, dict) else None
    return BenchRow(name, algo, len(instance), layout.num_bins, lb,
                    None if family is None else int(family), opt, worst, discard, rep.ok,
                    elapsed if timing else None)


def run_bench(instances, algos, params=None, with_oracle=False, timing=False,
              workers: int | None = None) -> BenchReport:
    """Run every algorithm on every ``(name, Instance)`` pair; rows keep input order."""
    jobs = [(name, inst, algo, params or {}, with_oracle, timing)
            for name, inst in instances for algo in algos]
    n = pool_size(workers)
    if n == 1 or len(jobs) <= 1:
        rows = [_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(_one, jobs))
    return BenchReport(rows)

