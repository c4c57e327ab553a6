"""Monte Carlo estimates of the fraction of solvable graphs with ``n`` vertices and ``e`` edges.

Trial ``t`` for edge count ``e`` always uses the generator stream
``(seed, (n << 32) | e, t)``, so results are identical for any number of
workers or chunk sizes.  Work is split into contiguous trial ranges and the
per-range success counts are summed in range order.
"""

from __future__ import annotations

import io
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ._kernel import GENERATOR_NAME, KernelTables, run_batch

Z95 = 1.96
WORKERS_ENV = "LIGHTSOUT_WORKERS"
CHUNK = 20_000


def default_workers() -> int:
    value = os.environ.get(WORKERS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            pass
    return 1


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    edges: Optional[Sequence[int]] = None
    trials: int = 100_000
    seed: int = 0
    workers: int = field(default_factory=default_workers)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= 64:
            raise ValueError("n must lie in [0, 64]")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        N = self.n * (self.n - 1) // 2
        for e in self.edge_list():
            if not 0 <= e <= N:
                raise ValueError(f"edge count {e} outside [0, {N}]")

    def edge_list(self) -> list[int]:
        if self.edges is None:
            return list(range(1, self.n * (self.n - 1) // 2))
        return list(self.edges)


def margin_of_error(successes: int, trials: int) -> float:
    """Wald half-width at 95% confidence."""
    if trials < 1:
        raise ValueError("trials must be positive")
    p = successes / trials
    return Z95 * math.sqrt(p * (1 - p) / trials)


@dataclass(frozen=True)
class Estimate:
    n: int
    e: int
    trials: int
    successes: int

    @property
    def p_hat(self) -> float:
        return self.successes / self.trials

    @property
    def moe95(self) -> float:
        return margin_of_error(self.successes, self.trials)


def stream_id(n: int, e: int) -> int:
    return (n << 32) | e


def _count_range(n: int, e: int, seed: int, t0: int, t1: int) -> int:
    tables = KernelTables(n, e)
    _, _, solvable = run_batch(tables, seed, stream_id(n, e), t0, t1)
    return int(solvable.sum())


def _tasks(config: ExperimentConfig):
    for e in config.edge_list():
        for t0 in range(0, config.trials, CHUNK):
            yield e, t0, min(t0 + CHUNK, config.trials)


def run_experiment(config: ExperimentConfig, progress: bool = False) -> list[Estimate]:
    tasks = list(_tasks(config))
    seed = config.seed & 0xFFFFFFFFFFFFFFFF
    if config.workers == 1:
        counts = []
        for k, (e, t0, t1) in enumerate(tasks):
            counts.append(_count_range(config.n, e, seed, t0, t1))
            if progress:
                print(f"\r{k + 1}/{len(tasks)} chunks", end="", file=sys.stderr)
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(_count_range, config.n, e, seed, t0, t1) for e, t0, t1 in tasks]
            counts = []
            for k, f in enumerate(futures):
                counts.append(f.result())
                if progress:
                    print(f"\r{k + 1}/{len(tasks)} chunks", end="", file=sys.stderr)
    if progress:
        print(file=sys.stderr)
    totals: dict[int, int] = {}
    for (e, _, _), c in zip(tasks, counts):
        totals[e] = totals.get(e, 0) + c
    return [Estimate(config.n, e, config.trials, totals[e]) for e in config.edge_list()]


CSV_HEADER = "n,e,trials,successes,p_hat,moe95"


def emit_table(estimates: Sequence[Estimate], fmt: str = "csv", columns: int = 3) -> str:
    """Render estimates as CSV, an aligned multi-column text table, or a two-column series."""
    out = io.StringIO()
    if fmt == "csv":
        out.write(CSV_HEADER + "\n")
        for est in estimates:
            out.write(f"{est.n},{est.e},{est.trials},{est.successes},{est.p_hat:.6f},{est.moe95:.6f}\n")
    elif fmt == "series":
        for est in estimates:
            out.write(f"{est.e} {est.p_hat:.6f}\n")
    elif fmt == "text":
        cells = [f"{est.e:>4}  {est.p_hat:.6f}" for est in estimates]
        if not cells:
            out.write("   e  P(n,e)\n")
        else:
            rows = math.ceil(len(cells) / columns)
            header = "    ".join(["   e  P(n,e)  "] * min(columns, len(cells)))
            out.write(header.rstrip() + "\n")
            for r in range(rows):
                line = [cells[c * rows + r] for c in range(columns) if c * rows + r < len(cells)]
                out.write("    ".join(line) + "\n")
    else:
        raise ValueError("format must be csv, text or series")
    return out.getvalue()


def metadata(config: ExperimentConfig) -> str:
    return f"# n={config.n} trials={config.trials} seed={config.seed} generator={GENERATOR_NAME}"
