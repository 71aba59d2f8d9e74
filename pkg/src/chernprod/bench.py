"""Timing harness: TST(N) computes c(E (x) F) for every rank split m*n = N."""

from __future__ import annotations

import csv
import multiprocessing as mp
import statistics
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Sequence

from .chern import TENSOR_METHODS, TotalClass, bundle_pair
from .oracle import ORACLE_MAX_RANK, oracle_chern

__all__ = ["BenchRecord", "METHODS", "prd", "tensor_by_method", "tst", "time_tst", "bench", "write_csv"]

METHODS = tuple(TENSOR_METHODS) + ("oracle",)


@dataclass(frozen=True)
class BenchRecord:
    N: int
    m: int
    n: int
    method: str
    wall_time_ms: float
    ok: bool | None = None  # None: not verified

    def __post_init__(self):
        if self.m * self.n != self.N:
            raise ValueError(f"{self.m}*{self.n} != {self.N}")
        if self.wall_time_ms < 0:
            raise ValueError("negative wall time")

    def to_json(self) -> dict:
        return asdict(self)


def prd(N: int) -> list[tuple[int, int]]:
    """All ``(m, n)`` with ``m*n = N``, ordered by increasing ``m``."""
    if N < 1:
        raise ValueError("N must be positive")
    return [(m, N // m) for m in range(1, N + 1) if N % m == 0]


def tensor_by_method(method: str, m: int, n: int, max_degree: int | None = None) -> TotalClass:
    if method == "oracle":
        result = oracle_chern("tensor", m, n)
    elif method == "chern-character":
        E, F = bundle_pair(m, n)
        return TENSOR_METHODS[method](E, F, max_degree)
    elif method in TENSOR_METHODS:
        E, F = bundle_pair(m, n)
        result = TENSOR_METHODS[method](E, F)
    else:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    return result if max_degree is None else result.truncate(max_degree)


def tst(N: int, method: str, verify: bool = False) -> list[BenchRecord]:
    """Run one method on every pair of ``prd(N)``; optionally compare with the oracle."""
    records = []
    for m, n in prd(N):
        t0 = time.perf_counter()
        result = tensor_by_method(method, m, n)
        ms = (time.perf_counter() - t0) * 1000
        ok = None
        if verify and m * n <= ORACLE_MAX_RANK:
            ok = result == oracle_chern("tensor", m, n)
        records.append(BenchRecord(N, m, n, method, ms, ok))
    return records


def time_tst(N: int, method: str) -> float:
    """Wall-clock milliseconds for one full TST(N)."""
    t0 = time.perf_counter()
    for m, n in prd(N):
        tensor_by_method(method, m, n)
    return (time.perf_counter() - t0) * 1000


def _worker(N: int, method: str, repeats: int, queue):
    queue.put([time_tst(N, method) for _ in range(repeats)])


def _timed_runs(N: int, method: str, repeats: int, timeout: float | None) -> list[float] | None:
    """Run the repeats in a child process so a timeout can kill it; None on timeout."""
    if timeout is None:
        return [time_tst(N, method) for _ in range(repeats)]
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    queue = ctx.Queue()
    proc = ctx.Process(target=_worker, args=(N, method, repeats, queue), daemon=True)
    proc.start()
    proc.join(timeout)
    if proc.is_alive():
        proc.terminate()
        proc.join()
        return None
    if proc.exitcode != 0:
        raise RuntimeError(f"benchmark worker for N={N}, {method} exited with code {proc.exitcode}")
    return queue.get()


def bench(
    min_N: int,
    max_N: int,
    methods: Sequence[str],
    repeats: int = 1,
    timeout: float | None = 120.0,
    progress: Callable[[int, str, float | None], None] | None = None,
) -> list[tuple[int, str, float | None]]:
    """Median TST(N) time per ``(N, method)``; ``None`` marks a timeout."""
    if not 1 <= min_N <= max_N:
        raise ValueError("need 1 <= min_N <= max_N")
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    for meth in methods:
        if meth not in METHODS:
            raise ValueError(f"unknown method {meth!r}")
    rows = []
    for N in range(min_N, max_N + 1):
        for meth in methods:
            times = _timed_runs(N, meth, repeats, timeout)
            ms = None if times is None else statistics.median(times)
            rows.append((N, meth, ms))
            if progress:
                progress(N, meth, ms)
    return rows


def write_csv(rows, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["N", "method", "ms"])
        for N, meth, ms in rows:
            w.writerow([N, meth, "timeout" if ms is None else f"{ms:.3f}"])
