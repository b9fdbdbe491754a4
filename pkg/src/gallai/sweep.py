"""Exhaustive and randomized sweeps over colorings.

A sweep runs a strategy on many colorings of one target set and counts how
often it succeeds:

``extractor``  extract a witness and validate it with the checker;
``oracle``     brute-force search for a monochromatic copy, succeed if any;
``both``       both of the above, and the extracted maps must appear in the
               oracle's list.

With ``m`` given the sweep is over ``Delta(n, k, m)`` and uses
``extract_delta`` with the weak oracle; otherwise over ``Phi(n, k)`` with
``extract_phi`` and the strong oracle. Work may be split across processes;
counts are summed and the first failure is the minimum index (or seed), so
reports do not depend on the worker count.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .coloring import Coloring, count_colorings, random_coloring
from .construction import DEFAULT_BUDGET, BaseSequence, ResourceBudget
from .errors import FormatError, InternalProofError, NoRepeat, ResourceLimit
from .geometry import PointSet, data_lines, expect_header
from .proof import LemmaTrace, extract_delta, extract_phi, witness_homothety
from .verify import check_delta_witness, check_phi_witness, find_mono_copies

SWEEP_HEADER = "gallai-sweep v1"
STRATEGIES = ("extractor", "oracle", "both")


@dataclass
class SweepReport:
    total: int
    passed: int
    first_failure: Optional[int] = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def valid(self) -> bool:
        return self.passed == self.total


def dumps_sweep(r: SweepReport) -> str:
    ff = "none" if r.first_failure is None else str(r.first_failure)
    return f"{SWEEP_HEADER}\ntotal {r.total}\npassed {r.passed}\nfirst_failure {ff}\n"


def loads_sweep(text: str) -> SweepReport:
    lines = data_lines(text)
    expect_header(lines, SWEEP_HEADER)
    values = {}
    for lineno, line in lines:
        key, _, val = line.partition(" ")
        values[key] = val.strip()
    try:
        ff = values["first_failure"]
        return SweepReport(int(values["total"]), int(values["passed"]),
                           None if ff == "none" else int(ff))
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad sweep report: {exc}") from None


def evaluate(f: Coloring, V: PointSet, k: int, n: int, m: Optional[int], strategy: str,
             B: BaseSequence, budget: ResourceBudget = DEFAULT_BUDGET,
             trace: Optional[LemmaTrace] = None) -> bool:
    """Run ``strategy`` on one coloring; True on success."""
    maps = None
    if strategy in ("extractor", "both"):
        try:
            if m is None:
                w = extract_phi(n, k, f, B, budget, trace)
                ok = check_phi_witness(f, w, V, B).valid
                maps = [w.h]
            else:
                W = extract_delta(n, k, m, f, B, budget, trace)
                ok = check_delta_witness(f, W, V, B).valid
                maps = [witness_homothety(W, i, j, B)
                        for i in range(m + 1) for j in range(i + 1, m + 1)]
        except (InternalProofError, NoRepeat):
            return False
        if not ok:
            return False
    if strategy in ("oracle", "both"):
        copies = find_mono_copies(V, f, n, "strong" if m is None else "weak", B)
        if not copies:
            return False
        if maps is not None:
            found = set(copies)
            if not all(h in found for h in maps):
                return False
    return True


def _exhaustive_chunk(args):
    V, k, n, m, strategy, B, budget, start, stop, traced = args
    trace = LemmaTrace() if traced else None
    points = V.points
    total = passed = 0
    first = None
    colorings = itertools.islice(itertools.product(range(k), repeat=len(points)), start, stop)
    for index, colors in enumerate(colorings, start):
        f = Coloring(V, dict(zip(points, colors)), k, validate=False)
        total += 1
        if evaluate(f, V, k, n, m, strategy, B, budget, trace):
            passed += 1
        elif first is None:
            first = index
    return total, passed, first, trace


def _random_chunk(args):
    V, k, n, m, strategy, B, budget, seeds, traced = args
    trace = LemmaTrace() if traced else None
    total = passed = 0
    first = None
    for seed in seeds:
        f = random_coloring(V, k, seed)
        total += 1
        if evaluate(f, V, k, n, m, strategy, B, budget, trace):
            passed += 1
        elif first is None:
            first = seed
    return total, passed, first, trace


def _split(start: int, stop: int, parts: int):
    size = -(-(stop - start) // parts)
    return [(lo, min(lo + size, stop)) for lo in range(start, stop, size)]


def _run(chunk_fn, jobs, workers, trace):
    if workers <= 1 or len(jobs) <= 1:
        results = [chunk_fn(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(chunk_fn, jobs))
    total = sum(r[0] for r in results)
    passed = sum(r[1] for r in results)
    firsts = [r[2] for r in results if r[2] is not None]
    if trace is not None:
        for r in results:
            trace.merge(r[3])
    return total, passed, min(firsts) if firsts else None


def _check_strategy(strategy):
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}, not {strategy!r}")


def exhaustive_sweep(V: PointSet, k: int, n: int, strategy: str, B: BaseSequence,
                     m: Optional[int] = None, workers: int = 1,
                     budget: ResourceBudget = DEFAULT_BUDGET,
                     trace: Optional[LemmaTrace] = None) -> SweepReport:
    """Run ``strategy`` on every ``k``-coloring of ``V``."""
    _check_strategy(strategy)
    total = count_colorings(V, k)
    if total > budget.max_colorings:
        raise ResourceLimit(
            f"{k}^{len(V)} colorings exceed the sweep budget {budget.max_colorings}; "
            "use a random sweep instead",
            quantity="colorings", value=total, limit=budget.max_colorings,
        )
    t0 = time.perf_counter()
    jobs = [(V, k, n, m, strategy, B, budget, lo, hi, trace is not None)
            for lo, hi in _split(0, total, max(1, workers) * 4)]
    done, passed, first = _run(_exhaustive_chunk, jobs, workers, trace)
    return SweepReport(done, passed, first, time.perf_counter() - t0)


def random_sweep(V: PointSet, k: int, n: int, trials: int, seed0: int, B: BaseSequence,
                 m: Optional[int] = None, strategy: str = "extractor", workers: int = 1,
                 budget: ResourceBudget = DEFAULT_BUDGET,
                 trace: Optional[LemmaTrace] = None) -> SweepReport:
    """Run ``strategy`` on ``random_coloring(V, k, seed0 + t)`` for each trial ``t``.

    ``first_failure`` holds the failing seed so the coloring can be replayed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _check_strategy(strategy)
    t0 = time.perf_counter()
    jobs = [(V, k, n, m, strategy, B, budget, range(seed0 + lo, seed0 + hi), trace is not None)
            for lo, hi in _split(0, trials, max(1, workers) * 4)]
    done, passed, first = _run(_random_chunk, jobs, workers, trace)
    return SweepReport(done, passed, first, time.perf_counter() - t0)
