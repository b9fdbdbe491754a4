"""Witness-set construction.

Builds the shapes ``S_n`` from a base sequence and the recursive families

    Phi(2, k)       = {0, e1, 2 e1, ..., k e1}
    Delta(n, k, 1)  = E_n(Phi(n-1, k))
    Delta(n, k, m)  = Delta(n, k ** |Delta(n, k, m-1)|, 1) + Delta(n, k, m-1)
    Phi(n, k)       = Delta(n, k, k)

where ``E_n(V)`` collects the images of ``S_n`` under every homothety mapping
``S_{n-1}`` into ``V`` and ``+`` is the complex (Minkowski) sum. The sizes grow
super-exponentially, so every builder takes a :class:`ResourceBudget` and
fails fast with :class:`ResourceLimit` instead of thrashing.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Optional, Sequence

from .errors import FormatError, ResourceLimit
from .geometry import (
    ORIGIN,
    Homothety,
    Point,
    PointSet,
    complex_sum,
    data_lines,
    expect_header,
    format_point,
    parse_point,
    pt,
    solve_anchored_homothety,
)

log = logging.getLogger(__name__)

BASE_HEADER = "gallai-base v1"


@dataclass(frozen=True)
class BaseSequence:
    """The fixed sequence ``e_0 = (0,0), e_1, e_2, ...`` of distinct points."""

    points: tuple

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point) else pt(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts or not pts[0].is_origin():
            raise ValueError("base sequence must start with e_0 = (0, 0)")
        if len(set(pts)) != len(pts):
            raise ValueError("base sequence points must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i) -> Point:
        return self.points[i]

    def require(self, count: int) -> None:
        if count > len(self.points):
            raise ValueError(
                f"base sequence has {len(self.points)} points, need at least {count}"
            )

    def prefix(self, n: int) -> tuple:
        """``(e_0, ..., e_{n-1})`` as a tuple, in index order."""
        self.require(n)
        return self.points[:n]

    def map(self, fn) -> "BaseSequence":
        return BaseSequence(tuple(fn(p) for p in self.points))


@dataclass(frozen=True)
class ResourceBudget:
    max_points: int = 10**6
    max_color_count: int = 2**64
    max_colorings: int = 10**7

    def __post_init__(self):
        if min(self.max_points, self.max_color_count, self.max_colorings) <= 0:
            raise ValueError("budgets must be strictly positive")


DEFAULT_BUDGET = ResourceBudget()

FIG1 = ((0, 0), (10, 0), (10, 5), (0, 13))


def default_base(n_max: int = 3, preset: str = "moment") -> BaseSequence:
    """Base sequence ``e_0 .. e_{n_max}``.

    ``moment`` puts ``e_i = (i, i^2)`` on the parabola, so any prefix is in
    general position. ``fig1`` is the fixed four-point base drawn in the
    original figure and ignores ``n_max``.
    """
    if preset == "fig1":
        return BaseSequence(FIG1)
    if preset != "moment":
        raise ValueError(f"unknown base preset {preset!r}")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return BaseSequence(tuple((i, i * i) for i in range(n_max + 1)))


def dumps_base(B: BaseSequence) -> str:
    return "\n".join([BASE_HEADER, *(format_point(p) for p in B.points)]) + "\n"


def loads_base(text: str) -> BaseSequence:
    lines = data_lines(text)
    expect_header(lines, BASE_HEADER)
    points = [parse_point(line, lineno) for lineno, line in lines]
    if not points or not points[0].is_origin():
        raise FormatError("first base point must be '0 0'")
    try:
        return BaseSequence(tuple(points))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def prefix_set(B: BaseSequence, n: int) -> PointSet:
    """``S_n = {e_0, ..., e_{n-1}}``."""
    if n < 1 or n > len(B):
        raise ValueError(f"n must lie in [1, {len(B)}], got {n}")
    return PointSet(B.points[:n])


def _check_points(size: int, budget: ResourceBudget, what: str) -> None:
    if size > budget.max_points:
        raise ResourceLimit(
            f"{what} needs {size} points, budget is {budget.max_points}",
            quantity="points", value=size, limit=budget.max_points,
        )


def next_color_count(k: int, size: int, budget: ResourceBudget = DEFAULT_BUDGET) -> int:
    """``k ** size``, refusing to materialise it when it exceeds the budget."""
    cap = budget.max_color_count
    # k >= 2 means k**size >= 2**size, so a long exponent is over budget already
    if k >= 2 and size >= cap.bit_length() + 1:
        raise ResourceLimit(
            f"color count {k}^{size} exceeds budget {cap}",
            quantity="color_count", value=(k, size), limit=cap,
        )
    K = k**size
    if K > cap:
        raise ResourceLimit(
            f"color count {k}^{size} = {K} exceeds budget {cap}",
            quantity="color_count", value=K, limit=cap,
        )
    return K


def phi_2(B: BaseSequence, k: int, budget: ResourceBudget = DEFAULT_BUDGET) -> PointSet:
    """``{i * e1 : 0 <= i <= k}``: ``k + 1`` collinear points."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > budget.max_color_count:
        raise ResourceLimit(
            f"color count {k} exceeds budget {budget.max_color_count}",
            quantity="color_count", value=k, limit=budget.max_color_count,
        )
    _check_points(k + 1, budget, f"Phi(2, {k})")
    e1 = B.prefix(2)[1]
    return PointSet(e1 * i for i in range(k + 1))


def _line_buckets(e1: Point, V: PointSet) -> dict:
    """Group ``V`` into lines parallel to ``e1``, each sorted along ``e1``."""
    buckets = {}
    for q in V:
        key = e1.x * q.y - e1.y * q.x
        buckets.setdefault(key, []).append(q)
    for line in buckets.values():
        line.sort(key=lambda q: q.x * e1.x + q.y * e1.y)
    return buckets


def iter_homotheties(B: BaseSequence, n_prev: int, V: PointSet) -> Iterator[Homothety]:
    """Lazily yield every ``h`` with ``lam > 0`` and ``h(S_{n_prev}) <= V``.

    A homothety is pinned by ``h(e_0) = q0`` and ``h(e_1) = q1``. Pairs with
    ``q1 - q0`` not a positive multiple of ``e1`` can never solve, so only
    pairs along a common line parallel to ``e1`` are tried. Order is
    unspecified; see :func:`enumerate_homotheties` for the sorted list.
    """
    if n_prev < 2:
        raise ValueError("n_prev must be >= 2 so that e_0 and e_1 pin the map")
    S = B.prefix(n_prev)
    e1 = S[1]
    rest = S[2:]
    members = V.members
    for line in _line_buckets(e1, V).values():
        for i, q0 in enumerate(line):
            for q1 in line[i + 1:]:
                h = solve_anchored_homothety(e1, q0, q1)
                if h is None or h.lam <= 0:
                    continue
                if all(h(e) in members for e in rest):
                    yield h


def enumerate_homotheties(B: BaseSequence, n_prev: int, V: PointSet) -> List[Homothety]:
    return sorted(iter_homotheties(B, n_prev, V))


def count_homotheties(B: BaseSequence, n_prev: int, V: PointSet) -> int:
    return sum(1 for _ in iter_homotheties(B, n_prev, V))


def _closure_lower_bound(B: BaseSequence, n: int, V: PointSet) -> int:
    """Cheap lower bound on ``|E_n(V)|`` used to fail fast.

    For ``n = 3`` every forward pair on a line parallel to ``e1`` is a valid
    homothety, and when ``e2`` is not parallel to ``e1`` the images of ``e2``
    from one line are pairwise distinct: ``L choose 2`` of them.
    """
    if n != 3:
        return len(V)
    e1, e2 = B.prefix(3)[1:]
    if e1.x * e2.y == e1.y * e2.x:
        return len(V)
    longest = max((len(line) for line in _line_buckets(e1, V).values()), default=0)
    return max(len(V), longest * (longest - 1) // 2)


def e_n_closure(B: BaseSequence, n: int, V: PointSet,
                budget: ResourceBudget = DEFAULT_BUDGET) -> PointSet:
    """``V`` together with ``h(S_n)`` for every ``h`` mapping ``S_{n-1}`` into ``V``.

    Only ``lam > 0`` maps are enumerated; the explicit union with ``V`` stands
    in for the constant (``lam = 0``) maps, so ``V <= E_n(V)`` always holds.
    """
    if n < 3:
        raise ValueError("E_n is defined here for n >= 3")
    B.require(n)
    _check_points(_closure_lower_bound(B, n, V), budget, f"E_{n} of a {len(V)}-point set")
    last = B[n - 1]
    out = set(V.members)
    for h in iter_homotheties(B, n - 1, V):
        out.add(h(last))
        if len(out) > budget.max_points:
            _check_points(len(out), budget, f"E_{n} of a {len(V)}-point set")
    return PointSet(out)


_cache: dict = {}


def clear_cache() -> None:
    _cache.clear()


def _cached(key, build):
    try:
        return _cache[key]
    except KeyError:
        value = _cache[key] = build()
        return value


def delta(B: BaseSequence, n: int, k: int, m: int,
          budget: ResourceBudget = DEFAULT_BUDGET) -> PointSet:
    """``Delta(n, k, m)``; results are memoised per base prefix within a process."""
    if n < 3 or k < 2 or m < 1:
        raise ValueError(f"Delta needs n >= 3, k >= 2, m >= 1; got ({n}, {k}, {m})")
    key = ("delta", B.prefix(n), n, k, m)
    if key in _cache:
        hit = _cache[key]
        _check_points(len(hit), budget, f"Delta({n},{k},{m})")
        return hit
    if m == 1:
        result = e_n_closure(B, n, phi(B, n - 1, k, budget), budget)
    else:
        inner = delta(B, n, k, m - 1, budget)
        K = next_color_count(k, len(inner), budget)
        log.debug("Delta(%d,%d,%d): color count %d^%d", n, k, m, k, len(inner))
        shifts = delta(B, n, K, 1, budget)
        result = complex_sum(shifts, inner, max_points=budget.max_points)
    return _cached(key, lambda: result)


def phi(B: BaseSequence, n: int, k: int, budget: ResourceBudget = DEFAULT_BUDGET) -> PointSet:
    """``Phi(n, k)``: ``Phi(2, k)`` for ``n = 2``, else ``Delta(n, k, k)``."""
    if n < 2:
        raise ValueError("Phi needs n >= 2")
    if n == 2:
        return _cached(("phi2", B.prefix(2), k), lambda: phi_2(B, k, budget))
    if k < 2:
        raise ValueError("Phi(n, k) with n >= 3 needs k >= 2")
    return delta(B, n, k, k, budget)


def target_set(B: BaseSequence, n: int, k: int, m: Optional[int] = None,
               budget: ResourceBudget = DEFAULT_BUDGET) -> PointSet:
    """``Phi(n, k)`` when ``m`` is None, otherwise ``Delta(n, k, m)``."""
    return phi(B, n, k, budget) if m is None else delta(B, n, k, m, budget)


class LevelStats(NamedTuple):
    name: str
    size: int
    homotheties: Optional[int] = None
    note: str = ""


def recursion_stats(B: BaseSequence, n: int, k: int, m: Optional[int] = None,
                    budget: ResourceBudget = DEFAULT_BUDGET) -> List[LevelStats]:
    """Cardinalities of every level of the recursion, innermost first.

    For every ``E_n`` step the number of ``lam > 0`` homotheties feeding it
    is reported too. Stops at the first level that exceeds the budget and
    records the reason in a final row instead of raising.
    """
    rows: List[LevelStats] = []

    def walk_phi(nn, kk):
        if nn == 2:
            s = phi(B, 2, kk, budget)
            rows.append(LevelStats(f"Phi(2,{kk})", len(s)))
            return s
        return walk_delta(nn, kk, kk, label=f"Phi({nn},{kk}) = ")

    def walk_delta(nn, kk, mm, label=""):
        if mm == 1:
            inner = walk_phi(nn - 1, kk)
            s = delta(B, nn, kk, 1, budget)
            count = count_homotheties(B, nn - 1, inner)
            rows.append(LevelStats(f"{label}Delta({nn},{kk},1)", len(s), count))
            return s
        prev = walk_delta(nn, kk, mm - 1)
        K = next_color_count(kk, len(prev), budget)
        walk_delta(nn, K, 1)
        s = delta(B, nn, kk, mm, budget)
        rows.append(LevelStats(f"{label}Delta({nn},{kk},{mm})", len(s),
                               note=f"color count {kk}^{len(prev)}"))
        return s

    try:
        if m is None:
            walk_phi(n, k)
        else:
            walk_delta(n, k, m)
    except ResourceLimit as exc:
        rows.append(LevelStats("ResourceLimit", -1, note=str(exc)))
    return rows


def transform_points(points: Sequence[Point], matrix) -> List[Point]:
    """Apply the 2x2 rational matrix ``((a, b), (c, d))`` to each point."""
    (a, b), (c, d) = matrix
    a, b, c, d = (Fraction(t) for t in (a, b, c, d))
    return [Point(a * p.x + b * p.y, c * p.x + d * p.y) for p in points]


__all__ = [
    "BaseSequence", "ResourceBudget", "DEFAULT_BUDGET", "FIG1", "LevelStats",
    "default_base", "dumps_base", "loads_base", "prefix_set", "phi_2",
    "iter_homotheties", "enumerate_homotheties", "count_homotheties",
    "e_n_closure", "delta", "phi", "target_set", "next_color_count",
    "recursion_stats", "clear_cache", "transform_points", "ORIGIN",
]
