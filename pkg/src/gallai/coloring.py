"""Colorings of finite point sets.

A color is either a plain id ``0 <= c < k`` or a *supercolor*: a tuple of
colors, as produced by :func:`induced_supercoloring`. Supercolors are never
packed into integers; the extraction only needs equality between them.
"""
from __future__ import annotations

import itertools
from collections.abc import Mapping
from typing import Iterator, Union

from .errors import DomainMismatch, FormatError, MissingPoint, ResourceLimit
from .geometry import Point, PointSet, data_lines, expect_header, format_point, parse_point
from .construction import DEFAULT_BUDGET, ResourceBudget

Color = Union[int, tuple]

COLORING_HEADER = "gallai-coloring v1"

MASK64 = (1 << 64) - 1


class Coloring:
    """Total map from ``domain`` to colors, with declared arity ``k``.

    Construction checks strict totality: the assignment must cover exactly
    the domain, and plain color ids must be ``< arity``. Pass
    ``validate=False`` only for mappings already known to be well formed.
    """

    __slots__ = ("domain", "arity", "_colors")

    def __init__(self, domain: PointSet, colors: Mapping, arity: int, *, validate: bool = True):
        self.domain = domain
        self.arity = arity
        self._colors = colors
        if validate:
            self._validate()

    def _validate(self):
        for p in self.domain:
            if p not in self._colors:
                raise MissingPoint(f"point {p} has no color")
        if len(self._colors) != len(self.domain):
            extra = next(p for p in self._colors if p not in self.domain)
            raise DomainMismatch(f"coloring assigns a color to {extra}, outside its domain")
        for p, c in self._colors.items():
            if isinstance(c, int) and not 0 <= c < self.arity:
                raise ValueError(f"color {c} at {p} outside [0, {self.arity})")

    @classmethod
    def from_sequence(cls, domain: PointSet, colors, arity: int) -> "Coloring":
        """Pair colors with the domain's canonical point order."""
        colors = tuple(colors)
        if len(colors) != len(domain):
            raise ValueError(f"{len(colors)} colors for {len(domain)} points")
        return cls(domain, dict(zip(domain, colors)), arity)

    @classmethod
    def constant(cls, domain: PointSet, arity: int, color: int = 0) -> "Coloring":
        return cls(domain, dict.fromkeys(domain, color), arity)

    def __getitem__(self, p: Point) -> Color:
        try:
            return self._colors[p]
        except KeyError:
            raise MissingPoint(f"point {p} has no color") from None

    def get(self, p: Point, default=None):
        return self._colors.get(p, default)

    def __contains__(self, p) -> bool:
        return p in self.domain

    def __len__(self) -> int:
        return len(self.domain)

    def items(self):
        return ((p, self._colors[p]) for p in self.domain)

    def as_tuple(self) -> tuple:
        """Colors in canonical point order."""
        return tuple(self._colors[p] for p in self.domain)

    def distinct_colors(self) -> int:
        return len(set(self.as_tuple()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return (self.arity == other.arity and self.domain == other.domain
                and self.as_tuple() == other.as_tuple())

    def __hash__(self):
        return hash((self.arity, self.as_tuple()))

    def __repr__(self):
        return f"Coloring(<{len(self.domain)} points>, k={self.arity})"


def restrict(f: Coloring, V: PointSet) -> Coloring:
    missing = [p for p in V if p not in f.domain]
    if missing:
        raise MissingPoint(f"{len(missing)} points of the target are outside the coloring, "
                           f"first {missing[0]}")
    return Coloring(V, {p: f[p] for p in V}, f.arity, validate=False)


class _ShiftedTuples(Mapping):
    """Lazy table ``v -> (f(v + w_1), ..., f(v + w_t))``.

    Rows are computed on first access and interned, so equal supercolors are
    the same tuple object. The intern table is private to one supercoloring.
    """

    def __init__(self, f: Coloring, shifts: PointSet, base: tuple):
        self._f = f
        self._shifts = shifts
        self._base = base
        self._rows = {}
        self._intern = {}

    def __getitem__(self, v):
        try:
            return self._rows[v]
        except KeyError:
            pass
        if v not in self._shifts:
            raise KeyError(v)
        f = self._f
        vx, vy = v
        row = tuple(f[Point(vx + wx, vy + wy)] for wx, wy in self._base)
        row = self._intern.setdefault(row, row)
        self._rows[v] = row
        return row

    def __iter__(self):
        return iter(self._shifts)

    def __len__(self):
        return len(self._shifts)


def induced_supercoloring(f: Coloring, shift_domain: PointSet, base_set: PointSet,
                          *, eager: bool = False) -> Coloring:
    """The coloring ``v -> (f(v + w) for w in base_set)`` on ``shift_domain``.

    Tuples follow the canonical order of ``base_set``. Rows are evaluated
    lazily; a missing ``v + w`` surfaces as :class:`MissingPoint` on first
    access, or immediately with ``eager=True``.
    """
    table = _ShiftedTuples(f, shift_domain, tuple(base_set))
    g = Coloring(shift_domain, table, f.arity ** len(base_set), validate=False)
    if eager:
        for v in shift_domain:
            table[v]
    return g


def splitmix64(seed: int) -> Iterator[int]:
    """The splitmix64 generator (Steele, Lea, Flood), one 64-bit word per step."""
    state = seed & MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


def random_coloring(V: PointSet, k: int, seed: int) -> Coloring:
    """Color each point, in canonical order, with ``next(splitmix64) % k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = splitmix64(seed)
    return Coloring(V, {p: next(rng) % k for p in V}, k, validate=False)


def count_colorings(V: PointSet, k: int) -> int:
    return k ** len(V)


def enumerate_colorings(V: PointSet, k: int,
                        budget: ResourceBudget = DEFAULT_BUDGET) -> Iterator[Coloring]:
    """All ``k ** |V|`` colorings, lexicographic in the color tuple.

    Coloring number ``i`` has the base-``k`` digits of ``i`` as its colors,
    most significant digit on the first point in canonical order.
    """
    total = count_colorings(V, k)
    if total > budget.max_colorings:
        raise ResourceLimit(
            f"{k}^{len(V)} colorings exceed the sweep budget {budget.max_colorings}",
            quantity="colorings", value=total, limit=budget.max_colorings,
        )
    points = V.points
    for colors in itertools.product(range(k), repeat=len(points)):
        yield Coloring(V, dict(zip(points, colors)), k, validate=False)


def coloring_at(V: PointSet, k: int, index: int) -> Coloring:
    """The ``index``-th coloring of :func:`enumerate_colorings`."""
    digits = []
    for _ in range(len(V)):
        index, d = divmod(index, k)
        digits.append(d)
    if index:
        raise IndexError("coloring index out of range")
    return Coloring.from_sequence(V, reversed(digits), k)


def dumps_coloring(f: Coloring) -> str:
    lines = [COLORING_HEADER, f"k {f.arity}"]
    for p, c in f.items():
        if not isinstance(c, int):
            raise TypeError("supercolorings are internal and cannot be serialised")
        lines.append(f"{format_point(p)} {c}")
    return "\n".join(lines) + "\n"


def loads_coloring(text: str) -> Coloring:
    lines = data_lines(text)
    expect_header(lines, COLORING_HEADER)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise FormatError("missing 'k <arity>' line") from None
    fields = line.split()
    if len(fields) != 2 or fields[0] != "k" or not fields[1].isdigit() or int(fields[1]) < 1:
        raise FormatError(f"line {lineno}: expected 'k <arity>', got {line!r}")
    k = int(fields[1])
    colors = {}
    for lineno, line in lines:
        head, _, tail = line.rpartition(" ")
        if not tail.isdigit():
            raise FormatError(f"line {lineno}: bad color id in {line!r}")
        p = parse_point(head, lineno)
        c = int(tail)
        if c >= k:
            raise FormatError(f"line {lineno}: color {c} not below arity {k}")
        if p in colors:
            raise FormatError(f"line {lineno}: point {p} colored twice")
        colors[p] = c
    return Coloring(PointSet(colors), colors, k, validate=False)
