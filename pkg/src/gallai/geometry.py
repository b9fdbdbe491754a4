"""Exact planar geometry over the rationals.

Points, point sets and homotheties ``v -> a + lam * v``. Every coordinate is a
:class:`fractions.Fraction`; floats are rejected at the boundary so that set
membership is always decided by exact equality.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional

from .errors import FormatError, ResourceLimit

Rational = Fraction

SET_HEADER = "gallai-set v1"

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently smuggle rounding into the system.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coordinate {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` with q > 0 and the fraction in lowest terms."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise FormatError(f"bad rational literal {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise FormatError(f"zero denominator in {text!r}")
    value = Fraction(num, den)
    if value.denominator != den or den == 1:
        raise FormatError(f"rational {text!r} is not in lowest terms")
    return value


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Point(NamedTuple):
    """Exact point in the plane; tuple order gives the canonical (x, y) order.

    ``+``/``-`` are componentwise and ``*`` with a scalar dilates, so this is
    not a plain tuple arithmetically. Build instances with :func:`pt` unless
    the coordinates are already Fractions.
    """

    x: Fraction
    y: Fraction

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def __mul__(self, scalar) -> "Point":
        return Point(self.x * scalar, self.y * scalar)

    __rmul__ = __mul__

    def is_origin(self) -> bool:
        return not self.x and not self.y

    def __str__(self) -> str:
        return f"({format_rational(self.x)}, {format_rational(self.y)})"


def pt(x, y) -> Point:
    return Point(to_rational(x), to_rational(y))


ORIGIN = Point(Fraction(0), Fraction(0))


class PointSet:
    """Immutable, deduplicated finite set of points in canonical order."""

    __slots__ = ("_points", "_members")

    def __init__(self, points: Iterable[Point] = ()):
        members = frozenset(points)
        self._members = members
        self._points = tuple(sorted(members))

    @classmethod
    def of(cls, *coords) -> "PointSet":
        """``PointSet.of((0, 0), (1, "1/2"))`` -- convenience for literals."""
        return cls(pt(x, y) for x, y in coords)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __len__(self) -> int:
        return len(self._points)

    def __contains__(self, p) -> bool:
        return p in self._members

    def __getitem__(self, i):
        return self._points[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, PointSet):
            return self is other or self._members == other._members
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._members)

    def __repr__(self) -> str:
        if len(self) <= 8:
            return "PointSet{" + ", ".join(map(str, self._points)) + "}"
        return f"PointSet(<{len(self)} points>)"

    @property
    def points(self) -> tuple:
        return self._points

    @property
    def members(self) -> frozenset:
        return self._members

    def issubset(self, other: "PointSet") -> bool:
        return self._members <= other._members

    def union(self, other: Iterable[Point]) -> "PointSet":
        return PointSet(self._members.union(other))

    def translate(self, v: Point) -> "PointSet":
        return PointSet(v + p for p in self._points)


class Homothety(NamedTuple):
    """The map ``v -> a + lam * v`` with ``lam >= 0``.

    Tuple order ``(a, lam)`` is the canonical sort order for homothety lists.
    """

    a: Point
    lam: Fraction

    def __call__(self, v: Point) -> Point:
        return Point(self.a.x + self.lam * v.x, self.a.y + self.lam * v.y)

    def __str__(self) -> str:
        return f"v -> {self.a} + {format_rational(self.lam)}*v"


def homothety(a, lam) -> Homothety:
    """Validated constructor: coerces coordinates and enforces ``lam >= 0``."""
    if not isinstance(a, Point):
        a = pt(*a)
    lam = to_rational(lam)
    if lam < 0:
        raise ValueError(f"dilation scalar must be >= 0, got {lam}")
    return Homothety(a, lam)


IDENTITY = Homothety(ORIGIN, Fraction(1))


def apply_homothety(h: Homothety, v: Point) -> Point:
    return h(v)


def image_of_set(h: Homothety, points: Iterable[Point]) -> PointSet:
    return PointSet(h(v) for v in points)


def complex_sum(V: Iterable[Point], W: Iterable[Point], max_points: Optional[int] = None) -> PointSet:
    """Return ``{v + w : v in V, w in W}``.

    With ``max_points`` set, raises :class:`ResourceLimit` as soon as the
    number of distinct sums passes the cap instead of finishing the product.
    """
    W = list(W)
    out = set()
    for v in V:
        vx, vy = v
        out.update(Point(vx + wx, vy + wy) for wx, wy in W)
        if max_points is not None and len(out) > max_points:
            raise ResourceLimit(
                f"complex sum exceeds {max_points} points",
                quantity="points", value=len(out), limit=max_points,
            )
    return PointSet(out)


def solve_anchored_homothety(e1: Point, q0: Point, q1: Point) -> Optional[Homothety]:
    """Find ``h`` with ``h(0) = q0`` and ``h(e1) = q1`` and ``lam >= 0``.

    Returns None when no such homothety exists. Since ``h(0) = a`` the system
    reduces to ``q1 - q0 = lam * e1``.
    """
    if e1.is_origin():
        raise ValueError("e1 must not be the origin")
    dx = q1.x - q0.x
    dy = q1.y - q0.y
    if e1.x:
        lam = dx / e1.x
        if lam * e1.y != dy:
            return None
    else:
        if dx:
            return None
        lam = dy / e1.y
    if lam < 0:
        return None
    return Homothety(q0, lam)


# -- text format -------------------------------------------------------------

def data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def expect_header(lines, header: str):
    try:
        _, first = next(lines)
    except StopIteration:
        raise FormatError(f"empty input, expected {header!r}") from None
    if first != header:
        raise FormatError(f"expected header {header!r}, got {first!r}")


def parse_point(line: str, lineno: int = 0) -> Point:
    fields = line.split()
    if len(fields) != 2:
        raise FormatError(f"line {lineno}: expected '<x> <y>', got {line!r}")
    return Point(parse_rational(fields[0]), parse_rational(fields[1]))


def format_point(p: Point) -> str:
    return f"{format_rational(p.x)} {format_rational(p.y)}"


def dumps_pointset(V: PointSet) -> str:
    return "\n".join([SET_HEADER, *(format_point(p) for p in V)]) + "\n"


def loads_pointset(text: str) -> PointSet:
    lines = data_lines(text)
    expect_header(lines, SET_HEADER)
    seen = []
    for lineno, line in lines:
        seen.append(parse_point(line, lineno))
    V = PointSet(seen)
    if len(V) != len(seen):
        raise FormatError("duplicate points in set file")
    return V
