"""Witness records and their ``gallai-witness v1`` text encoding.

A :class:`Witness` is a single homothety whose image of ``S_n`` is
monochromatic. A :class:`WitnessSystem` is a displacement ``a`` with scalars
``0 = lam_0 < lam_1 < ... < lam_m``; together with the shift point
``u = e_{n-1}`` it defines the maps

    h_ij(v) = a + lam_i * u + (lam_j - lam_i) * v,    0 <= i < j <= m.

Neither class validates monotonicity on construction, so that broken or
tampered witnesses can be represented and then rejected by the checker.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FormatError
from .geometry import (
    Homothety,
    Point,
    data_lines,
    expect_header,
    format_rational,
    parse_rational,
    pt,
)

WITNESS_HEADER = "gallai-witness v1"


@dataclass(frozen=True)
class Witness:
    h: Homothety
    n: int


@dataclass(frozen=True)
class WitnessSystem:
    n: int
    m: int
    a: Point
    lambdas: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", pt(*self.a))
        object.__setattr__(self, "lambdas", tuple(Fraction(x) for x in self.lambdas))
        if len(self.lambdas) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} scalars, got {len(self.lambdas)}")

    def is_monotone(self) -> bool:
        lam = self.lambdas
        return lam[0] == 0 and all(x < y for x, y in zip(lam, lam[1:]))


AnyWitness = Union[Witness, WitnessSystem]


def dumps_witness(w: AnyWitness) -> str:
    if isinstance(w, Witness):
        a, lam = w.h
        lines = [WITNESS_HEADER, f"n {w.n}",
                 f"h {format_rational(a.x)} {format_rational(a.y)} {format_rational(lam)}"]
    else:
        lines = [WITNESS_HEADER, f"n {w.n}", f"m {w.m}",
                 f"a {format_rational(w.a.x)} {format_rational(w.a.y)}"]
        lines += [f"lambda {i} {format_rational(x)}" for i, x in enumerate(w.lambdas)]
    return "\n".join(lines) + "\n"


def _int_field(fields, name, lineno):
    if len(fields) != 2 or fields[0] != name:
        raise FormatError(f"line {lineno}: expected '{name} <int>'")
    try:
        return int(fields[1])
    except ValueError:
        raise FormatError(f"line {lineno}: bad integer {fields[1]!r}") from None


def loads_witness(text: str) -> AnyWitness:
    lines = list(data_lines(text))
    it = iter(lines)
    expect_header(it, WITNESS_HEADER)
    rows = [(lineno, line.split()) for lineno, line in it]
    if not rows:
        raise FormatError("witness file has no body")
    n = _int_field(rows[0][1], "n", rows[0][0])
    if len(rows) == 2 and rows[1][1][0] == "h":
        lineno, fields = rows[1]
        if len(fields) != 4:
            raise FormatError(f"line {lineno}: expected 'h <ax> <ay> <lambda>'")
        ax, ay, lam = (parse_rational(t) for t in fields[1:])
        if lam < 0:
            raise FormatError(f"line {lineno}: negative dilation")
        return Witness(Homothety(Point(ax, ay), lam), n)
    if len(rows) < 3:
        raise FormatError("truncated witness system")
    m = _int_field(rows[1][1], "m", rows[1][0])
    lineno, fields = rows[2]
    if len(fields) != 3 or fields[0] != "a":
        raise FormatError(f"line {lineno}: expected 'a <x> <y>'")
    a = Point(parse_rational(fields[1]), parse_rational(fields[2]))
    lambdas = []
    for lineno, fields in rows[3:]:
        if len(fields) != 3 or fields[0] != "lambda":
            raise FormatError(f"line {lineno}: expected 'lambda <i> <value>'")
        if fields[1] != str(len(lambdas)):
            raise FormatError(f"line {lineno}: lambda indices must ascend from 0")
        lambdas.append(parse_rational(fields[2]))
    if len(lambdas) != m + 1:
        raise FormatError(f"expected {m + 1} lambda lines, got {len(lambdas)}")
    return WitnessSystem(n, m, a, tuple(lambdas))
