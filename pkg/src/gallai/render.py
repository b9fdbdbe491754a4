"""SVG scatter plots of point sets and witnesses.

Set points are filled circles; witness image points are hollow circles drawn
on top, as in the original figure. This is the one lossy output of the
package: coordinates are written as decimals rounded to 20 significant digits.
"""
from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, TextIO

from .construction import BaseSequence
from .geometry import Point, PointSet
from .witness import AnyWitness, Witness, WitnessSystem

SCALE = 4
MARGIN = 20
RADIUS = 2.1
PRECISION = 20


def decimal_str(x: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = PRECISION
        d = Decimal(x.numerator) / Decimal(x.denominator)
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def witness_overlay(w: AnyWitness, B: BaseSequence):
    """Hollow points and their labels for a witness, in drawing order."""
    out = {}
    if isinstance(w, Witness):
        for i, e in enumerate(B.prefix(w.n)):
            out.setdefault(w.h(e), f"h(e{i})")
        return out
    u = B[w.n - 1]
    S = B.prefix(w.n)
    for i, lam in enumerate(w.lambdas):
        out.setdefault(w.a + lam * u, f"a+lam{i}*u")
    for i in range(w.m + 1):
        for j in range(i + 1, w.m + 1):
            li, lj = w.lambdas[i], w.lambdas[j]
            for e in S:
                out.setdefault(w.a + li * u + (lj - li) * e, "")
    return out


def render_svg(points: PointSet, out: TextIO, witness: Optional[AnyWitness] = None,
               B: Optional[BaseSequence] = None) -> None:
    if not len(points):
        raise ValueError("cannot render an empty set")
    overlay = witness_overlay(witness, B) if witness is not None else {}
    every = list(points) + list(overlay)
    xmin = min(p.x for p in every)
    ymin = min(p.y for p in every)
    ymax = max(p.y for p in every)
    xmax = max(p.x for p in every)

    def sx(p: Point) -> str:
        return decimal_str((p.x - xmin) * SCALE + MARGIN)

    def sy(p: Point) -> str:
        return decimal_str((ymax - p.y) * SCALE + MARGIN)

    width = decimal_str((xmax - xmin) * SCALE + 2 * MARGIN + 60)
    height = decimal_str((ymax - ymin) * SCALE + 2 * MARGIN)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<!-- gallai render: scale {SCALE} px per unit, y axis up, '
        f'coordinates rounded to {PRECISION} significant digits -->',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for p in points:
        lines.append(f'<circle class="point" cx="{sx(p)}" cy="{sy(p)}" r="{RADIUS}" fill="black"/>')
    for p, label in overlay.items():
        lines.append(f'<circle class="image" cx="{sx(p)}" cy="{sy(p)}" r="{RADIUS * 1.6}" '
                     'fill="none" stroke="black" stroke-width="0.8"/>')
        if label:
            lines.append(f'<text x="{sx(p)}" y="{sy(p)}" dx="5" dy="-4" font-size="9" '
                         f'font-family="serif">{label}</text>')
    lines.append("</svg>")
    out.write("\n".join(lines) + "\n")
