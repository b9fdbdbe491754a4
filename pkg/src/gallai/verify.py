"""Independent checks of extracted witnesses.

Nothing here imports the extraction code. The checkers evaluate the witness
conditions literally, and :func:`find_mono_copies` finds monochromatic copies
by brute force over point pairs, without the line bucketing used by the
construction module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .coloring import Coloring
from .construction import BaseSequence
from .errors import MissingPoint, ResourceLimit
from .geometry import Homothety, Point, PointSet
from .witness import Witness, WitnessSystem

CONTAINMENT = "containment"
MONOCHROMATICITY = "monochromaticity"
MONOTONICITY = "monotonicity"

DEFAULT_MAX_PAIRS = 10**7


@dataclass(frozen=True)
class CheckReport:
    valid: bool
    failures: Tuple[tuple, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def _report(failures) -> CheckReport:
    return CheckReport(not failures, tuple(failures))


def _colors_of(f: Coloring, points, target: PointSet):
    """Colors of the points of ``points`` that lie in ``target``."""
    colors = set()
    for p in points:
        if p in target:
            if p not in f.domain:
                raise MissingPoint(f"{p} lies in the target set but has no color")
            colors.add(f[p])
    return colors


def check_phi_witness(f: Coloring, w: Witness, target: PointSet, B: BaseSequence) -> CheckReport:
    """Is ``w.h(S_n)`` a monochromatic homothetic copy of ``S_n`` inside ``target``?"""
    failures = []
    a, lam = w.h
    if lam <= 0:
        failures.append(("lambda", MONOTONICITY))
    image = [Point(a.x + lam * e.x, a.y + lam * e.y) for e in B.prefix(w.n)]
    for p in image:
        if p not in target:
            failures.append((p, CONTAINMENT))
    if len(_colors_of(f, image, target)) > 1:
        failures.append(("h", MONOCHROMATICITY))
    return _report(failures)


def system_map(W: WitnessSystem, i: int, j: int, B: BaseSequence) -> Homothety:
    """``h_ij`` evaluated directly from its defining formula."""
    u = B[W.n - 1]
    li, lj = W.lambdas[i], W.lambdas[j]
    return Homothety(Point(W.a.x + li * u.x, W.a.y + li * u.y), lj - li)


def check_delta_witness(f: Coloring, W: WitnessSystem, delta_set: PointSet,
                        B: BaseSequence) -> CheckReport:
    """Check ``0 = lam_0 < ... < lam_m`` and, for every ``i < j``, that
    ``h_ij(S_n)`` lies in ``delta_set`` and ``h_ij(S_{n-1})`` is monochromatic.
    """
    failures = []
    lam = W.lambdas
    if lam[0] != 0:
        failures.append((0, MONOTONICITY))
    failures.extend((i + 1, MONOTONICITY) for i in range(W.m) if not lam[i] < lam[i + 1])
    S = B.prefix(W.n)
    for i in range(W.m + 1):
        for j in range(i + 1, W.m + 1):
            h = system_map(W, i, j, B)
            image = [h(e) for e in S]
            if any(p not in delta_set for p in image):
                failures.append(((i, j), CONTAINMENT))
            if len(_colors_of(f, image[:-1], delta_set)) > 1:
                failures.append(((i, j), MONOCHROMATICITY))
    return _report(failures)


def find_mono_copies(V: PointSet, f: Coloring, n: int, mode: str, B: BaseSequence,
                     max_pairs: int = DEFAULT_MAX_PAIRS) -> List[Homothety]:
    """Every ``lam > 0`` homothety with ``h(S_n) <= V`` whose image is monochromatic.

    ``mode="strong"`` requires all of ``h(S_n)`` to share a color;
    ``mode="weak"`` only ``h(S_{n-1})``. Tries all ordered pairs of ``V``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if mode not in ("weak", "strong"):
        raise ValueError(f"mode must be 'weak' or 'strong', not {mode!r}")
    if len(V) ** 2 > max_pairs:
        raise ResourceLimit(f"{len(V)}^2 candidate pairs exceed {max_pairs}",
                            quantity="pairs", value=len(V) ** 2, limit=max_pairs)
    S = B.prefix(n)
    e1 = S[1]
    mono_len = n if mode == "strong" else n - 1
    found = []
    for q0 in V:
        for q1 in V:
            dx, dy = q1.x - q0.x, q1.y - q0.y
            # lam * e1 = (dx, dy), solved in whichever coordinate of e1 is nonzero
            lam = Fraction(dx, 1) / e1.x if e1.x else Fraction(dy, 1) / e1.y
            if lam <= 0 or lam * e1.x != dx or lam * e1.y != dy:
                continue
            image = [Point(q0.x + lam * e.x, q0.y + lam * e.y) for e in S]
            if not all(p in V for p in image):
                continue
            if len({f[p] for p in image[:mono_len]}) == 1:
                found.append(Homothety(q0, lam))
    return sorted(found)
