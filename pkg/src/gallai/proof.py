"""Constructive extraction of monochromatic homothetic copies.

Each function follows one step of the induction:

* :func:`extract_phi2` -- pigeonhole on the ``k + 1`` points of ``Phi(2, k)``;
* :func:`extract_delta` with ``m = 1`` -- a ``Phi(n-1, k)`` witness is already
  a one-step system for ``Delta(n, k, 1)``;
* :func:`extract_delta` with ``m > 1`` -- color each shift ``v`` by the whole
  pattern ``w -> f(v + w)``, extract a one-step system for that coloring,
  then recurse into the pattern at the chosen shift;
* :func:`extract_phi` -- pigeonhole on ``a + lam_i * u``, ``0 <= i <= k``.

The shift point ``u`` of a system for ``S_n`` is ``e_{n-1}``, the one point of
``S_n`` not in ``S_{n-1}``.

Every pigeonhole takes the lexicographically smallest index pair, so results
are deterministic. Every extracted witness is re-checked by
:mod:`gallai.verify` before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .coloring import Coloring, induced_supercoloring, restrict
from .construction import DEFAULT_BUDGET, BaseSequence, ResourceBudget, delta, next_color_count, phi
from .errors import DomainMismatch, InternalProofError, MissingPoint, NoRepeat
from .geometry import Homothety, Point, PointSet
from .verify import check_delta_witness, check_phi_witness
from .witness import Witness, WitnessSystem


@dataclass
class LemmaTrace:
    """Collects the intermediate identities checked during recursive steps.

    Pass one to the extractors to turn on the debug assertions; each
    violation is recorded as ``(identity, detail)`` rather than raised.
    """

    checks: int = 0
    steps: int = 0
    violations: List[tuple] = field(default_factory=list)

    def merge(self, other: "LemmaTrace") -> None:
        self.checks += other.checks
        self.steps += other.steps
        self.violations.extend(other.violations)


def _require_domain(f: Coloring, expected: PointSet, what: str) -> None:
    if f.domain is expected or f.domain == expected:
        return
    for p in expected:
        if p not in f.domain:
            raise MissingPoint(f"coloring of {what} leaves {p} uncolored")
    raise DomainMismatch(f"coloring of {what} covers {len(f.domain)} points, "
                         f"expected {len(expected)}")


def first_repeat(colors) -> Optional[tuple]:
    """Lexicographically smallest ``(i, j)``, ``i < j``, with equal colors."""
    nxt = {}
    later = {}
    for idx in range(len(colors) - 1, -1, -1):
        c = colors[idx]
        if c in later:
            nxt[idx] = later[c]
        later[c] = idx
    if not nxt:
        return None
    i = min(nxt)
    return i, nxt[i]


def witness_homothety(W: WitnessSystem, i: int, j: int, B: BaseSequence) -> Homothety:
    """``h_ij(v) = a + lam_i * e_{n-1} + (lam_j - lam_i) * v``."""
    if not 0 <= i < j <= W.m:
        raise IndexError(f"need 0 <= i < j <= {W.m}, got ({i}, {j})")
    u = B[W.n - 1]
    return Homothety(W.a + W.lambdas[i] * u, W.lambdas[j] - W.lambdas[i])


def _checked_phi(f, w, target, B):
    report = check_phi_witness(f, w, target, B)
    if not report.valid:
        raise InternalProofError(f"extracted witness {w} failed: {report.failures}")
    return w


def _checked_delta(f, W, target, B):
    report = check_delta_witness(f, W, target, B)
    if not report.valid:
        raise InternalProofError(f"extracted system {W} failed: {report.failures}")
    return W


def extract_phi2(k: int, f: Coloring, B: BaseSequence,
                 budget: ResourceBudget = DEFAULT_BUDGET) -> Witness:
    """Two equal-colored points ``i e1``, ``j e1`` give ``h(v) = i e1 + (j - i) v``."""
    target = phi(B, 2, k, budget)
    _require_domain(f, target, f"Phi(2,{k})")
    e1 = B[1]
    pair = first_repeat([f[e1 * i] for i in range(k + 1)])
    if pair is None:
        raise NoRepeat(f"all {k + 1} points of Phi(2,{k}) have distinct colors; "
                       f"the coloring uses more than {k} colors")
    i, j = pair
    w = Witness(Homothety(e1 * i, Fraction(j - i)), 2)
    return _checked_phi(f, w, target, B)


def extract_delta(n: int, k: int, m: int, f: Coloring, B: BaseSequence,
                  budget: ResourceBudget = DEFAULT_BUDGET,
                  trace: Optional[LemmaTrace] = None) -> WitnessSystem:
    """A system ``(a, 0 = lam_0 < ... < lam_m)`` for the coloring ``f`` of ``Delta(n, k, m)``."""
    if n < 3 or m < 1:
        raise ValueError(f"extract_delta needs n >= 3 and m >= 1, got n={n}, m={m}")
    B.require(n)
    target = delta(B, n, k, m, budget)
    _require_domain(f, target, f"Delta({n},{k},{m})")

    if m == 1:
        inner = phi(B, n - 1, k, budget)
        if not inner.issubset(target):
            raise InternalProofError(f"Phi({n - 1},{k}) is not contained in Delta({n},{k},1)")
        w = extract_phi(n - 1, k, restrict(f, inner), B, budget, trace)
        W = WitnessSystem(n, 1, w.h.a, (Fraction(0), w.h.lam))
        return _checked_delta(f, W, target, B)

    D = delta(B, n, k, m - 1, budget)
    K = next_color_count(k, len(D), budget)
    shifts = delta(B, n, K, 1, budget)
    pattern = induced_supercoloring(f, shifts, D)
    outer = extract_delta(n, K, 1, pattern, B, budget, trace)
    b, mu1 = outer.a, outer.lambdas[1]

    at_b = Coloring(D, {w: f[b + w] for w in D}, f.arity, validate=False)
    sub = extract_delta(n, k, m - 1, at_b, B, budget, trace)

    if trace is not None:
        _trace_lemmas(trace, f, B, n, D, b, mu1, sub)

    lam = sub.lambdas
    W = WitnessSystem(n, m, b + sub.a, lam + (mu1 + lam[-1],))
    return _checked_delta(f, W, target, B)


def _trace_lemmas(trace: LemmaTrace, f: Coloring, B: BaseSequence, n: int,
                  D: PointSet, b: Point, mu1: Fraction, sub: WitnessSystem) -> None:
    """Check the two color identities the recursive step relies on.

    (a) ``f(b + w) == f(b + mu1 e_l + w)`` for ``w`` in ``D``, ``l < n - 1``;
    (b) ``f(b + a + lam_i u) == f(b + a + lam_i u + (lam_top - lam_i) e_l)``
        for ``i`` below the top index of the sub-system and ``l < n - 1``.
    """
    trace.steps += 1
    S = B.prefix(n - 1)
    u = B[n - 1]
    for l, e in enumerate(S):
        step = b + mu1 * e
        for w in D:
            trace.checks += 1
            if f[b + w] != f[step + w]:
                trace.violations.append(("shift", (l, w)))
    lam = sub.lambdas
    top = lam[-1]
    base = b + sub.a
    for i in range(len(lam) - 1):
        p = base + lam[i] * u
        for l, e in enumerate(S):
            trace.checks += 1
            if f[p] != f[p + (top - lam[i]) * e]:
                trace.violations.append(("ladder", (i, l)))


def extract_phi(n: int, k: int, f: Coloring, B: BaseSequence,
                budget: ResourceBudget = DEFAULT_BUDGET,
                trace: Optional[LemmaTrace] = None) -> Witness:
    """A homothety mapping ``S_n`` monochromatically into ``Phi(n, k)``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if n == 2:
        return extract_phi2(k, f, B, budget)
    W = extract_delta(n, k, k, f, B, budget, trace)
    u = B[n - 1]
    ladder = [f[W.a + lam * u] for lam in W.lambdas]
    pair = first_repeat(ladder)
    if pair is None:
        raise NoRepeat(f"{k + 1} ladder points carry distinct colors; "
                       f"the coloring uses more than {k} colors")
    w = Witness(witness_homothety(W, *pair, B), n)
    return _checked_phi(f, w, phi(B, n, k, budget), B)
