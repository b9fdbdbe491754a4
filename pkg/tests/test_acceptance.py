"""Acceptance suite: one test (or group) per criterion, each timed.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""
import random
import time
from fractions import Fraction

import pytest

from gallai.cli import main
from gallai.coloring import (
    Coloring,
    dumps_coloring,
    enumerate_colorings,
    loads_coloring,
    random_coloring,
)
from gallai.construction import (
    clear_cache,
    default_base,
    delta,
    dumps_base,
    e_n_closure,
    enumerate_homotheties,
    loads_base,
    phi,
    phi_2,
)
from gallai.geometry import Homothety, Point, PointSet, dumps_pointset, loads_pointset
from gallai.proof import LemmaTrace, extract_delta, extract_phi, extract_phi2
from gallai.sweep import SweepReport, dumps_sweep, loads_sweep, random_sweep
from gallai.verify import check_delta_witness, check_phi_witness, find_mono_copies
from gallai.witness import Witness, WitnessSystem, dumps_witness, loads_witness

# shared between the extraction criteria and the lemma-invariant criterion
TRACES = {}


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f} s, limit {self.limit} s"


@pytest.fixture(scope="module")
def B():
    return default_base(preset="fig1")


@pytest.mark.criterion(1, "cardinality law |Phi(2,k)| = k+1")
def test_ac1_phi2_cardinality(B):
    with Timer(1):
        for k in range(1, 11):
            assert len(phi_2(B, k)) == k + 1


@pytest.mark.criterion(2, "worked example E_3(Phi(2,2))")
def test_ac2_worked_example_set(B):
    with Timer(1):
        E = e_n_closure(B, 3, phi_2(B, 2))
    assert E == PointSet.of((0, 0), (10, 0), (10, 5), (20, 0), (20, 10), (20, 5))
    assert len(E) == 6


@pytest.mark.criterion(3, "2080 homotheties, |E_3(Phi(2,64))| = 2145")
def test_ac3_homothety_count(B):
    with Timer(10):
        V = phi_2(B, 64)
        hs = enumerate_homotheties(B, 2, V)
        E = e_n_closure(B, 3, V)
    assert len(hs) == 2080 == 65 * 64 // 2
    assert len(E) == 2145
    # independent count: every ordered pair (p, q) of V with q - p a positive
    # multiple of e_1 anchors one map; collect the images of e_2
    e1, e2 = B[1], B[2]
    images = set()
    for p in V:
        for q in V:
            d = q - p
            if d.y == 0 and d.x * e1.x > 0:
                lam = Fraction(d.x, e1.x)
                images.add(p + lam * e2)
    assert len(images) == 2080
    assert len(images | set(V)) == 2145


@pytest.mark.criterion(4, "Phi(3,2) built within budget, |Phi(3,2)| = 2278")
def test_ac4_phi32_deterministic(B):
    clear_cache()
    with Timer(60):
        P = phi(B, 3, 2)
    assert len(P) == 2278
    text = dumps_pointset(P)
    clear_cache()
    # a base read back from text, with fresh Fraction objects, builds the same file
    assert dumps_pointset(phi(loads_base(dumps_base(B)), 3, 2)) == text
    shuffled = list(P)
    random.Random(1).shuffle(shuffled)
    assert dumps_pointset(PointSet(shuffled)) == text


@pytest.mark.criterion(5, "64/64 colorings of Delta(3,2,1): system valid, weak oracle nonempty")
def test_ac5_delta_exhaustive(B):
    D = delta(B, 3, 2, 1)
    trace = TRACES.setdefault(5, LemmaTrace())
    valid = nonempty = 0
    with Timer(10):
        for f in enumerate_colorings(D, 2):
            W = extract_delta(3, 2, 1, f, B, trace=trace)
            valid += check_delta_witness(f, W, D, B).valid
            nonempty += bool(find_mono_copies(D, f, 3, "weak", B))
    assert (valid, nonempty) == (64, 64)


@pytest.mark.criterion(6, "all colorings of Phi(2,k), k = 2, 3, 4: witness valid and in oracle list")
@pytest.mark.parametrize("k,total", [(2, 8), (3, 81), (4, 1024)])
def test_ac6_phi2_exhaustive(B, k, total):
    V = phi_2(B, k)
    good = count = 0
    with Timer(10):
        for f in enumerate_colorings(V, k):
            count += 1
            w = extract_phi2(k, f, B)
            ok = check_phi_witness(f, w, V, B).valid
            good += ok and w.h in find_mono_copies(V, f, 2, "strong", B)
    assert (count, good) == (total, total)


@pytest.mark.criterion(7, "1000 seeded random 2-colorings of Phi(3,2): 1000/1000 valid")
def test_ac7_phi32_random(B):
    P = phi(B, 3, 2)
    trace = TRACES.setdefault(7, LemmaTrace())
    passed = 0
    with Timer(300):
        for seed in range(1000):
            f = random_coloring(P, 2, seed)
            w = extract_phi(3, 2, f, B, trace=trace)
            image = [w.h(e) for e in B.prefix(3)]
            passed += (check_phi_witness(f, w, P, B).valid and w.h.lam > 0
                       and all(p in P for p in image) and len({f[p] for p in image}) == 1)
    assert passed == 1000
    assert trace.steps == 1000


@pytest.mark.criterion(8, "lemma invariants hold in every extraction of criteria 5 and 7")
def test_ac8_lemma_invariants():
    assert set(TRACES) == {5, 7}, "criteria 5 and 7 must run first"
    assert TRACES[7].checks > 0
    for trace in TRACES.values():
        assert trace.violations == []


def random_linear_map(rng):
    while True:
        a, b, c, d = (Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4))
        if a * d - b * c != 0:
            break

    def L(p):
        return Point(a * p.x + b * p.y, c * p.x + d * p.y)
    return L


@pytest.mark.criterion(9, "equivariance under 20 random invertible rational linear maps")
def test_ac9_equivariance(B):
    rng = random.Random(2024)
    P = phi(B, 3, 2)
    D = delta(B, 3, 2, 1)
    colorings = [random_coloring(P, 2, seed) for seed in range(3)]
    reference = [(extract_delta(3, 2, 2, f, B), extract_phi(3, 2, f, B)) for f in colorings]
    with Timer(120):
        for _ in range(20):
            L = random_linear_map(rng)
            LB = B.map(L)
            assert delta(LB, 3, 2, 1) == PointSet(L(p) for p in D)
            LP = phi(LB, 3, 2)
            assert LP == PointSet(L(p) for p in P)
            for f, (W, w) in zip(colorings, reference):
                g = Coloring(LP, {L(p): c for p, c in f.items()}, 2)
                W2 = extract_delta(3, 2, 2, g, LB)
                assert W2.lambdas == W.lambdas and W2.a == L(W.a)
                w2 = extract_phi(3, 2, g, LB)
                assert w2.h == Homothety(L(w.h.a), w.h.lam)
            clear_cache()


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    assert code == 0
    return out


@pytest.mark.criterion(10, "byte-identical repeated runs and exact format round-trips")
def test_ac10_determinism_cli(capsys, tmp_path, B):
    builds = set()
    for _ in range(2):
        clear_cache()
        builds.add(cli(capsys, "build", "--n", 3, "--k", 2, "--base", "fig1"))
    assert len(builds) == 1
    P = loads_pointset(builds.pop())

    col = tmp_path / "col.txt"
    col.write_text(dumps_coloring(random_coloring(P, 2, 42)))
    witnesses = set()
    for _ in range(2):
        clear_cache()
        witnesses.add(cli(capsys, "extract", "--n", 3, "--k", 2, "--base", "fig1", "--coloring", col))
    assert len(witnesses) == 1

    sweeps = {cli(capsys, "sweep", "--n", 3, "--k", 2, "--base", "fig1", "--random", 12,
                  "--seed", 5, "--workers", w) for w in (1, 2, 3)}
    assert len(sweeps) == 1


@pytest.mark.criterion(10, "byte-identical repeated runs and exact format round-trips")
def test_ac10_exhaustive_sweep_workers(capsys):
    outs = {cli(capsys, "sweep", "--n", 2, "--k", 4, "--base", "fig1", "--exhaustive",
                "--strategy", "both", "--workers", w) for w in (1, 3)}
    assert outs == {"gallai-sweep v1\ntotal 1024\npassed 1024\nfirst_failure none\n"}


@pytest.mark.criterion(10, "byte-identical repeated runs and exact format round-trips")
def test_ac10_round_trips(B):
    P = phi(B, 3, 2)
    text = dumps_pointset(P)
    assert dumps_pointset(loads_pointset(text)) == text
    f = random_coloring(P, 2, 8)
    assert loads_coloring(dumps_coloring(f)) == f
    assert dumps_coloring(loads_coloring(dumps_coloring(f))) == dumps_coloring(f)
    for w in (extract_phi(3, 2, f, B), extract_delta(3, 2, 2, f, B),
              Witness(Homothety(Point(Fraction(-7, 2), Fraction(1, 3)), Fraction(5, 9)), 2),
              WitnessSystem(3, 1, Point(Fraction(1, 2), Fraction(0)), (0, Fraction(3, 4)))):
        assert loads_witness(dumps_witness(w)) == w
        assert dumps_witness(loads_witness(dumps_witness(w))) == dumps_witness(w)
    for base in (B, default_base(5)):
        assert loads_base(dumps_base(base)) == base
    r = random_sweep(P, 2, 3, 4, 0, B)
    assert loads_sweep(dumps_sweep(r)) == r == SweepReport(4, 4, None)
