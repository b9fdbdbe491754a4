import re
import subprocess
import sys
from fractions import Fraction

import pytest

from gallai.cli import main
from gallai.coloring import Coloring, dumps_coloring, random_coloring
from gallai.construction import clear_cache, default_base, delta, phi
from gallai.geometry import dumps_pointset, loads_pointset
from gallai.witness import loads_witness

CIRCLE = re.compile(r'<circle class="(point|image)" cx="([^"]+)" cy="([^"]+)"')


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path, fig1):
    P = phi(fig1, 3, 2)
    f = random_coloring(P, 2, 3)
    (tmp_path / "set.txt").write_text(dumps_pointset(P))
    (tmp_path / "col.txt").write_text(dumps_coloring(f))
    return tmp_path


def test_build_phi_2_2(capsys):
    code, out, _ = run(capsys, "build", "--n", 2, "--k", 2, "--base", "fig1")
    assert code == 0
    assert out == "gallai-set v1\n0 0\n10 0\n20 0\n"


def test_build_delta_to_file(capsys, tmp_path, fig1):
    path = tmp_path / "d.txt"
    assert run(capsys, "build", "--n", 3, "--k", 2, "--m", 1, "--base", "fig1", "--out", path)[0] == 0
    assert loads_pointset(path.read_text()) == delta(fig1, 3, 2, 1)


def test_stats_worked_example(capsys):
    code, out, _ = run(capsys, "stats", "--n", 3, "--k", 2, "--base", "fig1")
    assert code == 0
    assert "|Delta(3,2,1)| = 6" in out
    assert "|Delta(3,64,1)| = 2145  (homotheties into previous level: 2080)" in out
    assert "= 2278" in out


def test_stats_resource_limit(capsys):
    code, out, _ = run(capsys, "stats", "--n", 3, "--k", 3, "--base", "fig1")
    assert code == 3
    assert "resource limit" in out


def test_extract_then_verify(capsys, files):
    w = files / "w.txt"
    code, _, _ = run(capsys, "extract", "--n", 3, "--k", 2, "--base", "fig1",
                     "--coloring", files / "col.txt", "--out", w)
    assert code == 0
    assert loads_witness(w.read_text()).n == 3
    code, out, _ = run(capsys, "verify", "--base", "fig1", "--witness", w,
                       "--coloring", files / "col.txt", "--set", files / "set.txt")
    assert (code, out) == (0, "valid\n")


def test_verify_tampered_lambda(capsys, files):
    sys_path = files / "sys.txt"
    assert run(capsys, "extract", "--n", 3, "--k", 2, "--m", 2, "--base", "fig1",
               "--coloring", files / "col.txt", "--out", sys_path)[0] == 0
    lines = sys_path.read_text().splitlines()
    last = lines[-1].split()
    lines[-1] = f"{last[0]} {last[1]} {int(last[2]) + 1}"
    sys_path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", "--base", "fig1", "--witness", sys_path,
                       "--coloring", files / "col.txt", "--set", files / "set.txt")
    assert code == 1 and out.startswith("invalid")


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "build", "--n", 3, "--k", 1, "--base", "fig1")[0] == 2
    assert run(capsys, "build", "--n", 2, "--k", 2, "--base", tmp_path / "nope")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["build", "--k", "2"])
    assert exc.value.code == 2


def test_format_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("gallai-coloring v1\nk 2\n0 0 7\n")
    assert run(capsys, "extract", "--n", 2, "--k", 2, "--coloring", bad)[0] == 4
    # coloring that misses points of the target set
    partial = tmp_path / "partial.txt"
    partial.write_text(dumps_coloring(Coloring.constant(loads_pointset("gallai-set v1\n0 0\n"), 2)))
    assert run(capsys, "extract", "--n", 2, "--k", 2, "--base", "fig1", "--coloring", partial)[0] == 4


def test_budget_flags_and_env(capsys, monkeypatch):
    assert run(capsys, "build", "--n", 3, "--k", 2, "--base", "fig1", "--max-points", 100)[0] == 3
    monkeypatch.setenv("GALLAI_BUDGET_POINTS", "100")
    clear_cache()
    assert run(capsys, "build", "--n", 3, "--k", 2, "--base", "fig1")[0] == 3
    monkeypatch.setenv("GALLAI_BUDGET_POINTS", "lots")
    assert run(capsys, "build", "--n", 2, "--k", 2)[0] == 2


def test_sweep_output_and_workers(capsys):
    argv = ["sweep", "--n", 2, "--k", 3, "--base", "fig1", "--exhaustive", "--strategy", "both"]
    code, one, _ = run(capsys, *argv, "--workers", 1)
    _, two, _ = run(capsys, *argv, "--workers", 2)
    assert code == 0
    assert one == two == "gallai-sweep v1\ntotal 81\npassed 81\nfirst_failure none\n"


def test_sweep_too_many_colorings(capsys):
    code, _, err = run(capsys, "sweep", "--n", 3, "--k", 2, "--base", "fig1", "--exhaustive")
    assert code == 3 and "--random" in err


def test_random_sweep_cli(capsys):
    code, out, _ = run(capsys, "sweep", "--n", 3, "--k", 2, "--base", "fig1",
                       "--random", 5, "--seed", 9, "--workers", 2)
    assert code == 0 and "passed 5\n" in out


def svg_markers(text):
    return [(cls, Fraction(x), Fraction(y)) for cls, x, y in CIRCLE.findall(text)]


def test_render_fig1_base(capsys, tmp_path):
    s = tmp_path / "base.txt"
    s.write_text("gallai-set v1\n0 0\n10 0\n10 5\n0 13\n")
    code, out, _ = run(capsys, "render", "--set", s)
    assert code == 0 and out.lstrip().startswith("<?xml")
    # invert the fixed drawing transform: x*4 + 20, (13 - y)*4 + 20
    pts = {(cls, (x - 20) / 4, 13 - (y - 20) / 4) for cls, x, y in svg_markers(out)}
    assert pts == {("point", 0, 0), ("point", 10, 0), ("point", 10, 5), ("point", 0, 13)}
    assert "20 significant digits" in out


def test_render_singleton_and_witness(capsys, tmp_path):
    s = tmp_path / "one.txt"
    s.write_text("gallai-set v1\n7/3 -1\n")
    out = tmp_path / "one.svg"
    assert run(capsys, "render", "--set", s, "--out", out)[0] == 0
    assert len(svg_markers(out.read_text())) == 1

    d = tmp_path / "d.txt"
    d.write_text(dumps_pointset(delta(default_base(preset="fig1"), 3, 2, 1)))
    w = tmp_path / "w.txt"
    w.write_text("gallai-witness v1\nn 3\nh 0 0 1\n")
    code, text, _ = run(capsys, "render", "--base", "fig1", "--set", d, "--witness", w)
    classes = [cls for cls, _, _ in svg_markers(text)]
    assert code == 0
    assert (classes.count("point"), classes.count("image")) == (6, 3)


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "gallai", "build", "--n", "2", "--k", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert out == "gallai-set v1\n0 0\n1 1\n"


def test_repeated_builds_are_byte_identical(capsys):
    argv = ["build", "--n", 3, "--k", 2, "--base", "moment"]
    _, first, _ = run(capsys, *argv)
    clear_cache()
    _, second, _ = run(capsys, *argv)
    assert first == second and len(loads_pointset(first)) == len(phi(default_base(3), 3, 2))
