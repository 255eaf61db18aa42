from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import fixture_path
from nodetrix.cli import EXIT_BUDGET, EXIT_NONPLANAR, EXIT_PLANAR, EXIT_USAGE, main
from nodetrix.fileformat import parse, read_instance
from nodetrix.render import audit_svg


def test_test_fixture_with_outputs(nonlight_path, tmp_path, capsys):
    svg, wit = tmp_path / "f.svg", tmp_path / "f.json"
    assert main(["test", nonlight_path, "--render", str(svg), "--witness", str(wit)]) == EXIT_PLANAR
    out = capsys.readouterr().out
    assert out.startswith("planar (sp)")
    assert "A: a2 a3 a1" in out
    assert audit_svg(svg.read_text()) == []
    assert json.loads(wit.read_text())["permutations"]["C"] == ["c2", "c1"]


@pytest.mark.parametrize(
    "args, code",
    [
        (["test", fixture_path("k5.ntx")], EXIT_NONPLANAR),
        (["test", fixture_path("wheel5.ntx")], EXIT_PLANAR),
        (["test", fixture_path("wheel5.ntx"), "--budget", "10"], EXIT_BUDGET),
        (["oracle", fixture_path("wheel5.ntx"), "--budget", "10"], EXIT_BUDGET),
        (["test", fixture_path("nonlight.ntx"), "--algorithm", "oracle"], EXIT_PLANAR),
        (["test", fixture_path("nonlight.ntx"), "--algorithm", "k2"], EXIT_USAGE),
        (["test", fixture_path("nonlight.ntx"), "--algorithm", "k2", "--budget", "3"], EXIT_USAGE),
        (["test", fixture_path("wheel5.ntx"), "--algorithm", "sp"], EXIT_USAGE),
        (["test", "/nonexistent.ntx"], EXIT_USAGE),
        (["test"], EXIT_USAGE),
        (["frobnicate"], EXIT_USAGE),
    ],
)
def test_exit_codes(args, code, capsys):
    assert main(args) == code


def test_same_output_path_is_refused(nonlight_path, tmp_path):
    p = str(tmp_path / "x")
    assert main(["test", nonlight_path, "--render", p, "--witness", p]) == EXIT_USAGE


def test_validate(tmp_path, capsys):
    assert main(["validate", fixture_path("nonlight.ntx")]) == 0
    bad = tmp_path / "bad.ntx"
    bad.write_text("nodetrix 1\nmodel fixed\ncluster A a b\nvertex a\nvertex b\nvertex x\ninter a x - -\n")
    assert main(["validate", str(bad)]) == 1
    assert "no side" in capsys.readouterr().out
    bad.write_text("nodetrix 1\nmodel fixed\nbogus\n")
    assert main(["validate", str(bad)]) == EXIT_USAGE


def test_oracle_count_and_free(nonlight_path, capsys):
    assert main(["oracle", nonlight_path, "--count"]) == EXIT_PLANAR
    assert capsys.readouterr().out.strip() == "1"
    assert main(["oracle", fixture_path("k5.ntx"), "--free"]) == EXIT_NONPLANAR


def test_reduce_and_test(tmp_path, capsys):
    phi = tmp_path / "phi.txt"
    phi.write_text("x x y\nx x -y\n")
    out = tmp_path / "r.ntx"
    assert main(["reduce-nae3sat", str(phi), "-o", str(out)]) == 0
    assert main(["test", str(out)]) == EXIT_NONPLANAR
    phi.write_text("x y z\n")
    assert main(["reduce-nae3sat", str(phi), "-o", str(out)]) == 0
    assert main(["test", str(out)]) == EXIT_PLANAR
    assert main(["reduce-nae3sat", str(phi), "--model", "free"]) == 0
    phi.write_text("x y\n")
    assert main(["reduce-nae3sat", str(phi)]) == EXIT_USAGE


def test_free_reduction_output(tmp_path, capsys):
    phi = tmp_path / "phi.txt"
    phi.write_text("x y z\n-x -y w\n")
    assert main(["reduce-nae3sat", str(phi), "--model", "free"]) == 0
    g = parse(capsys.readouterr().out)
    assert g.sides is None and {len(v) for v in g.clusters.values()} == {5}


@pytest.mark.parametrize("frame", ["sp", "partial2tree", "planar", "chain", "wheel"])
def test_gen_random_is_seeded(frame, tmp_path, capsys):
    a, b = tmp_path / "a.ntx", tmp_path / "b.ntx"
    for p in (a, b):
        assert main(["gen-random", "--frame", frame, "--n", "7", "--seed", "5", "-o", str(p)]) == 0
    assert a.read_text() == b.read_text()
    read_instance(str(a))
    assert main(["test", str(a)]) in (EXIT_PLANAR, EXIT_NONPLANAR)


def test_render(nonlight_path, tmp_path, capsys):
    svg, png = tmp_path / "f.svg", tmp_path / "f.png"
    assert main(["render", nonlight_path, "-o", str(svg), "--png", str(png)]) == EXIT_PLANAR
    assert svg.read_text().startswith("<?xml")
    assert png.stat().st_size > 0
    assert main(["render", fixture_path("k5.ntx"), "-o", str(svg)]) == EXIT_NONPLANAR


def test_report(tmp_path, capsys):
    assert main(["report", "--out", str(tmp_path), "--sizes", "20", "40", "--repeat", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "frame_nodes,seconds"
    assert [line.split(",")[0] for line in out[1:3]] == ["20", "40"]
    assert (tmp_path / "scaling.csv").read_text().startswith("frame_nodes,vertices")
    assert (tmp_path / "scaling.png").exists()


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "nodetrix.cli", "validate", fixture_path("k5.ntx")], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("ok")
