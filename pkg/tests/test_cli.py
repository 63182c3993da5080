import json
import subprocess
import sys

import pytest

from germcrit.cli import main
from germcrit.crit import critical_tower
from germcrit.gb import LocalIdeal, ideal_equal
from germcrit.germfile import GermFileError, parse_germ_file

from helpers import DATA, germ_text


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_parse_germ_file():
    gf = parse_germ_file(germ_text("whitney"))
    assert tuple(gf.source.names) == ("x", "y") and tuple(gf.target.names) == ("u", "v")
    assert str(gf.map.components[1]) == "y^3 + x*y"
    gf = parse_germ_file(germ_text("frobenius"))
    assert gf.source.characteristic == 5


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("source x\ntarget u\nmap u = x^^2\n", 3, 11),
        ("source x\nbogus 1\n", 2, 1),
        ("source x\nsource y\n", 2, 1),
        ("source x\ntarget u\nmap u = 1 + x\n", 3, 1),
        ("field Fp 6\nsource x\n", 1, 7),
    ],
)
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(GermFileError) as e:
        parse_germ_file(text)
    assert e.value.line == line and e.value.column == column


def test_classify_pinch(capsys):
    rep = report(capsys, "classify", DATA / "pinch.germ")
    res = rep["result"]
    assert res["verdict"] == "wfst(2)" and res["r"] == 2
    assert res["tower"]["termination"] == "empty(2)"
    assert rep["config"]["max_depth"] == 5 and rep["config"]["seed"] == 0


def test_crit_fold(capsys):
    res = report(capsys, "crit", DATA / "fold.germ")["result"]
    assert res["crit"] == "(y)" and res["certificate"] == "reduced"


def test_tower_blowdown(capsys):
    res = report(capsys, "tower", DATA / "blowdown.germ")["result"]
    assert res["termination"] == "point-discriminant(1)"


def test_solver_failure_exits_zero(capsys, tmp_path):
    path = tmp_path / "fail.germ"
    path.write_text("source x\ntarget u\nmap u = x^2\nmap2 u = x^3\n")
    rep = report(capsys, "requiv", path, "--jet-order", "5")
    assert rep["result"]["status"] == "not-found-at-order(5)"


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.germ"
    bad.write_text("source x\ntarget u\nmap u = x^^2\n")
    code, _, err = run(capsys, "crit", bad)
    assert code == 2 and "line 3, column 11" in err
    code, _, err = run(capsys, "crit", DATA / "pinch.germ", "--minor-guard", "0")
    assert code == 3 and "--minor-guard" in err
    low = tmp_path / "low.germ"
    low.write_text("field Fp 3\nsource x\nderivation x^2\n")
    code, _, err = run(capsys, "exp", low)
    assert code == 3 and "--jet-order" in err
    code, _, err = run(capsys, "requiv", DATA / "fold.germ")
    assert code == 2 and "map2" in err
    code, _, _ = run(capsys, "crit", tmp_path / "missing.germ")
    assert code == 2


def test_printed_ideals_reparse(capsys):
    for name in ("pinch", "whitney", "cusp", "graph"):
        rep = report(capsys, "tower", DATA / f"{name}.germ")
        gf = parse_germ_file(germ_text(name))
        tower = critical_tower(gf.map)
        for printed, lv in zip(rep["result"]["levels"], tower.levels):
            for key, ring, ideal in (("crit", gf.source, lv.crit), ("disc", gf.target, lv.disc)):
                text = printed[key][1:-1]
                gens = [ring.parse(g) for g in text.split(", ")] if text else []
                assert ideal_equal(LocalIdeal(ring, gens), ideal)


def test_text_format_and_out(capsys, tmp_path):
    out = tmp_path / "r.txt"
    code, stdout, _ = run(capsys, "disc", DATA / "whitney.germ", "--format", "text", "--out", out)
    assert code == 0 and stdout == ""
    text = out.read_text()
    assert text.startswith("=== germcrit disc ===")
    assert "discriminant\t(4*u^3 + 27*v^2)" in text


def test_timing_only_on_request(capsys):
    assert "wall_time_s" not in report(capsys, "image", DATA / "cusp.germ")
    assert "wall_time_s" in report(capsys, "image", DATA / "cusp.germ", "--timing")


def test_figures(capsys, tmp_path):
    rep = report(capsys, "classify", DATA / "whitney.germ", "--figures", tmp_path)
    assert rep["figures"] == ["tower.png", "staircase.png"]
    for name in rep["figures"]:
        assert (tmp_path / name).stat().st_size > 0
    rep = report(capsys, "probe", DATA / "probe.germ", "--trials", "2", "--power", "3", "--figures", tmp_path)
    assert "probe.png" in rep["figures"]


def test_other_commands(capsys):
    rep = report(capsys, "lift", DATA / "lift.germ")
    assert rep["result"]["success"] and all(rep["result"]["checks"].values())
    rep = report(capsys, "exp", DATA / "exp.germ", "--jet-order", "3")
    assert rep["result"]["automorphism"] == ["x -> x^3 + x^2 + x"]
    rep = report(capsys, "exp", DATA / "log.germ", "--jet-order", "3")
    assert rep["result"]["roundtrip"]
    rep = report(capsys, "lrequiv", DATA / "lrequiv.germ", "--jet-order", "8")
    assert rep["result"]["success"]
    rep = report(capsys, "crit", DATA / "cusp.germ", "--project", "u")
    assert rep["result"]["covering"]["conclusion"] == "computed-not-lemma-guaranteed"


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "germcrit", "crit", str(DATA / "fold.germ")], capture_output=True, text=True, check=True
    )
    assert json.loads(out.stdout)["result"]["crit"] == "(y)"


def test_non_minimal_embedding_is_flagged(capsys, tmp_path):
    path = tmp_path / "lin.germ"
    path.write_text("source x, y\ntarget u, v\ntarget_ideal v - u^2\nmap u = x; v = x^2\n")
    rep = report(capsys, "crit", path)
    assert "target-embedding-not-minimal" in rep["flags"]
    assert "target-embedding-not-minimal" in report(capsys, "crit", DATA / "graph.germ")["flags"]
    assert "target-embedding-not-minimal" not in report(capsys, "crit", DATA / "whitney.germ")["flags"]
