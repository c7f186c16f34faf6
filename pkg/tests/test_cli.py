import json
import subprocess
import sys

import pytest

from fibercw import cli
from fibercw.cli import run
from fibercw.fibration import cubic_pencil_spec, format_fibration_spec

TORUS = "gens: g x\nrels: g^-1 x g x^-1\n"
ORBIFOLD = "gens: a u v\nrels: u^2, v^3\n"
TORSION_HOM = "mod: 6\na -> 0\nu -> 3\nv -> 2\n"


def ok(argv, stdin=None):
    res = run(argv, stdin)
    assert res.exit_code == 0, res.error
    return res.output


def test_homology_text_and_json():
    assert ok(["homology"], TORUS) == "betti: 1 2 1\ntorsion_h1: none\neuler: 0\n"
    assert json.loads(ok(["homology", "--json"], TORUS)) == {
        "betti": [1, 2, 1], "torsion_h1": [], "euler": 0,
    }
    assert ok(["homology"], "gens: u\nrels: u^4\n").splitlines()[1] == "torsion_h1: 4"


def test_global_json_flag():
    assert ok(["--json", "euler"], TORUS) == ok(["euler", "--json"], TORUS) == '{"euler":0}\n'


def test_euler():
    assert ok(["euler"], ORBIFOLD) == "0\n"


def test_simplify_log():
    out = ok(["simplify", "--log"], "gens: a b\nrels: b a^-1\n")
    assert out.startswith("# move: ")
    assert out.endswith("gens: a\nrels:\n")
    data = json.loads(ok(["simplify", "--json"], "gens: a b\nrels: b a^-1\n"))
    assert data["gens"] == ["a"] and data["rels"] == [] and len(data["moves"]) == 1
    assert data["exhausted"] is False


def test_simplify_budget_warning():
    out = ok(["simplify", "--budget", "1"], "gens: a b c\nrels: b a^-1, c b^-1\n")
    assert "# warning: move budget exhausted" in out


def test_quotient_and_shape():
    assert ok(["quotient", "--kill", "u"], ORBIFOLD) == "gens: a v\nrels: 1, v^3\n"
    assert ok(["shape"], ORBIFOLD) == "fpc:1:2,3\n"
    assert ok(["shape"], TORUS) == "unresolved\n"


def test_cubic_example():
    out = ok(["cubic-example", "--r", "2"])
    assert out == (
        "gens: g1 g2 x1 x2\n"
        "rels: g1^-1 x1 g1 x1^-1, g1^-1 x2 g1 x2^-1 x1^-1, "
        "g2^-1 x1 g2 x1^-1 x2^-1, g2^-1 x2 g2 x2^-1\n"
    )


def test_mapping_torus_from_file(tmp_path):
    spec = tmp_path / "cubic.fib"
    spec.write_text(format_fibration_spec(cubic_pencil_spec(3)))
    assert ok(["mapping-torus", str(spec)]) == ok(["cubic-example", "--r", "3"])


def test_mapping_torus_uncertified_warning():
    text = "fiber: g=1 s=1\nmonodromy:\n  x1 -> x1 x2 x1^-1 x2^-1 x1\n  x2 -> x2\n"
    assert ok(["mapping-torus"], text).startswith("# warning")


def test_rs_and_cover_chi(tmp_path):
    pres, hom = tmp_path / "orb.pres", tmp_path / "torsion.hom"
    pres.write_text(ORBIFOLD)
    hom.write_text(TORSION_HOM)
    kernel = ok(["rs", str(pres), "--hom", str(hom)])
    assert ok(["shape"], kernel) == "free:8\n"
    assert ok(["euler"], kernel) == "0\n"
    assert ok(["cover-chi", str(pres), "--hom", str(hom)]) == "index: 6\nchi_base: 0\nchi_cover: 0\n"
    assert json.loads(ok(["cover-chi", "-", "--hom", str(hom), "--json"], ORBIFOLD)) == {
        "index": 6, "chi_base": 0, "chi_cover": 0,
    }


def test_rs_bad_hom(tmp_path):
    hom = tmp_path / "bad.hom"
    hom.write_text("mod: 4\na -> 1\nu -> 1\nv -> 0\n")
    res = run(["rs", "--hom", str(hom)], ORBIFOLD)
    assert res.exit_code == 1 and "maps to" in res.error


def test_wedge_type():
    assert ok(["wedge-type", "--group", "free:0", "--chi-curve", "2"]).endswith("type: point\n")
    assert ok(["wedge-type", "--group", "free:1", "--chi-curve", "3"]).endswith("type: S^1\n")
    assert json.loads(ok(["wedge-type", "--group", "cyclic:2", "--chi-curve", "2", "--json"])) == {
        "circles": 0, "pseudo_plane": 2, "spheres": 0,
    }


def test_wedge_type_errors():
    res = run(["wedge-type", "--group", "fpc:1:2,3", "--chi-curve", "3"])
    assert res.exit_code == 1 and "homotopy_group_profile" in res.error
    res = run(["wedge-type", "--group", "free:0", "--chi-curve", "3"])
    assert res.exit_code == 1 and "-1 spheres" in res.error
    assert run(["wedge-type", "--group", "torus", "--chi-curve", "0"]).exit_code == 1


def test_homotopy_groups():
    out = ok(["homotopy-groups", "--group", "fpc:1:2,3", "--chi-curve", "3"])
    assert out == "index: 6\nkernel_rank: 8\ncover_chi: 0\ncover_sphere_count: 7\n"


def test_orbifold_json_exact():
    out = ok(["orbifold", "--r", "1", "--p", "2", "--q", "3", "--chi", "0", "--json"])
    assert out == '{"index":6,"kernel_rank":8,"cover_chi":0,"cover_sphere_count":7}\n'


def test_orbifold_gcd_error():
    res = run(["orbifold", "--r", "1", "--p", "2", "--q", "4", "--chi", "0"])
    assert res.exit_code == 1 and "gcd" in res.error


@pytest.mark.parametrize(
    "argv",
    [
        ["homotopy-groups", "--group", "fpc:0:2,3", "--chi-curve", "2"],
        ["orbifold", "--r", "2", "--p", "3", "--q", "5", "--chi", "-1"],
        ["wedge-type", "--group", "free:3", "--chi-curve", "-4"],
    ],
)
def test_json_and_text_agree(argv):
    text = dict(line.split(": ", 1) for line in ok(argv).splitlines())
    data = json.loads(ok(argv + ["--json"]))
    for key, value in data.items():
        assert text[key] == ("none" if value is None else str(value))


def test_parse_error_reports_location(tmp_path):
    f = tmp_path / "broken.pres"
    f.write_text("gens: a b\nrels: a b, a c\n")
    res = run(["homology", str(f)])
    assert res.exit_code == 1
    assert str(f) in res.error and "line 2" in res.error and "'c'" in res.error


def test_usage_errors():
    assert run([]).exit_code == 1
    assert run(["frobnicate"]).exit_code == 1
    assert run(["quotient"], TORUS).exit_code == 1
    assert run(["homology", "/nonexistent/file"]).exit_code == 1
    assert run(["cubic-example", "--r", "1"]).exit_code == 1
    assert run(["quotient", "--kill", "zz"], TORUS).exit_code == 1


def test_internal_defect_exit_code(monkeypatch):
    def boom(p):
        raise AssertionError("broken invariant")

    monkeypatch.setattr(cli, "euler_characteristic", boom)
    res = run(["euler"], TORUS)
    assert res.exit_code == 2 and "internal defect" in res.error


def test_deterministic():
    for argv, stdin in [(["cubic-example", "--r", "5"], None), (["simplify", "--log"], ORBIFOLD),
                        (["shape"], ORBIFOLD)]:
        assert ok(argv, stdin) == ok(argv, stdin)


def _fibercw(*args, stdin=None):
    res = subprocess.run([sys.executable, "-m", "fibercw", *args], input=stdin,
                         capture_output=True, text=True, check=True)
    return res.stdout


def test_shell_pipeline():
    cubic = _fibercw("cubic-example", "--r", "3")
    killed = _fibercw("quotient", "--kill", "g1", stdin=cubic)
    simple = _fibercw("simplify", stdin=killed)
    assert simple == "gens: g2 g3\nrels: 1, 1, 1, 1\n"
    assert _fibercw("shape", stdin=simple) == "free:2\n"


def test_main_exit_code(capsys):
    assert cli.main(["orbifold", "--r", "0", "--p", "2", "--q", "3", "--chi", "1"]) == 0
    assert capsys.readouterr().out.startswith("index: 6")
    assert cli.main(["orbifold", "--r", "0"]) == 1
