import json
import os

import pytest
from click.testing import CliRunner

from siltglue.cli import main
from siltglue.fixtures import write_fixture_files


@pytest.fixture(scope="module")
def fx(tmp_path_factory):
    d = tmp_path_factory.mktemp("fx")
    return write_fixture_files(str(d))


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_algebra_check(fx):
    res = run("algebra-check", fx["algebra"])
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert data["dimension"] == 6
    assert data["vertices"] == ["1", "2", "3"]
    assert "algebra ok" in res.stderr


def test_algebra_check_cycle_exits_2(tmp_path):
    bad = tmp_path / "cyclic.json"
    bad.write_text(
        json.dumps(
            {
                "v": 1,
                "field": "Q",
                "vertices": ["1", "2"],
                "arrows": [
                    {"name": "a", "from": "1", "to": "2"},
                    {"name": "b", "from": "2", "to": "1"},
                ],
            }
        )
    )
    res = run("algebra-check", str(bad))
    assert res.exit_code == 2
    assert "cycle" in res.stderr


def test_algebra_check_missing_file_exits_2():
    res = run("algebra-check", "no_such_file.json")
    assert res.exit_code == 2
    assert "input error" in res.stderr


def test_hom_anchor(fx):
    res = run("hom", fx["i2"], fx["p3"])
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert data["dims"]["1"]["dim"] == 1
    assert data["dims"]["0"]["dim"] == 0


def test_hom_reps_are_included(fx):
    res = run("hom", fx["i2"], fx["p3"], "--reps")
    data = json.loads(res.stdout)
    assert "representatives" in data["dims"]["1"]


def test_minimize(fx):
    res = run("minimize", fx["i2"])
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert data["minimal"]["components"] == {"-1": ["3"], "0": ["1"]}


def test_decompose_cmd(fx):
    res = run("decompose", fx["tb"])
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert len(data["summands"]) == 2
    assert all(s["certified"] for s in data["summands"])


def test_envelope_cmd(fx, tmp_path):
    # M = i_* of the shifted quotient silting is shipped indirectly; instead
    # check the envelope of I2 by P3: s = 1, U = P3[1]-shaped
    res = run("envelope", fx["i2"], fx["p3"])
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert data["s"] == 1
    assert data["certificates"]["cocone_orthogonal"] is True


def test_recollement_cmd(fx):
    res = run("recollement", fx["algebra"], "--e", "3")
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert data["S"] == ["3"]
    assert data["resolutions"] == {"1": [["a", "b"]], "2": [["b"]]}


def test_recollement_bad_subset_exits_2(fx):
    res = run("recollement", fx["algebra"], "--e", "1")
    assert res.exit_code == 2
    assert "arrow a" in res.stderr


def test_glue_end_to_end(fx):
    res = run("glue", fx["algebra"], "--e", "3", "--tc", fx["tc"], "--tb", fx["tb"])
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert data["passed"] is True
    mults = sorted(d["multiplicity"] for d in data["decomposition"])
    assert mults == [1, 1, 1]
    assert "T decomposes as" in res.stderr


def test_glue_shortcut_matches(fx):
    full = run("glue", fx["algebra"], "--e", "3", "--tc", fx["tc"], "--tb", fx["tb"])
    quick = run("glue", fx["algebra"], "--e", "3", "--shortcut", "--tb", fx["tb"])
    assert quick.exit_code == 0
    a = json.loads(full.stdout)["decomposition"]
    b = json.loads(quick.stdout)["decomposition"]
    key = lambda d: json.dumps(d["complex"], sort_keys=True)
    assert sorted(map(key, a)) == sorted(map(key, b))


def test_glue_requires_tc_or_shortcut(fx):
    res = run("glue", fx["algebra"], "--e", "3", "--tb", fx["tb"])
    assert res.exit_code == 2


def test_glue_byte_determinism(fx):
    runs = [
        run("glue", fx["algebra"], "--e", "3", "--tc", fx["tc"], "--tb", fx["tb"], "--seed", "0")
        for _ in range(2)
    ]
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].stderr == runs[1].stderr


def test_check_silting_pass(fx):
    res = run("check-silting", fx["p1"], fx["p2"], fx["p3"])
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert data["silting_certified"] is True
    assert data["k0"]["unimodular"] is True


def test_check_silting_failure_exits_1(fx):
    # a shifted projective generator is presilting but cannot generate
    res = run("check-silting", fx["p1"], fx["p2"])
    assert res.exit_code == 1
    data = json.loads(res.stdout)
    assert data["generation"]["status"] == "inconclusive"


def test_fixtures_flag(tmp_path):
    out = str(tmp_path / "out")
    res = run("--fixtures", out)
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    assert os.path.exists(data["written"]["algebra"])


def test_fixtures_subcommand(tmp_path):
    out = str(tmp_path / "sub")
    res = run("fixtures", "--out", out)
    assert res.exit_code == 0
    assert os.path.exists(os.path.join(out, "ka3_algebra.json"))
