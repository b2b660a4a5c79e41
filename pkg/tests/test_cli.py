import json

import pytest

from picode.cli import dumps, main
from picode.codegen import PICode, build_gnu, perturb_amplitude
from picode.specfile import example_specs

from conftest import GOLDEN, load_golden
from worked_examples import matches_published

GNU_SPEC = {"construction": {"kind": "GNU", "g": 3, "n": 3}, "N": 9, "t": 1}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out


@pytest.fixture
def spec_dir(tmp_path, capsys):
    assert run(capsys, "examples", "--dir", tmp_path)[0] == 0
    return tmp_path


def write(path, obj):
    path.write_text(dumps(obj))
    return path


def test_examples_written_and_idempotent(spec_dir, capsys):
    files = sorted(p.name for p in spec_dir.iterdir())
    assert files == [f"example{i}.json" for i in range(1, 7)]
    before = {p.name: p.read_bytes() for p in spec_dir.iterdir()}
    run(capsys, "examples", "--dir", spec_dir)
    assert before == {p.name: p.read_bytes() for p in spec_dir.iterdir()}


@pytest.mark.parametrize("i", range(1, 7))
def test_build_matches_golden(spec_dir, capsys, i):
    code, out = run(capsys, "build", spec_dir / f"example{i}.json")
    assert code == 0
    golden = (GOLDEN / f"example{i}.descriptor.json").read_text()
    assert out == golden
    assert matches_published(PICode.from_descriptor(json.loads(out)), f"example{i}")


def test_build_out_file(spec_dir, tmp_path, capsys):
    target = tmp_path / "code.json"
    assert run(capsys, "build", spec_dir / "example1.json", "--out", target) == (0, "")
    assert target.read_text() == (GOLDEN / "example1.descriptor.json").read_text()


def test_build_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "build", bad)[0] == 1
    assert run(capsys, "build", tmp_path / "missing.json")[0] == 1
    assert run(capsys, "build", write(tmp_path / "s.json", {"construction": {"kind": "TypeA"}}))[0] == 1
    spec = example_specs()["example1.json"]
    spec["p_polys"] = [["19", "-1"], ["0", "1"]]
    code, out = run(capsys, "build", write(tmp_path / "adjacent.json", spec))
    assert code == 2
    err = json.loads(out)
    assert err["error"] == "DistanceTooSmall" and err["distance"] == 1


def test_verify(tmp_path, capsys):
    code, out = run(capsys, "verify", GOLDEN / "example1.descriptor.json")
    assert code == 0 and json.loads(out)["ok"]
    bad = perturb_amplitude(PICode.from_descriptor(load_golden("example1.descriptor.json")))
    code, out = run(capsys, "verify", write(tmp_path / "bad.json", bad.to_descriptor()))
    assert code == 3
    result = json.loads(out)
    assert not result["ok"] and result["violations"]


def test_verify_distance(tmp_path, capsys):
    path = write(tmp_path / "gnu.json", build_gnu(3, 3, 9, 1).to_descriptor())
    code, out = run(capsys, "verify", path, "--distance-up-to", 3)
    assert code == 0
    result = json.loads(out)
    assert result["distance"] == 3 and result["exact"]
    code, out = run(capsys, "verify", path, "--distance-up-to", 2)
    assert code == 0 and json.loads(out)["statement"] == "distance > 2"
    assert run(capsys, "verify", path, "--distance-up-to", 0)[0] == 1


def test_verify_bad_descriptor(tmp_path, capsys):
    assert run(capsys, "verify", write(tmp_path / "x.json", {"q": 2}))[0] == 1


def test_identities(capsys):
    code, out = run(capsys, "identities", "--f", "1,3,3,1,0,0,0", "--m", "3", "--d", "2")
    assert code == 0 and json.loads(out)["pass"]
    code, out = run(capsys, "identities", "--f=-1,4,-5,0,5,-4,1", "--m", "5")
    assert code == 0 and json.loads(out)["pass"]
    code, out = run(capsys, "identities", "--f", "1,2,1,1", "--m", "2")
    assert code == 3 and not json.loads(out)["pass"]
    assert run(capsys, "identities", "--f", "1,0,1", "--d", "2", "--m", "1")[0] == 3
    assert run(capsys, "identities", "--f", "1,x", "--m", "2")[0] == 1


def test_oracle(tmp_path, capsys):
    path = write(tmp_path / "gnu.json", build_gnu(3, 3, 9, 1).to_descriptor())
    code, first = run(capsys, "oracle", path, "--seed", 0, "--channels", 2, "--states", 5, "--trials", 50)
    assert code == 0
    result = json.loads(first)
    assert result["max_abs_delta"] < 1e-9
    assert len(result["fidelity_table"]) == 2
    assert run(capsys, "oracle", path, "--seed", 0, "--channels", 2, "--states", 5, "--trials", 50) == (0, first)


def test_oracle_cap(capsys):
    assert run(capsys, "oracle", GOLDEN / "example2.descriptor.json")[0] == 4


def test_family(capsys):
    p = '[["0","3"],["12","-3"]]'
    code, out = run(capsys, "family", "--m", 3, "--d", 2, "--p", p, "--grid", 3)
    assert code == 0
    result = json.loads(out)
    assert result["grid"] == ["0/1", "1/2", "1/1"]
    assert all(result["overlaps"][i][i] == [{"coeff": "1/1", "radicand": 1}] for i in range(3))
    assert result["ok"]
    assert run(capsys, "family", "--m", 3, "--d", 2, "--p", p, "--grid", 1)[0] == 1
    assert run(capsys, "family", "--m", 3, "--d", 2, "--p", "oops", "--grid", 3)[0] == 1


def test_family_explicit_grid(capsys):
    p = '[["0","3"],["12","-3"]]'
    code, out = run(capsys, "family", "--m", 3, "--d", 2, "--p", p, "--grid", "0,1/2")
    assert code == 0
    # <0_L(0)|0_L(1/2)> = 3/4 + sqrt(2)/8
    assert json.loads(out)["overlaps"][0][1] == [{"coeff": "3/4", "radicand": 1}, {"coeff": "1/8", "radicand": 2}]


def test_descriptor_roundtrip_bytes(tmp_path, capsys):
    for i in range(1, 7):
        text = (GOLDEN / f"example{i}.descriptor.json").read_text()
        assert dumps(PICode.from_descriptor(json.loads(text)).to_descriptor()) == text


def test_bad_arguments(capsys):
    assert run(capsys, "nope")[0] == 1
    assert run(capsys, "--help")[0] == 0
