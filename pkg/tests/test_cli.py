import json
import math

import pytest

import integralgap as ig
from integralgap import cli


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_volume_ball(capsys):
    code, out, err = run_cli(capsys, "volume", "ball", "--d", "2", "--p", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == pytest.approx(math.pi / 4)
    assert doc["method"] == "closed_form"
    assert "ball volume" in err


def test_volume_slice_inf(capsys):
    code, out, _ = run_cli(capsys, "volume", "slice", "--d", "3", "--p", "inf")
    assert code == 0
    assert json.loads(out)["value"] == 0.5


def test_volume_mc(capsys):
    code, out, _ = run_cli(capsys, "volume", "ball", "--d", "2", "--p", "2",
                           "--mc-samples", "100000", "--seed", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "monte_carlo"
    assert abs(doc["value"] - math.pi / 4) < 5 * doc["stderr"]


def test_bad_p_is_input_error(capsys):
    code, out, _ = run_cli(capsys, "volume", "ball", "--d", "2", "--p", "two")
    assert code == 2
    assert json.loads(out)["error"] == "InputError"


def test_construct_certify_render_roundtrip(tmp_path, capsys):
    arr_file = str(tmp_path / "two.json")
    code, out, _ = run_cli(capsys, "construct", "two", "--n", "2", "--d", "2",
                           "--p", "2", "--epsilon", "0.1", "-o", arr_file)
    assert code == 0
    assert json.loads(out)["n"] == 2

    # schema roundtrip
    with open(arr_file) as fh:
        doc = json.load(fh)
    arr = cli.arrangement_from_json(doc)
    assert cli.arrangement_to_json(arr) == doc

    code, out, err = run_cli(capsys, "certify", arr_file, "--lines", "60")
    assert code == 0
    cert = json.loads(out)
    assert cert["verdict"] == "pass"
    assert "certificate: pass" in err

    svg_file = str(tmp_path / "two.svg")
    code, out, _ = run_cli(capsys, "render", arr_file, "-o", svg_file)
    assert code == 0
    svg = open(svg_file).read()
    assert svg.startswith("<?xml")
    assert svg.count("<path") == 2
    assert svg.count("<circle") == 2


def test_certify_failing_arrangement_exit_code(tmp_path, capsys):
    sp = ig.PNormSpace(2, 2.0)
    arr = ig.Arrangement(sp, (ig.ball(sp, (0.0, 0.0), 0.9),
                              ig.ball(sp, (2.0, 0.0), 0.9)))
    path = str(tmp_path / "bad.json")
    with open(path, "w") as fh:
        json.dump(cli.arrangement_to_json(arr), fh)
    code, out, _ = run_cli(capsys, "certify", path, "--lines", "30")
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


def test_schema_rejects_unknown_fields():
    with pytest.raises(ig.InputError):
        cli.space_from_json({"d": 2, "p": 2, "extra": 1})
    with pytest.raises(ig.InputError):
        cli.arrangement_from_json({"version": 1, "space": {"d": 2, "p": 2},
                                   "components": [], "label": "", "junk": 0})
    with pytest.raises(ig.InputError):
        cli.arrangement_from_json({"version": 99, "space": {"d": 2, "p": 2},
                                   "components": [], "label": ""})


def test_schema_inf_p_roundtrip():
    sp = ig.PNormSpace(2, math.inf)
    arr = ig.Arrangement(sp, (ig.ball(sp, (0.0, 0.0), 0.9),), label="box")
    doc = cli.arrangement_to_json(arr)
    assert doc["space"]["p"] == "inf"
    back = cli.arrangement_from_json(doc)
    assert back.space.p == math.inf
    assert back.label == "box"


def test_search_k(capsys):
    code, out, _ = run_cli(capsys, "search-k", "--prime", "3",
                           "--epsilon", "0.1", "--kmax", "100")
    assert code == 0
    assert json.loads(out)["k"] == 2


def test_search_k_exhausted(capsys):
    code, out, _ = run_cli(capsys, "search-k", "--prime", "5",
                           "--epsilon", "0.01", "--kmax", "10")
    assert code == 2
    assert json.loads(out)["error"] == "SearchExhaustedError"


def test_odd_check(tmp_path, capsys):
    ps = ig.PointSet(2, ((0.0, 0.0), (1.0, 0.0),
                         (0.5, math.sqrt(3) / 2)))
    path = str(tmp_path / "tri.json")
    with open(path, "w") as fh:
        json.dump(cli.pointset_to_json(ps), fh)
    code, out, _ = run_cli(capsys, "odd", "check", path)
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_odd_check_fail(tmp_path, capsys):
    ps = ig.PointSet(1, ((0.0,), (2.0,)))
    path = str(tmp_path / "pair.json")
    with open(path, "w") as fh:
        json.dump(cli.pointset_to_json(ps), fh)
    code, out, _ = run_cli(capsys, "odd", "check", path)
    assert code == 1
    assert json.loads(out)["pair"] == [0, 1]


def test_odd_search(capsys):
    code, out, _ = run_cli(capsys, "odd", "search", "--d", "3", "--n", "4",
                           "--max-odd", "1")
    assert code == 0
    found = json.loads(out)["found"]
    assert len(found) == 1
    assert found[0]["dimension"] == 3


def test_bounds(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--n", "2", "--d", "2", "--p", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["chain_ok"] is True
    assert "2" in doc["entries"] and "4" in doc["entries"]


def test_render_rejects_3d(tmp_path, capsys):
    sp = ig.PNormSpace(3, 2.0)
    arr = ig.Arrangement(sp, (ig.ball(sp, (0, 0, 0), 0.9),))
    path = str(tmp_path / "b3.json")
    with open(path, "w") as fh:
        json.dump(cli.arrangement_to_json(arr), fh)
    code, out, _ = run_cli(capsys, "render", path, "-o", str(tmp_path / "x.svg"))
    assert code == 2
    assert json.loads(out)["error"] == "UnsupportedError"


def test_missing_file(capsys):
    code, out, _ = run_cli(capsys, "certify", "/nonexistent/arr.json")
    assert code == 2
    assert json.loads(out)["error"] == "FileNotFoundError"


def test_render_non_euclidean(tmp_path, capsys):
    sp = ig.PNormSpace(2, 1.5)
    arr = ig.Arrangement(sp, (ig.ball(sp, (0.0, 0.0), 0.9),))
    path = str(tmp_path / "p15.json")
    with open(path, "w") as fh:
        json.dump(cli.arrangement_to_json(arr), fh)
    svg_file = str(tmp_path / "p15.svg")
    code, _, _ = run_cli(capsys, "render", path, "-o", svg_file)
    assert code == 0
    assert "<path" in open(svg_file).read()
