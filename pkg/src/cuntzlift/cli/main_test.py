import json

from fractions import Fraction

import pytest

from . import config, main
from ..determinant import Check, Report
from ..graph import MetricGraph
from ..schema import dumps
from ..spectral import DiagonalUnitary, TrackPiece, UnitaryField, cu_of_unitary


@pytest.fixture(scope="function", autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(config.ENV_RESOLUTION_CAP, raising=False)


@pytest.fixture(scope="function")
def write(tmp_path):
    def _write(name: str, obj) -> str:
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else dumps(obj))
        return str(path)

    return _write


@pytest.fixture(scope="function")
def constant_w2() -> UnitaryField:
    return UnitaryField.constant(MetricGraph.interval(), ["0", "1/4", "1/2", "3/4"])


@pytest.fixture(scope="function")
def moving_w2() -> UnitaryField:
    angles = [Fraction(j, 4) for j in range(4)]
    return UnitaryField(
        MetricGraph.interval(),
        4,
        {"0": angles, "1": angles},
        [[[TrackPiece(0, 1, a, a + 1)] for a in angles]],
    )


def dirac(angle, n: int):
    return cu_of_unitary(DiagonalUnitary.from_angles([angle]), n)


def run(capsys, *argv) -> tuple:
    status = main.main(list(argv))
    return status, capsys.readouterr().out


def test_build_parser():
    args = main.build_parser().parse_args(["demo", "obstruction", "--level", "2", "-vv"])
    assert args.level == 2
    assert args.verbose == 2
    assert args.func is not None

    args = main.build_parser().parse_args(["cauchy", "check", "--sequence", "s", "--C", "1/2"])
    assert args.C == Fraction(1, 2)
    assert args.start == 1


def test_load_settings(tmp_path):
    path = tmp_path / "settings.toml"
    path.write_text("[cuntzlift]\nseed = 5\ntrials = 3\nresolution_cap = 2\n")
    args = main.build_parser().parse_args(
        ["selftest", "--config", str(path), "--seed", "9", "--format", "text"]
    )
    settings = main.load_settings(args, {config.ENV_RESOLUTION_CAP: "4"})
    assert settings == config.Settings(
        resolution_cap=4, seed=9, output_format="text", trials=3
    )

    args = main.build_parser().parse_args(["selftest", "--config", str(path), "--trials", "1"])
    assert main.load_settings(args, {}).trials == 1


def test_lift_fd_round_trip(write, tmp_path):
    alpha = cu_of_unitary(DiagonalUnitary([["3/16", "1/2", "5/8"], ["0"]]), 2)
    morphism = write("m.json", alpha)
    unitary = str(tmp_path / "u.json")
    again = str(tmp_path / "m2.json")

    assert main.main(["lift", "fd", "--morphism", morphism, "--out", unitary]) == 0
    assert (
        main.main(["cu", "of-unitary", "--unitary", unitary, "--resolution", "2", "--out", again])
        == 0
    )
    with open(morphism) as f, open(again) as g:
        assert f.read() == g.read()


def test_lift_fd_sequence(write, capsys):
    morphism = write("m.json", dirac("3/16", 3))
    status, out = run(capsys, "lift", "fd", "--morphism", morphism, "--n-max", "2")
    assert status == 0
    doc = json.loads(out)
    assert doc["type"] == "sequence"
    assert [item["blocks"] for item in doc["items"]] == [[["1/4"]], [["1/8"]]]


def test_lift_graph_verify(write, capsys):
    crossing = UnitaryField(
        MetricGraph.interval(),
        1,
        {"0": ["1/8"], "1": ["3/8"]},
        [[[TrackPiece(0, 1, "1/8", "3/8")]]],
    )
    morphism = write("m.json", cu_of_unitary(crossing, 3))
    status, out = run(capsys, "lift", "graph", "--morphism", morphism, "--verify")
    assert status == 0
    doc = json.loads(out)
    assert doc["type"] == "lift_report"
    assert doc["ok"] is True

    status, out = run(capsys, "lift", "graph", "--morphism", morphism)
    assert status == 0
    assert json.loads(out)["type"] == "unitary_field"


def test_cu_distance_diracs(write, capsys):
    a = write("a.json", dirac("3/16", 4))
    b = write("b.json", dirac("1/2", 4))
    status, out = run(capsys, "cu", "distance", "--a", a, "--b", b, "--discrete")
    assert status == 0
    assert json.loads(out)["value"] == "1/2"

    status, out = run(capsys, "cu", "distance", "--a", a, "--b", b)
    assert status == 0
    assert json.loads(out)["value"] == "5/16"


def test_cu_compare(write, capsys):
    a = write("a.json", dirac("1/8", 2))
    status, out = run(capsys, "cu", "compare", "--a", a, "--b", a, "--format", "text")
    assert status == 0
    assert out == "compare_on_lambda_2: pass\nverdict: compare\n"


def test_cu_du_match(write, capsys):
    u = write("u.json", DiagonalUnitary.from_angles(["0", "1/4"]))
    v = write("v.json", DiagonalUnitary.from_angles(["1/8", "1/4"]))
    status, out = run(capsys, "cu", "du-match", "--u", u, "--v", v)
    assert status == 0
    doc = json.loads(out)
    assert doc["items"][0]["bottleneck"] == "1/8"
    assert doc["items"][0]["pairs"] == [[0, 0], [1, 1]]

    w = write("w.json", DiagonalUnitary.from_angles(["0"]))
    assert main.main(["cu", "du-match", "--u", u, "--v", w]) == 1


def test_cauchy_commands(write, capsys, monkeypatch):
    monkeypatch.setenv(config.ENV_RESOLUTION_CAP, "7")
    seq = write(
        "s.json", [dirac(Fraction(1, 8) + Fraction(1, 2 ** (i + 3)), 7) for i in range(1, 5)]
    )
    status, out = run(capsys, "cauchy", "check", "--sequence", seq, "--C", "1")
    assert status == 0
    assert json.loads(out)["checks"][0]["pass"] is True

    status, out = run(capsys, "cauchy", "check", "--sequence", seq, "--C", "1/1024")
    assert status == 1
    assert json.loads(out)["checks"][0]["computed_value"] == "fails"

    status, out = run(capsys, "cauchy", "limit", "--sequence", seq, "--C", "1", "--at", "2")
    assert status == 0
    doc = json.loads(out)
    assert doc["type"] == "cauchy_limit"
    assert doc["error_bounds"] == ["1/4", "1/8", "1/16"]

    unsettled = write("u.json", [dirac(0, 3), dirac("1/2", 3)])
    assert main.main(["cauchy", "limit", "--sequence", unsettled, "--C", "1/8"]) == 1


def test_dhs_det(write, capsys, constant_w2):
    field = write("u.json", constant_w2)
    turns = write("turns.json", "[[1, 0, 0, 0]]")
    status, out = run(capsys, "dhs", "det", "--field", field, "--turns", turns)
    assert status == 0
    assert json.loads(out)["vertex_values"] == {"0": "5/8", "1": "5/8"}

    bad = write("bad.json", '[[1, "x", 0, 0]]')
    assert main.main(["dhs", "det", "--field", field, "--turns", bad]) == 1


def test_dhs_certify(write, capsys, constant_w2, moving_w2):
    u = write("u.json", constant_w2)
    v = write("v.json", moving_w2)
    status, out = run(capsys, "dhs", "certify", "--u", u, "--v", v)
    assert status == 0
    doc = json.loads(out)
    assert doc["kind"] == "nonconstant"
    assert doc["values"] == ["0", "1/2"]

    status, out = run(capsys, "dhs", "certify", "--u", u, "--v", u)
    assert status == 1
    assert json.loads(out)["verdict"] == "inconclusive"


def test_demo_obstruction(capsys):
    status, out = run(capsys, "demo", "obstruction", "--level", "3")
    assert status == 0
    doc = json.loads(out)
    assert doc["name"] == "obstruction"
    assert all(check["pass"] for check in doc["checks"])


def test_demo_jiang_su_text(capsys):
    status, out = run(
        capsys, "demo", "jiang-su", "--k", "1", "--l", "2", "--top", "3", "--format", "text"
    )
    assert status == 0
    assert out.startswith("jiang_su: pass\n")
    assert "verdict: not aue\n" in out
    assert "  constant difference -1/2\n" in out


def test_resolution_cap(capsys, monkeypatch):
    assert main.main(["demo", "obstruction", "--level", "7"]) == 1
    monkeypatch.setenv(config.ENV_RESOLUTION_CAP, "2")
    assert main.main(["demo", "obstruction", "--level", "3"]) == 1
    assert main.main(["demo", "obstruction", "--level", "1"]) == 0


def test_resolution_flag(write, capsys, monkeypatch):
    assert main.main(["demo", "obstruction", "--level", "3", "--resolution", "2"]) == 1
    assert main.main(["demo", "obstruction", "--level", "1", "--resolution", "2"]) == 0
    # the flag lowers the cap but never raises it
    monkeypatch.setenv(config.ENV_RESOLUTION_CAP, "2")
    assert main.main(["demo", "obstruction", "--level", "1", "--resolution", "3"]) == 1

    unitary = write("u.json", DiagonalUnitary.from_angles(["3/16"]))
    status, out = run(capsys, "cu", "of-unitary", "--unitary", unitary)
    assert status == 0
    assert json.loads(out)["resolution"] == 2
    status, out = run(capsys, "cu", "of-unitary", "--unitary", unitary, "--resolution", "1")
    assert status == 0
    assert json.loads(out)["resolution"] == 1
    assert main.main(["cu", "of-unitary", "--unitary", unitary, "--at", "3"]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["demo"],
        ["demo", "obstruction", "--level", "x"],
        ["cu", "of-unitary", "--bogus"],
        ["cauchy", "limit", "--C", "1"],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as e:
        main.main(argv)
    assert e.value.code == main.EXIT_FAILURE
    assert "error:" in capsys.readouterr().err


def test_help_and_version(capsys):
    for argv in (["--help"], ["--version"], ["demo", "obstruction", "--help"]):
        with pytest.raises(SystemExit) as e:
            main.main(argv)
        assert e.value.code == 0


def test_invariant_violation(capsys, monkeypatch):
    failing = Report("obstruction", [Check("dd_cu", "<= 1/2", "1", False)])
    monkeypatch.setattr(main, "obstruction_demo", lambda n: failing)
    status, out = run(capsys, "demo", "obstruction", "--level", "1")
    assert status == 2
    assert json.loads(out)["checks"][0]["pass"] is False


def test_validate(write, capsys):
    alpha = dirac("3/16", 2)
    status, out = run(capsys, "validate", "--input", write("a.json", alpha))
    assert status == 0
    assert [check["name"] for check in json.loads(out)["checks"]] == ["schema", "consistent"]

    doc = json.loads(dumps(cu_of_unitary(DiagonalUnitary.from_angles(["3/16", "1/2", "5/8"]), 2)))
    for arc in doc["arcs"]:
        if arc["start"] == "0" and arc["length"] == "1":
            arc["value"] = [0]
    status, out = run(capsys, "validate", "--input", write("bad.json", json.dumps(doc)))
    assert status == 1
    assert json.loads(out)["checks"][1]["pass"] is False

    assert main.main(["validate", "--input", write("broken.json", "{")]) == 1
    assert main.main(["validate", "--input", write("s.json", alpha), "--kind", "step_lsc"]) == 1
    assert main.main(["validate", "--input", "/nonexistent/a.json"]) == 1


def test_selftest(capsys):
    status, out = run(capsys, "selftest", "--trials", "2", "--seed", "3")
    assert status == 0
    doc = json.loads(out)
    assert [check["name"] for check in doc["checks"]] == [name for name, _, _ in main.TRIALS]
    assert all(check["computed_value"] == "2/2" for check in doc["checks"])

    status, again = run(capsys, "selftest", "--trials", "2", "--seed", "3")
    assert again == out


def test_render_text():
    report = Report("demo", [Check("dd_cu", "<= 1/2", Fraction(1, 2), True)], notes=("x",))
    assert main.render_text(report) == (
        "demo: pass\n  [ok] dd_cu: 1/2 (claimed <= 1/2)\nnote: x\n"
    )
