import json
from importlib import resources

import jsonschema
import pytest

from p5fiber import cli


def schema(name):
    return json.loads(resources.files("p5fiber").joinpath("schemas", f"{name}.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, name",
    [
        (["polytope"], "polytope"),
        (["color", "search"], "colorings"),
        (["color", "verify"], "verify"),
        (["manifold"], "manifold"),
        (["cubulate"], "cubulate"),
        (["game", "classify"], "classify"),
        (["fiber", "--fixture", "T2", "--t", "1/2"], "fiber"),
        (["fixtures"], "fixtures"),
    ],
)
def test_json_outputs_validate(capsys, argv, name):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    jsonschema.validate(json.loads(out), schema(name))


def test_polytope_counts(capsys):
    _, out, _ = run(capsys, "polytope")
    data = json.loads(out)
    assert data["facet_count"] == 16 and data["orthogonal_pairs"] == 80


def test_dot_output(capsys):
    code, out, _ = run(capsys, "polytope", "--format", "dot")
    assert code == 0 and out.startswith("graph P5 {") and out.count(" -- ") == 80


def test_fiber_fixture(capsys):
    _, out, _ = run(capsys, "fiber", "--fixture", "T2", "--t", "1/2", "--cells")
    data = json.loads(out)
    assert data["level_set"]["pi0"] == 1 and data["level_set"]["betti_gf2"] == [1, 1]
    assert len(data["cells"]) == 4


def test_out_directory(tmp_path, capsys):
    code, out, _ = run(capsys, "cubulate", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "cubulate.json").read_text() == out


@pytest.mark.parametrize(
    "argv",
    [
        ["game", "classify", "--partition", "1,1|2"],
        ["fiber", "--fixture", "T2", "--t", "0"],
        ["color", "search", "--search-coloring", "4"],
        ["manifold", "--coloring", "/nonexistent/file.txt"],
    ],
)
def test_precondition_failures_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    jsonschema.validate(json.loads(err.strip().splitlines()[-1]), schema("error"))


def test_improper_coloring_file(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("".join(f"{cli.P.facet_label(f)} 1\n" for f in range(16)))
    code, _, _ = run(capsys, "manifold", "--coloring", str(p))
    assert code == 2


def _fake_report(inconclusive):
    return {
        "links": {"inconclusive": inconclusive, "table": []},
        "cusps": {"patterns_ok": True},
    }


@pytest.mark.parametrize("inconclusive, code", [(0, 0), (3, 3)])
def test_morse_exit_codes(monkeypatch, capsys, inconclusive, code):
    import p5fiber.morse.pipeline as pl

    monkeypatch.setattr(pl, "run_morse", lambda *a, **k: (_fake_report(inconclusive), [], {}))
    got, _, _ = run(capsys, "morse", "run", "--no-fiber")
    assert got == code


def test_internal_inconsistency_exit_4(monkeypatch, capsys):
    import p5fiber.morse.pipeline as pl

    def boom(*a, **k):
        raise pl.InvariantError("replay failed")

    monkeypatch.setattr(pl, "run_morse", boom)
    got, _, err = run(capsys, "morse", "run")
    assert got == 4 and "InvariantError" in err
