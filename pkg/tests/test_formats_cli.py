import json
from pathlib import Path

import pytest

from cornering import cli, formats, orbifold
from cornering.algebra import INFINITY, loop_quiver, truncated_algebra
from cornering.exactla import Matrix
from cornering.fdmod import is_isomorphic, module_from_arrows, regular_column
from cornering.formats import FormatError
from cornering.orbifold import Partition, fixed_point_module
from cornering.recollement import CounterexampleError, Covering, slice_module


def test_matrix_round_trip():
    m = Matrix([["1/2", "-3"], ["0", "7/5"]])
    data = formats.matrix_to_json(m)
    assert data == [["1/2", "-3"], ["0", "7/5"]]
    assert formats.matrix_from_json(data, 2, 2) == m
    assert formats.matrix_from_json([], 0, 3).shape == (0, 3)


@pytest.mark.parametrize("data,where", [
    ([["1", "x"]], "/m/0/1"),
    ([["1"]], "/m/0"),
    ([["1", "2"], ["3", "4"]], "/m"),
    ("nope", "/m"),
    ([[True, "1"]], "/m/0/0"),
])
def test_matrix_errors_carry_positions(data, where):
    with pytest.raises(FormatError) as err:
        formats.matrix_from_json(data, 1, 2, "/m")
    assert err.value.where == where


def test_json_syntax_errors_carry_line_and_column():
    with pytest.raises(FormatError) as err:
        formats.loads('{\n  "a": [1,\n}', "f.json")
    assert err.value.where == "f.json:3:1"


@pytest.mark.parametrize("preset", ["star:2", "loop", "mckay:2", "mckay:3"])
def test_algebra_round_trip(preset):
    A, extra = formats.preset_algebra(preset, 3)
    doc = formats.loads(formats.dumps(formats.algebra_to_json(A, extra)))
    B = formats.algebra_from_json(doc)
    assert B.dim == A.dim
    assert formats.digest(formats.algebra_to_json(B)) == formats.digest(formats.algebra_to_json(A))


def test_trivial_path_terms():
    doc = {"vertices": ["0"], "source": "0", "arrows": [{"id": "x", "tail": "0", "head": "0"}],
           "relations": [[["1", ["x", "x"]], ["-1", [], "0"]]], "truncation_level": 3}
    # e = x^2 gives e = x^4 = 0 once paths of length 4 are cut
    assert formats.algebra_from_json(doc).dim == 0
    bad = dict(doc, relations=[[["1", ["x", "x"]], ["-1", []]]])
    with pytest.raises(FormatError):
        formats.algebra_from_json(bad)


def test_algebra_document_errors():
    good = formats.algebra_to_json(truncated_algebra(loop_quiver(), [], 2))
    with pytest.raises(FormatError, match="truncation_level"):
        formats.algebra_from_json({k: v for k, v in good.items() if k != "truncation_level"})
    with pytest.raises(FormatError) as err:
        formats.algebra_from_json(dict(good, relations=[[["1", ["y"]]]]))
    assert err.value.where == "/relations/0/0/1"
    with pytest.raises(FormatError):
        formats.algebra_from_json(dict(good, convention="leftmost-applied-first"))


def test_module_round_trip(mckay2):
    F = fixed_point_module(Partition((2, 1, 1)), 2, 4)
    doc = formats.loads(formats.dumps(formats.module_to_json(F)))
    G = formats.module_from_json(doc, mckay2)
    assert G.actions == F.actions


def test_module_reference_mismatch(mckay2, mckay3):
    F = fixed_point_module(Partition((2,)), 2, 4)
    doc = formats.module_to_json(F)
    with pytest.raises(FormatError, match="digest"):
        formats.module_from_json(doc, mckay3)


def test_module_unknown_arrow(mckay2):
    with pytest.raises(FormatError) as err:
        formats.module_from_json({"dims": [1, 0, 0], "arrows": {"q": []}}, mckay2)
    assert err.value.where == "/arrows"


def test_bundle_round_trip(mckay3):
    F = fixed_point_module(Partition((2, 1)), 3, 4)
    bundle = slice_module(F, Covering.parse(mckay3, "∞0,1|∞1,2"))
    doc = formats.loads(formats.dumps(formats.bundle_to_json(bundle)))
    back = formats.bundle_from_json(doc, mckay3)
    assert [N.actions for N in back.slices] == [N.actions for N in bundle.slices]
    assert back.provenance == "sliced-from-module"
    doc["slices"] = doc["slices"][::-1]
    with pytest.raises(FormatError):
        formats.bundle_from_json(doc, mckay3)


def test_slice_unknown_path(star):
    N = slice_module(regular_column(star, "0"), [{"0", "1"}, {"0", "2"}]).slices[0]
    doc = formats.slice_to_json(N)
    doc["actions"][0]["path"] = ["b"]
    with pytest.raises(FormatError, match="not a basis path"):
        formats.slice_from_json(doc, star)


def test_counterexample_artifact_replays(mckay2):
    dims = {INFINITY: 0, "0": 1, "1": 1}
    F = module_from_arrows(mckay2, dims, {"x0": [[1]]})
    G = module_from_arrows(mckay2, dims, {})
    art = formats.counterexample_artifact(F, G, Covering.parse(mckay2, "∞0|∞1"))
    A = formats.algebra_from_json(art["algebra"])
    F2, G2 = (formats.module_from_json(d, A) for d in art["modules"])
    assert is_isomorphic(F2, G2).no
    body = {k: v for k, v in art.items() if k != "digest"}
    assert art["digest"] == formats.digest(body)


# -- command line ----------------------------------------------------------------------------


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_pipeline(tmp_path, capsys):
    alg = tmp_path / "alg.json"
    code, out, _ = run(capsys, "algebra", "build", "--preset", "mckay:2", "--truncation", "4", "--out", str(alg))
    assert code == 0 and "dimension 41" in out
    A = formats.load_algebra(alg)
    F = fixed_point_module(Partition((2, 1, 1)), 2, 4)
    mod = tmp_path / "mod.json"
    ref = {"path": "alg.json", "digest": formats.digest(formats.algebra_to_json(A))}
    formats.write_json(mod, formats.module_to_json(formats.module_from_json(formats.module_to_json(F), A), ref))

    code, out, _ = run(capsys, "module", "info", str(mod))
    assert code == 0 and "0-generated=True" in out

    (tmp_path / "sub").mkdir()
    bundle = tmp_path / "sub" / "bundle.json"
    code, _, _ = run(capsys, "slice", str(mod), "--covering", "∞0|∞1", "--out", str(bundle))
    assert code == 0
    assert json.loads(bundle.read_text())["algebra_ref"]["path"] == "../alg.json"

    report = tmp_path / "sub" / "rec.json"
    code, out, _ = run(capsys, "reconstruct", str(bundle), "--origin", str(mod), "--out", str(report))
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["consistent"] and doc["isomorphic_to_origin"] == "yes"
    assert doc["dims"] == {INFINITY: 1, "0": 2, "1": 2}
    assert "isomorphism_witness" in doc


def test_cli_algebra_inspect(tmp_path, capsys):
    alg = tmp_path / "alg.json"
    run(capsys, "algebra", "build", "--preset", "star:2", "--truncation", "1", "--out", str(alg))
    code, out, _ = run(capsys, "algebra", "inspect", "--algebra", str(alg), "--out", str(tmp_path / "i.json"))
    assert code == 0 and "structure checks pass" in out
    doc = json.loads((tmp_path / "i.json").read_text())
    assert doc["dim"] == 5 and doc["ok"]


def test_cli_hilb_key_value_syntax(tmp_path, capsys):
    out = tmp_path / "h.json"
    code, text, _ = run(capsys, "hilb", "m=2", "n=1,1", "covering=[∞0|∞1]", "--out", str(out))
    assert code == 0
    assert "2 fixed points, 1 pairs, 1 distinguished" in text
    doc = json.loads(out.read_text())
    assert doc["config"]["seed"] == 0
    assert doc["pairs"][0]["witness_slice"] == 1


def test_cli_hilb_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"m": 3, "n": [1, 1, 1], "covering": "∞0,1|∞1,2", "truncation_level": 3}))
    code, text, _ = run(capsys, "hilb", "--config", str(cfg))
    assert code == 0 and "3 distinguished" in text


def test_cli_reports_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(capsys, "hilb", "--m", "3", "--n", "1,1,1", "--out", str(p))
    assert a.read_bytes() == b.read_bytes()
    run(capsys, "hilb", "--m", "3", "--n", "1,1,1", "--out", str(a), "--timings")
    assert "timings" in json.loads(a.read_text())


def test_cli_check_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code, first, _ = run(capsys, "check", "--seed", "3", "--modules", "1", "--out", str(a))
    assert code == 0
    _, second, _ = run(capsys, "check", "--seed", "3", "--modules", "1", "--out", str(b))
    assert first == second and a.read_bytes() == b.read_bytes()
    assert all(s["passed"] for s in json.loads(a.read_text())["suites"])


def test_cli_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [\n')
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "algebra", "inspect", "--algebra", str(bad), "--out", str(out))
    assert code == cli.EXIT_INPUT
    payload = json.loads(err)
    assert payload["error"]["type"] == "parse"
    assert payload["error"]["where"].endswith("bad.json:2:1")
    failure = json.loads((tmp_path / "r.failure.json").read_text())
    assert failure["kind"] == "failure" and failure["config_digest"].startswith("sha256:")


def test_cli_relation_violation(tmp_path, capsys):
    alg = tmp_path / "alg.json"
    run(capsys, "algebra", "build", "--preset", "mckay:2", "--truncation", "2", "--out", str(alg))
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"algebra_ref": "alg.json", "dims": [1, 1, 0],
                               "arrows": {"b": [["1"]], "b*": [["1"]]}}))
    code, _, err = run(capsys, "module", "validate", str(mod))
    assert code == cli.EXIT_INPUT
    payload = json.loads(err)["error"]
    assert payload["type"] == "validation" and "residual" in payload["detail"]


def test_cli_missing_algebra(tmp_path, capsys):
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"dims": [1], "arrows": {}}))
    code, _, err = run(capsys, "module", "validate", str(mod))
    assert code == cli.EXIT_INPUT and json.loads(err)["error"]["type"] == "reference"


def test_cli_bad_field(capsys):
    code, _, err = run(capsys, "hilb", "--m", "2", "--n", "1,1", "--field", "prime:9")
    assert code == cli.EXIT_INPUT and "not prime" in err


def test_cli_prime_field_mode(capsys):
    code, text, _ = run(capsys, "hilb", "--m", "2", "--n", "1,1", "--field", "prime:101")
    assert code == 0 and "1 distinguished" in text


def test_cli_writes_counterexample_artifacts(tmp_path, capsys, monkeypatch):
    def fake(F, G, c):
        raise CounterexampleError("forced", formats.counterexample_artifact(F, G, c))

    monkeypatch.setattr(orbifold, "distinguishing_slice", fake)
    out = tmp_path / "h.json"
    code, _, _ = run(capsys, "hilb", "--m", "2", "--n", "1,1", "--out", str(out))
    assert code == cli.EXIT_COUNTEREXAMPLE
    doc = json.loads(out.read_text())
    assert doc["counterexample_files"] == ["h.counterexample-0.json"]
    art = json.loads((tmp_path / "h.counterexample-0.json").read_text())
    assert art["kind"] == "counterexample"
