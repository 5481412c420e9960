"""Command-line interface: documents, commands, exit codes."""

import io
import json
from pathlib import Path

import pytest

from paratwin import cli
from paratwin.family import FamilyParams, build_family
from paratwin.manifold import build_manifold
from paratwin.scalar import Q
from paratwin.tensor import tensor_equal

FIXTURE = Path(__file__).parent / "fixtures" / "family-1-2-1.json"


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_document_round_trip():
    m = build_family(FamilyParams(Q(-3), Q(1, 2), Q(-1)))
    doc = cli.document_of(m)
    alg, P, g, _ = cli.parse_document(doc)
    m2 = build_manifold(alg, P, g)
    assert tensor_equal(m.algebra.c, m2.algebra.c)
    assert tensor_equal(m.P, m2.P)
    assert tensor_equal(m.g, m2.g)
    assert tensor_equal(m.g_twin, m2.g_twin)


def test_fixture_matches_generator():
    doc = json.loads(FIXTURE.read_text())
    m = build_family(FamilyParams(Q(1), Q(2), Q(1)))
    assert doc == cli.document_of(m)


def test_validate_fixture():
    code, out, _ = run(["validate", str(FIXTURE)])
    assert code == cli.EXIT_OK
    assert "valid" in out


def test_validate_broken_jacobi(tmp_path):
    doc = json.loads(FIXTURE.read_text())
    doc["brackets"][0]["coeffs"]["1"] = "7"       # break the Jacobi identity
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(["validate", str(path)])
    assert code == cli.EXIT_INVALID
    assert "jacobi" in out
    assert "X_" in out                            # the violating triple is named


def test_validate_empty_file(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("")
    code, _, err = run(["validate", str(path)])
    assert code == cli.EXIT_PARSE
    assert "parse error" in err


def test_validate_missing_file():
    code, _, err = run(["validate", "/no/such/file.json"])
    assert code == cli.EXIT_PARSE


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d.update(dim="4"), "dim"),
    (lambda d: d.update(basis=["X1"]), "basis"),
    (lambda d: d["brackets"].append({"i": 0, "j": 2, "coeffs": {}}), "index"),
    (lambda d: d["metric"][0].__setitem__(0, "1.5"), "decimal"),
    (lambda d: d.pop("P"), "P"),
])
def test_malformed_documents(tmp_path, mutate, message):
    doc = json.loads(FIXTURE.read_text())
    mutate(doc)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["validate", str(path)])
    assert code == cli.EXIT_PARSE
    assert message in err


def test_incompatible_metric_rejected(tmp_path):
    doc = json.loads(FIXTURE.read_text())
    doc["metric"][1][1] = "2"                     # g(PX1, PX1) != g(X1, X1)
    path = tmp_path / "bad_metric.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["validate", str(path)])
    assert code == cli.EXIT_INVALID
    assert "compatible" in err


def test_report_family_reference_point():
    code, out, _ = run(["report", "--family", "1", "2", "1"])
    assert code == cli.EXIT_OK
    assert "class: W1" in out
    assert "tau: -144" in out
    assert "snorm: 384" in out


def test_report_family_origin():
    code, out, _ = run(["report", "--family", "0", "0", "1"])
    assert code == cli.EXIT_OK
    assert "class: W0" in out
    assert "tau: 0" in out and "snorm: 0" in out


def test_report_family_isotropic():
    code, out, _ = run(["report", "--family", "1", "1", "1"])
    assert code == cli.EXIT_OK
    assert "isotropic_w0: true" in out
    assert "scalar_flat: true" in out
    assert "class: W1" in out


def test_report_json_matches_text():
    code, text, _ = run(["report", "--family", "1", "2", "1"])
    code2, raw, _ = run(["report", "--family", "1", "2", "1", "--json"])
    assert code == code2 == cli.EXIT_OK
    data = json.loads(raw)
    assert data["classification"]["class"] == "W1"
    assert data["scalars"]["tau"] == "-144"
    assert data["scalars"]["snorm"] == "384"
    assert all(c["passed"] for c in data["checks"])
    # same check names in both renderings
    for c in data["checks"]:
        assert c["name"] in text


def test_report_from_file():
    code, out, _ = run(["report", str(FIXTURE)])
    assert code == cli.EXIT_OK
    assert "class: W1" in out


def test_report_requires_one_source():
    code, _, err = run(["report"])
    assert code == cli.EXIT_PARSE
    code, _, err = run(["report", str(FIXTURE), "--family", "1", "2", "1"])
    assert code == cli.EXIT_PARSE


def test_theorem_small_grid_names_failing_tables():
    code, out, _ = run(["theorem", "--grid", "0,1"])
    assert code == cli.EXIT_CHECK
    assert "table: twin curvature" in out
    assert "[pass] claim: minimal class" in out
    assert "[pass] identity: B = 0" in out


def test_theorem_self_test():
    code, out, _ = run(["theorem", "--self-test"])
    assert code == cli.EXIT_OK
    assert "detected" in out


def test_theorem_bad_grid():
    code, _, err = run(["theorem", "--grid", "1,0.5"])
    assert code == cli.EXIT_PARSE
