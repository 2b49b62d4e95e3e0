from __future__ import annotations

import json

import pytest

from qbary.cli import execute


def run(capsys, *argv):
    code = execute(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bck_fixture(capsys):
    code, out, _ = run(capsys, "bck", "--input", "f1", "--k", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "bck"
    assert doc["input"] == "f1"
    assert doc["outputs"]["Bc_k"] == ["1/9", "1/9"]
    assert doc["diagnostics"]["rational_function_checked"] is True
    assert doc["diagnostics"]["reflexive_polygon_form_checked"] is True


def test_delta_p2(capsys):
    code, out, _ = run(capsys, "delta", "--input", "p2.json", "--k", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["delta_k"] == 1
    assert doc["diagnostics"]["del_pezzo_form_checked"] is True


def test_expand_f1(capsys):
    code, out, _ = run(capsys, "expand", "--input", "f1", "--order", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["a"] == [
        ["1/12", "1/12"],
        ["1/24", "1/24"],
        ["-1/48", "-1/48"],
    ]


def test_deterministic_output(capsys):
    _, first, _ = run(capsys, "delta-seq", "--input", "f1", "--ks", "1,2,3", "--order", "3")
    _, second, _ = run(capsys, "delta-seq", "--input", "f1", "--ks", "1,2,3", "--order", "3")
    assert first == second


def test_inline_rays(capsys):
    code, out, _ = run(
        capsys, "classify", "--rays", "1,0;0,1;-1,-1;1,1", "--offsets", "1,1,1,1"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"] == {"reflexive": True, "delzant": True}


def test_count_and_fan(capsys):
    code, out, _ = run(capsys, "count", "--input", "cube3", "--k", "2")
    assert json.loads(out)["outputs"]["count"] == 125 and code == 0
    code, out, _ = run(capsys, "fan", "--rays", "1,0;0,1;-1,-1", "--offsets", "1,1,1", "--v", "1,0")
    doc = json.loads(out)
    assert doc["outputs"]["rays"] == [[1, 0, 0], [0, 1, 0], [-1, -1, 0], [0, 0, 1], [1, 0, -1]]
    assert doc["outputs"]["q"] == 2


def test_mixed_volume_command(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"vertices": [[0, 0], [1, 0]]}))
    # degenerate inputs are rejected by the polytope loader; use squares
    a.write_text(json.dumps({"vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]}))
    b.write_text(json.dumps({"vertices": [[0, 0], [2, 0], [0, 2], [2, 2]]}))
    code, out, _ = run(capsys, "mixed-volume", "--input", str(a), "--input", str(b))
    assert code == 0
    assert json.loads(out)["outputs"]["mixed_volume"] == 2


def test_malformed_json_reports_location(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"vertices": [[0, 0], ')
    code, _, err = run(capsys, "count", "--input", str(path), "--k", "1")
    assert code == 1
    assert "line" in err and "column" in err


def test_unknown_input_is_an_input_error(capsys):
    code, _, err = run(capsys, "count", "--input", "nope.json", "--k", "1")
    assert code == 1
    assert "no such input" in err


def test_inconsistent_document_is_an_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {
                "vertices": [[0, 0], [1, 0], [0, 1]],
                "normals": [[1, 0], [0, 1], [-1, -1]],
                "offsets": [1, 1, 1],
            }
        )
    )
    code, _, err = run(capsys, "classify", "--input", str(path))
    assert code == 1
    assert "disagree" in err


def test_precondition_failure_surfaces_library_error(capsys):
    code, _, err = run(capsys, "rooftop", "--input", "f1", "--v", "1,0", "--q", "1")
    assert code == 1
    assert "rooftop" in err


def test_table_and_approx(capsys):
    code, out, _ = run(capsys, "bc", "--input", "f1", "--table", "--approx")
    assert code == 0
    assert "display only" in out
    assert "1/12" in out
    code, out, _ = run(capsys, "bc", "--input", "f1", "--approx")
    doc = json.loads(out)
    assert doc["approx"]["volume"] == 4
    assert doc["approx"]["Bc"] == [pytest.approx(1 / 12), pytest.approx(1 / 12)]


def test_rooftop_coeffs_command(capsys):
    code, out, _ = run(capsys, "rooftop-coeffs", "--input", "f1", "--v", "1,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["c_prime"] == ["1/3", 1, "2/3"]
    assert doc["outputs"]["q"] == 2


def test_ehrhart_and_reciprocity_commands(capsys):
    code, out, _ = run(capsys, "ehrhart", "--input", "cube3")
    doc = json.loads(out)
    assert code == 0
    assert doc["outputs"]["coefficients"] == [1, 6, 12, 8]
    assert doc["diagnostics"]["reflexive_closed_form_checked"] is True
    code, out, _ = run(capsys, "reciprocity", "--input", "blowup-p1xp1", "--kmax", "3")
    doc = json.loads(out)
    assert code == 0
    assert doc["outputs"]["all_passed"] is True
    assert len(doc["outputs"]["checks"]) == 3
    assert doc["outputs"]["checks"][0]["reflexive"] is True


def test_hrr_and_df_commands(capsys):
    code, out, _ = run(capsys, "hrr", "--input", "f1")
    assert code == 0
    assert json.loads(out)["outputs"]["coefficients"] == [1, 4, 4]
    code, out, _ = run(capsys, "df", "--input", "f1", "--v", "1,1", "--order", "3")
    assert code == 0
    assert json.loads(out)["outputs"]["DF"] == ["1/6", "1/12", "-1/24"]


def test_bc_and_rooftop_commands(capsys):
    code, out, _ = run(capsys, "bc", "--input", "p2")
    doc = json.loads(out)
    assert code == 0
    assert doc["outputs"]["volume"] == "9/2"
    assert doc["outputs"]["boundary_volume"] == 9
    code, out, _ = run(capsys, "rooftop", "--input", "f1", "--v", "1,0")
    doc = json.loads(out)
    assert code == 0
    assert doc["outputs"]["q"] == 2
    assert len(doc["outputs"]["normals"]) == 6
