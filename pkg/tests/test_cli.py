"""Command-line behavior: outputs, exit codes, determinism."""

import json

from spindex.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_qr_match(capsys):
    code, out, _ = run(capsys, "verify-qr", "--model", "su3-flag-bundle",
                       "--a", "1", "--b", "3", "--provider", "constant:1")
    assert code == 0
    assert "verdict: match" in out
    assert "2" in out  # the trivial representation shows multiplicity 2


def test_verify_qr_mismatch_exit_code(capsys):
    code, out, _ = run(capsys, "verify-qr", "--model", "su3-flag-bundle",
                       "--a", "1", "--b", "3", "--provider", "constant:2")
    assert code == 3
    assert "verdict: mismatch" in out


def test_verify_qr_computation_error_exit_code(capsys):
    code, _, err = run(capsys, "verify-qr", "--model", "su3-flag-bundle",
                       "--a", "1", "--b", "3", "--convention", "literal")
    assert code == 2
    assert "error" in err


def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "orbits", "--group", "A2")  # missing --face/--max
    assert code == 1
    code, _, err = run(capsys, "frobnicate")
    assert code == 1


def test_orbits_table(capsys):
    code, out, _ = run(capsys, "orbits", "--group", "A2", "--face", "w1", "--max", "3")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith(("mu", "-"))]
    assert lines[0].split() == ["1/2,0", "0", "-", "-"]
    assert lines[1].split() == ["3/2,0", "pi(1,1)", "0,0", "1"]
    assert lines[2].split() == ["5/2,0", "pi(2,1)", "1,0", "3"]


def test_decompose_orbit(capsys):
    code, out, _ = run(capsys, "decompose", "--model", "orbit",
                       "--group", "A2", "--mu", "1,1")
    assert code == 0
    rows = [l for l in out.splitlines() if l.startswith("1,1")]
    assert len(rows) == 1
    assert rows[0].split() == ["1,1", "0,0", "1", "1"]


def test_faces_listing(capsys):
    code, out, _ = run(capsys, "faces", "--group", "A2")
    assert code == 0
    assert "S={1} ~ S={2}" in out


def test_export_model_round_trip(capsys, tmp_path):
    path = tmp_path / "model.json"
    code, _, _ = run(capsys, "export-model", "--model", "su3-flag-bundle",
                     "--a", "1", "--b", "3", "--out", str(path))
    assert code == 0
    code, out_file, _ = run(capsys, "index", "--model", str(path), "--format", "json")
    assert code == 0
    code, out_builder, _ = run(capsys, "index", "--model", "su3-flag-bundle",
                               "--a", "1", "--b", "3", "--format", "json")
    assert code == 0
    assert out_file == out_builder  # bit-for-bit


def test_json_output_byte_stable(capsys):
    args = ("verify-qr", "--model", "su3-flag-bundle", "--a", "2", "--b", "5",
            "--provider", "constant:1", "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    obj = json.loads(out1)
    assert obj["verdict"] == "match"
    assert obj["provider"] == "constant:1"


def test_index_cross_check_and_moment_report(capsys):
    code, out, _ = run(capsys, "index", "--model", "su3-flag-bundle",
                       "--a", "1", "--b", "3", "--cross-check", "--trials", "20",
                       "--seed", "11", "--moment-report")
    assert code == 0
    assert "cross-check deviation" in out
    assert "in kirwan" in out


def test_index_cutoff_override_error(capsys):
    code, _, err = run(capsys, "index", "--model", "su3-flag-bundle",
                       "--a", "2", "--b", "5", "--cutoff", "1")
    assert code == 2
    assert "too shallow" in err


def test_table_provider_from_file(capsys, tmp_path):
    table = tmp_path / "table.json"
    table.write_text(json.dumps({
        "entries": [
            {"mu": ["3/2", "0"], "value": 1},
        ]
    }))
    code, out, _ = run(capsys, "verify-qr", "--model", "orbit", "--group", "A2",
                       "--mu", "3/2,0", "--provider", f"table:{table}")
    assert code == 0
    assert "verdict: match" in out


def test_from_multiplicities_provider(capsys):
    code, out, _ = run(capsys, "verify-qr", "--model", "orbit", "--group", "A1",
                       "--mu", "2", "--provider", "from-multiplicities")
    assert code == 0
    assert "verdict: match" in out


def test_orbits_json_deterministic(capsys):
    code, out, _ = run(capsys, "orbits", "--group", "A2", "--face", "w1",
                       "--max", "3", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["orbits"][0] == {"mu": ["1/2", "0"], "index": None, "highest_weight": None}
    assert obj["orbits"][1]["index"] == ["1", "1"]


def test_explicit_cartan_matrix_group(capsys):
    code, out, _ = run(capsys, "faces", "--group", "[[2,-1],[-1,2]]")
    assert code == 0
    assert "S={1,2}" in out


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert main(["verify-qr", "--help"]) == 0
