import json

import pytest

from sigtensor.cli import main
from sigtensor.serialize import (
    decomposition_to_json,
    dump_json,
    log_signature_to_json,
    signature_to_json,
    tensor_to_json,
)


@pytest.fixture
def axis3(tmp_path):
    target = tmp_path / "axis3.json"
    target.write_text(
        json.dumps({"dim": 3, "increments": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]})
    )
    return str(target)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_signature_reproduces_axis_coefficients(capsys, axis3):
    code, out, _ = run(capsys, "signature", "--path", axis3, "--level", "3")
    assert code == 0
    report = json.loads(out)
    level3 = report["result"]["signature"]["levels"][3]
    entries = {i: e for i, e in enumerate(level3["entries"]) if e != "0"}
    # lexicographic offsets of the ten nonzero axis coefficients
    def off(i, j, k):
        return (i - 1) * 9 + (j - 1) * 3 + (k - 1)

    assert entries[off(1, 1, 1)] == "1/6"
    assert entries[off(1, 1, 2)] == "1/2"
    assert entries[off(1, 2, 3)] == "1"
    assert entries[off(3, 3, 3)] == "1/6"
    assert len(entries) == 10


def test_shuffle_command(capsys):
    code, out, _ = run(capsys, "shuffle", "--w1", "12", "--w2", "34")
    assert code == 0
    result = json.loads(out)["result"]
    assert result == {"1234": 1, "1324": 1, "1342": 1, "3124": 1, "3142": 1, "3412": 1}


def test_rank_bound_command(capsys):
    code, out, _ = run(capsys, "rank-bound", "--k", "3", "--m", "5")
    assert code == 0
    assert json.loads(out)["result"]["bound"] == 8


def test_exp_log_round_trip_via_files(capsys, tmp_path):
    from sigtensor import log_signature, segment_signature

    l = log_signature(segment_signature([1, 2], 3))
    logsig_file = tmp_path / "l.json"
    logsig_file.write_text(dump_json(log_signature_to_json(l)))
    code, out, _ = run(capsys, "exp", "--logsig", str(logsig_file))
    assert code == 0
    sig_blob = json.loads(out)["result"]["signature"]

    sig_file = tmp_path / "s.json"
    sig_file.write_text(json.dumps(sig_blob))
    code, out, _ = run(capsys, "log", "--sig", str(sig_file))
    assert code == 0
    assert json.loads(out)["result"]["log_signature"] == json.loads(dump_json(log_signature_to_json(l)))


def test_decompose_and_certify(capsys, axis3, tmp_path):
    code, out, _ = run(capsys, "decompose", "--path", axis3, "--level", "3")
    assert code == 0
    report = json.loads(out)
    assert report["result"]["length"] == 4
    assert report["certificates"]["rank"] == {"lower": 4, "upper": 4, "status": "exact"}

    from sigtensor import Path, decompose_three_segments, pwl_signature

    sig = pwl_signature(Path.from_increments([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 3)
    tensor_file = tmp_path / "t.json"
    tensor_file.write_text(dump_json(tensor_to_json(sig.level(3))))
    witness_file = tmp_path / "w.json"
    witness = decompose_three_segments([1, 0, 0], [0, 1, 0], [0, 0, 1], 3)
    witness_file.write_text(dump_json(decomposition_to_json(witness)))
    code, out, _ = run(capsys, "certify", "--tensor", str(tensor_file), "--witness", str(witness_file))
    assert code == 0
    assert json.loads(out)["result"]["status"] == "exact"


def test_classify_and_symmetry_commands(capsys, tmp_path):
    from sigtensor import Sig222Params, sig222_from_params

    t = sig222_from_params(Sig222Params.of(6, -6, 1, 1, 1))
    tensor_file = tmp_path / "t222.json"
    tensor_file.write_text(dump_json(tensor_to_json(t)))

    code, out, _ = run(capsys, "classify222", "--tensor", str(tensor_file))
    assert code == 0
    result = json.loads(out)["result"]
    assert result["complex_rank"] == 3
    assert result["hyperdeterminant"] == "0"
    assert result["real_rank"] == "not computed"

    code, out, _ = run(capsys, "symmetry", "--tensor", str(tensor_file))
    assert code == 0
    rep = json.loads(out)["result"]
    assert rep["partial"] == ["first_k_minus_1"]
    assert rep["is_symmetric"] is False


def test_sig222_command(capsys):
    code, out, _ = run(capsys, "sig222", "--params", "6,-6,1,1,1")
    assert code == 0
    report = json.loads(out)
    assert report["result"]["constraint_first"] is True
    assert report["result"]["complex_rank"] == 3
    assert report["certificates"]["symmetry"]["partial"] == ["first_k_minus_1"]


def test_concise_command(capsys, tmp_path):
    from sigtensor import Path, pwl_signature

    sig = pwl_signature(Path.from_increments([[0, 1, 0], [0, 0, 1]], dim=3), 4)
    sig_file = tmp_path / "sig.json"
    sig_file.write_text(dump_json(signature_to_json(sig)))
    code, out, _ = run(capsys, "concise", "--sig", str(sig_file))
    assert code == 0
    result = json.loads(out)["result"]
    assert result["symmetrically_concise"] is False
    assert result["recovered_subspace"]["dim"] == 2
    assert result["certified_up_to_level"] == 4


def test_pure_volume_command(capsys, tmp_path):
    from sigtensor import LogSignature, Tensor, exp_log_signature, lie_bracket

    area = lie_bracket(Tensor.basis_vector(2, 1), Tensor.basis_vector(2, 2))
    l = LogSignature.from_levels([Tensor.zeros(1, 2), area, Tensor.zeros(3, 2), Tensor.zeros(4, 2)], 2)
    sig_file = tmp_path / "pv.json"
    sig_file.write_text(dump_json(signature_to_json(exp_log_signature(l))))
    code, out, _ = run(capsys, "pure-volume", "--sig", str(sig_file), "--n", "2", "--k0", "3")
    assert code == 0
    assert json.loads(out)["result"]["pure_volume"] is True

    from sigtensor import segment_signature

    seg_file = tmp_path / "seg.json"
    seg_file.write_text(dump_json(signature_to_json(segment_signature([1, 1], 4))))
    code, out, _ = run(capsys, "pure-volume", "--sig", str(seg_file), "--n", "2", "--k0", "3")
    assert code == 1
    assert json.loads(out)["result"]["pure_volume"] is False


def test_verify_reproducible(capsys):
    code1, out1, _ = run(capsys, "verify", "--seed", "5", "--size", "3")
    code2, out2, _ = run(capsys, "verify", "--seed", "5", "--size", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["result"]["passed"] is True


def test_series_input(capsys, tmp_path):
    csv_file = tmp_path / "ts.csv"
    csv_file.write_text("a,b\n0,0\n1,0\n1,1\n")
    code, out, _ = run(capsys, "signature", "--series", str(csv_file), "--header", "--level", "2")
    assert code == 0
    report = json.loads(out)
    level2 = report["result"]["signature"]["levels"][2]
    assert level2["entries"] == ["1/2", "1", "0", "1/2"]


def test_float_column_marked_lossy(capsys, axis3):
    code, out, _ = run(capsys, "signature", "--path", axis3, "--level", "2", "--float")
    assert code == 0
    level2 = json.loads(out)["result"]["signature"]["levels"][2]
    assert level2["entries_float_lossy"][0] == 0.5


def test_out_file_and_env_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SIGTENSOR_OUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "rank-bound", "--k", "4", "--m", "4", "--out", "bound.json")
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "bound.json").read_text())["result"]["bound"] == 13


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["not-a-command"])
    assert exc.value.code == 2


def test_malformed_input_exits_3(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _, err = run(capsys, "signature", "--path", str(bad))
    assert code == 3
    assert "line 1" in err


def test_precondition_violation_exits_4(capsys, axis3):
    code, _, err = run(capsys, "signature", "--path", axis3, "--level", "9")
    assert code == 4
    assert "allow-large" in err


def test_allow_large_lifts_guard(capsys, tmp_path):
    path_file = tmp_path / "p1.json"
    path_file.write_text(json.dumps({"dim": 1, "increments": [["1"]]}))
    code, out, _ = run(capsys, "signature", "--path", str(path_file), "--level", "9", "--allow-large")
    assert code == 0
    report = json.loads(out)
    assert report["result"]["signature"]["max_level"] == 9


def test_emitted_reports_reparse(capsys, axis3):
    for argv in (
        ["signature", "--path", axis3, "--level", "2"],
        ["shuffle", "--w1", "1", "--w2", "2"],
        ["rank-bound", "--k", "5", "--m", "7"],
        ["sig222", "--params", "1,1,1,1,1"],
    ):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        blob = json.loads(out)
        assert dump_json(blob) == dump_json(json.loads(dump_json(blob)))


def test_exp_level_truncates_and_pads(capsys, tmp_path):
    from sigtensor import log_signature, segment_signature

    l = log_signature(segment_signature([1, 2], 3))
    logsig_file = tmp_path / "l3.json"
    logsig_file.write_text(dump_json(log_signature_to_json(l)))

    code, out, _ = run(capsys, "exp", "--logsig", str(logsig_file), "--level", "2")
    assert code == 0
    assert json.loads(out)["result"]["signature"]["max_level"] == 2

    code, out, _ = run(capsys, "exp", "--logsig", str(logsig_file), "--level", "5")
    assert code == 0
    blob = json.loads(out)["result"]["signature"]
    assert blob["max_level"] == 5
    assert blob["levels"][5]["entries"][0] == "1/120"  # x^5/5! with x = 1
