"""Command-line interface: exit codes, reports, config handling."""
from __future__ import annotations

import csv
import json

import pytest

from qkrall.cli import main


def _run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _payload(out_dir) -> dict:
    wrapper = json.loads((out_dir / "report.json").read_text())
    assert set(wrapper) == {"payload", "elapsed_seconds"}
    assert "elapsed_seconds" not in wrapper["payload"]
    return wrapper["payload"]


def test_verify_eigen_reference_instance(capsys):
    code, out, _ = _run(capsys, "verify-eigen", "--theorem", "meixner-i",
                        "--k", "2", "--n", "10")
    assert code == 0
    assert "pass" in out and "FAIL" not in out


def test_verify_orthogonality_writes_diagonal_gram(capsys, tmp_path):
    out_dir = tmp_path / "r"
    code, _, _ = _run(capsys, "verify-orthogonality", "--theorem",
                      "laguerre-ii", "--alpha", "2", "--m", "1",
                      "--n", "8", "--out", str(out_dir))
    assert code == 0
    with open(out_dir / "gram.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 9 and all(len(r) == 9 for r in rows)
    for i in range(9):
        for j in range(9):
            value = rows[i][j]
            if i == j:
                assert value not in ("0", "")
            else:
                assert value == "0"
    payload = _payload(out_dir)
    assert payload["all_passed"] is True
    # every reported number is an exact rational string
    assert all("/" in v or v.lstrip("-").isdigit()
               for row in payload["gram"] for v in row)


def test_conjecture_a_reference_run(capsys, tmp_path):
    out_dir = tmp_path / "r"
    code, out, _ = _run(capsys, "conjecture", "a", "--f1", "1",
                        "--order-max", "6", "--out", str(out_dir))
    assert code == 0
    payload = _payload(out_dir)
    assert payload["found_order"] == 4
    assert payload["conjectured_order"] == 4
    assert payload["status"] == "found"
    assert "order 2: not found" in out


def test_reports_are_deterministic(capsys, tmp_path):
    blobs = []
    for sub in ("r1", "r2"):
        out_dir = tmp_path / sub
        code, _, _ = _run(capsys, "verify-eigen", "--theorem", "laguerre-i",
                          "--k", "1", "--n", "6", "--out", str(out_dir))
        assert code == 0
        blobs.append(json.dumps(_payload(out_dir), sort_keys=True))
    assert blobs[0] == blobs[1]


def test_degenerate_base_is_invalid_input(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"q": "1/1"}))
    code, _, err = _run(capsys, "verify-eigen", "--theorem", "meixner-i",
                        "--config", str(cfg))
    assert code == 2
    assert "q != +-1" in err


def test_forbidden_parameter_ladder_is_invalid_input(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"b": "5/2", "q": "2/5"}))
    code, _, err = _run(capsys, "verify-eigen", "--theorem", "meixner-i",
                        "--config", str(cfg))
    assert code == 2
    assert "b = q^-1" in err


def test_config_overrides_flags(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"k": 2}))
    out_dir = tmp_path / "r"
    code, _, _ = _run(capsys, "build-krall", "--theorem", "meixner-i",
                      "--k", "1", "--n", "4", "--config", str(cfg),
                      "--out", str(out_dir))
    assert code == 0
    payload = _payload(out_dir)
    assert payload["inputs"]["k_or_alpha"] == 2
    assert payload["expected_order"] == 6


def test_bad_rational_and_bad_config_are_invalid_input(capsys, tmp_path):
    code, _, err = _run(capsys, "verify-eigen", "--theorem", "meixner-i",
                        "--q", "two-fifths")
    assert code == 2 and "cannot parse" in err
    code, _, err = _run(capsys, "verify-eigen", "--theorem", "meixner-i",
                        "--config", str(tmp_path / "missing.json"))
    assert code == 2 and "not found" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = _run(capsys, "verify-eigen", "--theorem", "meixner-i",
                        "--config", str(broken))
    assert code == 2 and "JSON" in err


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_perturbed_beta_fails_with_exit_one(capsys):
    code, out, _ = _run(capsys, "verify-eigen", "--theorem", "meixner-i",
                        "--k", "1", "--n", "6", "--perturb-beta", "3", "7")
    assert code == 1
    assert "FAIL" in out


def test_families_tabulation(capsys, tmp_path):
    out_dir = tmp_path / "r"
    code, _, _ = _run(capsys, "families", "--family", "al-salam-carlitz",
                      "--a", "4/3", "--n", "5", "--out", str(out_dir))
    assert code == 0
    payload = _payload(out_dir)
    assert len(payload["polynomials"]) == 6
    assert payload["polynomials"][0]["coeffs"] == ["1"]
    with open(out_dir / "families.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 7  # header + six rows


def test_verify_dop_all_specs(capsys):
    code, out, _ = _run(capsys, "verify-dop", "--family", "q-laguerre",
                        "--n", "8")
    assert code == 0
    assert out.count("pass") == 2


def test_build_krall_emits_sequences(capsys, tmp_path):
    out_dir = tmp_path / "r"
    code, _, _ = _run(capsys, "build-krall", "--theorem", "laguerre-ii",
                      "--alpha", "1", "--m", "7/3", "--n", "6",
                      "--out", str(out_dir))
    assert code == 0
    payload = _payload(out_dir)
    assert payload["operator_order"] == 4 == payload["expected_order"]
    rows = payload["sequence"]
    assert len(rows) == 7
    assert "beta" not in rows[0] and "beta" in rows[1]
    assert payload["inputs"]["m"] == "7/3"


def test_conjecture_b1_and_not_found_recording(capsys, tmp_path):
    out_dir = tmp_path / "r"
    code, _, _ = _run(capsys, "conjecture", "b1", "--f", "1",
                      "--out", str(out_dir))
    assert code == 0
    assert _payload(out_dir)["found_order"] == 4
    # half-width cap below the true order: recorded, nonzero exit
    out_dir2 = tmp_path / "r2"
    code, out, _ = _run(capsys, "conjecture", "b1", "--f", "2",
                        "--order-max", "2", "--out", str(out_dir2))
    assert code == 1
    payload = _payload(out_dir2)
    assert payload["status"] == "not-found-within-ansatz"
    assert payload["found_order"] is None
    assert "not found" in out
