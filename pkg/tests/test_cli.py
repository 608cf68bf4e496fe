"""CLI surface: subcommands, formats, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from mseqcorr.cli import main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_json(capsys):
    code, out, err = run_cli("spectrum", "--p", "2", "--n", "5", "--d", "3",
                             "--out", "json", capsys=capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["p"] == 2 and doc["n"] == 5 and doc["d"] == 3
    assert doc["entries"] == [
        {"count": 6, "value": -9},
        {"count": 15, "value": -1},
        {"count": 10, "value": 7},
    ]


def test_spectrum_deterministic_bytes(capsys):
    _, out1, _ = run_cli("spectrum", "--p", "3", "--n", "3", "--d", "7", capsys=capsys)
    _, out2, _ = run_cli("spectrum", "--p", "3", "--n", "3", "--d", "7",
                         "--threads", "4", capsys=capsys)
    assert out1 == out2


def test_spectrum_fraction_and_csv(capsys):
    code, out, _ = run_cli("spectrum", "--p", "2", "--n", "5", "--d", "9/5",
                           "--out", "csv", capsys=capsys)
    assert code == 0
    assert out.splitlines()[0] == "value,count"
    # 9/5 = 8 mod 31, a degenerate decimation
    assert "31,1" in out


def test_spectrum_naive_method(capsys):
    code, out, _ = run_cli("spectrum", "--p", "2", "--n", "6", "--d", "11",
                           "--method", "naive", capsys=capsys)
    assert code == 0
    assert json.loads(out)["method"] == "naive"


def test_usage_error_not_coprime(capsys):
    code, out, err = run_cli("spectrum", "--p", "2", "--n", "5", "--d", "0",
                             capsys=capsys)
    assert code == 2
    assert "coprime" in err


def test_usage_error_bad_flag(capsys):
    assert main(["spectrum", "--p", "2", "--n", "5"]) == 2  # missing --d


def test_field_command(capsys):
    code, out, _ = run_cli("field", "--p", "2", "--n", "4", capsys=capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["modulus_coeffs"] == [1, 1, 0, 0]
    assert doc["period"] == 15


def test_seq_digits_and_raw(tmp_path, capsys):
    code, out, _ = run_cli("seq", "--p", "3", "--n", "2", capsys=capsys)
    assert code == 0
    assert out.strip() == "22021101"
    raw = tmp_path / "seq.bin"
    code, _, _ = run_cli("seq", "--p", "2", "--n", "3", "--format", "raw",
                         "--out-file", str(raw), capsys=capsys)
    assert code == 0
    data = raw.read_bytes()
    assert len(data) == 7 and set(data) <= {0, 1}


def test_seq_with_decimation(capsys):
    code, out, _ = run_cli("seq", "--p", "2", "--n", "3", "--d", "3", capsys=capsys)
    assert code == 0
    assert len(out.strip()) == 7


def test_verify_family_all_small(capsys):
    code, out, _ = run_cli("verify", "--family", "all", "--p", "2", "--n", "6",
                           capsys=capsys)
    assert code == 0
    verdicts = json.loads(out)
    assert verdicts and all(v["verdict"] == "pass" for v in verdicts)
    families_seen = {v["family"] for v in verdicts}
    assert "gold" in families_seen and "dfhr-s3-odd" in families_seen


def test_verify_single_family_params(capsys):
    code, out, _ = run_cli("verify", "--family", "gold", "--p", "2", "--n", "5",
                           "--params", "k=2", capsys=capsys)
    assert code == 0
    assert json.loads(out)[0]["d"] == 5


def test_niho_command(capsys):
    code, out, _ = run_cli("niho", "--p", "2", "--m", "4", "--s", "2",
                           "--check-identity", capsys=capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["value_set"] == [-16, 0, 16, 32]
    assert doc["identity_holds"] is True


def test_expsum_commands(capsys):
    code, out, _ = run_cli("expsum", "--kind", "kloosterman", "--p", "2",
                           "--m", "3", "--a-zero", capsys=capsys)
    assert code == 0 and json.loads(out)["value"] == 0
    code, out, _ = run_cli("expsum", "--kind", "r", "--m", "3", capsys=capsys)
    assert code == 0 and json.loads(out)["value"] == 28
    code, out, _ = run_cli("expsum", "--kind", "op6", "--n", "5", "--k", "2",
                           capsys=capsys)
    assert code == 0 and json.loads(out)["both_equal"] is True
    code, out, _ = run_cli("expsum", "--kind", "cubic", "--n", "5",
                           "--b-zero", "--a-log", "3", capsys=capsys)
    assert code == 0 and json.loads(out)["value"] == 0


def test_code_weights_command(capsys):
    code, out, _ = run_cli("code-weights", "--p", "2", "--n", "5", "--d", "3",
                           capsys=capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["weights"] == [
        {"count": 1, "w": 0}, {"count": 310, "w": 12},
        {"count": 527, "w": 16}, {"count": 186, "w": 20}]


def test_classify_with_cache(tmp_path, capsys):
    args = ("classify", "--p", "2", "--n", "6", "--cache-dir", str(tmp_path))
    code, out1, _ = run_cli(*args, capsys=capsys)
    assert code == 0
    assert (tmp_path / "spectra_p2_n6.jsonl").exists()
    code, out2, _ = run_cli(*args, capsys=capsys)
    assert out1 == out2  # cache reuse is byte-identical


def test_classify_needs_n(capsys):
    code, _, err = run_cli("classify", "--p", "2", capsys=capsys)
    assert code == 2


def test_conjecture_minus_one(capsys):
    code, out, _ = run_cli("conjecture", "--check", "minus-one", "--p", "2",
                           "--max-n", "6", capsys=capsys)
    assert code == 0
    docs = json.loads(out)
    assert all(doc["holds"] for doc in docs)


def test_conjecture_three_valued(capsys):
    code, out, _ = run_cli("conjecture", "--check", "three-valued", "--p", "3",
                           "--n", "4", capsys=capsys)
    assert code == 0
    assert json.loads(out)[0]["found"] == []


def test_conjecture_op6(capsys):
    code, out, _ = run_cli("conjecture", "--check", "op6", "--n", "7", "--k", "3",
                           capsys=capsys)
    assert code == 0


def test_modulus_file_flag(tmp_path, capsys):
    path = tmp_path / "mods.txt"
    path.write_text("2 6 1 0 0 0 0 1\n")
    code, out, _ = run_cli("field", "--p", "2", "--n", "6",
                           "--modulus-file", str(path), capsys=capsys)
    assert code == 0
    assert json.loads(out)["modulus_coeffs"] == [1, 0, 0, 0, 0, 1]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mseqcorr.cli", "spectrum", "--p", "2",
         "--n", "5", "--d", "3"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["d"] == 3
