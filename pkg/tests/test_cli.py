import json
import os

import pytest

from pqbc.cli import dispatch, intexpr


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_intexpr():
    assert intexpr("2^10") == 1024
    assert intexpr("37") == 37
    assert intexpr("0x10") == 16
    with pytest.raises(Exception):
        intexpr("3^2")


def test_bounds_breakdown(capsys):
    code, out = run(capsys, "bounds", "fx", "--m", "12", "--n", "12",
                    "--qc", "4", "--qq", "16")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == pytest.approx(0.03125572519103183)
    assert "reprogram_term" in payload["terms"]


def test_bounds_usage_error(capsys):
    code, _ = run(capsys, "bounds", "fx", "--qc", "-1")
    assert code == 2
    code, _ = run(capsys, "bounds", "mode", "--m", "12", "--n", "16")
    assert code == 2


def test_bounds_sweep_writes_csv_and_png(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _ = run(capsys, "bounds", "fx", "--m", "12", "--n", "12",
                  "--qq", "16", "--sweep", "qc=1:2^6", "--out", str(out))
    assert code == 0
    assert out.exists() and out.with_suffix(".png").exists()
    header = out.read_text().splitlines()[0]
    assert header.startswith("qc,value,")


def test_tradeoff(capsys):
    code, out = run(capsys, "tradeoff", "grover", "--m", "16", "--n", "16")
    assert code == 0 and "q_c,q_q" in out


def test_verify_hybrids_exit_zero(capsys):
    code, _ = run(capsys, "verify-hybrids", "--n", "8", "--m", "8",
                  "--j", "8", "--count", "30")
    assert code == 0


def test_attack_birthday(capsys):
    code, out = run(capsys, "attack", "birthday", "--n", "16", "--q", "2^9",
                    "--trials", "3", "--seed", "7")
    assert code == 0
    assert json.loads(out)["wins"] >= 2


def test_mode_cmac_and_gcm_round_trip(capsys):
    code, out = run(capsys, "mode", "cmac", "mac", "--msg", "1011011",
                    "--key", "3")
    assert code == 0 and "tag=" in out
    code, sealed = run(capsys, "mode", "gcm", "seal", "--msg", "1011001110",
                       "--nonce", "5", "--aad", "101", "--key", "7")
    assert code == 0
    fields = dict(p.split("=", 1) for p in sealed.split())
    ct = fields["ct"].split("/")[0]
    ctbits = format(int(ct, 16), "010b")
    tag = format(int(fields["tag"].split("/")[0], 16),
                 f"0{int(fields['tag'].split('/')[1])}b")
    code, opened = run(capsys, "mode", "gcm", "open", "--ct", ctbits,
                       "--tag", tag, "--nonce", "5", "--aad", "101",
                       "--key", "7")
    assert code == 0 and "pt=" in opened
    # tampering trips exit 1
    bad = ("1" if tag[0] == "0" else "0") + tag[1:]
    code, _ = run(capsys, "mode", "gcm", "open", "--ct", ctbits,
                  "--tag", bad, "--nonce", "5", "--aad", "101", "--key", "7")
    assert code == 1


def test_experiment_output_file_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["experiment", "reprogramming", "--q", "16", "--trials", "50",
            "--seed", "9"]
    assert dispatch(argv + ["--out", str(a)]) == 0
    assert dispatch(argv + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert "runtime_ms" not in a.read_text()


def test_env_seed(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PQBC_SEED", "123")
    code, out = run(capsys, "qsim", "grover", "--w", "4", "--shots", "50")
    assert code == 0
    assert json.loads(out)["seed"] == 123


def test_qsim_simon(capsys):
    code, out = run(capsys, "qsim", "simon", "--u", "4", "--trials", "5")
    assert code == 0
    assert json.loads(out)["wins"] == 5
