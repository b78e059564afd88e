import csv
import json

import pytest

from normsector import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_enumerate_csv(tmp_path, capsys):
    out_path = tmp_path / "ideals.csv"
    code, _ = run(capsys, "enumerate", "--m=-1", "--lo=2", "--hi=30",
                  f"--out={out_path}")
    assert code == 0
    rows = list(csv.DictReader(out_path.open()))
    assert {r["p"] for r in rows} == {"2", "3", "5", "7", "11", "13",
                                      "17", "19", "23", "29"}
    split_rows = [r for r in rows if r["kind"] == "split"]
    # p = 5, 13, 17, 29 split, two ideals each
    assert len(split_rows) == 8


def test_count_json_and_obstruction(capsys):
    code, out = run(capsys, "count", "--m=-1", "--delta=0.0", "--x=1000",
                    "--h=500", "--q=4", "--a=3")
    assert code == 0
    payload = json.loads(out)
    assert payload["log_p"]["weighted_sum"] == 0.0
    assert payload["log_p"]["count"] == 0
    assert payload["config"]["q"] == 4 and payload["config"]["a"] == 3


def test_count_von_mangoldt_section(capsys):
    code, out = run(capsys, "count", "--m=-1", "--delta=0.0", "--x=1000",
                    "--h=500", "--weight=von-mangoldt")
    payload = json.loads(out)
    assert code == 0
    vm = payload["von_mangoldt"]
    assert vm["total"] == pytest.approx(vm["prime_part"] + vm["power_part"])


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("m = -1\nx = 1000\nh = 500\ndelta = 0.0\nq = 4\na = 1\n")
    code, out = run(capsys, "count", f"--config={cfg}")
    assert code == 0
    base = json.loads(out)
    assert base["config"]["a"] == 1 and base["log_p"]["count"] > 0
    # flag overrides the file
    code, out = run(capsys, "count", f"--config={cfg}", "--a=3")
    assert json.loads(out)["log_p"]["count"] == 0


def test_config_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("mm = -1\n")
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", f"--config={cfg}"])
    assert "mm" in str(exc.value)


def test_config_echo_reproduces(tmp_path, capsys):
    code, out1 = run(capsys, "count", "--m=-1", "--x=2000", "--h=400",
                     "--delta=0.1", "--phi0=0.3")
    echoed = json.loads(out1)["config"]
    cfg = tmp_path / "echo.cfg"
    cfg.write_text("".join(f"{k} = {v}\n" for k, v in echoed.items()
                           if v is not None and k != "class"))
    code, out2 = run(capsys, "count", f"--config={cfg}")
    assert code == 0
    assert json.loads(out1)["log_p"] == json.loads(out2)["log_p"]


def test_identity_check_passes(capsys):
    code, out = run(capsys, "identity-check", "--m=-1", "--p-max=2000",
                    "--sectors=3", "--seed=42")
    assert code == 0
    assert json.loads(out)["all_pass"]


def test_selberg_exit_codes(capsys):
    code, out = run(capsys, "selberg", "--d=1", "--kappa=0.05", "--M=50",
                    "--samples=2000")
    assert code == 0
    payload = json.loads(out)
    assert payload["identity_plus_defect"] == pytest.approx(0.0, abs=1e-12)
    assert payload["sandwich_violations"] == 0


def test_fit(capsys):
    code, out = run(capsys, "fit", "--m=-1", "--delta=0.0",
                    "--x-ladder=1e4,3e4,1e5")
    assert code == 0
    payload = json.loads(out)
    assert 0.4 < payload["c_hat"] < 0.6
    assert len(payload["ratios"]) == 3


def test_bv_cli(tmp_path, capsys):
    csv_path = tmp_path / "bv.csv"
    code, out = run(capsys, "bv", "--m=-1", "--x=1e5", "--delta=0.1",
                    "--delta-prime=0.1", "--theta=0.05", "--phi0=0.3",
                    "--c-hat=2.0", f"--csv={csv_path}")
    assert code == 0
    payload = json.loads(out)
    assert payload["c_hat"] == 2.0
    assert csv_path.exists()


def test_cache_roundtrip(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NORMSECTOR_CACHE", str(tmp_path))
    code, _ = run(capsys, "count", "--m=-1", "--x=10000", "--h=1000")
    assert code == 0
    code, out = run(capsys, "cache", "inspect")
    assert code == 0
    assert len(json.loads(out)["files"]) >= 1
    code, out = run(capsys, "cache", "purge")
    assert code == 0 and json.loads(out)["purged"] >= 1


def test_cold_warm_cache_bit_identical(tmp_path, capsys, monkeypatch):
    from normsector import counting
    monkeypatch.setenv("NORMSECTOR_CACHE", str(tmp_path))
    args = ["count", "--m=-1", "--x=30000", "--h=2000", "--delta=0.1",
            "--phi0=0.4"]
    counting._ENUM_CACHE.clear()
    code, cold = run(capsys, *args)
    counting._ENUM_CACHE.clear()
    code, warm = run(capsys, *args)
    assert cold == warm


def test_thread_determinism_cli(capsys):
    from normsector import counting
    args = ["count", "--m=-1", "--x=40000", "--h=5000", "--delta=0.1"]
    counting._ENUM_CACHE.clear()
    _, one = run(capsys, *args, "--threads=1")
    counting._ENUM_CACHE.clear()
    _, four = run(capsys, *args, "--threads=4")
    a, b = json.loads(one), json.loads(four)
    assert a["log_p"]["weighted_sum"] == b["log_p"]["weighted_sum"]
