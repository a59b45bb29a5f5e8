"""End-to-end command line checks through main(argv)."""

import json
from pathlib import Path

import pytest

from rsplfr.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

K4_T2_TEXT = (
    "* * 1 2\n"
    "* 1 * 3\n"
    "* 2 3 *\n"
    "1 * * 4\n"
    "2 * 4 *\n"
    "3 4 * *\n"
)

TOY_PARAMS = {"N": 4, "K": 3, "H": 6, "A": 1, "I": 1, "J": 5, "q": 7, "B": 6,
              "pda": {"man": {"k": 3, "t": 1}}}


def toy_single_config(tmp_path, name="single.json", **extra) -> str:
    doc = {"params": dict(TOY_PARAMS), "demands": [[1, 0, 0, 0],
                                                   [0, 1, 0, 0],
                                                   [0, 0, 1, 0]]}
    doc.update(extra)
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


# ---------- pda ----------


def test_pda_man_prints_grid(capsys):
    assert main(["pda", "man", "--k", "4", "--t", "2"]) == 0
    assert capsys.readouterr().out == K4_T2_TEXT


def test_pda_man_writes_file(tmp_path, capsys):
    out = tmp_path / "grid.txt"
    assert main(["pda", "man", "--k", "4", "--t", "2", "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == K4_T2_TEXT
    assert "wrote 6x4 array" in capsys.readouterr().out


def test_pda_man_rejects_bad_gain(capsys):
    assert main(["pda", "man", "--k", "2", "--t", "5"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_pda_validate_accepts_good_grid(tmp_path, capsys):
    path = tmp_path / "toy.pda"
    path.write_text("* 1 2\n1 * 3\n2 3 *\n", encoding="utf-8")
    assert main(["pda", "validate", str(path)]) == 0
    assert capsys.readouterr().out == "valid: K=3 F=3 Z=1 S=3\n"


def test_pda_validate_flags_bad_grid(tmp_path, capsys):
    path = tmp_path / "bad.pda"
    path.write_text("1 1\n", encoding="utf-8")
    assert main(["pda", "validate", str(path)]) == 1
    assert capsys.readouterr().out.startswith("invalid:")


def test_pda_validate_missing_file(capsys):
    assert main(["pda", "validate", "/no/such/file.pda"]) == 2
    assert capsys.readouterr().err.startswith("error:")


# ---------- simulate ----------


def test_simulate_single_run(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("RSPLFR_SEED", raising=False)
    config = toy_single_config(tmp_path)
    assert main(["simulate", "--config", config]) == 0
    out = capsys.readouterr().out
    assert "users decoded: 3/3" in out
    assert "measured: M=2 T=5/2 R=1/2 subpacketization=6" in out
    assert out.rstrip().endswith("ok")


def test_simulate_writes_trace(tmp_path, monkeypatch):
    monkeypatch.delenv("RSPLFR_SEED", raising=False)
    config = toy_single_config(tmp_path)
    trace_path = tmp_path / "trace.json"
    assert main(["simulate", "--config", config, "--trace", str(trace_path)]) == 0
    trace = json.loads(trace_path.read_text(encoding="utf-8"))
    assert set(trace) == {"library", "blends", "demands", "queries",
                          "stores", "signals", "decoded"}
    assert len(trace["signals"]) == 5
    # unit demands: user k decodes file k verbatim
    for k in range(3):
        assert trace["decoded"][k] == trace["library"][k]


def test_trace_with_sweep_is_a_usage_error(tmp_path, capsys):
    config = toy_single_config(tmp_path)
    rc = main(["simulate", "--config", config, "--sweep", "--trace", "t.json"])
    assert rc == 2
    assert "single runs" in capsys.readouterr().err


def test_simulate_sweep_toy_instance(capsys, monkeypatch):
    monkeypatch.delenv("RSPLFR_SEED", raising=False)
    rc = main(["simulate", "--config", str(CONFIGS / "toy_sweep.json"),
               "--sweep"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "measured: M=2 T=5/2 R=1/2 subpacketization=6" in out
    assert "all 168 configurations passed" in out


def test_simulate_sweep_parallel_jobs(capsys, monkeypatch):
    monkeypatch.delenv("RSPLFR_SEED", raising=False)
    rc = main(["simulate", "--config", str(CONFIGS / "robust_sweep.json"),
               "--sweep", "--jobs", "2"])
    assert rc == 0
    assert "all 120 configurations passed" in capsys.readouterr().out


def test_simulate_sweep_reports_failures(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("RSPLFR_SEED", raising=False)
    doc = {
        "params": {"N": 2, "K": 2, "H": 5, "A": 1, "I": 1, "J": 4,
                   "q": 11, "B": 2, "pda": {"man": {"k": 2, "t": 1}}},
        "strategy": {"name": "honest_plus_constant", "constant": 1},
        "sweep": {"j_subsets": True, "adversary_subsets": True,
                  "adversary_sizes": [2]},
    }
    path = tmp_path / "overload.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["simulate", "--config", str(path), "--sweep"]) == 1
    out = capsys.readouterr().out
    assert "failures across 50 configurations" in out


def test_seed_env_overrides_config(tmp_path, monkeypatch):
    monkeypatch.delenv("RSPLFR_SEED", raising=False)
    base = toy_single_config(tmp_path, "base.json")
    seeded_doc = {"params": dict(TOY_PARAMS, seed=123)}
    seeded = tmp_path / "seeded.json"
    seeded.write_text(json.dumps(seeded_doc), encoding="utf-8")

    t_config = tmp_path / "t_config.json"
    assert main(["simulate", "--config", str(seeded),
                 "--trace", str(t_config)]) == 0
    t_plain = tmp_path / "t_plain.json"
    assert main(["simulate", "--config", base, "--trace", str(t_plain)]) == 0

    monkeypatch.setenv("RSPLFR_SEED", "123")
    t_env = tmp_path / "t_env.json"
    assert main(["simulate", "--config", base, "--trace", str(t_env)]) == 0

    by_config = json.loads(t_config.read_text(encoding="utf-8"))
    by_env = json.loads(t_env.read_text(encoding="utf-8"))
    plain = json.loads(t_plain.read_text(encoding="utf-8"))
    assert by_env["library"] == by_config["library"]
    assert by_env["library"] != plain["library"]


def test_invalid_seed_env_is_a_config_error(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("RSPLFR_SEED", "three")
    config = toy_single_config(tmp_path)
    assert main(["simulate", "--config", config]) == 2
    assert "RSPLFR_SEED" in capsys.readouterr().err


# ---------- curve and bounds ----------


def test_curve_prints_csv(capsys):
    rc = main(["curve", "--config", str(CONFIGS / "tradeoff_n100_k10.json"),
               "--grid", "11"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "M,T_ach,R_ach,T_lb,R_lb,gap_T,gap_R,regime_flag"
    assert len(lines) == 12


def test_curve_writes_csv(tmp_path, capsys):
    out = tmp_path / "curve.csv"
    rc = main(["curve", "--config", str(CONFIGS / "tradeoff_n10_k100.json"),
               "--grid", "7", "--out", str(out)])
    assert rc == 0
    assert "wrote 7 rows" in capsys.readouterr().out
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 8


def test_bounds_at_unit_memory(capsys):
    rc = main(["bounds", "--config", str(CONFIGS / "tradeoff_n100_k10.json"),
               "--m", "1"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "storage lower bound: T >= 50/7 = 7.142857143" in out
    assert "M=1 R_lb=0.5785714286 T_ach=11 R_ach=1" in out


def test_bounds_grid_line_count(capsys):
    rc = main(["bounds", "--config", str(CONFIGS / "tradeoff_n10_k100.json"),
               "--grid", "5"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 6  # one bound line plus five memory points
    assert sum(line.startswith("M=") for line in lines) == 5


# ---------- audit ----------


def test_audit_micro_instance_passes(capsys, monkeypatch):
    monkeypatch.delenv("RSPLFR_SEED", raising=False)
    rc = main(["audit", "--config", str(CONFIGS / "micro_audit.json")])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 5
    assert all(": OK" in line for line in lines)


def test_audit_mutation_flips_verdict(capsys):
    rc = main(["audit", "--config", str(CONFIGS / "micro_audit.json"),
               "--mutate", "zero-pad", "--skip-robustness"])
    assert rc == 1
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    assert any(line.startswith("demand-privacy: VIOLATED") for line in lines)


def test_audit_writes_json_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = main(["audit", "--config", str(CONFIGS / "micro_audit.json"),
               "--skip-robustness", "--out", str(out)])
    assert rc == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert [r["constraint"] for r in payload] == [
        "server-security", "signal-security", "demand-privacy"]
    for r in payload:
        assert set(r) == {"constraint", "satisfied", "mi_bits", "outcomes",
                          "tables", "details", "witness"}
        assert r["satisfied"] is True


def test_audit_needs_a_pda(capsys):
    rc = main(["audit", "--config", str(CONFIGS / "tradeoff_n10_k100.json")])
    assert rc == 2
    assert "pda" in capsys.readouterr().err


# ---------- error handling ----------


def test_missing_config_file(capsys):
    assert main(["simulate", "--config", "/no/such/config.json"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["simulate", "--config", str(path)]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_config_must_be_an_object(tmp_path, capsys):
    path = tmp_path / "list.json"
    path.write_text("[1, 2, 3]", encoding="utf-8")
    assert main(["bounds", "--config", str(path)]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_unknown_command_exits_two():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_unknown_mutation_rejected_by_parser():
    with pytest.raises(SystemExit) as err:
        main(["audit", "--config", "x.json", "--mutate", "drop-keys"])
    assert err.value.code == 2
