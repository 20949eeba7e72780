"""Reporting layer and the verify command.

Reports must be deterministic byte for byte (records sorted by id, no
wall-clock data serialized), the config file must merge under the
command line, and the exit codes must separate verification failures
(1) from configuration rejections (2).
"""

from __future__ import annotations

import json
import os

import pytest

from qshelf import cli, suites
from qshelf.report import (
    FAIL,
    PASS,
    SKIPPED,
    CheckRecord,
    VerificationReport,
    emit,
    emit_json,
    emit_text,
)
from qshelf.suites import ConfigError, SuiteConfig, build_checks, run_suite


def small_report() -> VerificationReport:
    records = (
        CheckRecord("b.second", "anchor two", FAIL, "boom at q^3", elapsed=0.5),
        CheckRecord("a.first", "anchor one", PASS, "fine", elapsed=0.1),
        CheckRecord("c.third", "anchor three", SKIPPED, "window too small"),
    )
    return VerificationReport("demo", {"degree": "10", "k": "2..2"}, records)


def test_records_sort_by_id():
    rep = small_report()
    assert [r.check_id for r in rep.sorted_records()] == ["a.first", "b.second", "c.third"]
    assert rep.failed
    assert rep.counts == {PASS: 1, FAIL: 1, SKIPPED: 1}


def test_json_emission_is_stable_and_free_of_timing():
    rep = small_report()
    text = emit_json(rep)
    data = json.loads(text)
    assert [c["id"] for c in data["checks"]] == ["a.first", "b.second", "c.third"]
    assert data["summary"] == {"pass": 1, "fail": 1, "skipped": 1}
    assert "elapsed" not in text and "time" not in text
    assert emit_json(rep) == text
    assert text.endswith("\n")


def test_text_emission_carries_anchor_and_detail():
    lines = emit_text(small_report()).splitlines()
    assert lines[0] == "suite: demo"
    assert lines[1] == "parameters: degree=10 k=2..2"
    fail_lines = [line for line in lines if line.startswith("[FAIL")]
    assert len(fail_lines) == 1
    assert "b.second" in fail_lines[0] and "boom at q^3" in fail_lines[0]
    assert lines[-1] == "summary: 1 passed, 1 failed, 1 skipped"


def test_emit_dispatch():
    rep = small_report()
    assert emit(rep, "json") == emit_json(rep)
    assert emit(rep, "text") == emit_text(rep)
    with pytest.raises(ValueError):
        emit(rep, "xml")


# ---------------------------------------------------------------------------
# suite construction and validation
# ---------------------------------------------------------------------------

def test_unknown_suite_is_rejected():
    with pytest.raises(ConfigError):
        build_checks("everything", SuiteConfig())


def test_climb_degree_guard_names_the_minimum():
    cfg = SuiteConfig(k_range=(4, 4), degree=10, shelf_range=(0, 4))
    with pytest.raises(ConfigError) as err:
        build_checks("shelves", cfg)
    assert "61" in str(err.value)  # 1 + (k-1)*s*(s+1) at k=4, s=4


def test_check_ids_are_unique_across_all():
    cfg = SuiteConfig(k_range=(2, 3), degree=30, shelf_range=(0, 2))
    ids = [c.check_id for c in build_checks("all", cfg)]
    assert len(ids) == len(set(ids))


def test_run_suite_is_deterministic_across_thread_counts(monkeypatch):
    cfg = SuiteConfig(k_range=(2, 2), degree=16, shelf_range=(0, 1), start_range=(0, 0), n_max=8)
    monkeypatch.setenv("QSHELF_THREADS", "1")
    serial = emit_json(run_suite("matrices", cfg))
    monkeypatch.setenv("QSHELF_THREADS", "4")
    threaded = emit_json(run_suite("matrices", cfg))
    assert serial == threaded


def test_invalid_thread_cap_is_a_config_error(monkeypatch):
    monkeypatch.setenv("QSHELF_THREADS", "lots")
    cfg = SuiteConfig(k_range=(2, 2), degree=12, shelf_range=(0, 0), start_range=(0, 0), n_max=6)
    with pytest.raises(ConfigError):
        run_suite("identities", cfg)


def test_empirical_skips_when_window_cannot_certify():
    # through q^7 nothing at shelf 4 can certify its threshold of 9 or 11
    cfg = SuiteConfig(k_range=(3, 3), degree=7, shelf_range=(4, 4), start_range=(0, 0))
    rep = run_suite("empirical", cfg)
    statuses = {r.status for r in rep.records}
    assert statuses == {SKIPPED}
    assert not rep.failed
    assert all("raise --degree" in r.detail for r in rep.records)


def test_empirical_certifies_exactly_at_the_threshold_window():
    # one degree more and the threshold-9 checks certify while the tighter
    # in-phase checks (threshold 11) still skip
    cfg = SuiteConfig(k_range=(3, 3), degree=8, shelf_range=(4, 4), start_range=(0, 0))
    rep = run_suite("empirical", cfg)
    by_status = {s: [r.check_id for r in rep.records if r.status == s] for s in (PASS, SKIPPED)}
    assert by_status[PASS] and by_status[SKIPPED]
    assert not rep.failed
    assert all(cid.endswith("i03") for cid in by_status[SKIPPED])


def test_suite_failure_detail_names_first_mismatch():
    from qshelf import faults

    cfg = SuiteConfig(k_range=(3, 3), degree=20, shelf_range=(0, 1), start_range=(0, 0))
    fault = faults.Fault(tag="closed-official", exponent=7, match=(("k", 3), ("j", 1), ("i", 2)))
    with faults.injected(fault):
        rep = run_suite("shelves", cfg)
    failed = [r for r in rep.records if r.status == FAIL]
    assert failed and any("q^7" in r.detail for r in failed)


# ---------------------------------------------------------------------------
# command-line behaviour
# ---------------------------------------------------------------------------

def run_cli(args: list[str], capsys) -> tuple[int, str, str]:
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_runs_a_suite(capsys):
    code, out, err = run_cli(["identities", "--k", "2", "--degree", "12", "--nmax", "8"], capsys)
    assert code == 0 and err == ""
    assert out.startswith("suite: identities\n")
    assert "summary:" in out


def test_cli_range_grammar(capsys):
    code, out, _ = run_cli(
        ["empirical", "--k", "2..3", "--shelves", "2", "--degree", "12"], capsys
    )
    assert code == 0
    assert "shelves=0..2" in out  # bare N counts from the ground up
    assert "k=2..3" in out


def test_cli_bad_range_is_exit_2(capsys):
    code, _, err = run_cli(["identities", "--k", "two"], capsys)
    assert code == 2 and "configuration error" in err


def test_cli_degree_guard_is_exit_2(capsys):
    code, _, err = run_cli(["shelves", "--k", "4", "--degree", "10", "--shelves", "0..4"], capsys)
    assert code == 2
    assert "minimum degree is 61" in err


def test_cli_fault_injection_fails_the_run(capsys):
    code, out, _ = run_cli(
        [
            "shelves",
            "--k", "3",
            "--degree", "20",
            "--shelves", "0..1",
            "--corrupt", "shelf0-sum@5:k=3,i=2",
        ],
        capsys,
    )
    assert code == 1
    assert "[FAIL]" in out and "q^5" in out
    # the fault does not leak into later runs
    code, _, _ = run_cli(["shelves", "--k", "3", "--degree", "20", "--shelves", "0..1"], capsys)
    assert code == 0


def test_cli_json_output_to_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["matrices", "--k", "2", "--degree", "10", "--shelves", "0..1",
         "--start-shelf", "0", "--format", "json", "--out", str(target)],
        capsys,
    )
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["suite"] == "matrices"
    assert data["parameters"]["k"] == "2..2"


def test_cli_config_file_merges_under_flags(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text(
        "# quick sweep\n"
        "k = 2..3\n"
        "degree = 14\n"
        "shelves = 1   # through the first shelf\n"
        "start_shelf = 0..0\n"
        "n-max = 8\n"
    )
    code, out, _ = run_cli(["combinatorics", "--config", str(conf), "--k", "2"], capsys)
    assert code == 0
    assert "k=2..2" in out  # flag wins
    assert "degree=14" in out and "n_max=8" in out


def test_cli_config_rejects_unknown_keys(tmp_path, capsys):
    conf = tmp_path / "bad.conf"
    conf.write_text("depth = 9\n")
    code, _, err = run_cli(["identities", "--config", str(conf)], capsys)
    assert code == 2 and "unknown key" in err


def test_cli_missing_config_file(capsys):
    code, _, err = run_cli(["identities", "--config", "/nonexistent.conf"], capsys)
    assert code == 2 and "cannot read config file" in err


def test_cli_reports_are_byte_identical(capsys):
    args = ["axq", "--k", "2", "--degree", "10", "--shelves", "0..1", "--nmax", "6", "--format", "json"]
    _, first, _ = run_cli(args, capsys)
    _, second, _ = run_cli(args, capsys)
    assert first == second
