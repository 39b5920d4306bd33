"""
Tests for the selftest suites and the command-line entry point
"""

import logging
import random

from core.local_shell import fourier_shell
from core.places import infinity
from core.selftest import random_shell_function, run_selftest, suite_fourier_involution
from main import EXIT_CONFIG, EXIT_OK, main


def test_random_shell_functions_are_compact_on_request():
    rng = random.Random(0)
    for _ in range(20):
        assert random_shell_function(rng, infinity(2), compact=True).tail_value == 0


def test_scaled_transform_is_caught():
    passed, detail = suite_fourier_involution(lambda f: fourier_shell(f).scale(2), samples=5)
    assert not passed
    assert "double transform" in detail


def test_all_suites_pass():
    results = run_selftest()
    assert {r.name for r in results} >= {"fourier_involution", "principal_value", "orbit_sums",
                                         "duality", "small_class_eigenvalue", "basis_independence",
                                         "quotient_pairing"}
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_places_command(capsys):
    assert main(["places", "--q", "3", "--degree", "1"]) == EXIT_OK
    output = capsys.readouterr().out
    assert "inf" in output


def test_places_command_rejects_bad_q():
    assert main(["places", "--q", "6"]) == EXIT_CONFIG


def test_trace_command_writes_report(tmp_path):
    config = tmp_path / "small.cfg"
    config.write_text("q = 2\nplaces = inf, [0,1]\nk_max = 1\nh[0] = 1\n", encoding="utf-8")
    out = tmp_path / "report.csv"
    assert main(["trace", "--config", str(config), "--out", str(out)]) == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("k,Lambda,dimQ0")


def test_bad_config_exits_with_config_code(tmp_path):
    config = tmp_path / "bad.cfg"
    config.write_text("q = 2\nplaces = [0,1], [1,1]\n", encoding="utf-8")
    assert main(["trace", "--config", str(config)]) == EXIT_CONFIG


def test_weil_command(tmp_path):
    out = tmp_path / "weil.txt"
    assert main(["weil", "--out", str(out)]) == EXIT_OK
    assert "h^(0)" in out.read_text(encoding="utf-8")


def test_weil_command_defaults_and_named_kernel(tmp_path):
    out = tmp_path / "weil.txt"
    assert main(["weil", "--kernel", "delta_pm1", "--out", str(out)]) == EXIT_OK
    rows = {line.split()[0]: line.split()[-1] for line in out.read_text(encoding="utf-8").splitlines()[1:]}
    assert rows["h^(0)"] == "2"
    assert rows["h^(1)"] == "5/2"
    assert rows["inf"] == "3/2"
    assert "log' q^6" in out.read_text(encoding="utf-8")


def test_trace_command_warns_when_main_term_gap_grows(tmp_path, caplog):
    config = tmp_path / "delta0.cfg"
    config.write_text("q = 2\nplaces = inf, [0,1]\nk_max = 2\nh[0] = 1\n", encoding="utf-8")
    out = tmp_path / "report.csv"
    with caplog.at_level(logging.WARNING):
        assert main(["trace", "--config", str(config), "--out", str(out), "--jobs", "1"]) == EXIT_OK
    assert "gap_thm31 does not decay with k" in caplog.text
    assert "paired eigenvalues" not in caplog.text
