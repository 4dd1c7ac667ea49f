import sys
import os
import json
import logging

# Add src directory to path before any local imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

# fmt: off
import pytest  # noqa: E402

from loop_homology.cli import parse_arguments  # noqa: E402
from loop_homology.logging_utils import ColoredFormatter, setup_logging  # noqa: E402
from loop_homology.main import main  # noqa: E402
# fmt: on

EXTERIOR = "algebra exterior\ngenerator x4 deg 4 nil 2\n"


def test_defaults():
    """verify runs every suite at each check's own ceiling."""
    args = parse_arguments(["verify"])
    assert (args.suite, args.maxdeg, args.jobs, args.fixture) == ("all", None, 1, None)
    assert (args.format, args.output, args.log_level) == ("text", "-", "info")


def test_bad_arguments():
    """Zero jobs, negative degrees and a missing subcommand are usage errors."""
    for argv in (["verify", "--jobs", "0"], ["verify", "--maxdeg", "-1"], [], ["cotor"]):
        with pytest.raises(SystemExit):
            parse_arguments(argv)


def test_nu2_command(capsys):
    """q = 7 satisfies the identities."""
    assert main(["nu2", "--q", "7"]) == 0
    out = capsys.readouterr().out
    assert "q = 7, k = 2" in out
    assert "identities hold" in out


def test_nu2_machine(capsys):
    """One JSON object with the exponents, k and the failures."""
    assert main(["nu2", "--q", "5", "--format", "machine"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record == {"q": 5, "r2": 3, "r4": 4, "r6": 3, "r14": 3, "k": 1, "identity_failures": []}


def test_input_errors_exit_2(tmp_path):
    """Unreadable files, unknown suites and even q exit with status 2."""
    assert main(["verify", "--fixture", str(tmp_path / "missing.alg")]) == 2
    assert main(["verify", "--suite", "theorem3"]) == 2
    assert main(["nu2", "--q", "4"]) == 2
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra t\ngenerator a2 deg two\n")
    assert main(["cotor", "--coalgebra", str(bad)]) == 2


def test_computation_errors_exit_1(tmp_path):
    """A coproduct that is not coassociative fails cotor with status 1, not a traceback."""
    fixture = tmp_path / "skew.alg"
    fixture.write_text(
        "algebra skew\n"
        "generator a2 deg 2 nil 2\n"
        "generator b4 deg 4 nil 2\n"
        "generator c6 deg 6 nil 2\n"
        "coproduct b4 = a2 (x) a2\n"
        "coproduct c6 = a2 (x) b4\n"
    )
    assert main(["cotor", "--coalgebra", str(fixture), "--maxdeg", "6"]) == 1


def test_cotor_command(tmp_path):
    """Cotor of an exterior coalgebra is polynomial one degree lower."""
    fixture = tmp_path / "exterior.alg"
    fixture.write_text(EXTERIOR)
    output = tmp_path / "cotor"
    assert main(["cotor", "--coalgebra", str(fixture), "--maxdeg", "6", "--format", "machine", "-o", str(output)]) == 0
    records = [json.loads(line) for line in (tmp_path / "cotor.jsonl").read_text().splitlines()]
    assert [r["dim"] for r in records] == [1, 0, 0, 1, 0, 0, 1]
    assert records[3] == {"coalgebra": "exterior", "degree": 3, "dim": 1}


def test_verify_failure_exits_1(tmp_path):
    """A corrupt fixture makes verify exit with status 1."""
    output = tmp_path / "report.txt"
    argv = ["verify", "--suite", "theorem1-corrupt-demo", "--maxdeg", "16", "-o", str(output)]
    assert main(argv) == 1
    text = output.read_text()
    assert "theorem1-corrupt-demo: FAILED - 0 passed, 1 failed, 0 skipped" in text


def test_verify_fixture_passes(tmp_path, capsys):
    """A consistent fixture file exits with status 0."""
    fixture = tmp_path / "exterior.alg"
    fixture.write_text(EXTERIOR)
    assert main(["verify", "--fixture", str(fixture), "--format", "machine"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [json.loads(line)["status"] for line in lines] == ["PASS"] * 5


def test_setup_logging_level():
    """Unknown levels are rejected; known ones set the root logger."""
    with pytest.raises(ValueError):
        setup_logging("verbose")
    setup_logging("warning")
    assert logging.getLogger().level == logging.WARNING
    assert len(logging.getLogger().handlers) == 1


def test_plain_formatter_without_tty():
    """Colour codes only appear when asked for."""
    record = logging.LogRecord("x", logging.INFO, __file__, 1, "hello", None, None)
    plain = ColoredFormatter(use_color=False).format(record)
    coloured = ColoredFormatter(use_color=True).format(record)
    assert plain.endswith(" - INFO - hello")
    assert "\033[" not in plain
    assert "\033[92m" in coloured and coloured.endswith("hello")
