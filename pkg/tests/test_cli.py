import subprocess
import sys
from pathlib import Path

import pytest

from traitpreuves.cli import main

ROOT = Path(__file__).resolve().parent.parent
SCENES = ROOT / "scenes"
BROKEN = Path(__file__).resolve().parent / "fixtures" / "broken.scene"


def test_check_passes(capsys):
    assert main(["check", str(SCENES / "desargues.scene")]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["PASS desargues A B C A' B' C'"]


def test_check_failure_exit_code(tmp_path, capsys):
    text = (SCENES / "desargues.scene").read_text().replace("(4, 4)", "(4, 5)")
    path = tmp_path / "moved.scene"
    path.write_text(text)
    assert main(["check", str(path)]) == 1
    assert capsys.readouterr().out.startswith("FAIL")


def test_syntax_error(capsys):
    assert main(["check", str(BROKEN)]) == 2
    err = capsys.readouterr().err
    assert f"{BROKEN}:3:16: syntax error: expected ')'" in err


def test_evaluation_error(tmp_path, capsys):
    path = tmp_path / "bad.scene"
    path.write_text("point A = (0, 0)\nline l = join(A, Q)\n")
    assert main(["check", str(path)]) == 2
    assert ":2:18: error: undeclared name 'Q'" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["check", str(tmp_path / "nope.scene")]) == 2
    assert "error" in capsys.readouterr().err


def test_bad_tolerance(capsys):
    assert main(["check", str(SCENES / "desargues.scene"), "--eps-abs", "-1"]) == 2


def test_render_to_file(tmp_path):
    out = tmp_path / "d.svg"
    assert main(["render", str(SCENES / "desargues.scene"), "-o", str(out)]) == 0
    golden = Path(__file__).resolve().parent / "golden" / "desargues.svg"
    assert out.read_bytes() == golden.read_bytes()


def test_render_without_directive(tmp_path, capsys):
    path = tmp_path / "plain.scene"
    path.write_text("point A = (0, 0)\n")
    assert main(["render", str(path), "-o", str(tmp_path / "x.svg")]) == 2
    assert "render directive" in capsys.readouterr().err


def test_render_default_path(tmp_path):
    scene = tmp_path / "s.scene"
    scene.write_text((SCENES / "involution.scene").read_text())
    assert main(["render", str(scene)]) == 0
    assert list(tmp_path.glob("*.svg"))


def test_fuzz(capsys):
    assert main(["fuzz", "desargues", "--seed", "42", "--count", "50"]) == 0
    assert "desargues" in capsys.readouterr().out


def test_fuzz_is_deterministic(capsys):
    main(["fuzz", "converse", "--seed", "3", "--count", "30"])
    first = capsys.readouterr().out.rsplit(" (", 1)[0]
    main(["fuzz", "converse", "--seed", "3", "--count", "30"])
    assert capsys.readouterr().out.rsplit(" (", 1)[0] == first


def test_witness(tmp_path, capsys):
    out = tmp_path / "w.svg"
    assert main(["witness", "moulton", "--budget", "100000", "-o", str(out)]) == 0
    text = capsys.readouterr().out
    assert "collinearity defect" in text
    assert "verified True" in text
    assert out.read_text().startswith("<?xml")


def test_witness_budget_too_small(capsys):
    assert main(["witness", "moulton", "--budget", "2"]) == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "traitpreuves", "check", str(SCENES / "example2.scene")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert all(line.startswith("PASS") for line in proc.stdout.splitlines())


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
