import shutil
import subprocess
import sys

import pytest

from kbforge.cli import main
from kbforge.golden import BUILTIN_NAMES, builtin_layout, builtin_layout_text, builtin_rules_text
from kbforge.layout_io import parse_layout, serialize_layout
from kbforge.placement import finalize_registers


def write_assets(root):
    (root / "layouts").mkdir(parents=True)
    (root / "rules").mkdir()
    for name in BUILTIN_NAMES:
        (root / "layouts" / f"{name}.layout").write_text(builtin_layout_text(name), "utf-8")
        (root / "rules" / f"{name}.rules").write_text(builtin_rules_text(name), "utf-8")
    return root


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compile_bds(capsys, tmp_path):
    out_file = tmp_path / "bds.layout"
    code, out, _ = run(capsys, "compile", "--base", "builtin:bds", "--rules", "builtin:bds", "-o", str(out_file))
    assert code == 0
    assert out_file.read_text("utf-8") == serialize_layout(builtin_layout("bds"))
    assert out.splitlines()[0] == "placed=32 skipped=0 unplaceable=0 passes=1"


def test_compile_from_files(capsys, tmp_path):
    base = tmp_path / "base.layout"
    base.write_text(serialize_layout(builtin_layout("latin").strip_upper()), "utf-8")
    rules = tmp_path / "latin.rules"
    rules.write_text(builtin_rules_text("latin"), "utf-8")
    out_file = tmp_path / "out.layout"
    code, out, _ = run(capsys, "compile", "--base", str(base), "--rules", str(rules), "-o", str(out_file), "-v")
    assert code == 0
    assert parse_layout(out_file.read_text("utf-8")).keys == builtin_layout("latin").keys
    assert "placed U+2014 at" in out


def test_compile_empty_rules(capsys, tmp_path):
    rules = tmp_path / "empty.rules"
    rules.write_text("# nothing\n", "utf-8")
    out_file = tmp_path / "out.layout"
    code, out, _ = run(capsys, "compile", "--base", "builtin:phonetic", "--rules", str(rules), "-o", str(out_file))
    assert code == 0
    compiled = parse_layout(out_file.read_text("utf-8"))
    assert compiled.keys == finalize_registers(builtin_layout("phonetic").strip_upper()).keys
    assert out.startswith("placed=0 skipped=0 unplaceable=0")


def test_compile_reports_skipped(capsys, tmp_path):
    rules = tmp_path / "r.rules"
    rules.write_text("place U+2013 after U+005F\n", "utf-8")
    code, out, _ = run(capsys, "compile", "--base", "builtin:phonetic", "--rules", str(rules), "-o", str(tmp_path / "o"))
    assert code == 0
    assert "skipped: U+2013 (rule 1)" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["compile", "--base", "missing.layout", "--rules", "builtin:bds", "-o", "x"],
        ["compile", "--base", "builtin:bds", "--rules", "builtin:nope", "-o", "x"],
        ["compile", "--base", "builtin:bds"],
        ["emit", "--layout", "builtin:bds", "--format", "bogus"],
        ["validate", "--layout", "builtin:bds", "--profile", "klingon"],
        ["simulate", "--cyr", "", "--lat", "", "--mode", "cyrillic", "--events", "Z+E01"],
        ["simulate", "--events", "Z+E01"],
        ["simulate", "--cyr", "builtin:latin", "--events", "D01"],
        ["diff", "builtin:bds"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_bad_rules_file(capsys, tmp_path):
    rules = tmp_path / "bad.rules"
    rules.write_text("place U+2011 after U+002D\nplace after\n", "utf-8")
    code, _, err = run(capsys, "compile", "--base", "builtin:bds", "--rules", str(rules), "-o", str(tmp_path / "o"))
    assert code == 2
    assert "line 2" in err


def test_check_goldens(capsys):
    code, out, _ = run(capsys, "check-goldens")
    assert code == 0
    assert [line.split(":")[0] for line in out.splitlines()] == list(BUILTIN_NAMES)
    assert all(": ok (" in line for line in out.splitlines())


def test_check_goldens_mutated_rules(capsys, tmp_path):
    root = write_assets(tmp_path / "assets")
    path = root / "rules" / "bds.rules"
    lines = path.read_text("utf-8").splitlines(keepends=True)
    lines = [l for l in lines if "U+2014" not in l.split("#")[0].split("after")[0]]
    path.write_text("".join(lines), "utf-8")
    code, out, _ = run(capsys, "check-goldens", "--assets", str(root))
    assert code == 1
    assert "bds: MISMATCH (2 cells)" in out
    assert "  E06 reg3: - != U+2014" in out


def test_check_goldens_corrupted(capsys, tmp_path):
    root = write_assets(tmp_path / "assets")
    (root / "layouts" / "latin.layout").write_text("layout latin mode latin\nE00 U+0060\n", "utf-8")
    code, _, err = run(capsys, "check-goldens", "--assets", str(root))
    assert code == 2
    assert "latin" in err


def test_check_goldens_missing_dir(capsys, tmp_path):
    assert run(capsys, "check-goldens", "--assets", str(tmp_path / "none"))[0] == 2


def test_emit_table(capsys):
    code, out, _ = run(capsys, "emit", "--layout", "builtin:bds", "--format", "table")
    assert code == 0
    assert "E06 U+0036 U+2014 6 emdash" in out.splitlines()


def test_emit_ascii_high(capsys):
    code, out, _ = run(capsys, "emit", "--layout", "builtin:phonetic", "--format", "ascii", "--registers", "high")
    assert code == 0
    assert out.splitlines()[0] == "phonetic (cyrillic), registers 3-4"
    assert "/-/" in out


def test_emit_xkb(capsys, tmp_path):
    code, out, _ = run(capsys, "emit", "--layout", "builtin:latin", "--format", "xkb", "--names", "BG", "US")
    assert code == 0
    assert "key <LSGT> { [ less, greater, U2266, U2267 ] };" in out
    assert 'name[Group1] = "BG";' in out
    code, out2, _ = run(capsys, "emit", "--layout", "builtin:bds", "--format", "xkb", "--pair", "builtin:latin")
    assert code == 0 and "key <AE06> { [ 6, equal, emdash, emdash ] };" in out2


def test_emit_xkb_pair_mode_mismatch(capsys):
    assert run(capsys, "emit", "--layout", "builtin:bds", "--format", "xkb", "--pair", "builtin:phonetic")[0] == 2


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "--layout", "builtin:bds", "--profile", "bg-cyrillic")
    assert code == 0 and out.startswith("profile bg-cyrillic on layout bds: PASS")
    layout = builtin_layout("bds")
    for reg in (1, 2, 3, 4):
        layout = layout.replace_cell("C12", reg, None)
    path = tmp_path / "broken.layout"
    path.write_text(serialize_layout(layout), "utf-8")
    code, out, _ = run(capsys, "validate", "--layout", str(path), "--profile", "bg-cyrillic")
    assert code == 1 and "MISSING Bulgarian quotes" in out


def test_validate_mode_mismatch(capsys):
    code, _, err = run(capsys, "validate", "--layout", "builtin:latin", "--profile", "bg-cyrillic")
    assert code == 2 and err


def test_diff(capsys):
    assert run(capsys, "diff", "builtin:bds", "builtin:bds") == (0, "", "")
    code, out, _ = run(capsys, "diff", "builtin:phonetic", "builtin:phonetic-bds")
    assert code == 1
    assert "D02 reg1: U+0432 != U+0448" in out


def test_simulate(capsys):
    code, out, _ = run(capsys, "simulate", "--cyr", "builtin:bds", "--lat", "builtin:latin",
                       "--mode", "cyrillic", "--events", "S+D09 D03 D10")
    assert code == 0
    assert out == "Дез\nmode=cyrillic capslock=off\n"
    code, out, _ = run(capsys, "simulate", "--mode", "latin", "--events", "D01")
    assert out.splitlines()[0] == "q"


def test_simulate_guard_and_capslock(capsys):
    code, out, _ = run(capsys, "simulate", "--events", "C01", "--capslock", "--password-policy", "ascii-only")
    assert code == 0
    assert out == "Ь\nmode=cyrillic capslock=on\nguard=mustSwitchToLatin\n"


def test_deterministic(capsys):
    first = run(capsys, "emit", "--layout", "builtin:latin", "--format", "ascii")
    assert run(capsys, "emit", "--layout", "builtin:latin", "--format", "ascii") == first


@pytest.mark.skipif(shutil.which("kbforge") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["kbforge", "check-goldens"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr


def test_module_entry():
    proc = subprocess.run([sys.executable, "-m", "kbforge.cli", "simulate", "--events", "Z+E01"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "bad event token" in proc.stderr
