import subprocess
import sys

import pytest

import twotheory
from twotheory.cli import main, run_command


def lines(text):
    return text.splitlines()


def statuses(text):
    return [ln.split("\t")[0] for ln in lines(text)]


@pytest.fixture
def shipped(tmp_path):
    def write(name):
        p = tmp_path / f"{name}.sexp"
        p.write_text(twotheory.data_file(f"diagrams/{name}.sexp"))
        return str(p)
    return write


def test_list_theories_mentions_every_theory():
    code, text = run_command(["list-theories"])
    assert code == 0
    names = {ln.split("\t")[0] for ln in lines(text)}
    assert names == set(twotheory.THEORY_NAMES)


def test_check_free_model_passes():
    code, text = run_command(["check", "sSym", "--model", "perm", "--sizes", "1,1"])
    assert code == 0
    assert text and set(statuses(text)) == {"PASS"}
    assert lines(text) == sorted(lines(text))


def test_symmetry_fails_under_braids():
    code, text = run_command(["check", "sSym", "--model", "braid", "--sizes", "1,1"])
    assert code == 1
    assert any(ln.startswith("FAIL\tsymmetry@") for ln in lines(text))


def test_kronecker_file_round_trip(tmp_path):
    out = tmp_path / "p.sexp"
    code, text = run_command(["kronecker", "sMon", "sMon", "--over", "Point", "--out", str(out)])
    assert code == 0 and "sMon*sMon/Point" in text
    code, text = run_command(["check", str(out), "--model", "braid", "--sizes", "1,1,1",
                              "--catalog", "braiding-hexagon-left"])
    assert code == 0
    assert any(ln.startswith("PASS\t") and "hexagon" in ln for ln in lines(text))


def test_tampered_product_file_rejected(tmp_path):
    out = tmp_path / "p.sexp"
    run_command(["kronecker", "sMon", "sMon", "--over", "Point", "--out", str(out)])
    text = out.read_text()
    kept = [ln for ln in text.splitlines() if "right.assoc" not in ln]
    assert len(kept) < len(text.splitlines())
    out.write_text("\n".join(kept) + "\n")
    code, _ = run_command(["check", str(out), "--model", "perm"])
    assert code == 2


def test_twist_non_example_fails():
    code, text = run_command(["check", "sBraid*Twist/Fin", "--model", "ribbon", "--sizes", "1,1",
                              "--catalog", "twist-naturality-eq"])
    assert code == 1
    assert any(ln.startswith("FAIL\t") and "twist-naturality" in ln for ln in lines(text))


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    [],
    ["check", "sSym", "--model", "knot"],
    ["check", "NoSuchTheory", "--model", "perm"],
    ["check", "sSym", "--model", "perm", "--sizes", "1,x"],
    ["check", "sSym", "--model", "perm", "--catalog", "no-such-entry"],
    ["normalize-braid", "--strands", "2", "s5"],
    ["qcolim", "/nonexistent/file.sexp"],
])
def test_usage_errors_exit_two(argv):
    code, text = run_command(argv)
    assert code == 2 and text.startswith("error:")


def test_parse_error_exit_two(tmp_path):
    p = tmp_path / "bad.sexp"
    p.write_text("(category C (objects a)\n")
    code, text = run_command(["qcolim", str(p)])
    assert code == 2 and "line 1" in text


@pytest.mark.parametrize("word, expected", [
    (["s1 s1^-1"], "1"),
    (["s1", "s2", "s1"], None),
    (["s1s2s1"], None),
])
def test_normalize_braid(word, expected):
    code, text = run_command(["normalize-braid", "--strands", "3", *word])
    assert code == 0
    if expected is not None:
        assert text.strip() == expected
    else:
        _, other = run_command(["normalize-braid", "--strands", "3", "s2 s1 s2"])
        assert text == other


def test_change_pi0_sbraid_has_no_braiding():
    code, text = run_command(["change", "pi0", "sBraid"])
    assert code == 0
    assert "(dimension 1)" in text and "gen2" not in text
    assert "(rel1 gamma (gen tensor) (o (gen tensor) (base (1 0))))" in text
    assert "(role braiding" not in text


@pytest.mark.parametrize("name", ["terminal", "weak-terminal", "collapse", "point"])
def test_qcolim_shipped(shipped, name):
    code, text = run_command(["qcolim", shipped(name)])
    assert code == 0
    assert "PASS" in statuses(text) and "FAIL" not in statuses(text)
    if name == "point":
        assert any(":isomorphic" in ln for ln in lines(text))


def test_yoneda_shipped(shipped):
    code, text = run_command(["yoneda", shipped("yoneda")])
    assert code == 0
    assert statuses(text).count("PASS") == 9


def test_output_is_deterministic():
    argv = ["check", "sBraid", "--model", "braid", "--sizes", "1,1", "--sizes", "2,1"]
    assert run_command(argv) == run_command(argv)


def test_main_writes_errors_to_stderr(capsys):
    assert main(["frobnicate"]) == 2
    out, err = capsys.readouterr()
    assert out == "" and err.startswith("error:")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twotheory", "normalize-braid", "--strands",
                           "2", "s1 s1^-1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"
